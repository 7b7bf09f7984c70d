#pragma once

#include "borderstar/auctions.hpp"
#include "borderstar/border.hpp"

namespace bsr {

// A FiniteMeasure whose grid coordinates are belief values in [0,1].
// Throws InputError when a coordinate leaves the unit interval.
FiniteMeasure as_belief_distribution(const FiniteMeasure& m);

// sum_i E[x_i]; feasibility requires the value to equal 1 exactly.
Rat martingale_check(const FiniteMeasure& nu);

// Checks the belief-space ceiling inequality over all subset profiles
// plus the martingale equality. Condition-level verdict.
FeasibilityVerdict borderstar_bruteforce(const FiniteMeasure& nu, int cap_bits = 20);

// Revelation reduction: prior = nu, interim rule = identity, flow oracle.
// Feasible: certificate game whose interim rule is the identity on support.
FeasibilityVerdict borderstar_feasibility(const FiniteMeasure& nu);

// The certifying game for a feasible nu. Throws InfeasibleInput (message
// carries the witness) otherwise.
GameInstance construct_game(const FiniteMeasure& nu);

// Floor-form slack sum_i int_{C_i} x_i dnu_i - nu(C_1 x ... x C_n).
// Nonnegative for every profile iff nu is feasible.
Rat core_slack(const FiniteMeasure& nu, const std::vector<std::vector<Rat>>& profile);

struct FixedPriorResult {
  FeasibilityVerdict verdict;
  std::string reason;             // NotIndependentPosterior | AtomSplitRequired |
                                  // BorderStarViolated | empty when feasible
  std::vector<QuantileMap> maps;  // present when feasible
};

// Feasibility of nu for games over the fixed independent prior mu.
// Throws NotIndependentPrior when mu is correlated. Otherwise feasible iff
// nu is independent, per-agent consecutive-grouping maps from mu_i to nu_i
// exist, and nu passes the belief-space inequalities; failures come back
// as Infeasible verdicts with the matching reason code (BorderStarViolated
// carries the witness).
FixedPriorResult fixed_prior_feasibility(const FiniteMeasure& mu, const FiniteMeasure& nu);

}  // namespace bsr
