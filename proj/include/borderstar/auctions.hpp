#pragma once

#include <map>
#include <utility>

#include "borderstar/border.hpp"

namespace bsr {

// Nondecreasing grouping map: prior axis value -> belief axis value.
using QuantileMap = std::map<Rat, Rat>;

// Per-agent monotonicity of an interim rule.
std::vector<bool> monotone_check(const InterimRule& q);

// Feasibility of nu for a Bayesian (equivalently dominant-strategy)
// incentive compatible auction over some independent prior: posterior
// independence, the martingale equality, and threshold inequalities
//   sum_i int_{x_i >= a_i} x_i dnu_i  <=  1 - prod_i nu_i(x_i < a_i).
// Throws NotIndependentPosterior for correlated nu.
FeasibilityVerdict bic_feasibility(const FiniteMeasure& nu);

// The unique nondecreasing consecutive-grouping map pushing the one-axis
// measure mu_i forward to nu_i exactly. Throws AtomSplitRequired when the
// cumulative masses do not align.
QuantileMap quantile_pushforward(const FiniteMeasure& mu_i, const FiniteMeasure& nu_i);

// The three benchmark auctions over two bidders with uniform priors:
// 'a' always gives bidder 1 the object, 'b' allocates to the high bidder,
// 'c' is the equal randomization of the two.
struct Example1Result {
  char auction;
  Point point;
  std::vector<Rat> interim;                      // Q values at the point
  std::vector<std::pair<Rat, Rat>> support_box;  // belief support per bidder
};

Example1Result example1_eval(char auction, const Point& t);

// The box-mass witness that auction c's belief distribution is not the
// 1/2-1/2 mixture of a's and b's: the box [1/2,1]x[0,1/2] carries mass 1
// under c but 5/8 under the mixture.
struct Example1NonConvexity {
  std::vector<std::pair<Rat, Rat>> box;
  Rat mass_c;
  Rat mass_mixture;
};

Example1NonConvexity example1_nonconvexity();

}  // namespace bsr
