#pragma once

#include <map>
#include <optional>
#include <vector>

#include "borderstar/measures.hpp"

namespace bsr {

// Per-agent, per-type winning probability Q_i(t_i). One value per axis
// point; the structure itself enforces that Q_i depends only on t_i.
struct InterimRule {
  Grid grid;
  std::vector<std::map<Rat, Rat>> values;  // per agent: axis value -> Q_i

  Rat at(int agent, const Rat& type) const;
  bool monotone(int agent) const;

  static InterimRule identity(const Grid& grid);
};

// A prior together with a per-profile winner lottery.
struct GameInstance {
  FiniteMeasure prior;
  std::map<Point, std::vector<Rat>> allocation;  // support point -> lottery

  // Validates: allocation covers the support, lotteries nonnegative and
  // sum to exactly 1.
  GameInstance(FiniteMeasure prior, std::map<Point, std::vector<Rat>> allocation);
};

enum class WitnessForm { Ceiling, Floor, Martingale };

// A violated (or tight) inequality, re-evaluable from scratch:
// Ceiling: sum_i int_{E_i} Q_i dmu_i  <=  mu(union_i E_i x T_{-i})
// Floor:   sum_i int_{E_i} Q_i dmu_i  >=  mu(E_1 x ... x E_n)
// Martingale: sum_i int Q_i dmu_i = 1.
struct Witness {
  WitnessForm form;
  std::vector<std::vector<Rat>> sets;  // per-agent subsets
  Rat lhs;
  Rat rhs;
  Rat slack;  // signed violation: positive magnitude when violated
};

struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<GameInstance> certificate;
  std::vector<Witness> witnesses;  // infeasible: ceiling and floor readings
  std::optional<Rat> flow_value;   // set by the flow oracle
};

// Q_i(t_i) = sum over t_{-i} of a(i, t) mu(t_{-i}|t_i); zero-mass types get 0.
InterimRule interim_of_game(const GameInstance& g);

// The exact value of sum_i int Q_i dmu_i; feasibility requires == 1.
Rat martingale_value(const FiniteMeasure& prior, const InterimRule& q);

// Checks the ceiling inequality over every subset profile plus the
// martingale equality. Condition-level: no certificate on success.
// Throws CapExceeded when sum_i |T_i| > cap_bits.
FeasibilityVerdict border_bruteforce(const FiniteMeasure& prior, const InterimRule& q,
                                     int cap_bits = 20);

// Exact max-flow oracle. Feasible: returns an allocation certificate.
// Infeasible: returns the min-cut witness in floor form plus its ceiling
// complement.
FeasibilityVerdict flow_feasibility(const FiniteMeasure& prior, const InterimRule& q);

// Threshold-profile checker for independent priors and monotone rules:
// scans only E_i = {t_i >= a_i}. Throws NotIndependent / NotMonotone.
FeasibilityVerdict level_set_check(const FiniteMeasure& prior, const InterimRule& q);

// Internal cut representation exposed for property tests.
struct CutWitness {
  std::vector<std::vector<Rat>> source_side_types;  // E_i per agent
  Rat cut_value;
};

// Floor + ceiling witnesses for a non-saturating cut. Throws if called
// with cut_value >= 1.
std::vector<Witness> cut_to_witness(const FiniteMeasure& prior, const InterimRule& q,
                                    const CutWitness& cut);

}  // namespace bsr
