#include "borderstar/beliefs.hpp"

#include "borderstar/auctions.hpp"
#include "borderstar/errors.hpp"

namespace bsr {

FiniteMeasure as_belief_distribution(const FiniteMeasure& m) {
  for (int i = 0; i < m.agents(); ++i)
    for (const auto& v : m.grid().axes[i])
      if (v < 0 || v > 1)
        throw input_error("belief coordinate " + rat_str(v) + " outside [0,1]");
  return m;
}

Rat martingale_check(const FiniteMeasure& nu) {
  Rat total = 0;
  for (int i = 0; i < nu.agents(); ++i) total += nu.mean(i);
  return total;
}

FeasibilityVerdict borderstar_bruteforce(const FiniteMeasure& nu, int cap_bits) {
  auto b = as_belief_distribution(nu);
  return border_bruteforce(b, InterimRule::identity(b.grid()), cap_bits);
}

FeasibilityVerdict borderstar_feasibility(const FiniteMeasure& nu) {
  auto b = as_belief_distribution(nu);
  return flow_feasibility(b, InterimRule::identity(b.grid()));
}

GameInstance construct_game(const FiniteMeasure& nu) {
  auto verdict = borderstar_feasibility(nu);
  if (!verdict.feasible) {
    std::string what = "belief distribution is infeasible";
    if (!verdict.witnesses.empty()) {
      const auto& w = verdict.witnesses.front();
      what += "; witness lhs " + rat_str(w.lhs) + " vs rhs " + rat_str(w.rhs);
    }
    throw Error("InfeasibleInput", what);
  }
  return *verdict.certificate;
}

Rat core_slack(const FiniteMeasure& nu, const std::vector<std::vector<Rat>>& profile) {
  auto b = as_belief_distribution(nu);
  Rat lhs = 0;
  for (int i = 0; i < b.agents(); ++i) lhs += b.expectation_over(i, profile[i]);
  return lhs - b.set_mass_box(profile);
}

FixedPriorResult fixed_prior_feasibility(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (!mu.is_independent())
    throw Error("NotIndependentPrior", "fixed-prior mode requires an independent prior");
  auto b = as_belief_distribution(nu);
  if (mu.agents() != b.agents())
    throw input_error("prior and posterior agent counts differ");

  FixedPriorResult result;
  if (!b.is_independent()) {
    result.reason = "NotIndependentPosterior";
    result.verdict.feasible = false;
    return result;
  }

  // Monotone (quantile-aligned) grouping of consecutive prior atoms.
  int n = mu.agents();
  std::vector<QuantileMap> maps(n);
  for (int i = 0; i < n; ++i) {
    try {
      maps[i] = quantile_pushforward(mu.marginal(i), b.marginal(i));
    } catch (const Error& e) {
      if (e.code() == "AtomSplitRequired") {
        result.reason = "AtomSplitRequired";
        result.verdict.feasible = false;
        return result;
      }
      throw;
    }
  }

  auto verdict = borderstar_feasibility(b);
  if (!verdict.feasible) {
    result.reason = "BorderStarViolated";
    result.verdict = std::move(verdict);
    return result;
  }

  // Induced interim rule over the prior grid; the flow oracle supplies the
  // certifying allocation (guaranteed feasible: lift the nu-certificate
  // through the coordinate-wise maps).
  InterimRule q;
  q.grid = mu.grid();
  q.values.resize(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [t, x] : maps[i]) q.values[i][t] = x;
  result.verdict = flow_feasibility(mu, q);
  result.maps = std::move(maps);
  return result;
}

}  // namespace bsr
