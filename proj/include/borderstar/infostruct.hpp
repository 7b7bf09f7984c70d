#pragma once

#include <string>

#include "borderstar/beliefs.hpp"

namespace bsr {

// Finite state space with one payoff-relevant event per agent.
struct StateSpace {
  std::vector<std::string> states;
  std::vector<std::vector<int>> events;  // per agent, indices into states

  int num_states() const { return static_cast<int>(states.size()); }
  int agents() const { return static_cast<int>(events.size()); }

  // Throws BadEventStructure unless the events are pairwise disjoint and
  // exhaust the state space.
  void require_partition() const;
};

// Joint distribution over states x signal profiles. Signals are rational
// labels on a grid (direct structures reuse belief values as labels).
struct InfoStructure {
  StateSpace states;
  Grid signal_grid;
  std::map<std::pair<int, Point>, Rat> joint;  // (state index, signal profile) -> mass

  // Validates nonnegativity and total mass 1; drops zero entries.
  InfoStructure(StateSpace states, Grid signal_grid,
                std::map<std::pair<int, Point>, Rat> joint);

  // p0: marginal on states.
  std::vector<Rat> prior() const;

  // Marginal on signal profiles.
  std::map<Point, Rat> signal_marginal() const;
};

// Per-signal posterior q_i(s_i) = P(A_i, s_i) / P(s_i) for agent i.
// Throws on a zero-probability signal (only reachable off support).
std::map<Rat, Rat> posteriors_of(const InfoStructure& info, int agent);

// Pushforward of the signal marginal by the posterior map.
FiniteMeasure belief_distribution_of(const InfoStructure& info);

// Relabels signals by the posteriors they induce and merges duplicates;
// idempotent and belief-distribution-preserving.
InfoStructure direct_reduction(const InfoStructure& info);

// Synthesis of a direct information structure whose belief
// distribution is exactly nu. Mass splits uniformly across the states of
// each event. Throws InfeasibleInput (with witness data in the message)
// or BadEventStructure.
InfoStructure construct_infostructure(const FiniteMeasure& nu, const StateSpace& states);

// Per-event prior masses (E[x_1], ..., E[x_n]); sums to 1 iff the
// martingale equality holds.
std::vector<Rat> implied_prior(const FiniteMeasure& nu);

}  // namespace bsr
