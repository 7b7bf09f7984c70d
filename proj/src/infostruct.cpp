#include "borderstar/infostruct.hpp"

#include <algorithm>
#include <set>

#include "borderstar/errors.hpp"

namespace bsr {

void StateSpace::require_partition() const {
  std::set<int> seen;
  for (const auto& ev : events) {
    if (ev.empty()) throw Error("BadEventStructure", "empty payoff-relevant event");
    for (int s : ev) {
      if (s < 0 || s >= num_states())
        throw Error("BadEventStructure", "event references unknown state");
      if (!seen.insert(s).second)
        throw Error("BadEventStructure", "payoff-relevant events overlap");
    }
  }
  if (static_cast<int>(seen.size()) != num_states())
    throw Error("BadEventStructure", "payoff-relevant events do not exhaust the states");
}

InfoStructure::InfoStructure(StateSpace states_, Grid signal_grid_,
                             std::map<std::pair<int, Point>, Rat> joint_)
    : states(std::move(states_)), signal_grid(std::move(signal_grid_)) {
  Rat total = 0;
  for (auto& [key, w] : joint_) {
    if (key.first < 0 || key.first >= states.num_states())
      throw input_error("joint weight references unknown state");
    if (static_cast<int>(key.second.size()) != signal_grid.agents())
      throw input_error("signal profile arity mismatch");
    if (w < 0) throw input_error("negative joint weight");
    total += w;
    if (w > 0) joint[key] = w;
  }
  if (total != 1)
    throw input_error("joint weights sum to " + rat_str(total) + ", expected 1");
}

std::vector<Rat> InfoStructure::prior() const {
  std::vector<Rat> p0(states.num_states(), Rat(0));
  for (const auto& [key, w] : joint) p0[key.first] += w;
  return p0;
}

std::map<Point, Rat> InfoStructure::signal_marginal() const {
  std::map<Point, Rat> m;
  for (const auto& [key, w] : joint) m[key.second] += w;
  return m;
}

std::map<Rat, Rat> posteriors_of(const InfoStructure& info, int agent) {
  if (agent < 0 || agent >= info.states.agents())
    throw Error("IndexOutOfRange", "agent index out of range");
  const auto& event = info.states.events[agent];
  std::map<Rat, Rat> joint_mass;  // P(A_i, s_i)
  std::map<Rat, Rat> sig_mass;    // P(s_i)
  for (const auto& [key, w] : info.joint) {
    const Rat& s_i = key.second[agent];
    sig_mass[s_i] += w;
    if (std::find(event.begin(), event.end(), key.first) != event.end())
      joint_mass[s_i] += w;
  }
  std::map<Rat, Rat> post;
  for (const auto& [s, m] : sig_mass) {
    if (m == 0)
      throw Error("ZeroProbabilitySignal",
                  "posterior undefined at zero-probability signal " + rat_str(s));
    post[s] = joint_mass[s] / m;
  }
  return post;
}

FiniteMeasure belief_distribution_of(const InfoStructure& info) {
  int n = info.states.agents();
  std::vector<std::map<Rat, Rat>> post(n);
  for (int i = 0; i < n; ++i) post[i] = posteriors_of(info, i);
  std::map<Point, Rat> w;
  for (const auto& [s, m] : info.signal_marginal()) {
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = post[i].at(s[i]);
    w[x] += m;
  }
  return FiniteMeasure::from_weights(n, w);
}

InfoStructure direct_reduction(const InfoStructure& info) {
  int n = info.states.agents();
  std::vector<std::map<Rat, Rat>> post(n);
  for (int i = 0; i < n; ++i) post[i] = posteriors_of(info, i);
  std::map<std::pair<int, Point>, Rat> joint;
  std::vector<Point> support;
  for (const auto& [key, w] : info.joint) {
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = post[i].at(key.second[i]);
    joint[{key.first, x}] += w;
    support.push_back(x);
  }
  return InfoStructure(info.states, Grid::from_support(support, n), std::move(joint));
}

InfoStructure construct_infostructure(const FiniteMeasure& nu, const StateSpace& states) {
  states.require_partition();
  if (states.agents() != nu.agents())
    throw Error("BadEventStructure", "one payoff-relevant event per agent required");
  GameInstance game = construct_game(nu);  // prior nu, identity interim rule

  // dP(omega, t) = a(i, t) mu(t) / |A_i| for omega in A_i.
  std::map<std::pair<int, Point>, Rat> joint;
  for (const auto& [t, w] : game.prior.weights()) {
    const auto& lot = game.allocation.at(t);
    for (int i = 0; i < states.agents(); ++i) {
      if (lot[i] == 0) continue;
      Rat share = lot[i] * w / static_cast<int>(states.events[i].size());
      for (int s : states.events[i]) joint[{s, t}] += share;
    }
  }
  return InfoStructure(states, game.prior.grid(), std::move(joint));
}

std::vector<Rat> implied_prior(const FiniteMeasure& nu) {
  std::vector<Rat> out;
  for (int i = 0; i < nu.agents(); ++i) out.push_back(nu.mean(i));
  return out;
}

}  // namespace bsr
