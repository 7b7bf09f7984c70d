#include "borderstar/border.hpp"

#include <algorithm>
#include <deque>

#include "borderstar/errors.hpp"

namespace bsr {

Rat InterimRule::at(int agent, const Rat& type) const {
  const auto& m = values.at(agent);
  auto it = m.find(type);
  if (it == m.end())
    throw input_error("no interim value for agent " + std::to_string(agent + 1) +
                      " at type " + rat_str(type));
  return it->second;
}

bool InterimRule::monotone(int agent) const {
  const auto& ax = grid.axes.at(agent);
  const auto& m = values.at(agent);
  Rat prev;
  bool first = true;
  for (const auto& v : ax) {
    auto it = m.find(v);
    if (it == m.end()) continue;
    if (!first && it->second < prev) return false;
    prev = it->second;
    first = false;
  }
  return true;
}

InterimRule InterimRule::identity(const Grid& grid) {
  InterimRule q;
  q.grid = grid;
  q.values.resize(grid.agents());
  for (int i = 0; i < grid.agents(); ++i)
    for (const auto& v : grid.axes[i]) q.values[i][v] = v;
  return q;
}

GameInstance::GameInstance(FiniteMeasure prior_,
                           std::map<Point, std::vector<Rat>> allocation_)
    : prior(std::move(prior_)), allocation(std::move(allocation_)) {
  int n = prior.agents();
  for (const auto& [p, w] : prior.weights()) {
    auto it = allocation.find(p);
    if (it == allocation.end())
      throw input_error("allocation missing at support point " + point_str(p));
    const auto& lot = it->second;
    if (static_cast<int>(lot.size()) != n)
      throw input_error("lottery arity mismatch at " + point_str(p));
    Rat total = 0;
    for (const auto& a : lot) {
      if (a < 0) throw input_error("negative lottery entry at " + point_str(p));
      total += a;
    }
    if (total != 1)
      throw input_error("lottery at " + point_str(p) + " sums to " + rat_str(total));
  }
}

InterimRule interim_of_game(const GameInstance& g) {
  int n = g.prior.agents();
  InterimRule q;
  q.grid = g.prior.grid();
  q.values.resize(n);
  for (int i = 0; i < n; ++i) {
    std::map<Rat, Rat> num;  // t_i -> sum_t a(i,t) mu(t)
    for (const auto& [p, w] : g.prior.weights())
      num[p[i]] += g.allocation.at(p)[i] * w;
    auto marg = g.prior.marginal_weights(i);
    for (const auto& v : q.grid.axes[i]) {
      auto mit = marg.find(v);
      if (mit == marg.end() || mit->second == 0) {
        q.values[i][v] = 0;  // zero-mass convention
      } else {
        q.values[i][v] = num[v] / mit->second;
      }
    }
  }
  return q;
}

namespace {

// Positive-mass axis values per agent, in increasing order. Zero-mass
// types are unconstrained and dropped before any feasibility check.
std::vector<std::vector<Rat>> active_axes(const FiniteMeasure& prior) {
  std::vector<std::vector<Rat>> out(prior.agents());
  for (int i = 0; i < prior.agents(); ++i)
    for (const auto& [v, m] : prior.marginal_weights(i))
      if (m > 0) out[i].push_back(v);
  return out;
}

void validate_rule(const FiniteMeasure& prior, const InterimRule& q) {
  if (static_cast<int>(q.values.size()) != prior.agents())
    throw input_error("interim rule arity mismatch");
  for (int i = 0; i < prior.agents(); ++i) {
    for (const auto& [v, m] : prior.marginal_weights(i)) {
      Rat x = q.at(i, v);
      if (x < 0 || x > 1)
        throw input_error("interim value out of [0,1] for agent " +
                          std::to_string(i + 1) + " at type " + rat_str(v));
    }
  }
}

// Canonical comparison of testing profiles, used to break slack ties.
bool profile_less(const std::vector<std::vector<Rat>>& a,
                  const std::vector<std::vector<Rat>>& b) {
  return a < b;
}

Witness martingale_witness(const FiniteMeasure& prior, const Rat& total) {
  Witness w;
  w.form = WitnessForm::Martingale;
  w.sets = active_axes(prior);
  w.lhs = total;
  w.rhs = 1;
  w.slack = total - 1;
  return w;
}

std::vector<std::vector<Rat>> complement_profile(
    const std::vector<std::vector<Rat>>& axes,
    const std::vector<std::vector<Rat>>& sets) {
  std::vector<std::vector<Rat>> out(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (const auto& v : axes[i])
      if (std::find(sets[i].begin(), sets[i].end(), v) == sets[i].end())
        out[i].push_back(v);
  return out;
}

// Both readings of one violated ceiling profile: the ceiling witness on E
// and the floor witness on the complement. Assumes total == 1.
std::vector<Witness> paired_witnesses(const std::vector<std::vector<Rat>>& axes,
                                      const std::vector<std::vector<Rat>>& ceiling_sets,
                                      const Rat& lhs, const Rat& rhs) {
  Witness ceil;
  ceil.form = WitnessForm::Ceiling;
  ceil.sets = ceiling_sets;
  ceil.lhs = lhs;
  ceil.rhs = rhs;
  ceil.slack = lhs - rhs;
  Witness floor;
  floor.form = WitnessForm::Floor;
  floor.sets = complement_profile(axes, ceiling_sets);
  floor.lhs = 1 - lhs;   // sum_i int_{E_i^c} Q_i dmu_i when the totals sum to 1
  floor.rhs = 1 - rhs;   // mu(prod E_i^c)
  floor.slack = floor.rhs - floor.lhs;
  return {ceil, floor};
}

}  // namespace

Rat martingale_value(const FiniteMeasure& prior, const InterimRule& q) {
  validate_rule(prior, q);
  Rat total = 0;
  for (int i = 0; i < prior.agents(); ++i)
    for (const auto& [v, m] : prior.marginal_weights(i)) total += q.at(i, v) * m;
  return total;
}

FeasibilityVerdict border_bruteforce(const FiniteMeasure& prior, const InterimRule& q,
                                     int cap_bits) {
  validate_rule(prior, q);
  auto axes = active_axes(prior);
  int n = prior.agents();

  int bits = 0;
  for (const auto& ax : axes) bits += static_cast<int>(ax.size());
  if (bits > cap_bits || bits > 62)
    throw Error("CapExceeded", "instance too large for brute force: " +
                                   std::to_string(bits) + " axis points, cap " +
                                   std::to_string(std::min(cap_bits, 62)));

  FeasibilityVerdict verdict;

  Rat total = martingale_value(prior, q);
  if (total != 1) {
    verdict.feasible = false;
    verdict.witnesses.push_back(martingale_witness(prior, total));
    return verdict;
  }

  // Bit layout: agent-major, increasing axis value.
  struct BitInfo {
    int agent;
    Rat value;
    Rat contribution;             // Q_i(v) * mu_i(v)
    std::vector<int> slice;       // support point indices with t_i == v
  };
  std::vector<BitInfo> info;
  std::vector<std::map<Rat, int>> bit_of(n);
  for (int i = 0; i < n; ++i) {
    auto marg = prior.marginal_weights(i);
    for (const auto& v : axes[i]) {
      bit_of[i][v] = static_cast<int>(info.size());
      info.push_back({i, v, q.at(i, v) * marg.at(v), {}});
    }
  }
  std::vector<Point> pts;
  std::vector<Rat> pw;
  for (const auto& [p, w] : prior.weights()) {
    int idx = static_cast<int>(pts.size());
    pts.push_back(p);
    pw.push_back(w);
    for (int i = 0; i < n; ++i) info[bit_of[i].at(p[i])].slice.push_back(idx);
  }

  // Gray-code walk: one bit toggles per step, so the ceiling left side and
  // the union mass update incrementally and stay exact.
  std::vector<int> cover(pts.size(), 0);
  Rat lhs = 0, union_mass = 0;
  std::uint64_t mask = 0;
  bool have_best = false;
  Rat best_slack = 0;
  std::vector<std::vector<Rat>> best_sets;

  auto sets_of_mask = [&](std::uint64_t m) {
    std::vector<std::vector<Rat>> sets(n);
    for (std::size_t b = 0; b < info.size(); ++b)
      if (m & (std::uint64_t(1) << b)) sets[info[b].agent].push_back(info[b].value);
    return sets;
  };

  std::uint64_t combos = std::uint64_t(1) << bits;
  for (std::uint64_t k = 1; k < combos; ++k) {
#if defined(__GNUC__)
    int b = __builtin_ctzll(k);
#else
    int b = 0;
    while (!((k >> b) & 1)) ++b;
#endif
    bool on = !(mask & (std::uint64_t(1) << b));
    mask ^= std::uint64_t(1) << b;
    const auto& bi = info[b];
    if (on) {
      lhs += bi.contribution;
      for (int idx : bi.slice)
        if (cover[idx]++ == 0) union_mass += pw[idx];
    } else {
      lhs -= bi.contribution;
      for (int idx : bi.slice)
        if (--cover[idx] == 0) union_mass -= pw[idx];
    }
    if (lhs > union_mass) {
      Rat slack = lhs - union_mass;
      if (!have_best || slack > best_slack ||
          (slack == best_slack && profile_less(sets_of_mask(mask), best_sets))) {
        have_best = true;
        best_slack = slack;
        best_sets = sets_of_mask(mask);
      }
    }
  }

  if (!have_best) {
    verdict.feasible = true;
    return verdict;
  }
  verdict.feasible = false;
  Rat best_lhs = 0;
  for (int i = 0; i < n; ++i)
    for (const auto& v : best_sets[i]) best_lhs += info[bit_of[i].at(v)].contribution;
  Rat best_rhs = prior.set_mass_union(best_sets);
  verdict.witnesses = paired_witnesses(axes, best_sets, best_lhs, best_rhs);
  return verdict;
}

namespace {

// Residual network with exact rational capacities. Small and dense enough
// that shortest-augmenting-path (BFS, lowest node index first) is plenty.
struct FlowNet {
  struct Edge {
    int to;
    Rat cap;
    Rat flow;
    int rev;  // index of reverse edge in adj[to]
  };
  std::vector<std::vector<Edge>> adj;

  explicit FlowNet(int nodes) : adj(nodes) {}

  void add_edge(int from, int to, const Rat& cap) {
    adj[from].push_back({to, cap, 0, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, 0, static_cast<int>(adj[from].size()) - 1});
  }

  Rat max_flow(int s, int t) {
    Rat total = 0;
    for (;;) {
      std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
      std::deque<int> queue{s};
      parent[s] = {s, 0};
      while (!queue.empty() && parent[t].first < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int e = 0; e < static_cast<int>(adj[u].size()); ++e) {
          const Edge& ed = adj[u][e];
          if (parent[ed.to].first < 0 && ed.cap - ed.flow > 0) {
            parent[ed.to] = {u, e};
            queue.push_back(ed.to);
          }
        }
      }
      if (parent[t].first < 0) break;
      Rat bottleneck;
      bool first = true;
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        Rat res = adj[u][e].cap - adj[u][e].flow;
        if (first || res < bottleneck) bottleneck = res;
        first = false;
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        adj[u][e].flow += bottleneck;
        adj[adj[u][e].to][adj[u][e].rev].flow -= bottleneck;
        v = u;
      }
      total += bottleneck;
    }
    return total;
  }

  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(adj.size(), false);
    std::deque<int> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const Edge& ed : adj[u]) {
        if (!seen[ed.to] && ed.cap - ed.flow > 0) {
          seen[ed.to] = true;
          queue.push_back(ed.to);
        }
      }
    }
    return seen;
  }
};

}  // namespace

std::vector<Witness> cut_to_witness(const FiniteMeasure& prior, const InterimRule& q,
                                    const CutWitness& cut) {
  if (cut.cut_value >= 1)
    throw Error("SaturatingCut", "cut_to_witness called on a saturating cut");
  auto axes = active_axes(prior);
  int n = prior.agents();
  Rat floor_lhs = 0;
  for (int i = 0; i < n; ++i) {
    auto marg = prior.marginal_weights(i);
    for (const auto& v : cut.source_side_types[i]) floor_lhs += q.at(i, v) * marg.at(v);
  }
  Rat floor_rhs = prior.set_mass_box(cut.source_side_types);
  Witness floor;
  floor.form = WitnessForm::Floor;
  floor.sets = cut.source_side_types;
  floor.lhs = floor_lhs;
  floor.rhs = floor_rhs;
  floor.slack = floor_rhs - floor_lhs;

  auto comp = complement_profile(axes, cut.source_side_types);
  Witness ceil;
  ceil.form = WitnessForm::Ceiling;
  ceil.sets = comp;
  ceil.lhs = 1 - floor_lhs;  // the martingale total is 1 before the flow runs
  ceil.rhs = prior.set_mass_union(comp);
  ceil.slack = ceil.lhs - ceil.rhs;
  return {floor, ceil};
}

FeasibilityVerdict flow_feasibility(const FiniteMeasure& prior, const InterimRule& q) {
  validate_rule(prior, q);
  FeasibilityVerdict verdict;
  Rat total = martingale_value(prior, q);
  if (total != 1) {
    verdict.feasible = false;
    verdict.witnesses.push_back(martingale_witness(prior, total));
    return verdict;
  }

  int n = prior.agents();
  auto axes = active_axes(prior);

  std::vector<Point> pts;
  std::vector<Rat> pw;
  for (const auto& [p, w] : prior.weights()) {
    pts.push_back(p);
    pw.push_back(w);
  }
  int num_pts = static_cast<int>(pts.size());

  std::vector<std::map<Rat, int>> interim_node(n);
  int next = 1 + num_pts;
  for (int i = 0; i < n; ++i)
    for (const auto& v : axes[i]) interim_node[i][v] = next++;
  int sink = next;
  FlowNet net(sink + 1);

  for (int k = 0; k < num_pts; ++k) net.add_edge(0, 1 + k, pw[k]);
  for (int k = 0; k < num_pts; ++k)
    for (int i = 0; i < n; ++i)
      net.add_edge(1 + k, interim_node[i].at(pts[k][i]), Rat(2));  // effectively unbounded
  for (int i = 0; i < n; ++i) {
    auto marg = prior.marginal_weights(i);
    for (const auto& v : axes[i])
      net.add_edge(interim_node[i].at(v), sink, q.at(i, v) * marg.at(v));
  }

  Rat value = net.max_flow(0, sink);
  verdict.flow_value = value;
  if (value == 1) {
    std::map<Point, std::vector<Rat>> alloc;
    for (int k = 0; k < num_pts; ++k) {
      std::vector<Rat> lot(n, Rat(0));
      for (const auto& ed : net.adj[1 + k]) {
        if (ed.to == 0) continue;
        for (int i = 0; i < n; ++i) {
          auto it = interim_node[i].find(pts[k][i]);
          if (it != interim_node[i].end() && it->second == ed.to) lot[i] = ed.flow / pw[k];
        }
      }
      alloc[pts[k]] = std::move(lot);
    }
    verdict.feasible = true;
    verdict.certificate = GameInstance(prior, std::move(alloc));
    return verdict;
  }

  auto seen = net.source_side(0);
  CutWitness cut;
  cut.source_side_types.resize(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [v, node] : interim_node[i])
      if (seen[node]) cut.source_side_types[i].push_back(v);
  cut.cut_value = value;
  verdict.feasible = false;
  verdict.witnesses = cut_to_witness(prior, q, cut);
  return verdict;
}

FeasibilityVerdict level_set_check(const FiniteMeasure& prior, const InterimRule& q) {
  validate_rule(prior, q);
  if (!prior.is_independent())
    throw Error("NotIndependent", "level_set_check requires an independent prior");
  for (int i = 0; i < prior.agents(); ++i)
    if (!q.monotone(i))
      throw Error("NotMonotone", "level_set_check requires nondecreasing interim rules");

  FeasibilityVerdict verdict;
  Rat total = martingale_value(prior, q);
  if (total != 1) {
    verdict.feasible = false;
    verdict.witnesses.push_back(martingale_witness(prior, total));
    return verdict;
  }

  int n = prior.agents();
  auto axes = active_axes(prior);

  // Per agent and suffix start j: tail sum of Q mu and head mass below it.
  std::vector<std::vector<Rat>> tail(n), head(n);
  for (int i = 0; i < n; ++i) {
    auto marg = prior.marginal_weights(i);
    int k = static_cast<int>(axes[i].size());
    tail[i].assign(k + 1, Rat(0));
    head[i].assign(k + 1, Rat(0));
    for (int j = k - 1; j >= 0; --j)
      tail[i][j] = tail[i][j + 1] + q.at(i, axes[i][j]) * marg.at(axes[i][j]);
    for (int j = 1; j <= k; ++j)
      head[i][j] = head[i][j - 1] + marg.at(axes[i][j - 1]);
  }

  bool have_best = false;
  Rat best_slack = 0;
  std::vector<std::vector<Rat>> best_sets;

  std::vector<int> choice(n, 0);  // suffix start per agent
  for (;;) {
    Rat lhs = 0, miss = 1;
    for (int i = 0; i < n; ++i) {
      lhs += tail[i][choice[i]];
      miss *= head[i][choice[i]];  // mass of types below the threshold
    }
    Rat rhs = 1 - miss;  // union mass under independence
    if (lhs > rhs) {
      Rat slack = lhs - rhs;
      std::vector<std::vector<Rat>> sets(n);
      for (int i = 0; i < n; ++i)
        sets[i].assign(axes[i].begin() + choice[i], axes[i].end());
      if (!have_best || slack > best_slack ||
          (slack == best_slack && profile_less(sets, best_sets))) {
        have_best = true;
        best_slack = slack;
        best_sets = std::move(sets);
      }
    }
    int i = 0;
    while (i < n && choice[i] == static_cast<int>(axes[i].size())) {
      choice[i] = 0;
      ++i;
    }
    if (i == n) break;
    ++choice[i];
  }

  if (!have_best) {
    verdict.feasible = true;
    return verdict;
  }
  verdict.feasible = false;
  Rat lhs = 0;
  for (int i = 0; i < n; ++i) {
    auto marg = prior.marginal_weights(i);
    for (const auto& v : best_sets[i]) lhs += q.at(i, v) * marg.at(v);
  }
  verdict.witnesses = paired_witnesses(axes, best_sets, lhs, prior.set_mass_union(best_sets));
  return verdict;
}

}  // namespace bsr
