#include "borderstar/measures.hpp"

#include <algorithm>
#include <set>

#include "borderstar/errors.hpp"

namespace bsr {

bool Grid::on_axis(int i, const Rat& v) const {
  return axis_index(i, v) >= 0;
}

int Grid::axis_index(int i, const Rat& v) const {
  const auto& ax = axes.at(i);
  auto it = std::lower_bound(ax.begin(), ax.end(), v);
  if (it == ax.end() || *it != v) return -1;
  return static_cast<int>(it - ax.begin());
}

Grid Grid::from_support(const std::vector<Point>& pts, int n) {
  std::vector<std::set<Rat>> vals(n);
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != n)
      throw input_error("point arity mismatch: " + point_str(p));
    for (int i = 0; i < n; ++i) vals[i].insert(p[i]);
  }
  Grid g;
  g.axes.resize(n);
  for (int i = 0; i < n; ++i) g.axes[i].assign(vals[i].begin(), vals[i].end());
  return g;
}

FiniteMeasure::FiniteMeasure(Grid grid, const std::map<Point, Rat>& weights)
    : grid_(std::move(grid)) {
  Rat total = 0;
  for (const auto& [p, w] : weights) {
    if (static_cast<int>(p.size()) != grid_.agents())
      throw input_error("point arity mismatch: " + point_str(p));
    if (w < 0) throw input_error("negative weight at " + point_str(p));
    for (int i = 0; i < grid_.agents(); ++i)
      if (!grid_.on_axis(i, p[i]))
        throw input_error("point off grid: " + point_str(p));
    total += w;
    if (w > 0) weights_[p] = w;
  }
  if (total != 1)
    throw input_error("weights sum to " + rat_str(total) + ", expected 1");
}

FiniteMeasure FiniteMeasure::from_weights(int agents,
                                          const std::map<Point, Rat>& weights) {
  std::vector<Point> pts;
  pts.reserve(weights.size());
  for (const auto& [p, w] : weights)
    if (w > 0) pts.push_back(p);
  return FiniteMeasure(Grid::from_support(pts, agents), weights);
}

Rat FiniteMeasure::mass(const Point& p) const {
  auto it = weights_.find(p);
  return it == weights_.end() ? Rat(0) : it->second;
}

std::map<Rat, Rat> FiniteMeasure::marginal_weights(int i) const {
  if (i < 0 || i >= agents()) throw Error("IndexOutOfRange", "agent index out of range");
  std::map<Rat, Rat> m;
  for (const auto& [p, w] : weights_) m[p[i]] += w;
  return m;
}

FiniteMeasure FiniteMeasure::marginal(int i) const {
  std::map<Point, Rat> w;
  for (const auto& [v, m] : marginal_weights(i)) w[{v}] = m;
  return FiniteMeasure::from_weights(1, w);
}

FiniteMeasure FiniteMeasure::product(const std::vector<FiniteMeasure>& factors) {
  int n = static_cast<int>(factors.size());
  for (const auto& f : factors)
    if (f.agents() != 1) throw input_error("product factor is not single-axis");
  std::map<Point, Rat> w;
  std::vector<Point> acc = {Point{}};
  std::vector<Rat> accw = {Rat(1)};
  for (const auto& f : factors) {
    std::vector<Point> nacc;
    std::vector<Rat> naccw;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      for (const auto& [p, fw] : f.weights()) {
        Point q = acc[k];
        q.push_back(p[0]);
        nacc.push_back(std::move(q));
        naccw.push_back(accw[k] * fw);
      }
    }
    acc = std::move(nacc);
    accw = std::move(naccw);
  }
  for (std::size_t k = 0; k < acc.size(); ++k) w[acc[k]] = accw[k];
  return FiniteMeasure::from_weights(n, w);
}

FiniteMeasure FiniteMeasure::pushforward(
    const std::function<Point(const Point&)>& f) const {
  std::map<Point, Rat> w;
  int arity = -1;
  for (const auto& [p, m] : weights_) {
    Point img = f(p);
    if (arity < 0) arity = static_cast<int>(img.size());
    if (static_cast<int>(img.size()) != arity)
      throw input_error("pushforward map changes arity at " + point_str(p));
    w[img] += m;
  }
  return FiniteMeasure::from_weights(arity, w);
}

namespace {

void validate_subsets(const Grid& g, const std::vector<std::vector<Rat>>& subsets) {
  if (static_cast<int>(subsets.size()) != g.agents())
    throw input_error("expected one subset per agent");
  for (int i = 0; i < g.agents(); ++i)
    for (const auto& v : subsets[i])
      if (!g.on_axis(i, v))
        throw input_error("subset value " + rat_str(v) + " not on axis of agent " +
                          std::to_string(i + 1));
}

bool contains(const std::vector<Rat>& c, const Rat& v) {
  return std::find(c.begin(), c.end(), v) != c.end();
}

}  // namespace

Rat FiniteMeasure::set_mass_union(const std::vector<std::vector<Rat>>& subsets) const {
  validate_subsets(grid_, subsets);
  Rat total = 0;
  for (const auto& [p, w] : weights_) {
    for (int i = 0; i < agents(); ++i) {
      if (contains(subsets[i], p[i])) {
        total += w;
        break;
      }
    }
  }
  return total;
}

Rat FiniteMeasure::set_mass_box(const std::vector<std::vector<Rat>>& subsets) const {
  validate_subsets(grid_, subsets);
  Rat total = 0;
  for (const auto& [p, w] : weights_) {
    bool in = true;
    for (int i = 0; i < agents() && in; ++i) in = contains(subsets[i], p[i]);
    if (in) total += w;
  }
  return total;
}

Rat FiniteMeasure::expectation_over(int i, const std::vector<Rat>& subset) const {
  if (i < 0 || i >= agents()) throw Error("IndexOutOfRange", "agent index out of range");
  for (const auto& v : subset)
    if (!grid_.on_axis(i, v))
      throw input_error("subset value " + rat_str(v) + " not on axis of agent " +
                        std::to_string(i + 1));
  Rat total = 0;
  for (const auto& [v, m] : marginal_weights(i))
    if (contains(subset, v)) total += v * m;
  return total;
}

Rat FiniteMeasure::mean(int i) const {
  Rat total = 0;
  for (const auto& [v, m] : marginal_weights(i)) total += v * m;
  return total;
}

bool FiniteMeasure::is_independent() const {
  std::vector<std::map<Rat, Rat>> marg(agents());
  for (int i = 0; i < agents(); ++i) marg[i] = marginal_weights(i);
  // Product support size must match; then compare weights pointwise.
  std::size_t prod_size = 1;
  for (const auto& m : marg) prod_size *= m.size();
  if (prod_size != weights_.size()) return false;
  for (const auto& [p, w] : weights_) {
    Rat expect = 1;
    for (int i = 0; i < agents(); ++i) expect *= marg[i].at(p[i]);
    if (expect != w) return false;
  }
  return true;
}

}  // namespace bsr
