#pragma once

#include <functional>
#include <map>
#include <vector>

#include "borderstar/rational.hpp"

namespace bsr {

// Finite product grid: per-agent sorted lists of distinct rational points
// in [0,1] is not required here (grids also carry type labels for games);
// belief grids validate the [0,1] range at construction of the measure.
struct Grid {
  std::vector<std::vector<Rat>> axes;  // per agent, strictly increasing

  int agents() const { return static_cast<int>(axes.size()); }
  bool on_axis(int i, const Rat& v) const;
  int axis_index(int i, const Rat& v) const;  // -1 if absent

  // Smallest grid containing every point of `pts`.
  static Grid from_support(const std::vector<Point>& pts, int n);
};

// Exact probability mass function on a finite product grid. Immutable after
// construction; all operations are pure.
class FiniteMeasure {
 public:
  // Validates: weights nonnegative, points on grid, total mass exactly 1.
  // Zero-weight points are dropped; the grid keeps its full axes.
  FiniteMeasure(Grid grid, const std::map<Point, Rat>& weights);

  // Convenience: grid derived from the support.
  static FiniteMeasure from_weights(int agents, const std::map<Point, Rat>& weights);

  const Grid& grid() const { return grid_; }
  int agents() const { return grid_.agents(); }

  // Support only: every stored weight is strictly positive.
  const std::map<Point, Rat>& weights() const { return weights_; }

  Rat mass(const Point& p) const;

  // Marginal on agent i's axis, as a single-axis measure.
  FiniteMeasure marginal(int i) const;

  // Marginal weight map for agent i: axis value -> mass.
  std::map<Rat, Rat> marginal_weights(int i) const;

  // Product of single-axis factors.
  static FiniteMeasure product(const std::vector<FiniteMeasure>& factors);

  // Image measure under f; f must be defined on every support point.
  FiniteMeasure pushforward(const std::function<Point(const Point&)>& f) const;

  // Mass of { t : exists i with t_i in C_i }.
  Rat set_mass_union(const std::vector<std::vector<Rat>>& subsets) const;
  // Mass of C_1 x ... x C_n.
  Rat set_mass_box(const std::vector<std::vector<Rat>>& subsets) const;
  // Sum over x_i in C_i of x_i * marginal_i(x_i).
  Rat expectation_over(int i, const std::vector<Rat>& subset) const;

  // Mean of coordinate i under the marginal.
  Rat mean(int i) const;

  // True iff the measure equals the product of its own marginals, exactly.
  bool is_independent() const;

 private:
  Grid grid_;
  std::map<Point, Rat> weights_;
};

}  // namespace bsr
