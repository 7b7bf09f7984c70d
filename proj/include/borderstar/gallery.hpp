#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <optional>
#include <string>

#include "borderstar/measures.hpp"

namespace bsr {

// High-precision float used only for the Clayton family, whose CDF
// involves irrational powers. Never on an exact verdict path.
using Float50 = boost::multiprecision::cpp_bin_float_50;

enum class CopulaFamily { FGM, Clayton, AMH, FrechetUpper, Independent, UpperTriangleUniform };

CopulaFamily parse_family(const std::string& name);
std::string family_name(CopulaFamily f);

struct CopulaSpec {
  CopulaFamily family = CopulaFamily::Independent;
  Rat theta = 0;  // FGM [-1,1], Clayton [-1,inf), AMH [-1,1); unused otherwise

  // Throws ParameterOutOfRange.
  void validate() const;

  bool uses_theta() const;
  bool uniform_marginals() const;  // all families except UpperTriangleUniform
  // Note: the Clayton exponent here is the standard -1/theta, not the
  // literal -theta; surfaced to callers via clayton_exponent_note().
  static std::string clayton_exponent_note();
};

struct CdfValue {
  std::optional<Rat> exact;  // set for every family except interior Clayton
  Float50 approx;            // always set
};

// Joint CDF at (a_1, a_2); arguments must lie in [0,1].
CdfValue copula_cdf(const CopulaSpec& c, const Rat& a1, const Rat& a2);

// Grid scan of CDF(a1,a2) >= a1*a2 on {k/res}. `boundary_points` counts
// Clayton points with |deficit| below the 1e-12 guard band; those are
// reported, never silently classified.
struct ScanReport {
  bool pass = true;
  Point worst;            // point of largest violation (or tightest margin)
  Rat worst_gap_exact;    // meaningful when gap_is_exact
  Float50 worst_gap;      // signed; negative = violated
  bool gap_is_exact = true;
  int boundary_points = 0;
};

ScanReport pqd_check(const CopulaSpec& c, int resolution);

// Grid scan of the uniform-marginal upper bound CDF(a1,a2) <= (a1^2+a2^2)/2.
// Throws MarginalsNotUniform for the upper-triangle family.
ScanReport upper_bound_scan(const CopulaSpec& c, int resolution);

// Cell masses by CDF inclusion-exclusion on an m x m grid. Exact families
// place mass at cell centers, the upper-triangle family at exact cell
// barycenters (its marginals are not uniform, and the center rule would
// collapse the mean); Clayton masses are rationalized and renormalized
// with the adjustment reported in `residual`.
struct Discretization {
  FiniteMeasure nu;
  Rat residual = 0;
};

Discretization discretize(const CopulaSpec& c, int cells_per_axis);

// Symmetric one-axis marginal: uniform, triangular density f(x)=2x, or
// discrete atoms.
struct SymmetricMarginal {
  enum class Kind { Uniform, Triangular, Discrete };
  Kind kind = Kind::Uniform;
  std::map<Rat, Rat> atoms;  // Discrete only; masses sum to 1

  Rat mean() const;
};

// Both sides of the one-parameter symmetric feasibility inequality at
// threshold a, plus the symmetric martingale value n*E[x].
struct SymmetricCondition {
  Rat lhs;   // int_a^1 x dF
  Rat rhs;   // int_a^1 F^{n-1}(x) dF
  Rat martingale;  // n * E_F[x]
};

SymmetricCondition symmetric_condition(const SymmetricMarginal& f, int n, const Rat& a);

// (n-1) * E_F[x] <= 1: the threshold obstruction with one uninformed agent.
struct LargeNBound {
  Rat value;  // (n-1) * E[x]
  bool holds;
};

LargeNBound large_n_bound(const SymmetricMarginal& f, int n);

// The upper-triangle threshold condition at a: LHS = (4/3)(1-a^3); the
// direct RHS integrates density 2 over [0,a]^2, the footnote RHS keeps the
// literal 1/2 factor. Both are reported; they disagree and the tool flags it.
struct TriangleCondition {
  Rat lhs;
  Rat rhs_direct;    // 1 - (2a-1)^2 for a >= 1/2, else 1
  Rat rhs_footnote;  // 1 - (1/2)(2a-1)^2 for a >= 1/2, else 1
  bool violated_direct;
  bool violated_footnote;
};

TriangleCondition triangle_condition(const Rat& a);

}  // namespace bsr
