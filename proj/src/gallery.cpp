#include "borderstar/gallery.hpp"

#include <algorithm>

#include "borderstar/errors.hpp"

namespace bsr {

namespace {

constexpr double kGuard = 1e-12;

Rat rat_pow(const Rat& x, int e) {
  Rat out = 1;
  for (int k = 0; k < e; ++k) out *= x;
  return out;
}

Float50 to_f(const Rat& r) {
  return Float50(numerator(r)) / Float50(denominator(r));
}

Float50 fpow(const Float50& x, const Float50& e) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  return exp(e * log(x));
}

}  // namespace

CopulaFamily parse_family(const std::string& name) {
  if (name == "fgm") return CopulaFamily::FGM;
  if (name == "clayton") return CopulaFamily::Clayton;
  if (name == "amh") return CopulaFamily::AMH;
  if (name == "frechet-upper") return CopulaFamily::FrechetUpper;
  if (name == "independent") return CopulaFamily::Independent;
  if (name == "upper-triangle") return CopulaFamily::UpperTriangleUniform;
  throw input_error("unknown copula family: '" + name + "'");
}

std::string family_name(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::FGM: return "fgm";
    case CopulaFamily::Clayton: return "clayton";
    case CopulaFamily::AMH: return "amh";
    case CopulaFamily::FrechetUpper: return "frechet-upper";
    case CopulaFamily::Independent: return "independent";
    case CopulaFamily::UpperTriangleUniform: return "upper-triangle";
  }
  return "?";
}

bool CopulaSpec::uses_theta() const {
  return family == CopulaFamily::FGM || family == CopulaFamily::Clayton ||
         family == CopulaFamily::AMH;
}

bool CopulaSpec::uniform_marginals() const {
  return family != CopulaFamily::UpperTriangleUniform;
}

std::string CopulaSpec::clayton_exponent_note() {
  return "clayton uses the standard exponent -1/theta";
}

void CopulaSpec::validate() const {
  switch (family) {
    case CopulaFamily::FGM:
      if (theta < -1 || theta > 1)
        throw Error("ParameterOutOfRange", "fgm requires theta in [-1,1]");
      break;
    case CopulaFamily::Clayton:
      if (theta < -1)
        throw Error("ParameterOutOfRange", "clayton requires theta >= -1");
      break;
    case CopulaFamily::AMH:
      if (theta < -1 || theta >= 1)
        throw Error("ParameterOutOfRange", "amh requires theta in [-1,1)");
      break;
    default:
      break;
  }
}

CdfValue copula_cdf(const CopulaSpec& c, const Rat& a1, const Rat& a2) {
  c.validate();
  if (a1 < 0 || a1 > 1 || a2 < 0 || a2 > 1)
    throw input_error("copula arguments must lie in [0,1]");
  CdfValue out;
  switch (c.family) {
    case CopulaFamily::Independent:
      out.exact = a1 * a2;
      break;
    case CopulaFamily::FrechetUpper:
      out.exact = std::min(a1, a2);
      break;
    case CopulaFamily::FGM:
      out.exact = a1 * a2 + c.theta * a1 * a2 * (1 - a1) * (1 - a2);
      break;
    case CopulaFamily::AMH: {
      Rat den = 1 - c.theta * (1 - a1) * (1 - a2);
      out.exact = a1 * a2 / den;
      break;
    }
    case CopulaFamily::UpperTriangleUniform: {
      Rat s = a1 + a2 - 1;
      out.exact = (s > 0) ? s * s : Rat(0);
      break;
    }
    case CopulaFamily::Clayton: {
      // Boundary and degenerate cases are exact.
      if (c.theta == 0) {
        out.exact = a1 * a2;
      } else if (a1 == 0 || a2 == 0) {
        out.exact = 0;
      } else if (a1 == 1) {
        out.exact = a2;
      } else if (a2 == 1) {
        out.exact = a1;
      } else if (c.theta == -1) {
        Rat s = a1 + a2 - 1;
        out.exact = (s > 0) ? s : Rat(0);
      } else {
        Float50 th = to_f(c.theta);
        Float50 inner = fpow(to_f(a1), -th) + fpow(to_f(a2), -th) - 1;
        if (inner <= 0) {
          out.exact = 0;  // clamp region, exactly zero mass below it
        } else {
          out.approx = fpow(inner, Float50(-1) / th);
          return out;
        }
      }
      break;
    }
  }
  out.approx = to_f(*out.exact);
  return out;
}

namespace {

// Shared scan: sign > 0 checks lower bounds (pqd), sign < 0 upper bounds.
// gap = sign * (CDF - bound); violated when gap < 0.
template <typename BoundExact>
ScanReport scan_grid(const CopulaSpec& c, int resolution, int sign, BoundExact bound) {
  if (resolution < 2) throw input_error("scan resolution must be >= 2");
  ScanReport rep;
  bool have = false;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      Rat a1(i, resolution), a2(j, resolution);
      CdfValue v = copula_cdf(c, a1, a2);
      Rat b = bound(a1, a2);
      if (v.exact) {
        Rat gap = sign * (*v.exact - b);
        bool better = !have || (rep.gap_is_exact ? gap < rep.worst_gap_exact
                                                 : to_f(gap) < rep.worst_gap);
        if (better) {
          have = true;
          rep.worst = {a1, a2};
          rep.worst_gap_exact = gap;
          rep.worst_gap = to_f(gap);
          rep.gap_is_exact = true;
        }
        if (gap < 0) rep.pass = false;
      } else {
        Float50 gap = sign * (v.approx - to_f(b));
        if (boost::multiprecision::abs(gap) < kGuard) ++rep.boundary_points;
        if (!have || gap < rep.worst_gap) {
          have = true;
          rep.worst = {a1, a2};
          rep.worst_gap = gap;
          rep.gap_is_exact = false;
        }
        if (gap <= -kGuard) rep.pass = false;
      }
    }
  }
  return rep;
}

}  // namespace

ScanReport pqd_check(const CopulaSpec& c, int resolution) {
  return scan_grid(c, resolution, +1,
                   [](const Rat& a1, const Rat& a2) { return a1 * a2; });
}

ScanReport upper_bound_scan(const CopulaSpec& c, int resolution) {
  if (!c.uniform_marginals())
    throw Error("MarginalsNotUniform",
                "the bound applies to uniform-marginal families only");
  return scan_grid(c, resolution, -1, [](const Rat& a1, const Rat& a2) {
    return (a1 * a1 + a2 * a2) / 2;
  });
}

namespace {

// Convex polygon clipped to the halfplane x+y >= 1, with mass = 2 * area
// and exact first moments. Used for upper-triangle cell barycenters.
struct ClippedCell {
  Rat mass = 0;
  Rat mx = 0;  // integral of x * density
  Rat my = 0;
};

ClippedCell clip_cell(const Rat& u0, const Rat& u1, const Rat& v0, const Rat& v1) {
  std::vector<Point> poly = {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}};
  auto f = [](const Point& p) { return p[0] + p[1] - 1; };
  std::vector<Point> kept;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& p = poly[k];
    const Point& q = poly[(k + 1) % poly.size()];
    Rat fp = f(p), fq = f(q);
    if (fp >= 0) kept.push_back(p);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      Rat t = fp / (fp - fq);
      kept.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  ClippedCell out;
  if (kept.size() < 3) return out;
  Rat twice_area = 0, cx6 = 0, cy6 = 0;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const Point& p = kept[k];
    const Point& q = kept[(k + 1) % kept.size()];
    Rat cross = p[0] * q[1] - q[0] * p[1];
    twice_area += cross;
    cx6 += (p[0] + q[0]) * cross;
    cy6 += (p[1] + q[1]) * cross;
  }
  out.mass = twice_area;  // density 2: 2 * (twice_area / 2)
  out.mx = out.mass == 0 ? Rat(0) : cx6 / 6 * 2;
  out.my = out.mass == 0 ? Rat(0) : cy6 / 6 * 2;
  return out;
}

}  // namespace

Discretization discretize(const CopulaSpec& c, int m) {
  c.validate();
  if (m < 1) throw input_error("cells per axis must be >= 1");
  Discretization d{FiniteMeasure::from_weights(2, {{{Rat(0), Rat(0)}, Rat(1)}}), 0};

  if (c.family == CopulaFamily::UpperTriangleUniform) {
    std::map<Point, Rat> w;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        ClippedCell cell = clip_cell(Rat(i, m), Rat(i + 1, m), Rat(j, m), Rat(j + 1, m));
        if (cell.mass > 0) w[{cell.mx / cell.mass, cell.my / cell.mass}] += cell.mass;
      }
    }
    d.nu = FiniteMeasure::from_weights(2, w);
    return d;
  }

  bool exact_family = true;
  std::vector<std::vector<Rat>> exact_mass(m, std::vector<Rat>(m, Rat(0)));
  std::vector<std::vector<Float50>> approx_mass(m, std::vector<Float50>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      CdfValue c11 = copula_cdf(c, Rat(i + 1, m), Rat(j + 1, m));
      CdfValue c01 = copula_cdf(c, Rat(i, m), Rat(j + 1, m));
      CdfValue c10 = copula_cdf(c, Rat(i + 1, m), Rat(j, m));
      CdfValue c00 = copula_cdf(c, Rat(i, m), Rat(j, m));
      if (c11.exact && c01.exact && c10.exact && c00.exact) {
        exact_mass[i][j] = *c11.exact - *c01.exact - *c10.exact + *c00.exact;
      } else {
        exact_family = false;
      }
      approx_mass[i][j] = c11.approx - c01.approx - c10.approx + c00.approx;
    }
  }

  std::map<Point, Rat> w;
  if (exact_family) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (exact_mass[i][j] != 0)
          w[{Rat(2 * i + 1, 2 * m), Rat(2 * j + 1, 2 * m)}] = exact_mass[i][j];
  } else {
    // Rationalize numeric masses at 10^-30 and absorb the rounding
    // remainder into the heaviest cell; the adjustment is the residual.
    Int scale = pow(Int(10), 30);
    Rat total = 0;
    Point heaviest;
    Rat heaviest_mass = -1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Float50 scaled = approx_mass[i][j] * Float50(scale);
        Int rounded = static_cast<Int>(boost::multiprecision::round(scaled));
        if (rounded < 0) rounded = 0;
        Rat mass(rounded, scale);
        if (mass == 0) continue;
        Point rep{Rat(2 * i + 1, 2 * m), Rat(2 * j + 1, 2 * m)};
        w[rep] = mass;
        total += mass;
        if (mass > heaviest_mass) {
          heaviest_mass = mass;
          heaviest = rep;
        }
      }
    }
    d.residual = 1 - total;
    w[heaviest] += d.residual;
  }
  d.nu = FiniteMeasure::from_weights(2, w);
  return d;
}

Rat SymmetricMarginal::mean() const {
  switch (kind) {
    case Kind::Uniform: return Rat(1, 2);
    case Kind::Triangular: return Rat(2, 3);
    case Kind::Discrete: {
      Rat total = 0;
      for (const auto& [x, p] : atoms) total += x * p;
      return total;
    }
  }
  return 0;
}

SymmetricCondition symmetric_condition(const SymmetricMarginal& f, int n, const Rat& a) {
  if (n < 1) throw input_error("agent count must be >= 1");
  if (a < 0 || a > 1) throw input_error("threshold a must lie in [0,1]");
  SymmetricCondition out;
  switch (f.kind) {
    case SymmetricMarginal::Kind::Uniform:
      // F(x) = x on [0,1].
      out.lhs = (1 - rat_pow(a, 2)) / 2;
      out.rhs = (1 - rat_pow(a, n)) / n;
      out.martingale = Rat(n, 2);
      break;
    case SymmetricMarginal::Kind::Triangular:
      // F(x) = x^2, dF = 2x dx.
      out.lhs = Rat(2, 3) * (1 - rat_pow(a, 3));
      out.rhs = (1 - rat_pow(a, 2 * n)) / n;
      out.martingale = Rat(2 * n, 3);
      break;
    case SymmetricMarginal::Kind::Discrete: {
      Rat total = 0;
      for (const auto& [x, p] : f.atoms) total += p;
      if (total != 1) throw input_error("discrete marginal masses must sum to 1");
      Rat lhs = 0, rhs = 0, cdf = 0, mean = 0;
      for (const auto& [x, p] : f.atoms) {
        cdf += p;
        mean += x * p;
        if (x >= a) {
          lhs += x * p;
          rhs += rat_pow(cdf, n - 1) * p;
        }
      }
      out.lhs = lhs;
      out.rhs = rhs;
      out.martingale = n * mean;
      break;
    }
  }
  return out;
}

LargeNBound large_n_bound(const SymmetricMarginal& f, int n) {
  if (n < 1) throw input_error("agent count must be >= 1");
  LargeNBound out;
  out.value = (n - 1) * f.mean();
  out.holds = out.value <= 1;
  return out;
}

TriangleCondition triangle_condition(const Rat& a) {
  if (a < 0 || a > 1) throw input_error("threshold a must lie in [0,1]");
  TriangleCondition out;
  out.lhs = Rat(4, 3) * (1 - rat_pow(a, 3));
  Rat sq = (a >= Rat(1, 2)) ? rat_pow(2 * a - 1, 2) : Rat(0);
  out.rhs_direct = 1 - sq;
  out.rhs_footnote = 1 - sq / 2;
  out.violated_direct = out.lhs > out.rhs_direct;
  out.violated_footnote = out.lhs > out.rhs_footnote;
  return out;
}

}  // namespace bsr
