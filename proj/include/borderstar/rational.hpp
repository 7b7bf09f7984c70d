#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace bsr {

// Every probability in the engine is an exact rational. Verdicts are
// equalities/inequalities that are often tight, so no floating point is
// allowed anywhere on a verdict path.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// A joint grid point, one coordinate per agent. Ordered lexicographically
// by agent index, which is the canonical output order everywhere.
using Point = std::vector<Rat>;

// Parses "p/q" or a plain integer string. Throws InputError on malformed
// input or zero denominator.
Rat parse_rat(const std::string& s);

// Canonical form: "p/q" with gcd(p,q)=1, q>0, or "p" when q==1.
std::string rat_str(const Rat& r);

std::string point_str(const Point& p);

}  // namespace bsr
