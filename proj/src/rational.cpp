#include "borderstar/rational.hpp"

#include <cctype>

#include "borderstar/errors.hpp"

namespace bsr {

namespace {

bool valid_int(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw input_error("malformed rational: '" + s + "'");
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw input_error("malformed rational: '" + s + "'");
  Int d(den);
  if (d == 0) throw input_error("zero denominator: '" + s + "'");
  return Rat(Int(num), d);
}

std::string rat_str(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string point_str(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += rat_str(p[i]);
  }
  out += ")";
  return out;
}

}  // namespace bsr
