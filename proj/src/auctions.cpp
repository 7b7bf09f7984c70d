#include "borderstar/auctions.hpp"

#include "borderstar/beliefs.hpp"
#include "borderstar/errors.hpp"

namespace bsr {

std::vector<bool> monotone_check(const InterimRule& q) {
  std::vector<bool> out;
  for (int i = 0; i < static_cast<int>(q.values.size()); ++i)
    out.push_back(q.monotone(i));
  return out;
}

FeasibilityVerdict bic_feasibility(const FiniteMeasure& nu) {
  auto b = as_belief_distribution(nu);
  if (!b.is_independent())
    throw Error("NotIndependentPosterior",
                "BIC feasibility requires an independent belief distribution");
  // With an independent prior and the identity rule (which is monotone),
  // threshold profiles are exactly the upper-contour testing sets.
  return level_set_check(b, InterimRule::identity(b.grid()));
}

QuantileMap quantile_pushforward(const FiniteMeasure& mu_i, const FiniteMeasure& nu_i) {
  if (mu_i.agents() != 1 || nu_i.agents() != 1)
    throw input_error("quantile_pushforward expects single-axis measures");
  QuantileMap map;
  auto src = mu_i.weights();   // sorted by atom value
  auto dst = nu_i.weights();
  auto sit = src.begin();
  for (auto dit = dst.begin(); dit != dst.end(); ++dit) {
    Rat need = dit->second;
    while (need > 0) {
      if (sit == src.end() || sit->second > need)
        throw Error("AtomSplitRequired",
                    "prior atom would need to split across posterior atoms");
      map[sit->first[0]] = dit->first[0];
      need -= sit->second;
      ++sit;
    }
  }
  return map;
}

namespace {

Rat half() { return Rat(1, 2); }

}  // namespace

Example1Result example1_eval(char auction, const Point& t) {
  if (t.size() != 2) throw input_error("example1 expects a two-bidder point");
  for (const auto& v : t)
    if (v < 0 || v > 1) throw input_error("example1 point outside [0,1]^2");
  Example1Result r;
  r.auction = auction;
  r.point = t;
  switch (auction) {
    case 'a':
      r.interim = {Rat(1), Rat(0)};
      r.support_box = {{Rat(1), Rat(1)}, {Rat(0), Rat(0)}};
      break;
    case 'b':
      r.interim = {t[0], t[1]};
      r.support_box = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
      break;
    case 'c':
      r.interim = {half() + t[0] / 2, t[1] / 2};
      r.support_box = {{half(), Rat(1)}, {Rat(0), half()}};
      break;
    default:
      throw input_error("unknown auction, expected a, b or c");
  }
  return r;
}

Example1NonConvexity example1_nonconvexity() {
  Example1NonConvexity w;
  w.box = {{half(), Rat(1)}, {Rat(0), half()}};
  // Auction c's beliefs live exactly on the box.
  w.mass_c = 1;
  // delta_(1,0) puts mass 1 in the box; the efficient auction's beliefs put
  // (1/2)*(1/2) there; equal mixture.
  Rat mass_a = 1;
  Rat mass_b = half() * half();
  w.mass_mixture = half() * mass_a + half() * mass_b;
  return w;
}

}  // namespace bsr
