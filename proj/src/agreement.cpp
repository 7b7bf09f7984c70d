#include "borderstar/agreement.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "borderstar/errors.hpp"

namespace bsr {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<MeetCell> partition_meet(const std::vector<Point>& support, int agents) {
  std::vector<Point> pts = support;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != agents)
      throw input_error("support point arity mismatch: " + point_str(p));

  UnionFind uf(static_cast<int>(pts.size()));
  for (int i = 0; i < agents; ++i) {
    std::map<Rat, int> first_with_value;
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
      auto [it, inserted] = first_with_value.try_emplace(pts[k][i], k);
      if (!inserted) uf.unite(k, it->second);
    }
  }

  std::map<int, std::vector<Point>> comps;
  for (int k = 0; k < static_cast<int>(pts.size()); ++k)
    comps[uf.find(k)].push_back(pts[k]);
  std::vector<MeetCell> cells;
  for (auto& [root, members] : comps) cells.push_back({std::move(members)});
  std::sort(cells.begin(), cells.end(),
            [](const MeetCell& a, const MeetCell& b) { return a.points < b.points; });
  return cells;
}

AgreementReport agreement_check(const GameInstance& g) {
  int n = g.prior.agents();
  InterimRule q = interim_of_game(g);

  std::vector<Point> support;
  for (const auto& [p, w] : g.prior.weights()) support.push_back(p);

  AgreementReport report;
  for (auto& cell : partition_meet(support, n)) {
    CellReport cr;
    cr.cell = cell;
    cr.constants.resize(n);
    cr.all_constant = true;
    for (int i = 0; i < n; ++i) {
      std::optional<Rat> r;
      bool constant = true;
      for (const auto& p : cell.points) {
        Rat v = q.at(i, p[i]);
        if (!r) {
          r = v;
        } else if (*r != v) {
          constant = false;
          break;
        }
      }
      if (constant) cr.constants[i] = r;
      else cr.all_constant = false;
    }
    if (cr.all_constant) {
      Rat sum = 0;
      for (int i = 0; i < n; ++i) sum += *cr.constants[i];
      cr.sum = sum;
      cr.checked = true;
      cr.pass = (sum == 1);
      if (!cr.pass) report.pass = false;
    }
    report.cells.push_back(std::move(cr));
  }
  return report;
}

}  // namespace bsr
