#pragma once

#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "borderstar/beliefs.hpp"
#include "borderstar/border.hpp"
#include "borderstar/measures.hpp"

namespace bsrt {

using namespace bsr;

inline Rat q(const std::string& s) { return parse_rat(s); }

inline Point pt(std::initializer_list<const char*> coords) {
  Point p;
  for (auto c : coords) p.push_back(parse_rat(c));
  return p;
}

struct Entry {
  std::initializer_list<const char*> point;
  const char* weight;
};

inline FiniteMeasure measure(int agents, std::initializer_list<Entry> entries) {
  std::map<Point, Rat> w;
  for (const auto& e : entries) w[pt(e.point)] += parse_rat(e.weight);
  return FiniteMeasure::from_weights(agents, w);
}

// Uniform measure on the listed points.
inline FiniteMeasure uniform_on(int agents,
                                std::initializer_list<std::initializer_list<const char*>> pts) {
  std::map<Point, Rat> w;
  Rat share(1, static_cast<long>(pts.size()));
  for (const auto& p : pts) w[pt(p)] += share;
  return FiniteMeasure::from_weights(agents, w);
}

// --- randomized instance generators (fixed-seed mt19937 in each test) ---

// Random measure on an n-agent grid with at most k values per axis.
inline FiniteMeasure random_measure(std::mt19937& rng, int n, int max_axis) {
  std::uniform_int_distribution<int> axis_size(1, max_axis);
  std::uniform_int_distribution<int> coord(0, 8);
  std::vector<std::vector<Rat>> axes(n);
  for (int i = 0; i < n; ++i) {
    std::set<Rat> vals;
    int k = axis_size(rng);
    while (static_cast<int>(vals.size()) < k) vals.insert(Rat(coord(rng), 8));
    axes[i].assign(vals.begin(), vals.end());
  }
  std::vector<Point> pts = {{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Point> next;
    for (const auto& p : pts)
      for (const auto& v : axes[i]) {
        Point e = p;
        e.push_back(v);
        next.push_back(e);
      }
    pts = next;
  }
  std::uniform_int_distribution<int> wdist(0, 6);
  std::map<Point, Rat> w;
  Rat total = 0;
  for (const auto& p : pts) {
    int x = wdist(rng);
    if (x == 0) continue;
    w[p] = x;
    total += x;
  }
  if (total == 0) {
    w[pts.front()] = 1;
    total = 1;
  }
  for (auto& [p, v] : w) v /= total;
  return FiniteMeasure::from_weights(n, w);
}

// Random lottery game over a random prior.
inline GameInstance random_game(std::mt19937& rng, int n, int max_axis) {
  FiniteMeasure prior = random_measure(rng, n, max_axis);
  std::uniform_int_distribution<int> share(0, 4);
  std::map<Point, std::vector<Rat>> alloc;
  for (const auto& [p, w] : prior.weights()) {
    std::vector<Rat> lot(n);
    Rat total = 0;
    for (int i = 0; i < n; ++i) {
      lot[i] = share(rng);
      total += lot[i];
    }
    if (total == 0) {
      lot[0] = 1;
      total = 1;
    }
    for (auto& x : lot) x /= total;
    alloc[p] = lot;
  }
  return GameInstance(prior, alloc);
}

// Belief distribution of a random game: feasible by construction.
inline FiniteMeasure random_feasible_beliefs(std::mt19937& rng, int n, int max_axis) {
  GameInstance g = random_game(rng, n, max_axis);
  InterimRule q = interim_of_game(g);
  return g.prior.pushforward([&](const Point& t) {
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = q.at(i, t[i]);
    return x;
  });
}

// Random belief distribution on [0,1]-coordinates, usually infeasible.
inline FiniteMeasure random_beliefs(std::mt19937& rng, int n, int max_axis) {
  return random_measure(rng, n, max_axis);
}

}  // namespace bsrt
