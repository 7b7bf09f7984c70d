#include "doctest.h"
#include "helpers.hpp"

#include "borderstar/errors.hpp"

using namespace bsrt;

namespace {

InterimRule rule(const Grid& g, std::vector<std::map<Rat, Rat>> values) {
  InterimRule q;
  q.grid = g;
  q.values = std::move(values);
  return q;
}

// Independent re-evaluation of a witness, straight from the definitions.
bool witness_violated(const FiniteMeasure& prior, const InterimRule& q, const Witness& w) {
  if (w.form == WitnessForm::Martingale) {
    Rat v = martingale_value(prior, q);
    return v == w.lhs && v != 1;
  }
  Rat lhs = 0;
  for (int i = 0; i < prior.agents(); ++i) {
    auto marg = prior.marginal_weights(i);
    for (const auto& v : w.sets[i]) lhs += q.at(i, v) * marg.at(v);
  }
  if (lhs != w.lhs) return false;
  if (w.form == WitnessForm::Ceiling)
    return w.rhs == prior.set_mass_union(w.sets) && lhs > w.rhs;
  return w.rhs == prior.set_mass_box(w.sets) && lhs < w.rhs;
}

// The 2x2 uniform independent benchmark: l = 0, h = 1.
FiniteMeasure uniform22() {
  return uniform_on(2, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}});
}

InterimRule benchmark_rule(const FiniteMeasure& m) {
  return rule(m.grid(), {{{q("1"), q("1")}, {q("0"), q("1/2")}},
                         {{q("1"), q("1/2")}, {q("0"), q("0")}}});
}

}  // namespace

TEST_CASE("interim_of_game") {
  SUBCASE("single point, split lottery") {
    auto prior = measure(2, {{{"1/2", "1/2"}, "1"}});
    GameInstance g(prior, {{pt({"1/2", "1/2"}), {q("1/2"), q("1/2")}}});
    auto q_ = interim_of_game(g);
    CHECK(q_.at(0, q("1/2")) == q("1/2"));
    CHECK(q_.at(1, q("1/2")) == q("1/2"));
  }
  SUBCASE("agent 1 wins iff her type is high") {
    auto prior = uniform22();
    std::map<Point, std::vector<Rat>> alloc;
    for (const auto& [p, w] : prior.weights())
      alloc[p] = p[0] == 1 ? std::vector<Rat>{1, 0} : std::vector<Rat>{0, 1};
    auto q_ = interim_of_game(GameInstance(prior, alloc));
    CHECK(q_.at(0, q("1")) == 1);
    CHECK(q_.at(0, q("0")) == 0);
    CHECK(q_.at(1, q("1")) == q("1/2"));
    CHECK(q_.at(1, q("0")) == q("1/2"));
  }
  SUBCASE("deterministic benchmark allocation") {
    auto prior = uniform22();
    std::map<Point, std::vector<Rat>> alloc{
        {pt({"1", "1"}), {q("1"), q("0")}},
        {pt({"1", "0"}), {q("1"), q("0")}},
        {pt({"0", "0"}), {q("1"), q("0")}},
        {pt({"0", "1"}), {q("0"), q("1")}},
    };
    auto q_ = interim_of_game(GameInstance(prior, alloc));
    CHECK(q_.at(0, q("1")) == 1);
    CHECK(q_.at(0, q("0")) == q("1/2"));
    CHECK(q_.at(1, q("1")) == q("1/2"));
    CHECK(q_.at(1, q("0")) == 0);
  }
}

TEST_CASE("martingale_value") {
  auto single = measure(2, {{{"1/2", "1/2"}, "1"}});
  auto qs = rule(single.grid(), {{{q("1/2"), q("1/2")}}, {{q("1/2"), q("1/2")}}});
  CHECK(martingale_value(single, qs) == 1);

  auto prior = uniform22();
  CHECK(martingale_value(prior, benchmark_rule(prior)) == 1);

  auto bad = rule(prior.grid(), {{{q("1"), q("1")}, {q("0"), q("3/5")}},
                                 {{q("1"), q("1/2")}, {q("0"), q("0")}}});
  CHECK(martingale_value(prior, bad) == q("21/20"));
}

TEST_CASE("border_bruteforce") {
  SUBCASE("correlated diagonal prior rejects double-sure winners") {
    auto prior = uniform_on(2, {{"1", "1"}, {"0", "0"}});
    auto q_ = rule(prior.grid(), {{{q("1"), q("1")}, {q("0"), q("0")}},
                                  {{q("1"), q("1")}, {q("0"), q("0")}}});
    auto v = border_bruteforce(prior, q_);
    REQUIRE_FALSE(v.feasible);
    REQUIRE_FALSE(v.witnesses.empty());
    const auto& w = v.witnesses.front();
    CHECK(w.form == WitnessForm::Ceiling);
    CHECK(w.sets == std::vector<std::vector<Rat>>{{q("1")}, {q("1")}});
    CHECK(w.lhs == 1);
    CHECK(w.rhs == q("1/2"));
    for (const auto& wit : v.witnesses) CHECK(witness_violated(prior, q_, wit));
  }
  SUBCASE("benchmark instance is feasible with several tight profiles") {
    auto prior = uniform22();
    CHECK(border_bruteforce(prior, benchmark_rule(prior)).feasible);
  }
  SUBCASE("uniform lottery is always feasible") {
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
      auto prior = random_measure(rng, 2, 3);
      InterimRule q_;
      q_.grid = prior.grid();
      q_.values.resize(2);
      for (int i = 0; i < 2; ++i)
        for (const auto& v : prior.grid().axes[i]) q_.values[i][v] = q("1/2");
      CHECK(border_bruteforce(prior, q_).feasible);
    }
  }
  SUBCASE("cap") {
    std::mt19937 rng(5);
    auto prior = random_measure(rng, 2, 3);
    CHECK_THROWS_AS(border_bruteforce(prior, InterimRule::identity(prior.grid()), 1), Error);
  }
}

TEST_CASE("flow_feasibility") {
  SUBCASE("single point") {
    auto prior = measure(2, {{{"1/2", "1/2"}, "1"}});
    auto qs = rule(prior.grid(), {{{q("1/2"), q("1/2")}}, {{q("1/2"), q("1/2")}}});
    auto v = flow_feasibility(prior, qs);
    REQUIRE(v.feasible);
    CHECK(v.certificate->allocation.at(pt({"1/2", "1/2"})) ==
          std::vector<Rat>{q("1/2"), q("1/2")});
  }
  SUBCASE("diagonal instance caps at flow value 1/2") {
    auto prior = uniform_on(2, {{"1", "1"}, {"0", "0"}});
    auto q_ = rule(prior.grid(), {{{q("1"), q("1")}, {q("0"), q("0")}},
                                  {{q("1"), q("1")}, {q("0"), q("0")}}});
    auto v = flow_feasibility(prior, q_);
    REQUIRE_FALSE(v.feasible);
    CHECK(*v.flow_value == q("1/2"));
    REQUIRE(v.witnesses.size() == 2);
    for (const auto& w : v.witnesses) CHECK(witness_violated(prior, q_, w));
    // The floor witness is the complement {l},{l} of the ceiling {h},{h}.
    CHECK(v.witnesses[0].form == WitnessForm::Floor);
    CHECK(v.witnesses[0].sets == std::vector<std::vector<Rat>>{{q("0")}, {q("0")}});
    CHECK(v.witnesses[0].lhs == 0);
    CHECK(v.witnesses[0].rhs == q("1/2"));
  }
  SUBCASE("benchmark instance recovers the unique deterministic allocation") {
    auto prior = uniform22();
    auto v = flow_feasibility(prior, benchmark_rule(prior));
    REQUIRE(v.feasible);
    const auto& a = v.certificate->allocation;
    CHECK(a.at(pt({"1", "1"})) == std::vector<Rat>{q("1"), q("0")});
    CHECK(a.at(pt({"1", "0"})) == std::vector<Rat>{q("1"), q("0")});
    CHECK(a.at(pt({"0", "0"})) == std::vector<Rat>{q("1"), q("0")});
    CHECK(a.at(pt({"0", "1"})) == std::vector<Rat>{q("0"), q("1")});
  }
  SUBCASE("martingale precondition short-circuits") {
    auto prior = measure(2, {{{"1/2", "1/2"}, "1"}});
    auto qs = rule(prior.grid(), {{{q("1/2"), q("1/4")}}, {{q("1/2"), q("1/4")}}});
    auto v = flow_feasibility(prior, qs);
    REQUIRE_FALSE(v.feasible);
    CHECK(v.witnesses.front().form == WitnessForm::Martingale);
    CHECK(v.witnesses.front().lhs == q("1/2"));
  }
}

TEST_CASE("oracle equivalence and certificate soundness on random instances") {
  std::mt19937 rng(11);
  int feasible_count = 0;
  for (int t = 0; t < 60; ++t) {
    int n = 2 + (t % 2);
    auto prior = random_measure(rng, n, 3);
    InterimRule q_;
    q_.grid = prior.grid();
    q_.values.resize(n);
    std::uniform_int_distribution<int> val(0, 4);
    for (int i = 0; i < n; ++i)
      for (const auto& v : prior.grid().axes[i]) q_.values[i][v] = Rat(val(rng), 4);
    auto brute = border_bruteforce(prior, q_);
    auto flow = flow_feasibility(prior, q_);
    REQUIRE(brute.feasible == flow.feasible);
    if (flow.feasible) {
      ++feasible_count;
      auto back = interim_of_game(*flow.certificate);
      for (int i = 0; i < n; ++i)
        for (const auto& [v, m] : prior.marginal_weights(i))
          CHECK(back.at(i, v) == q_.at(i, v));
    } else {
      for (const auto& w : flow.witnesses) CHECK(witness_violated(prior, q_, w));
      for (const auto& w : brute.witnesses) CHECK(witness_violated(prior, q_, w));
    }
  }
  CHECK(feasible_count > 0);  // generator must exercise both branches
}

TEST_CASE("cut identity") {
  // For the diagonal instance, the min cut equals
  // 1 - mu(prod E_i) + sum_i int_{E_i} Q_i dmu_i with E_i the source side.
  auto prior = uniform_on(2, {{"1", "1"}, {"0", "0"}});
  auto q_ = rule(prior.grid(), {{{q("1"), q("1")}, {q("0"), q("0")}},
                                {{q("1"), q("1")}, {q("0"), q("0")}}});
  auto v = flow_feasibility(prior, q_);
  REQUIRE_FALSE(v.feasible);
  const auto& floor = v.witnesses[0];
  CHECK(*v.flow_value == 1 - floor.rhs + floor.lhs);
}

TEST_CASE("level_set_check") {
  auto f = measure(1, {{{"1/4"}, "1/2"}, {{"3/4"}, "1/2"}});
  auto prior = FiniteMeasure::product({f, f});
  SUBCASE("identity rule is feasible with a tight threshold") {
    auto v = level_set_check(prior, InterimRule::identity(prior.grid()));
    CHECK(v.feasible);
  }
  SUBCASE("agent 1 always wins") {
    auto q_ = rule(prior.grid(), {{{q("1/4"), q("1")}, {q("3/4"), q("1")}},
                                  {{q("1/4"), q("0")}, {q("3/4"), q("0")}}});
    CHECK(level_set_check(prior, q_).feasible);
  }
  SUBCASE("precondition errors are distinct") {
    auto corr = uniform_on(2, {{"1", "1"}, {"0", "0"}});
    try {
      level_set_check(corr, InterimRule::identity(corr.grid()));
      FAIL("expected NotIndependent");
    } catch (const Error& e) {
      CHECK(e.code() == "NotIndependent");
    }
    auto bad = rule(prior.grid(), {{{q("1/4"), q("1")}, {q("3/4"), q("0")}},
                                   {{q("1/4"), q("0")}, {q("3/4"), q("1")}}});
    try {
      level_set_check(prior, bad);
      FAIL("expected NotMonotone");
    } catch (const Error& e) {
      CHECK(e.code() == "NotMonotone");
    }
  }
  SUBCASE("agrees with brute force on random independent monotone instances") {
    std::mt19937 rng(17);
    for (int t = 0; t < 100; ++t) {
      int n = 2 + (t % 2);
      std::vector<FiniteMeasure> factors;
      for (int i = 0; i < n; ++i) factors.push_back(random_measure(rng, 1, 3));
      auto prior = FiniteMeasure::product(factors);
      InterimRule q_;
      q_.grid = prior.grid();
      q_.values.resize(n);
      std::uniform_int_distribution<int> val(0, 4);
      for (int i = 0; i < n; ++i) {
        std::vector<Rat> vals;
        for (std::size_t k = 0; k < prior.grid().axes[i].size(); ++k)
          vals.push_back(Rat(val(rng), 4));
        std::sort(vals.begin(), vals.end());
        for (std::size_t k = 0; k < vals.size(); ++k)
          q_.values[i][prior.grid().axes[i][k]] = vals[k];
      }
      CHECK(level_set_check(prior, q_).feasible ==
            border_bruteforce(prior, q_).feasible);
    }
  }
}
