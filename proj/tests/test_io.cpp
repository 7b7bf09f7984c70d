#include "doctest.h"
#include "helpers.hpp"

#include "borderstar/errors.hpp"
#include "borderstar/io.hpp"

using namespace bsrt;
using bsr::io::json;

namespace {

json belief_doc(const char* text) { return json::parse(text); }

const char* kDiagonal = R"({
  "kind": "belief_distribution",
  "agents": 2,
  "support": [
    {"point": ["1", "1"], "weight": "1/2"},
    {"point": ["0", "0"], "weight": "1/2"}
  ]
})";

const char* kAntidiagonal = R"({
  "kind": "belief_distribution",
  "agents": 2,
  "support": [
    {"point": ["1/4", "3/4"], "weight": "1/2"},
    {"point": ["3/4", "1/4"], "weight": "1/2"}
  ]
})";

}  // namespace

TEST_CASE("scalar encoding") {
  CHECK(bsr::io::rat_to_json(q("2/4")) == "1/2");
  CHECK(bsr::io::rat_from_json(json("3/6")) == q("1/2"));
  CHECK(bsr::io::rat_from_json(json(5)) == 5);
  CHECK_THROWS_AS(bsr::io::rat_from_json(json(1.5)), Error);
  CHECK_THROWS_AS(bsr::io::rat_from_json(json("x")), Error);
  CHECK(bsr::io::point_from_json(json::parse(R"(["1/2","1"])")) == pt({"1/2", "1"}));
}

TEST_CASE("measure documents round trip") {
  auto m = bsr::io::measure_from_json(belief_doc(kAntidiagonal), "belief_distribution");
  CHECK(m.mass(pt({"1/4", "3/4"})) == q("1/2"));
  auto doc = bsr::io::measure_to_json(m, "belief_distribution");
  auto back = bsr::io::measure_from_json(doc, "belief_distribution");
  CHECK(back.weights() == m.weights());

  CHECK_THROWS_AS(bsr::io::measure_from_json(belief_doc(kAntidiagonal), "game"), Error);
  CHECK_THROWS_AS(
      bsr::io::measure_from_json(json::parse(R"({"kind":"belief_distribution"})"),
                                 "belief_distribution"),
      Error);
  // Mass must sum to 1.
  CHECK_THROWS_AS(bsr::io::measure_from_json(json::parse(R"({
    "kind": "belief_distribution", "agents": 1,
    "support": [{"point": ["1/2"], "weight": "1/2"}]})"),
                                             "belief_distribution"),
                  Error);
}

TEST_CASE("game and interim-problem documents round trip") {
  std::mt19937 rng(53);
  for (int t = 0; t < 10; ++t) {
    auto g = random_game(rng, 2 + (t % 2), 3);
    auto doc = bsr::io::game_to_json(g);
    auto back = bsr::io::game_from_json(doc);
    CHECK(back.prior.weights() == g.prior.weights());
    CHECK(back.allocation == g.allocation);

    auto q_ = interim_of_game(g);
    auto pdoc = bsr::io::interim_problem_to_json(g.prior, q_);
    auto [prior2, q2] = bsr::io::interim_problem_from_json(pdoc);
    CHECK(prior2.weights() == g.prior.weights());
    CHECK(q2.values == q_.values);
  }
}

TEST_CASE("info-structure documents round trip") {
  auto nu = bsr::io::measure_from_json(belief_doc(kAntidiagonal), "belief_distribution");
  auto info = construct_infostructure(nu, StateSpace{{"w1", "w2"}, {{0}, {1}}});
  auto doc = bsr::io::info_to_json(info);
  auto back = bsr::io::info_from_json(doc);
  CHECK(back.joint == info.joint);
  CHECK(back.prior() == info.prior());
}

TEST_CASE("dispatch check-beliefs") {
  json req;
  req["input"] = belief_doc(kDiagonal);
  auto res = bsr::io::dispatch("check-beliefs", req);
  CHECK(res.exit_code == 1);
  CHECK(res.output["status"] == "Infeasible");
  bool found = false;
  for (const auto& w : res.output["witnesses"]) {
    if (w["form"] == "ceiling") {
      found = true;
      CHECK(w["profile"] == json::parse(R"([["1"],["1"]])"));
      CHECK(w["lhs"] == "1");
      CHECK(w["rhs"] == "1/2");
    }
  }
  CHECK(found);

  req["input"] = belief_doc(kAntidiagonal);
  res = bsr::io::dispatch("check-beliefs", req);
  CHECK(res.exit_code == 0);
  CHECK(res.output["status"] == "Feasible");
  CHECK(res.output["martingale"] == "1");
  CHECK(res.output["implied_prior"] == json::parse(R"(["1/2","1/2"])"));
}

TEST_CASE("dispatch check-beliefs general model") {
  json req;
  req["input"] = belief_doc(kAntidiagonal);
  req["options"]["general_model"] = true;
  req["options"]["states"] = {"w1", "w2"};
  req["options"]["events"] = {{0}, {1}};
  auto res = bsr::io::dispatch("check-beliefs", req);
  CHECK(res.exit_code == 0);

  req["options"]["events"] = {{0, 1}, {1}};
  res = bsr::io::dispatch("check-beliefs", req);
  CHECK(res.exit_code == 2);
  CHECK(res.output["code"] == "BadEventStructure");
}

TEST_CASE("dispatch construct-info emits the expected table") {
  json req;
  req["input"] = belief_doc(kAntidiagonal);
  req["options"]["states"] = {"w1", "w2"};
  req["options"]["events"] = {{0}, {1}};
  auto res = bsr::io::dispatch("construct-info", req);
  REQUIRE(res.exit_code == 0);
  const auto& joint = res.output["info_structure"]["joint"];
  std::multiset<std::string> weights;
  for (const auto& e : joint) weights.insert(e["weight"].get<std::string>());
  CHECK(weights == std::multiset<std::string>{"1/8", "1/8", "3/8", "3/8"});
  CHECK(res.output["info_structure"]["prior"] == json::parse(R"(["1/2","1/2"])"));
}

TEST_CASE("dispatch construct-game and check-reduced-form") {
  json req;
  req["input"] = belief_doc(kAntidiagonal);
  auto res = bsr::io::dispatch("construct-game", req);
  REQUIRE(res.exit_code == 0);
  auto g = bsr::io::game_from_json(res.output["game"]);
  auto q_ = interim_of_game(g);
  for (int i = 0; i < 2; ++i)
    for (const auto& [v, m] : g.prior.marginal_weights(i)) CHECK(q_.at(i, v) == v);

  json rf;
  rf["input"] = bsr::io::interim_problem_to_json(g.prior, q_);
  auto res2 = bsr::io::dispatch("check-reduced-form", rf);
  CHECK(res2.exit_code == 0);

  req["input"] = belief_doc(kDiagonal);
  res = bsr::io::dispatch("construct-game", req);
  CHECK(res.exit_code == 1);
  CHECK(res.output["status"] == "Infeasible");
}

TEST_CASE("dispatch agreement") {
  auto prior = uniform_on(2, {{"1", "1"}, {"0", "0"}});
  GameInstance g(prior, {{pt({"1", "1"}), {q("1"), q("0")}},
                         {pt({"0", "0"}), {q("0"), q("1")}}});
  json req;
  req["input"] = bsr::io::game_to_json(g);
  auto res = bsr::io::dispatch("agreement", req);
  CHECK(res.exit_code == 0);
  CHECK(res.output["pass"] == true);
  CHECK(res.output["cells"].size() == 2);
}

TEST_CASE("dispatch auction-check") {
  json req;
  req["input"] = json::parse(R"({
    "kind": "belief_distribution", "agents": 2,
    "support": [
      {"point": ["1/4", "1/4"], "weight": "1/4"},
      {"point": ["1/4", "3/4"], "weight": "1/4"},
      {"point": ["3/4", "1/4"], "weight": "1/4"},
      {"point": ["3/4", "3/4"], "weight": "1/4"}
    ]})");
  auto res = bsr::io::dispatch("auction-check", req);
  CHECK(res.exit_code == 0);
  CHECK(res.output["bic"] == true);
  CHECK(res.output["dic"] == true);

  req["input"] = belief_doc(kAntidiagonal);
  res = bsr::io::dispatch("auction-check", req);
  CHECK(res.exit_code == 2);
  CHECK(res.output["code"] == "NotIndependentPosterior");

  // Fixed-prior mode.
  json fp;
  fp["input"] = json::parse(R"({
    "kind": "belief_distribution", "agents": 2,
    "support": [{"point": ["1/2", "1/2"], "weight": "1"}]})");
  fp["options"]["mode"] = "fixed-prior";
  fp["options"]["prior"] = json::parse(R"({
    "kind": "belief_distribution", "agents": 2,
    "support": [
      {"point": ["0", "0"], "weight": "1/4"},
      {"point": ["0", "1"], "weight": "1/4"},
      {"point": ["1", "0"], "weight": "1/4"},
      {"point": ["1", "1"], "weight": "1/4"}
    ]})");
  res = bsr::io::dispatch("auction-check", fp);
  CHECK(res.exit_code == 0);
  CHECK(res.output["quantile_maps"].size() == 2);
}

TEST_CASE("dispatch copula-scan") {
  json req;
  req["options"]["family"] = "fgm";
  req["options"]["theta"] = "1/2";
  auto res = bsr::io::dispatch("copula-scan", req);
  CHECK(res.exit_code == 1);
  CHECK(res.output["upper_bound"]["pass"] == false);
  auto worst = res.output["upper_bound"]["worst_point"];
  CHECK(worst[0] == worst[1]);  // worst point on the diagonal

  req["options"]["theta"] = "-1/2";
  res = bsr::io::dispatch("copula-scan", req);
  CHECK(res.exit_code == 0);

  req["options"] = {{"family", "upper-triangle"}, {"discretize", 2},
                    {"full_check", true}};
  res = bsr::io::dispatch("copula-scan", req);
  CHECK(res.exit_code == 1);
  CHECK(res.output["feasibility"]["status"] == "Infeasible");

  req["options"] = {{"family", "clayton"}, {"theta", "3"}};
  res = bsr::io::dispatch("copula-scan", req);
  CHECK(res.output.contains("note"));

  req["options"] = {{"family", "fgm"}, {"theta", "2"}};
  res = bsr::io::dispatch("copula-scan", req);
  CHECK(res.exit_code == 2);
  CHECK(res.output["code"] == "ParameterOutOfRange");
}

TEST_CASE("dispatch core-slack") {
  json req;
  req["input"] = belief_doc(kDiagonal);
  req["options"]["profile"] = {{"0"}, {"0"}};
  auto res = bsr::io::dispatch("core-slack", req);
  CHECK(res.exit_code == 1);
  CHECK(res.output["slack"] == "-1/2");

  req["options"]["profile"] = {{"1"}, {"1"}};
  res = bsr::io::dispatch("core-slack", req);
  CHECK(res.exit_code == 0);
  CHECK(res.output["slack"] == "1/2");
}

TEST_CASE("dispatch example1") {
  json req;
  req["options"]["auction"] = "c";
  req["options"]["point"] = {"1/2", "1/2"};
  auto res = bsr::io::dispatch("example1", req);
  CHECK(res.exit_code == 0);
  CHECK(res.output["evaluation"]["interim"] == json::parse(R"(["3/4","1/4"])"));
  CHECK(res.output["non_convexity"]["mass_c"] == "1");
  CHECK(res.output["non_convexity"]["mass_mixture"] == "5/8");
}

TEST_CASE("dispatch errors") {
  auto res = bsr::io::dispatch("no-such-command", json::object());
  CHECK(res.exit_code == 2);
  res = bsr::io::dispatch("check-beliefs", json::object());
  CHECK(res.exit_code == 2);
  res = bsr::io::dispatch(
      "check-beliefs",
      json{{"input", json{{"kind", "belief_distribution"}, {"agents", 1},
                          {"support", json::array({json{{"point", {"7/2"}},
                                                        {"weight", "1"}}})}}}});
  CHECK(res.exit_code == 2);  // belief coordinate outside [0,1]
}

TEST_CASE("renderings are deterministic") {
  json req;
  req["input"] = belief_doc(kDiagonal);
  auto a = bsr::io::dispatch("check-beliefs", req);
  auto b = bsr::io::dispatch("check-beliefs", req);
  CHECK(bsr::io::render_json(a.output) == bsr::io::render_json(b.output));
  CHECK(bsr::io::render_table(a.output) == bsr::io::render_table(b.output));
  CHECK_FALSE(bsr::io::render_table(a.output).empty());
}
