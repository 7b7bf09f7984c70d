#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "borderstar/agreement.hpp"
#include "borderstar/auctions.hpp"
#include "borderstar/beliefs.hpp"
#include "borderstar/gallery.hpp"
#include "borderstar/infostruct.hpp"

namespace bsr::io {

using json = nlohmann::json;

// --- canonical scalar encoding ---
json rat_to_json(const Rat& r);             // canonical "p/q" / integer string
Rat rat_from_json(const json& j);           // accepts strings and integers
json point_to_json(const Point& p);
Point point_from_json(const json& j);
std::string float_str(const Float50& x);    // fixed 15 significant digits

// --- documents ---
// kind "belief_distribution" (also used for priors over type profiles):
//   {"kind": .., "agents": n, "support": [{"point": [..], "weight": ".."}]}
FiniteMeasure measure_from_json(const json& doc, const std::string& expected_kind);
json measure_to_json(const FiniteMeasure& m, const std::string& kind);

// kind "game": support entries additionally carry "allocation": [..].
GameInstance game_from_json(const json& doc);
json game_to_json(const GameInstance& g);

// kind "interim_problem": "support" holds the prior, "rule" the per-agent
// list of {"type": .., "value": ..} pairs.
std::pair<FiniteMeasure, InterimRule> interim_problem_from_json(const json& doc);
json interim_problem_to_json(const FiniteMeasure& prior, const InterimRule& q);

// kind "info_structure": "states", "events", "joint" entries
// {"state": index, "signal": [..], "weight": ".."}.
InfoStructure info_from_json(const json& doc);
json info_to_json(const InfoStructure& info);

// --- verdict objects ---
json witness_to_json(const Witness& w);
json verdict_to_json(const FeasibilityVerdict& v);

// --- command dispatch ---
// Request: {"input": document?, "options": {..}}. Known commands:
// check-beliefs, check-reduced-form, construct-game, construct-info,
// agreement, auction-check, copula-scan, core-slack, example1.
// Exit code 0 = feasible/pass, 1 = infeasible/fail, 2 = input error.
struct RunResult {
  int exit_code = 2;
  json output;
};

RunResult dispatch(const std::string& command, const json& request);

// Deterministic renderings of a dispatch output.
std::string render_json(const json& output);
std::string render_table(const json& output);

}  // namespace bsr::io
