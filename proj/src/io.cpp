#include "borderstar/io.hpp"

#include <iomanip>
#include <sstream>

#include "borderstar/errors.hpp"

namespace bsr::io {

namespace {

const json* find(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const char* where) {
  const json* f = find(j, key);
  if (!f) throw input_error(std::string(where) + ": missing field \"" + key + "\"");
  return *f;
}

int int_field(const json& j, const char* key, const char* where) {
  const json& f = require(j, key, where);
  if (!f.is_number_integer()) throw input_error(std::string(where) + ": \"" + key + "\" must be an integer");
  return f.get<int>();
}

void require_kind(const json& doc, const std::string& kind) {
  const json& k = require(doc, "kind", "document");
  if (!k.is_string() || k.get<std::string>() != kind)
    throw input_error("document: expected kind \"" + kind + "\"");
}

}  // namespace

json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw input_error("rational values must be \"p/q\" strings or integers");
}

json point_to_json(const Point& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(rat_to_json(c));
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw input_error("point must be an array of rationals");
  Point p;
  for (const auto& c : j) p.push_back(rat_from_json(c));
  return p;
}

std::string float_str(const Float50& x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

FiniteMeasure measure_from_json(const json& doc, const std::string& expected_kind) {
  require_kind(doc, expected_kind);
  int n = int_field(doc, "agents", "document");
  if (n < 1) throw input_error("document: \"agents\" must be >= 1");
  const json& support = require(doc, "support", "document");
  if (!support.is_array() || support.empty())
    throw input_error("document: \"support\" must be a non-empty array");
  std::map<Point, Rat> w;
  for (const auto& entry : support) {
    Point p = point_from_json(require(entry, "point", "support entry"));
    if (static_cast<int>(p.size()) != n)
      throw input_error("support entry: point arity does not match \"agents\"");
    w[p] += rat_from_json(require(entry, "weight", "support entry"));
  }
  return FiniteMeasure::from_weights(n, w);
}

json measure_to_json(const FiniteMeasure& m, const std::string& kind) {
  json doc;
  doc["kind"] = kind;
  doc["agents"] = m.agents();
  json support = json::array();
  for (const auto& [p, w] : m.weights()) {
    json e;
    e["point"] = point_to_json(p);
    e["weight"] = rat_to_json(w);
    support.push_back(e);
  }
  doc["support"] = support;
  return doc;
}

GameInstance game_from_json(const json& doc) {
  require_kind(doc, "game");
  int n = int_field(doc, "agents", "document");
  if (n < 1) throw input_error("document: \"agents\" must be >= 1");
  const json& support = require(doc, "support", "document");
  if (!support.is_array() || support.empty())
    throw input_error("document: \"support\" must be a non-empty array");
  std::map<Point, Rat> w;
  std::map<Point, std::vector<Rat>> alloc;
  for (const auto& entry : support) {
    Point p = point_from_json(require(entry, "point", "support entry"));
    if (static_cast<int>(p.size()) != n)
      throw input_error("support entry: point arity does not match \"agents\"");
    w[p] += rat_from_json(require(entry, "weight", "support entry"));
    Point a = point_from_json(require(entry, "allocation", "support entry"));
    if (static_cast<int>(a.size()) != n)
      throw input_error("support entry: allocation arity does not match \"agents\"");
    alloc[p] = a;
  }
  return GameInstance(FiniteMeasure::from_weights(n, w), alloc);
}

json game_to_json(const GameInstance& g) {
  json doc;
  doc["kind"] = "game";
  doc["agents"] = g.prior.agents();
  json support = json::array();
  for (const auto& [p, w] : g.prior.weights()) {
    json e;
    e["point"] = point_to_json(p);
    e["weight"] = rat_to_json(w);
    e["allocation"] = point_to_json(g.allocation.at(p));
    support.push_back(e);
  }
  doc["support"] = support;
  return doc;
}

std::pair<FiniteMeasure, InterimRule> interim_problem_from_json(const json& doc) {
  require_kind(doc, "interim_problem");
  json prior_doc = doc;
  prior_doc["kind"] = "belief_distribution";
  // Reuse the measure schema for the prior part.
  int n = int_field(doc, "agents", "document");
  const json& support = require(doc, "support", "document");
  if (!support.is_array() || support.empty())
    throw input_error("document: \"support\" must be a non-empty array");
  std::map<Point, Rat> w;
  for (const auto& entry : support) {
    Point p = point_from_json(require(entry, "point", "support entry"));
    if (static_cast<int>(p.size()) != n)
      throw input_error("support entry: point arity does not match \"agents\"");
    w[p] += rat_from_json(require(entry, "weight", "support entry"));
  }
  FiniteMeasure prior = FiniteMeasure::from_weights(n, w);

  const json& rule = require(doc, "rule", "document");
  if (!rule.is_array() || static_cast<int>(rule.size()) != n)
    throw input_error("document: \"rule\" must list one entry per agent");
  InterimRule q;
  q.grid = prior.grid();
  q.values.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!rule[i].is_array()) throw input_error("rule entry: must be an array");
    for (const auto& pair : rule[i]) {
      Rat type = rat_from_json(require(pair, "type", "rule entry"));
      Rat value = rat_from_json(require(pair, "value", "rule entry"));
      if (!q.grid.on_axis(i, type))
        throw input_error("rule entry: type " + rat_str(type) + " is not on agent " +
                          std::to_string(i + 1) + "'s axis");
      q.values[i][type] = value;
    }
    for (const auto& v : q.grid.axes[i])
      if (!q.values[i].count(v))
        throw input_error("rule entry: missing value for type " + rat_str(v) +
                          " of agent " + std::to_string(i + 1));
  }
  return {std::move(prior), std::move(q)};
}

json interim_problem_to_json(const FiniteMeasure& prior, const InterimRule& q) {
  json doc = measure_to_json(prior, "interim_problem");
  json rule = json::array();
  for (int i = 0; i < prior.agents(); ++i) {
    json axis = json::array();
    for (const auto& v : q.grid.axes[i]) {
      json pair;
      pair["type"] = rat_to_json(v);
      pair["value"] = rat_to_json(q.at(i, v));
      axis.push_back(pair);
    }
    rule.push_back(axis);
  }
  doc["rule"] = rule;
  return doc;
}

InfoStructure info_from_json(const json& doc) {
  require_kind(doc, "info_structure");
  StateSpace sp;
  for (const auto& s : require(doc, "states", "document")) {
    if (!s.is_string()) throw input_error("document: state names must be strings");
    sp.states.push_back(s.get<std::string>());
  }
  for (const auto& ev : require(doc, "events", "document")) {
    std::vector<int> idx;
    for (const auto& k : ev) {
      if (!k.is_number_integer()) throw input_error("document: event members are state indices");
      idx.push_back(k.get<int>());
    }
    sp.events.push_back(idx);
  }
  std::map<std::pair<int, Point>, Rat> joint;
  std::vector<Point> signals;
  int n = sp.agents();
  for (const auto& entry : require(doc, "joint", "document")) {
    int state = int_field(entry, "state", "joint entry");
    if (state < 0 || state >= sp.num_states())
      throw input_error("joint entry: state index out of range");
    Point s = point_from_json(require(entry, "signal", "joint entry"));
    if (static_cast<int>(s.size()) != n)
      throw input_error("joint entry: signal arity does not match the event count");
    joint[{state, s}] += rat_from_json(require(entry, "weight", "joint entry"));
    signals.push_back(s);
  }
  return InfoStructure(sp, Grid::from_support(signals, n), joint);
}

json info_to_json(const InfoStructure& info) {
  json doc;
  doc["kind"] = "info_structure";
  doc["states"] = info.states.states;
  doc["events"] = info.states.events;
  json joint = json::array();
  for (const auto& [key, w] : info.joint) {
    json e;
    e["state"] = key.first;
    e["signal"] = point_to_json(key.second);
    e["weight"] = rat_to_json(w);
    joint.push_back(e);
  }
  doc["joint"] = joint;
  json prior = json::array();
  for (const auto& p : info.prior()) prior.push_back(rat_to_json(p));
  doc["prior"] = prior;
  return doc;
}

namespace {

std::string form_name(WitnessForm f) {
  switch (f) {
    case WitnessForm::Ceiling: return "ceiling";
    case WitnessForm::Floor: return "floor";
    case WitnessForm::Martingale: return "martingale";
  }
  return "?";
}

}  // namespace

json witness_to_json(const Witness& w) {
  json out;
  out["form"] = form_name(w.form);
  json profile = json::array();
  for (const auto& s : w.sets) {
    json axis = json::array();
    for (const auto& v : s) axis.push_back(rat_to_json(v));
    profile.push_back(axis);
  }
  out["profile"] = profile;
  out["lhs"] = rat_to_json(w.lhs);
  out["rhs"] = rat_to_json(w.rhs);
  out["slack"] = rat_to_json(w.slack);
  return out;
}

json verdict_to_json(const FeasibilityVerdict& v) {
  json out;
  out["status"] = v.feasible ? "Feasible" : "Infeasible";
  json witnesses = json::array();
  for (const auto& w : v.witnesses) witnesses.push_back(witness_to_json(w));
  out["witnesses"] = witnesses;
  if (v.flow_value) out["flow_value"] = rat_to_json(*v.flow_value);
  if (v.certificate) out["certificate"] = game_to_json(*v.certificate);
  return out;
}

// --- dispatch helpers ---

namespace {

struct Options {
  json raw;

  const json* get(const char* key) const { return find(raw, key); }

  std::string str(const char* key, const std::string& fallback) const {
    const json* f = get(key);
    if (!f) return fallback;
    if (!f->is_string()) throw input_error(std::string("option \"") + key + "\" must be a string");
    return f->get<std::string>();
  }
  int num(const char* key, int fallback) const {
    const json* f = get(key);
    if (!f) return fallback;
    if (!f->is_number_integer()) throw input_error(std::string("option \"") + key + "\" must be an integer");
    return f->get<int>();
  }
  bool flag(const char* key) const {
    const json* f = get(key);
    if (!f) return false;
    if (!f->is_boolean()) throw input_error(std::string("option \"") + key + "\" must be a boolean");
    return f->get<bool>();
  }
};

const json& input_doc(const json& request) {
  const json* in = find(request, "input");
  if (!in) throw input_error("request: missing \"input\" document");
  return *in;
}

StateSpace state_space_from_options(const Options& opt) {
  const json* states = opt.get("states");
  const json* events = opt.get("events");
  if (!states || !events)
    throw input_error("the general model needs both \"states\" and \"events\"");
  StateSpace sp;
  for (const auto& s : *states) {
    if (!s.is_string()) throw input_error("state names must be strings");
    sp.states.push_back(s.get<std::string>());
  }
  for (const auto& ev : *events) {
    std::vector<int> idx;
    for (const auto& k : ev) {
      if (!k.is_number_integer()) throw input_error("event members are state indices");
      idx.push_back(k.get<int>());
    }
    sp.events.push_back(idx);
  }
  return sp;
}

RunResult cmd_check_beliefs(const json& request, const Options& opt) {
  auto nu = as_belief_distribution(
      measure_from_json(input_doc(request), "belief_distribution"));
  RunResult res;
  if (opt.flag("general_model")) {
    StateSpace sp = state_space_from_options(opt);
    sp.require_partition();
    if (sp.agents() != nu.agents())
      throw input_error("event count does not match the number of agents");
    res.output["states"] = sp.states;
    res.output["events"] = sp.events;
  }
  auto v = borderstar_feasibility(nu);
  res.output.update(verdict_to_json(v));
  res.output["martingale"] = rat_to_json(martingale_check(nu));
  json ip = json::array();
  for (const auto& p : implied_prior(nu)) ip.push_back(rat_to_json(p));
  res.output["implied_prior"] = ip;
  res.exit_code = v.feasible ? 0 : 1;
  return res;
}

RunResult cmd_check_reduced_form(const json& request, const Options&) {
  auto [prior, q] = interim_problem_from_json(input_doc(request));
  auto v = flow_feasibility(prior, q);
  RunResult res;
  res.output = verdict_to_json(v);
  res.exit_code = v.feasible ? 0 : 1;
  return res;
}

RunResult cmd_construct_game(const json& request, const Options&) {
  auto nu = as_belief_distribution(
      measure_from_json(input_doc(request), "belief_distribution"));
  auto v = borderstar_feasibility(nu);
  RunResult res;
  if (!v.feasible) {
    res.output = verdict_to_json(v);
    res.exit_code = 1;
    return res;
  }
  res.output["status"] = "Feasible";
  res.output["game"] = game_to_json(*v.certificate);
  res.exit_code = 0;
  return res;
}

RunResult cmd_construct_info(const json& request, const Options& opt) {
  auto nu = as_belief_distribution(
      measure_from_json(input_doc(request), "belief_distribution"));
  StateSpace sp = state_space_from_options(opt);
  sp.require_partition();
  if (sp.agents() != nu.agents())
    throw input_error("event count does not match the number of agents");
  auto v = borderstar_feasibility(nu);
  RunResult res;
  if (!v.feasible) {
    res.output = verdict_to_json(v);
    res.exit_code = 1;
    return res;
  }
  auto info = construct_infostructure(nu, sp);
  res.output["status"] = "Feasible";
  res.output["info_structure"] = info_to_json(info);
  res.exit_code = 0;
  return res;
}

RunResult cmd_agreement(const json& request, const Options&) {
  auto g = game_from_json(input_doc(request));
  auto rep = agreement_check(g);
  RunResult res;
  res.output["pass"] = rep.pass;
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json cj;
    json pts = json::array();
    for (const auto& p : c.cell.points) pts.push_back(point_to_json(p));
    cj["points"] = pts;
    cj["all_constant"] = c.all_constant;
    cj["checked"] = c.checked;
    json vals = json::array();
    for (const auto& v : c.constants) vals.push_back(v ? json(rat_to_json(*v)) : json());
    cj["values"] = vals;
    if (c.sum) cj["sum"] = rat_to_json(*c.sum);
    cj["pass"] = c.pass;
    cells.push_back(cj);
  }
  res.output["cells"] = cells;
  res.exit_code = rep.pass ? 0 : 1;
  return res;
}

RunResult cmd_auction_check(const json& request, const Options& opt) {
  std::string mode = opt.str("mode", "bic");
  RunResult res;
  if (mode == "bic") {
    auto nu = as_belief_distribution(
        measure_from_json(input_doc(request), "belief_distribution"));
    auto v = bic_feasibility(nu);
    res.output = verdict_to_json(v);
    res.output["bic"] = v.feasible;
    res.output["dic"] = v.feasible;  // the two notions coincide for feasibility
    res.exit_code = v.feasible ? 0 : 1;
    return res;
  }
  if (mode == "fixed-prior") {
    const json* prior_doc = opt.get("prior");
    if (!prior_doc) throw input_error("fixed-prior mode needs the \"prior\" option");
    auto nu = as_belief_distribution(
        measure_from_json(input_doc(request), "belief_distribution"));
    auto mu = measure_from_json(*prior_doc, "belief_distribution");
    auto r = fixed_prior_feasibility(mu, nu);
    res.output = verdict_to_json(r.verdict);
    if (!r.reason.empty()) res.output["reason"] = r.reason;
    if (!r.maps.empty()) {
      json maps = json::array();
      for (const auto& m : r.maps) {
        json mj = json::array();
        for (const auto& [from, to] : m) {
          json pair;
          pair["from"] = rat_to_json(from);
          pair["to"] = rat_to_json(to);
          mj.push_back(pair);
        }
        maps.push_back(mj);
      }
      res.output["quantile_maps"] = maps;
    }
    res.exit_code = r.verdict.feasible ? 0 : 1;
    return res;
  }
  throw input_error("unknown auction-check mode \"" + mode + "\"");
}

json scan_to_json(const ScanReport& r) {
  json out;
  out["pass"] = r.pass;
  out["worst_point"] = point_to_json(r.worst);
  if (r.gap_is_exact) out["worst_gap"] = rat_to_json(r.worst_gap_exact);
  else out["worst_gap"] = float_str(r.worst_gap);
  out["gap_is_exact"] = r.gap_is_exact;
  out["boundary_points"] = r.boundary_points;
  return out;
}

RunResult cmd_copula_scan(const json&, const Options& opt) {
  CopulaSpec c;
  c.family = parse_family(opt.str("family", ""));
  c.theta = parse_rat(opt.str("theta", "0"));
  c.validate();
  int grid = opt.num("grid", 20);
  if (grid < 2) throw input_error("option \"grid\" must be >= 2");

  RunResult res;
  res.output["family"] = family_name(c.family);
  if (c.uses_theta()) res.output["theta"] = rat_to_json(c.theta);
  if (c.family == CopulaFamily::Clayton)
    res.output["note"] = CopulaSpec::clayton_exponent_note();

  bool pass = true;
  if (c.family == CopulaFamily::UpperTriangleUniform) {
    // Non-uniform marginals: the threshold condition replaces the bound scan.
    json thresholds = json::array();
    for (int k = 0; k <= grid; ++k) {
      Rat a(k, grid);
      auto t = triangle_condition(a);
      json tj;
      tj["a"] = rat_to_json(a);
      tj["lhs"] = rat_to_json(t.lhs);
      tj["rhs_direct"] = rat_to_json(t.rhs_direct);
      tj["rhs_footnote"] = rat_to_json(t.rhs_footnote);
      tj["violated_direct"] = t.violated_direct;
      tj["violated_footnote"] = t.violated_footnote;
      thresholds.push_back(tj);
      if (t.violated_direct) pass = false;
    }
    res.output["threshold_conditions"] = thresholds;
    res.output["note"] =
        "the two right-hand sides disagree by a factor of 2 on the clipped "
        "square's mass; the verdict holds under either reading";
  } else {
    res.output["pqd"] = scan_to_json(pqd_check(c, grid));
    res.output["upper_bound"] = scan_to_json(upper_bound_scan(c, grid));
    pass = res.output["upper_bound"]["pass"].get<bool>();
  }

  if (const json* m = opt.get("discretize")) {
    if (!m->is_number_integer() || m->get<int>() < 1)
      throw input_error("option \"discretize\" must be a positive integer");
    auto d = discretize(c, m->get<int>());
    res.output["discretization"] = measure_to_json(d.nu, "belief_distribution");
    res.output["residual"] = rat_to_json(d.residual);
    if (opt.flag("full_check")) {
      auto v = borderstar_feasibility(d.nu);
      res.output["feasibility"] = verdict_to_json(v);
      if (!v.feasible) pass = false;
    }
  }
  res.exit_code = pass ? 0 : 1;
  return res;
}

RunResult cmd_core_slack(const json& request, const Options& opt) {
  auto nu = as_belief_distribution(
      measure_from_json(input_doc(request), "belief_distribution"));
  const json* prof = opt.get("profile");
  if (!prof || !prof->is_array() ||
      static_cast<int>(prof->size()) != nu.agents())
    throw input_error("option \"profile\" must list one subset per agent");
  std::vector<std::vector<Rat>> profile;
  for (const auto& axis : *prof) {
    std::vector<Rat> s;
    for (const auto& v : axis) s.push_back(rat_from_json(v));
    profile.push_back(s);
  }
  Rat slack = core_slack(nu, profile);
  RunResult res;
  json pj = json::array();
  for (const auto& s : profile) {
    json axis = json::array();
    for (const auto& v : s) axis.push_back(rat_to_json(v));
    pj.push_back(axis);
  }
  res.output["profile"] = pj;
  res.output["slack"] = rat_to_json(slack);
  res.output["nonnegative"] = slack >= 0;
  res.exit_code = slack >= 0 ? 0 : 1;
  return res;
}

RunResult cmd_example1(const json&, const Options& opt) {
  RunResult res;
  std::string auction = opt.str("auction", "");
  if (!auction.empty()) {
    if (auction.size() != 1) throw input_error("option \"auction\" must be a, b, or c");
    const json* pj = opt.get("point");
    Point t = pj ? point_from_json(*pj) : Point{Rat(1, 2), Rat(1, 2)};
    auto r = example1_eval(auction[0], t);
    json ej;
    ej["auction"] = std::string(1, r.auction);
    ej["point"] = point_to_json(r.point);
    json interim = json::array();
    for (const auto& v : r.interim) interim.push_back(rat_to_json(v));
    ej["interim"] = interim;
    json boxes = json::array();
    for (const auto& [lo, hi] : r.support_box) {
      json b = json::array();
      b.push_back(rat_to_json(lo));
      b.push_back(rat_to_json(hi));
      boxes.push_back(b);
    }
    ej["support_box"] = boxes;
    res.output["evaluation"] = ej;
  }
  auto w = example1_nonconvexity();
  json nj;
  json box = json::array();
  for (const auto& [lo, hi] : w.box) {
    json b = json::array();
    b.push_back(rat_to_json(lo));
    b.push_back(rat_to_json(hi));
    box.push_back(b);
  }
  nj["box"] = box;
  nj["mass_c"] = rat_to_json(w.mass_c);
  nj["mass_mixture"] = rat_to_json(w.mass_mixture);
  res.output["non_convexity"] = nj;
  res.exit_code = 0;
  return res;
}

}  // namespace

RunResult dispatch(const std::string& command, const json& request) {
  Options opt;
  if (const json* o = find(request, "options")) opt.raw = *o;
  try {
    if (command == "check-beliefs") return cmd_check_beliefs(request, opt);
    if (command == "check-reduced-form") return cmd_check_reduced_form(request, opt);
    if (command == "construct-game") return cmd_construct_game(request, opt);
    if (command == "construct-info") return cmd_construct_info(request, opt);
    if (command == "agreement") return cmd_agreement(request, opt);
    if (command == "auction-check") return cmd_auction_check(request, opt);
    if (command == "copula-scan") return cmd_copula_scan(request, opt);
    if (command == "core-slack") return cmd_core_slack(request, opt);
    if (command == "example1") return cmd_example1(request, opt);
    throw input_error("unknown command \"" + command + "\"");
  } catch (const Error& e) {
    RunResult res;
    res.exit_code = 2;
    res.output = json{{"status", "error"}, {"code", e.code()}, {"message", e.what()}};
    return res;
  } catch (const json::exception& e) {
    RunResult res;
    res.exit_code = 2;
    res.output = json{{"status", "error"}, {"code", "InputError"}, {"message", e.what()}};
    return res;
  }
}

std::string render_json(const json& output) { return output.dump(2) + "\n"; }

namespace {

void render_value(const json& v, int indent, std::string key, std::ostringstream& os);

bool scalar_array(const json& a) {
  for (const auto& v : a)
    if (v.is_object() || (v.is_array() && !scalar_array(v))) return false;
  return true;
}

std::string inline_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_array()) {
    std::string out = "[";
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += ", ";
      first = false;
      out += inline_scalar(e);
    }
    return out + "]";
  }
  return v.dump();
}

void render_value(const json& v, int indent, std::string key, std::ostringstream& os) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    if (!key.empty()) os << pad << key << ":\n";
    for (const auto& [k, sub] : v.items()) render_value(sub, indent + (key.empty() ? 0 : 2), k, os);
    return;
  }
  if (v.is_array() && !scalar_array(v)) {
    os << pad << key << ":\n";
    int i = 1;
    for (const auto& e : v) {
      os << pad << "  [" << i++ << "]\n";
      render_value(e, indent + 4, "", os);
    }
    return;
  }
  os << pad << key << ": " << inline_scalar(v) << "\n";
}

}  // namespace

std::string render_table(const json& output) {
  std::ostringstream os;
  render_value(output, 0, "", os);
  return os.str();
}

}  // namespace bsr::io
