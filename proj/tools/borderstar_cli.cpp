// Command-line front end. All real work happens behind the C API in
// libborderstar; this file only turns flags into a JSON request and prints
// the chosen rendering of the response.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "borderstar.h"

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int fail_input(const std::string& message, const std::string& output_mode) {
  if (output_mode == "table") {
    std::cout << "status: error\nmessage: " << message << "\n";
  } else {
    json err{{"status", "error"}, {"code", "InputError"}, {"message", message}};
    std::cout << err.dump(2) << "\n";
  }
  return 2;
}

std::string read_source(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact feasibility engine for joint posterior-belief distributions"};
  app.require_subcommand(0, 0);

  std::string command;
  std::string input_path;
  std::string output_mode = "json";
  std::string family, theta = "0", mode, prior_path, states, events, profile;
  std::string auction, point;
  int max_bits = 20, grid = 20, discretize_cells = 0;
  bool general_model = false, full_check = false;

  app.add_option("command", command,
                 "check-beliefs | check-reduced-form | construct-game | "
                 "construct-info | agreement | auction-check | copula-scan | "
                 "core-slack | example1")
      ->required();
  app.add_option("--input", input_path, "input document path ('-' for stdin)");
  app.add_option("--output", output_mode, "json | table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--max-bruteforce-bits", max_bits,
                 "cap on the total axis-point count for exhaustive scans");
  app.add_option("--grid", grid, "scan resolution for copula grids");
  app.add_option("--family", family, "copula family name");
  app.add_option("--theta", theta, "copula parameter as p/q");
  app.add_option("--mode", mode, "auction-check mode: bic | fixed-prior");
  app.add_option("--prior", prior_path, "prior document path (fixed-prior runs)");
  app.add_flag("--general-model", general_model,
               "validate an explicit state space and events");
  app.add_option("--states", states, "comma-separated state names");
  app.add_option("--events", events,
                 "per-agent state indices: commas within, semicolons between");
  app.add_option("--discretize", discretize_cells, "cells per axis for copula-scan");
  app.add_flag("--full-check", full_check,
               "run the feasibility engine on the discretization");
  app.add_option("--profile", profile,
                 "core-slack testing profile: commas within, semicolons between");
  app.add_option("--auction", auction, "example1 auction: a | b | c");
  app.add_option("--point", point, "comma-separated rational coordinates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  json request;
  json& opt = request["options"];
  opt = json::object();

  try {
    bool needs_input = command != "copula-scan" && command != "example1";
    if (needs_input) request["input"] = json::parse(read_source(input_path));

    opt["max_bruteforce_bits"] = max_bits;
    opt["grid"] = grid;
    if (!family.empty()) opt["family"] = family;
    if (!theta.empty()) opt["theta"] = theta;
    if (!mode.empty()) opt["mode"] = mode;
    if (!prior_path.empty()) opt["prior"] = json::parse(read_source(prior_path));
    if (general_model) opt["general_model"] = true;
    if (!states.empty()) opt["states"] = split(states, ',');
    if (!events.empty()) {
      json evs = json::array();
      for (const auto& group : split(events, ';')) {
        json ev = json::array();
        for (const auto& idx : split(group, ','))
          if (!idx.empty()) ev.push_back(std::stoi(idx));
        evs.push_back(ev);
      }
      opt["events"] = evs;
    }
    if (discretize_cells > 0) opt["discretize"] = discretize_cells;
    if (full_check) opt["full_check"] = true;
    if (!profile.empty()) {
      json prof = json::array();
      for (const auto& group : split(profile, ';')) {
        json axis = json::array();
        for (const auto& v : split(group, ','))
          if (!v.empty()) axis.push_back(v);
        prof.push_back(axis);
      }
      opt["profile"] = prof;
    }
    if (!auction.empty()) opt["auction"] = auction;
    if (!point.empty()) {
      json pj = json::array();
      for (const auto& c : split(point, ',')) pj.push_back(c);
      opt["point"] = pj;
    }
  } catch (const std::exception& e) {
    return fail_input(e.what(), output_mode);
  }

  bsr_result* result = nullptr;
  int status = bsr_run(command.c_str(), request.dump().c_str(), &result);
  if (result == nullptr) return fail_input("engine allocation failure", output_mode);
  std::fputs(output_mode == "table" ? bsr_result_table(result)
                                    : bsr_result_json(result),
             stdout);
  bsr_result_free(result);
  return status;
}
