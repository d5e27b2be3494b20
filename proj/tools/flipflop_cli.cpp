// Command-line front end for the electoral-competition engine.
//
// Subcommands: solve, regions, payoff, simulate, sweep, verify.
// Every run emits a self-describing document: the resolved configuration,
// the result, and diagnostics. Exit codes: 0 success, 1 invalid input,
// 2 no equilibrium / unspecified boundary, 3 verification failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flipflop/first_stage.hpp"
#include "flipflop/game_core.hpp"
#include "flipflop/second_stage.hpp"
#include "flipflop/verification.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace flipflop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNoEquilibrium = 2;
constexpr int kExitVerificationFailed = 3;

// All numbers cross the output boundary at 15 significant digits, in both
// JSON and CSV renderings.
std::string sig15_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double sig15(double v) { return std::strtod(sig15_str(v).c_str(), nullptr); }

// Reconstruct small exact fractions (boundaries like 4/9 or 8/15) so golden
// files do not depend on decimal rounding. Empty when v is not exactly a
// small rational.
std::string rational_string(double v) {
  if (!(v >= -1e6 && v <= 1e6)) return "";
  for (long q = 1; q <= 9999; ++q) {
    const double scaled = v * static_cast<double>(q);
    const double p = std::round(scaled);
    if (std::abs(p) > 1e9) break;
    if (p / static_cast<double>(q) == v) {
      if (q == 1) return std::to_string(static_cast<long>(p));
      return std::to_string(static_cast<long>(p)) + "/" + std::to_string(q);
    }
  }
  return "";
}

struct Cli {
  // model parameters
  double a = std::numeric_limits<double>::quiet_NaN();
  double a1 = std::numeric_limits<double>::quiet_NaN();
  double a2 = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
  double x1 = std::numeric_limits<double>::quiet_NaN();
  double x2 = std::numeric_limits<double>::quiet_NaN();
  double m = std::numeric_limits<double>::quiet_NaN();
  bool at_equilibrium = false;
  double epsilon = std::numeric_limits<double>::quiet_NaN();

  // sweep list (reuses --a syntax with multiple values)
  std::vector<double> a_list;

  // simulation / verification knobs
  std::uint64_t draws = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t grid = 10000;

  std::string format = "json";
  std::string out_path;
  std::string config_path;

  bool has(double v) const { return !std::isnan(v); }

  GameParams params() const {
    double c1 = has(a1) ? a1 : a;
    double c2 = has(a2) ? a2 : a;
    if (std::isnan(c1) || std::isnan(c2)) {
      throw std::invalid_argument(
          "electoral costs missing: pass --a or both --a1 and --a2");
    }
    if (std::isnan(phi)) {
      throw std::invalid_argument("organizational cost missing: pass --phi");
    }
    return GameParams{c1, c2, phi};
  }
};

void add_model_options(CLI::App* cmd, Cli& o) {
  cmd->add_option("--a", o.a, "electoral cost for both candidates");
  cmd->add_option("--a1", o.a1, "electoral cost of candidate 1");
  cmd->add_option("--a2", o.a2, "electoral cost of candidate 2");
  cmd->add_option("--phi", o.phi, "organizational cost of adjusting, in (0, 1/2)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out_path, "write the document to this file");
  cmd->add_option("--config", o.config_path,
                  "key=value file mirroring the flags (explicit flags win)");
}

// Expand `--config FILE` into the equivalent flags, in place. Keys already
// present on the command line are left alone so explicit flags take
// precedence. Runs before CLI11 parsing because CLI11 only reads config
// files attached to the top-level command, not to subcommands.
void expand_config(std::vector<std::string>& args) {
  std::string path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) {
        throw std::invalid_argument("--config needs a file path");
      }
      path = *std::next(it);
      it = args.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(std::string("--config=").size());
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (path.empty()) return;

  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);

  const auto given = [&](const std::string& flag) {
    for (const std::string& arg : args) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not key=value: " + line);
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::invalid_argument("config line is not key=value: " + line);
    }
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value == "false") {
      continue;
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
}

void add_platform_options(CLI::App* cmd, Cli& o) {
  cmd->add_option("--x1", o.x1, "ex-ante platform of candidate 1");
  cmd->add_option("--x2", o.x2, "ex-ante platform of candidate 2");
  cmd->add_flag("--at-equilibrium", o.at_equilibrium,
                "use the equilibrium platforms");
}

void add_sim_options(CLI::App* cmd, Cli& o) {
  cmd->add_option("--draws", o.draws, "number of median draws");
  cmd->add_option("--seed", o.seed, "simulation seed");
  cmd->add_option("--workers", o.workers, "worker threads");
}

json config_echo(const Cli& o, const std::string& command) {
  json cfg;
  cfg["command"] = command;
  if (o.has(o.a)) cfg["a"] = sig15(o.a);
  if (o.has(o.a1)) cfg["a1"] = sig15(o.a1);
  if (o.has(o.a2)) cfg["a2"] = sig15(o.a2);
  if (o.has(o.phi)) cfg["phi"] = sig15(o.phi);
  if (o.has(o.x1)) cfg["x1"] = sig15(o.x1);
  if (o.has(o.x2)) cfg["x2"] = sig15(o.x2);
  if (o.has(o.m)) cfg["m"] = sig15(o.m);
  if (o.has(o.epsilon)) cfg["epsilon"] = sig15(o.epsilon);
  if (!o.a_list.empty()) {
    json arr = json::array();
    for (double v : o.a_list) arr.push_back(sig15(v));
    cfg["a_values"] = arr;
  }
  if (o.at_equilibrium) cfg["at_equilibrium"] = true;
  cfg["format"] = o.format;
  return cfg;
}

void csv_flatten(const std::string& prefix, const json& node,
                 std::ostream& os) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      csv_flatten(prefix.empty() ? it.key() : prefix + "." + it.key(),
                  it.value(), os);
    }
  } else if (node.is_array()) {
    std::size_t i = 0;
    for (const json& item : node) {
      csv_flatten(prefix + "[" + std::to_string(i++) + "]", item, os);
    }
  } else if (node.is_number_float()) {
    os << prefix << "," << sig15_str(node.get<double>()) << "\n";
  } else if (node.is_string()) {
    os << prefix << "," << node.get<std::string>() << "\n";
  } else {
    os << prefix << "," << node.dump() << "\n";
  }
}

std::string render_csv(const json& doc) {
  std::ostringstream os;
  for (auto it = doc.at("config").begin(); it != doc.at("config").end();
       ++it) {
    os << "#config " << it.key() << "=";
    if (it.value().is_number_float()) {
      os << sig15_str(it.value().get<double>());
    } else if (it.value().is_string()) {
      os << it.value().get<std::string>();
    } else {
      os << it.value().dump();
    }
    os << "\n";
  }
  const json& result = doc.at("result");
  // tabular results carry a "rows" array of uniform objects
  if (result.contains("rows") && result.at("rows").is_array() &&
      !result.at("rows").empty() && result.at("rows").front().is_object()) {
    const json& rows = result.at("rows");
    bool first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      os << (first ? "" : ",") << it.key();
      first = false;
    }
    os << "\n";
    for (const json& row : rows) {
      first = true;
      for (auto it = row.begin(); it != row.end(); ++it) {
        os << (first ? "" : ",");
        first = false;
        if (it.value().is_number_float()) {
          os << sig15_str(it.value().get<double>());
        } else if (it.value().is_string()) {
          os << it.value().get<std::string>();
        } else {
          os << it.value().dump();
        }
      }
      os << "\n";
    }
    json rest = result;
    rest.erase("rows");
    csv_flatten("", rest, os);
  } else {
    csv_flatten("", result, os);
  }
  csv_flatten("diagnostics", doc.at("diagnostics"), os);
  return os.str();
}

int emit(const Cli& o, json doc, int code) {
  const std::string text =
      o.format == "csv" ? render_csv(doc) : doc.dump(2) + "\n";
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) {
      std::cerr << "error: cannot open " << o.out_path << " for writing\n";
      return kExitInvalidInput;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return code;
}

json spne_json(const Spne& s) {
  json r;
  r["type"] = "spne";
  r["x1"] = sig15(s.x1);
  r["x2"] = sig15(s.x2);
  r["payoff1"] = sig15(s.payoff1);
  r["payoff2"] = sig15(s.payoff2);
  r["left_candidate"] = label(s.left);
  return r;
}

json region_rows(const RegionPartition& regions) {
  json rows = json::array();
  for (const Region& r : regions) {
    json row;
    row["lo"] = sig15(r.lo);
    row["hi"] = sig15(r.hi);
    const std::string lo_exact = rational_string(r.lo);
    const std::string hi_exact = rational_string(r.hi);
    if (!lo_exact.empty()) row["lo_exact"] = lo_exact;
    if (!hi_exact.empty()) row["hi_exact"] = hi_exact;
    row["status"] = r.status.to_string();
    row["payoff1"] = sig15(r.payoff1);
    row["payoff2"] = sig15(r.payoff2);
    rows.push_back(row);
  }
  return rows;
}

// Resolve platforms: explicit --x1/--x2 win; otherwise the equilibrium.
PlatformPair resolve_platforms(const Cli& o, const GameParams& params) {
  if (o.has(o.x1) != o.has(o.x2)) {
    throw std::invalid_argument("pass both --x1 and --x2, or neither");
  }
  if (o.has(o.x1)) return PlatformPair{o.x1, o.x2};
  const auto solution = solve_first_stage(params);
  if (const Spne* s = std::get_if<Spne>(&solution)) {
    return PlatformPair{s->x1, s->x2};
  }
  throw no_best_response_error(
      "no equilibrium platforms exist for these parameters; pass --x1/--x2");
}

int cmd_solve(const Cli& o) {
  const GameParams params = o.params();
  json doc;
  doc["config"] = config_echo(o, "solve");
  json diag;
  diag["psi1"] = sig15(psi(params.a1()));
  diag["psi2"] = sig15(psi(params.a2()));

  const auto t0 = std::chrono::steady_clock::now();
  const FirstStageSolution solution = solve_first_stage(params);
  diag["elapsed_ms"] = sig15(std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());

  int code = kExitOk;
  json result;
  if (const Spne* s = std::get_if<Spne>(&solution)) {
    result = spne_json(*s);
  } else if (const EpsilonEquilibrium* e =
                 std::get_if<EpsilonEquilibrium>(&solution)) {
    result["type"] = "epsilon_equilibrium";
    result["center"] = sig15(e->center);
    result["loss_coefficient"] = sig15(e->loss_coefficient);
    if (o.has(o.epsilon)) {
      const double eps = o.epsilon;
      const PlatformPair pair{e->center - eps, e->center + eps};
      const PayoffPair g = exante_payoff(pair, params);
      json prof;
      prof["x1"] = sig15(pair.x1);
      prof["x2"] = sig15(pair.x2);
      prof["payoff1"] = sig15(g.g1);
      prof["payoff2"] = sig15(g.g2);
      prof["max_deviation_gain_bound"] = sig15(e->loss_coefficient * eps);
      result["profile"] = prof;
    }
  } else {
    const NoEquilibrium& n = std::get<NoEquilibrium>(solution);
    result["type"] = "no_equilibrium";
    result["reason"] = n.reason;
    code = kExitNoEquilibrium;
  }
  doc["result"] = result;
  doc["diagnostics"] = diag;
  return emit(o, doc, code);
}

int cmd_regions(const Cli& o) {
  const GameParams params = o.params();
  const PlatformPair pair = resolve_platforms(o, params);
  json doc;
  doc["config"] = config_echo(o, "regions");
  doc["config"]["x1"] = sig15(pair.x1);
  doc["config"]["x2"] = sig15(pair.x2);
  json result;
  if (pair.identical()) {
    // degenerate partition: the whole median line is one identical-status band
    json row;
    row["lo"] = 0.0;
    row["hi"] = 1.0;
    row["status"] = "identical";
    row["payoff1"] = sig15(0.5 - params.phi());
    row["payoff2"] = sig15(0.5 - params.phi());
    result["rows"] = json::array({row});
  } else {
    result["rows"] = region_rows(region_partition(pair, params));
  }
  doc["result"] = result;
  doc["diagnostics"] = json::object();
  return emit(o, doc, kExitOk);
}

int cmd_payoff(const Cli& o) {
  const GameParams params = o.params();
  const PlatformPair pair = resolve_platforms(o, params);
  const PayoffPair g = exante_payoff(pair, params);
  json doc;
  doc["config"] = config_echo(o, "payoff");
  doc["config"]["x1"] = sig15(pair.x1);
  doc["config"]["x2"] = sig15(pair.x2);
  json result;
  result["payoff1"] = sig15(g.g1);
  result["payoff2"] = sig15(g.g2);
  if (o.has(o.m)) {
    const SubgameEquilibrium eq = solve_subgame(pair, Median{o.m}, params);
    json sub;
    sub["status"] = eq.status.to_string();
    sub["adjust_probability1"] = sig15(eq.action1.adjust_probability);
    sub["adjust_probability2"] = sig15(eq.action2.adjust_probability);
    sub["adjust_target1"] = sig15(eq.action1.adjust_target);
    sub["adjust_target2"] = sig15(eq.action2.adjust_target);
    sub["expected_payoff1"] = sig15(eq.expected_payoff1);
    sub["expected_payoff2"] = sig15(eq.expected_payoff2);
    result["subgame"] = sub;
  }
  doc["result"] = result;
  doc["diagnostics"] = json::object();
  return emit(o, doc, kExitOk);
}

json stats_json(const SimulationStats& s) {
  json r;
  r["draws"] = s.draws;
  r["seed"] = s.seed;
  r["payoff_mean1"] = sig15(s.payoff_mean1);
  r["payoff_mean2"] = sig15(s.payoff_mean2);
  r["payoff_std_error1"] = sig15(s.payoff_std_error1);
  r["payoff_std_error2"] = sig15(s.payoff_std_error2);
  r["flip_frequency1"] = sig15(s.flip_frequency1);
  r["flip_frequency2"] = sig15(s.flip_frequency2);
  r["flip_frequency_given_open_favorite"] =
      sig15(s.flip_frequency_given_open_favorite);
  r["flip_frequency_given_open_challenger"] =
      sig15(s.flip_frequency_given_open_challenger);
  r["flips_toward_center"] = s.flips_toward_center;
  r["flips_away_from_center"] = s.flips_away_from_center;
  r["flips_order_crossing"] = s.flips_order_crossing;
  r["flip_magnitude_mean_favorite"] = sig15(s.flip_magnitude_mean_favorite);
  r["flip_magnitude_mean_challenger"] =
      sig15(s.flip_magnitude_mean_challenger);
  r["flip_success_rate_favorite"] = sig15(s.flip_success_rate_favorite);
  r["flip_success_rate_challenger"] = sig15(s.flip_success_rate_challenger);
  r["open_election_frequency"] = sig15(s.open_election_frequency);
  r["secured_frequency1"] = sig15(s.secured_frequency1);
  r["secured_frequency2"] = sig15(s.secured_frequency2);
  r["open_count"] = s.open_count;
  r["secured_count1"] = s.secured_count1;
  r["secured_count2"] = s.secured_count2;
  r["identical_count"] = s.identical_count;
  r["weak_favorite_count"] = s.weak_favorite_count;
  r["knife_edge_count"] = s.knife_edge_count;
  return r;
}

int cmd_simulate(const Cli& o) {
  const GameParams params = o.params();
  const PlatformPair pair = resolve_platforms(o, params);
  SimulationConfig cfg;
  cfg.draws = o.draws;
  cfg.seed = o.seed;
  cfg.workers = o.workers;

  json doc;
  doc["config"] = config_echo(o, "simulate");
  doc["config"]["x1"] = sig15(pair.x1);
  doc["config"]["x2"] = sig15(pair.x2);
  doc["config"]["draws"] = cfg.draws;
  doc["config"]["seed"] = cfg.seed;
  doc["config"]["workers"] = cfg.workers;

  const auto t0 = std::chrono::steady_clock::now();
  const SimulationStats stats = simulate(pair, params, cfg);
  json diag;
  diag["elapsed_ms"] = sig15(std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());

  json result;
  result["stats"] = stats_json(stats);

  const ImplicationsReport report = check_implications(stats, params);
  json imp;
  imp["applicable"] = report.applicable;
  if (!report.note.empty()) imp["note"] = report.note;
  json clauses = json::array();
  for (const ImplicationClause& c : report.clauses) {
    json clause;
    clause["name"] = c.name;
    clause["pass"] = c.pass;
    clause["observed"] = sig15(c.observed);
    clause["expected"] = sig15(c.expected);
    clause["band"] = sig15(c.band);
    clauses.push_back(clause);
  }
  imp["clauses"] = clauses;
  if (report.applicable) imp["all_pass"] = report.all_pass();
  result["implications"] = imp;

  doc["result"] = result;
  doc["diagnostics"] = diag;
  return emit(o, doc, kExitOk);
}

int cmd_sweep(const Cli& o) {
  if (o.a_list.empty()) {
    throw std::invalid_argument("sweep needs --a with one or more values");
  }
  if (std::isnan(o.phi)) {
    throw std::invalid_argument("organizational cost missing: pass --phi");
  }
  SimulationConfig cfg;
  cfg.draws = o.draws;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  const bool with_sim = o.draws > 0 && o.seed != 0;

  const SweepResult sweep =
      comparative_sweep(o.a_list, o.phi, with_sim ? &cfg : nullptr);

  json doc;
  doc["config"] = config_echo(o, "sweep");
  json rows = json::array();
  for (const SweepRow& r : sweep.rows) {
    json row;
    row["a"] = sig15(r.a);
    row["phi"] = sig15(r.phi);
    row["psi"] = sig15(r.psi_value);
    row["admissible"] = r.admissible;
    row["region"] = r.admissible ? "R0" : "R1";
    row["x1"] = sig15(r.x1);
    row["x2"] = sig15(r.x2);
    row["polarization"] = sig15(r.polarization);
    row["open_probability"] = sig15(r.open_probability);
    row["payoff"] = sig15(r.payoff);
    if (r.simulated_payoff) {
      row["simulated_payoff"] = sig15(*r.simulated_payoff);
    }
    rows.push_back(row);
  }
  json result;
  result["rows"] = rows;
  result["polarization_decreasing"] = sweep.polarization_decreasing;
  result["open_probability_decreasing"] = sweep.open_probability_decreasing;
  result["payoff_increasing"] = sweep.payoff_increasing;
  doc["result"] = result;
  doc["diagnostics"] = json::object();
  return emit(o, doc, kExitOk);
}

int cmd_verify(const Cli& o) {
  json doc;
  doc["config"] = config_echo(o, "verify");
  doc["config"]["grid"] = o.grid;
  json checks = json::array();
  bool all_pass = true;
  auto push = [&](const std::string& name, bool pass,
                  const std::string& detail) {
    json c;
    c["name"] = name;
    c["pass"] = pass;
    c["detail"] = detail;
    checks.push_back(c);
    all_pass = all_pass && pass;
  };

  // closed-form vs brute-force best responses
  {
    std::vector<std::pair<GameParams, double>> fixtures = {
        {GameParams{1.0 / 3.0, 1.0 / 3.0, 0.3}, 2.0 / 3.0},
        {GameParams{1.0, 1.0, 0.25}, 0.55},
        {GameParams{3.0, 3.0, 0.2}, 0.52},
    };
    double worst = 0.0;
    for (const auto& [params, opp] : fixtures) {
      const double gap =
          std::abs(grid_best_response(opp, Candidate::one, params, o.grid) -
                   best_response(opp, Candidate::one, params));
      worst = std::max(worst, gap);
    }
    const double cell = 1.0 / static_cast<double>(o.grid - 1);
    push("grid_best_response_matches_closed_form", worst <= cell + 1e-12,
         "worst gap " + sig15_str(worst) + " vs cell " + sig15_str(cell));
  }

  // subgame equilibria survive grid deviation checks
  {
    const GameParams params{1.0 / 3.0, 1.0 / 3.0, 0.3};
    const PlatformPair pair{1.0 / 3.0, 2.0 / 3.0};
    double worst = -1.0;
    for (int k = 0; k < 500; ++k) {
      const Median m{(k + 0.5) / 500.0};
      worst = std::max(worst, grid_subgame_check(pair, m, params, 1000));
    }
    push("subgame_equilibria_deviation_free", worst <= 1e-9,
         "max gain " + sig15_str(worst));
  }

  // the two payoff routes agree
  {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double x1 = unit(rng), x2 = unit(rng);
      if (x1 == x2) continue;
      if (x1 > x2) std::swap(x1, x2);
      const GameParams params{1.0 / 3.0, 1.0 / 3.0, 0.3};
      worst = std::max(
          worst, std::abs(closed_form_g1(PlatformPair{x1, x2}, params) -
                          exante_payoff(PlatformPair{x1, x2}, params).g1));
    }
    push("closed_form_matches_integration", worst < 1e-12,
         "worst gap " + sig15_str(worst));
  }

  // equilibria are fixed points of the best-response map
  {
    bool pass = true;
    std::string detail;
    for (const GameParams& params :
         {GameParams{1.0 / 3.0, 1.0 / 3.0, 0.3},
          GameParams{0.125, 1.0 / 3.0, 0.45}, GameParams{1.0, 1.0, 0.2}}) {
      const auto solution = solve_first_stage(params);
      const Spne* s = std::get_if<Spne>(&solution);
      if (s == nullptr) {
        pass = false;
        continue;
      }
      const double g1 =
          std::abs(best_response(s->x2, Candidate::one, params) - s->x1);
      const double g2 =
          std::abs(best_response(s->x1, Candidate::two, params) - s->x2);
      pass = pass && g1 < 1e-12 && g2 < 1e-12;
    }
    push("equilibria_are_best_response_fixed_points", pass, detail);
  }

  doc["result"] = json{{"checks", checks}, {"all_pass", all_pass}};
  doc["diagnostics"] = json::object();
  return emit(o, doc, all_pass ? kExitOk : kExitVerificationFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium engine for two-stage electoral competition with "
               "costly platform adjustment"};
  app.require_subcommand(1);
  Cli o;

  CLI::App* solve = app.add_subcommand("solve", "first-stage equilibrium");
  add_model_options(solve, o);
  solve->add_option("--epsilon", o.epsilon,
                    "materialize a near-center profile at this epsilon");

  CLI::App* regions =
      app.add_subcommand("regions", "median-line partition by subgame status");
  add_model_options(regions, o);
  add_platform_options(regions, o);

  CLI::App* payoff =
      app.add_subcommand("payoff", "ex-ante expected payoffs at platforms");
  add_model_options(payoff, o);
  add_platform_options(payoff, o);
  payoff->add_option("--m", o.m, "also solve the subgame at this median");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "seeded Monte Carlo over median draws");
  add_model_options(simulate_cmd, o);
  add_platform_options(simulate_cmd, o);
  add_sim_options(simulate_cmd, o);

  CLI::App* sweep =
      app.add_subcommand("sweep", "comparative statics over electoral costs");
  add_model_options(sweep, o);
  sweep->remove_option(sweep->get_option("--a"));
  sweep->add_option("--a", o.a_list, "electoral costs to sweep over");
  add_sim_options(sweep, o);

  CLI::App* verify =
      app.add_subcommand("verify", "run the internal oracle suite");
  verify->add_option("--grid", o.grid, "grid resolution for the oracles");
  verify->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", o.out_path, "write the document to this file");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(o);
    if (solve->parsed()) return cmd_solve(o);
    if (regions->parsed()) return cmd_regions(o);
    if (payoff->parsed()) return cmd_payoff(o);
    if (simulate_cmd->parsed()) return cmd_simulate(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const no_best_response_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const boundary_unspecified_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const unresolved_tie_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
