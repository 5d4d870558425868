// SPDX-License-Identifier: Apache-2.0
//
// fr3sim: FR3 base-station power-consumption and hybrid-beamforming link
// simulator. Subcommands evaluate a single scenario (power, rate) or rerun
// the reference figure sweeps with verdicts against embedded targets
// (reproduce).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fr3sim/link_rate.hpp"
#include "fr3sim/power_model.hpp"
#include "fr3sim/scenario.hpp"
#include "fr3sim/sweep.hpp"

#ifndef FR3SIM_DATA_DIR
#define FR3SIM_DATA_DIR "."
#endif

namespace {

using namespace fr3sim;
using nlohmann::json;

struct CommonOptions {
  std::string scenario_file;
  std::string preset;
  int m_rf = 0;
  int m_ant = 0;
  std::string load;
  std::string channel;
  int n_sc_eval = 0;
  std::uint64_t seed = 42;
  int workers = 0;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("scenario", opts.scenario_file,
                  "scenario JSON file (defaults applied when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", opts.preset,
                  "named parameter set: paper-fig2 (reference evaluation)");
  cmd->add_option("--m-rf", opts.m_rf, "override the RF chain count");
  cmd->add_option("--m-ant", opts.m_ant,
                  "override the antenna count (near-square UPA)");
  cmd->add_option("--load", opts.load, "average loads as x_dl,x_ul");
  cmd->add_option("--channel", opts.channel,
                  "channel model: rayleigh or clustered");
  cmd->add_option("--n-sc-eval", opts.n_sc_eval,
                  "evaluation subcarriers per drop");
  cmd->add_option("--seed", opts.seed, "master seed for all randomness");
  cmd->add_option("--workers", opts.workers,
                  "worker threads (also FR3SIM_THREADS)");
}

std::pair<double, double> parse_pair(const std::string& text,
                                     const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError(std::string(what) +
                               " must be two comma-separated numbers");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(what) + " is not numeric");
  }
}

ScenarioConfig resolve_config(const CommonOptions& opts) {
  ScenarioConfig config;
  if (!opts.preset.empty()) {
    if (opts.preset != "paper-fig2")
      throw CLI::ValidationError("unknown preset '" + opts.preset + "'");
    config = paper_fig2_preset();
    if (!opts.scenario_file.empty())
      throw CLI::ValidationError("pass either a scenario file or --preset");
  } else if (!opts.scenario_file.empty()) {
    config = scenario_from_json_file(opts.scenario_file);
  }

  if (opts.m_ant > 0)
    std::tie(config.M_ant_rows, config.M_ant_cols) = upa_dims(opts.m_ant);
  if (opts.m_rf > 0) config.M_rf = opts.m_rf;
  if (!opts.load.empty())
    std::tie(config.x_dl, config.x_ul) = parse_pair(opts.load, "--load");
  if (!opts.channel.empty()) {
    if (opts.channel == "rayleigh")
      config.channel.model = ChannelModel::kRayleigh;
    else if (opts.channel == "clustered")
      config.channel.model = ChannelModel::kClustered;
    else
      throw CLI::ValidationError("unknown channel model '" + opts.channel +
                                 "'");
  }
  if (opts.n_sc_eval > 0) config.channel.n_sc_eval = opts.n_sc_eval;
  return config;
}

void write_output(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text << '\n';
  } else {
    write_text_file(out_file, text);
  }
}

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

int run_power(const CommonOptions& opts, const std::string& assume_rates,
              int drops, const std::string& format,
              const std::string& out_file) {
  const ScenarioConfig config = resolve_config(opts);
  const Scenario scenario = Scenario::validate(config);

  RatePair rates;
  if (!assume_rates.empty()) {
    std::tie(rates.r_dl_bps, rates.r_ul_bps) =
        parse_pair(assume_rates, "--assume-rates");
  } else if (drops > 0) {
    const RateReport report =
        ergodic_rates(scenario, drops, opts.seed, opts.workers);
    rates = RatePair{report.r_dl_bps, report.r_ul_bps};
  } else {
    std::cerr << "warning: no rate run; encoder/decoder dynamic terms are "
                 "zero (use --assume-rates or --drops)\n";
  }

  const PowerBreakdown breakdown = total_power(scenario, rates);
  if (format == "json") {
    write_output(breakdown.to_json(), out_file);
  } else if (format == "csv") {
    write_output(PowerBreakdown::csv_header() + "\n" + breakdown.to_csv_row(),
                 out_file);
  } else {
    char buffer[256];
    std::string text;
    auto line = [&](const char* name, const ComponentSplit& split) {
      std::snprintf(buffer, sizeof(buffer), "%-10s %14.3f %14.3f %14.3f\n",
                    name, split.load_independent, split.load_dependent,
                    split.total());
      text += buffer;
    };
    text += "component    load-indep [W]  load-dep [W]      total [W]\n";
    line("digital", breakdown.digital);
    line("analog", breakdown.analog);
    line("pa", breakdown.pa);
    std::snprintf(buffer, sizeof(buffer), "%-10s %44.3f\n", "total",
                  breakdown.total);
    text += buffer;
    std::snprintf(buffer, sizeof(buffer),
                  "rates: DL %.3f Gbit/s, UL %.3f Gbit/s\n",
                  rates.r_dl_bps / 1e9, rates.r_ul_bps / 1e9);
    text += buffer;
    write_output(text, out_file);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rate
// ---------------------------------------------------------------------------

int run_rate(const CommonOptions& opts, int drops, const std::string& format,
             const std::string& out_file, const std::string& per_drop_csv,
             const std::string& dump_channel) {
  const ScenarioConfig config = resolve_config(opts);
  const Scenario scenario = Scenario::validate(config);

  if (!dump_channel.empty())
    write_channel_dump(scenario_channel(scenario, opts.seed, 0), dump_channel);

  RateReport report = ergodic_rates(scenario, drops, opts.seed, opts.workers);
  const PowerBreakdown power =
      total_power(scenario, RatePair{report.r_dl_bps, report.r_ul_bps});
  report.ee_bit_per_j = energy_efficiency(report, power);

  for (const auto& [name, rate, err] :
       {std::tuple{"DL", report.r_dl_bps, report.stderr_dl_bps},
        std::tuple{"UL", report.r_ul_bps, report.stderr_ul_bps}}) {
    if (rate > 0.0 && err > 0.02 * rate)
      std::cerr << "warning: " << name
                << " standard error exceeds 2% of the estimate; increase "
                   "--drops\n";
  }

  if (!per_drop_csv.empty()) report.write_drop_sums_csv(per_drop_csv);

  if (format == "json") {
    write_output(report.to_json(), out_file);
  } else {
    char buffer[256];
    std::string text;
    std::snprintf(buffer, sizeof(buffer),
                  "R_DL = %9.4f Gbit/s  (stderr %.4f)\n", report.r_dl_bps / 1e9,
                  report.stderr_dl_bps / 1e9);
    text += buffer;
    std::snprintf(buffer, sizeof(buffer),
                  "R_UL = %9.4f Gbit/s  (stderr %.4f)\n", report.r_ul_bps / 1e9,
                  report.stderr_ul_bps / 1e9);
    text += buffer;
    std::snprintf(buffer, sizeof(buffer), "EE   = %9.4f Mbit/J at %.2f W\n",
                  report.ee_bit_per_j / 1e6, power.total);
    text += buffer;
    std::snprintf(buffer, sizeof(buffer),
                  "channel %s, %d drops, %d subcarriers, seed %llu, "
                  "%d degenerate drops\n",
                  report.channel_model.c_str(), report.n_drops,
                  report.n_sc_eval,
                  static_cast<unsigned long long>(report.seed),
                  report.degenerate_drops);
    text += buffer;
    write_output(text, out_file);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct Check {
  std::string figure;
  std::string name;
  double target = 0.0;
  double computed = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool is_property = false;  // property checks carry no numeric tolerance
  bool pass = false;
  std::string note;
};

class CheckList {
 public:
  void add_value(const std::string& figure, const std::string& name,
                 double target, double computed, double tolerance,
                 const std::string& note = "") {
    Check c;
    c.figure = figure;
    c.name = name;
    c.target = target;
    c.computed = computed;
    c.rel_err = std::abs(computed - target) / std::abs(target);
    c.tolerance = tolerance;
    c.pass = c.rel_err <= tolerance;
    c.note = note;
    checks_.push_back(std::move(c));
  }

  void add_property(const std::string& figure, const std::string& name,
                    bool pass, const std::string& note = "") {
    Check c;
    c.figure = figure;
    c.name = name;
    c.is_property = true;
    c.pass = pass;
    c.note = note;
    checks_.push_back(std::move(c));
  }

  bool all_pass() const {
    for (const Check& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  void print() const {
    std::printf("%-7s %-34s %12s %12s %9s %7s %s\n", "figure", "check",
                "target", "computed", "rel.err", "tol", "verdict");
    for (const Check& c : checks_) {
      if (c.is_property) {
        std::printf("%-7s %-34s %12s %12s %9s %7s %s%s%s\n", c.figure.c_str(),
                    c.name.c_str(), "-", "-", "-", "-",
                    c.pass ? "PASS" : "FAIL", c.note.empty() ? "" : "  ",
                    c.note.c_str());
      } else {
        std::printf("%-7s %-34s %12.4g %12.4g %8.2f%% %6.0f%% %s%s%s\n",
                    c.figure.c_str(), c.name.c_str(), c.target, c.computed,
                    100.0 * c.rel_err, 100.0 * c.tolerance,
                    c.pass ? "PASS" : "FAIL", c.note.empty() ? "" : "  ",
                    c.note.c_str());
      }
    }
    int failed = 0;
    for (const Check& c : checks_) failed += c.pass ? 0 : 1;
    std::printf("%zu checks, %d failed\n", checks_.size(), failed);
  }

  json to_json() const {
    json cells = json::array();
    for (const Check& c : checks_) {
      json cell{{"figure", c.figure}, {"name", c.name}, {"pass", c.pass}};
      if (!c.is_property) {
        cell["target"] = c.target;
        cell["computed"] = c.computed;
        cell["rel_err"] = c.rel_err;
        cell["tolerance"] = c.tolerance;
      }
      if (!c.note.empty()) cell["note"] = c.note;
      cells.push_back(std::move(cell));
    }
    return {{"checks", cells}, {"pass", all_pass()}};
  }

 private:
  std::vector<Check> checks_;
};

json load_targets(const std::string& override_path) {
  std::string path = override_path;
  if (path.empty()) {
    if (const char* env = std::getenv("FR3SIM_TARGETS")) path = env;
  }
  if (path.empty()) path = std::string(FR3SIM_DATA_DIR) + "/paper_targets.json";
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open targets file '" + path + "'");
  json j;
  in >> j;
  return j;
}

std::vector<int> int_list(const json& j) {
  return j.get<std::vector<int>>();
}

void save_table(const SweepTable& table, const std::filesystem::path& out_dir,
                const std::string& stem) {
  write_text_file((out_dir / (stem + ".csv")).string(), to_csv(table));
  write_text_file((out_dir / (stem + "_plot.json")).string(),
                  to_plot_json(table));
}

void check_fig2b(const json& targets, const ScenarioConfig& base,
                 const std::filesystem::path& out_dir, CheckList& checks) {
  const json& t = targets.at("fig2b");
  const std::vector<int> m_ant = int_list(t.at("m_ant"));
  ScenarioConfig config = base;
  config.P_t_dl.reset();  // fixed per-PA drive across the sweep
  const SweepTable table = sweep_antennas(config, m_ant);
  save_table(table, out_dir, "fig2b");

  const auto li = t.at("pa_load_indep_w").get<std::vector<double>>();
  const auto ld = t.at("pa_load_dep_w").get<std::vector<double>>();
  const double tol = t.at("tolerance_rel").get<double>();
  for (size_t i = 0; i < m_ant.size(); ++i) {
    const std::string suffix = "@" + std::to_string(m_ant[i]);
    checks.add_value("fig2b", "pa_load_indep" + suffix, li[i],
                     table.rows[i].pa_load_indep_w, tol);
    checks.add_value("fig2b", "pa_load_dep" + suffix, ld[i],
                     table.rows[i].pa_load_dep_w, tol);
  }

  const double doubling_tol = t.at("doubling_tolerance").get<double>();
  bool doubles = true;
  for (size_t i = 1; i < table.rows.size(); ++i) {
    const double r_li =
        table.rows[i].pa_load_indep_w / table.rows[i - 1].pa_load_indep_w;
    const double r_ld =
        table.rows[i].pa_load_dep_w / table.rows[i - 1].pa_load_dep_w;
    doubles = doubles && std::abs(r_li - 2.0) <= doubling_tol &&
              std::abs(r_ld - 2.0) <= doubling_tol;
  }
  checks.add_property("fig2b", "consecutive bars double exactly", doubles);
}

SweepTable fig2a_style_sweep(const ScenarioConfig& base, const json& targets,
                             double x_dl, double x_ul,
                             const RateOptions& rates) {
  const std::vector<int> m_rf = int_list(targets.at("fig2a").at("m_rf"));
  return sweep_rf_chains(base, m_rf, x_dl, x_ul, rates);
}

void check_fig2a(const json& targets, const ScenarioConfig& base,
                 const std::filesystem::path& out_dir,
                 const RateOptions& rates, CheckList& checks) {
  const json& t = targets.at("fig2a");
  const SweepTable table = fig2a_style_sweep(base, targets, 1.0, 1.0, rates);
  save_table(table, out_dir, "fig2a");

  const std::vector<int> m_rf = int_list(t.at("m_rf"));
  const double tol = t.at("tolerance_rel").get<double>();
  const struct {
    const char* name;
    std::vector<double> target;
    double SweepRow::* field;
  } series[] = {
      {"digital_load_indep", t.at("digital_load_indep_w"),
       &SweepRow::digital_load_indep_w},
      {"digital_load_dep", t.at("digital_load_dep_w"),
       &SweepRow::digital_load_dep_w},
      {"analog_load_indep", t.at("analog_load_indep_w"),
       &SweepRow::analog_load_indep_w},
      {"analog_load_dep", t.at("analog_load_dep_w"),
       &SweepRow::analog_load_dep_w},
  };
  const std::string offset_note = t.value("note", "");
  for (const auto& s : series) {
    for (size_t i = 0; i < m_rf.size(); ++i) {
      const bool analog = std::string(s.name).find("analog") == 0;
      checks.add_value("fig2a",
                       std::string(s.name) + "@" + std::to_string(m_rf[i]),
                       s.target[i], table.rows[i].*(s.field), tol,
                       analog && !offset_note.empty() ? "documented offset"
                                                      : "");
    }
  }
}

void check_totals(const json& targets, const ScenarioConfig& base,
                  const std::filesystem::path& out_dir,
                  const RateOptions& rates, CheckList& checks) {
  const json& t = targets.at("totals");
  const double tol = t.at("tolerance_rel").get<double>();
  const std::vector<int> m_rf_points{16, 1024};

  SweepTable all;
  all.kind = "rf_chains";
  for (const auto& [loads_key, x] :
       {std::pair{"full_load", 1.0}, std::pair{"load_30", 0.3}}) {
    const SweepTable table =
        sweep_rf_chains(base, m_rf_points, x, x, rates);
    for (size_t i = 0; i < m_rf_points.size(); ++i) {
      const double target =
          t.at(loads_key).at(std::to_string(m_rf_points[i])).get<double>();
      checks.add_value("totals",
                       std::string(loads_key) + "@" +
                           std::to_string(m_rf_points[i]),
                       target, table.rows[i].total_w, tol);
      all.rows.push_back(table.rows[i]);
    }
  }
  save_table(all, out_dir, "totals");
}

const SweepTable& fig2c_sweep(const json& targets, const ScenarioConfig& base,
                              const RateOptions& rates) {
  static std::optional<SweepTable> cache;
  if (!cache)
    cache = fig2a_style_sweep(base, targets, 1.0, 1.0, rates);
  return *cache;
}

void check_fig2c(const json& targets, const ScenarioConfig& base,
                 const std::filesystem::path& out_dir,
                 const RateOptions& rates, CheckList& checks) {
  const json& t = targets.at("fig2c");
  const SweepTable& table = fig2c_sweep(targets, base, rates);
  save_table(table, out_dir, "fig2c");

  const std::vector<int> m_rf = int_list(t.at("m_rf"));
  const auto dl_ref = t.at("r_dl_gbps").get<std::vector<double>>();

  bool monotone = true;
  for (size_t i = 1; i < table.rows.size(); ++i)
    monotone = monotone && table.rows[i].r_dl_bps >= table.rows[i - 1].r_dl_bps;
  checks.add_property("fig2c", "DL rate nondecreasing in M_rf", monotone,
                      "common random channels");

  const double factor = t.at("fd_dl_rate_factor").get<double>();
  const double fd_rate = table.rows.back().r_dl_bps / 1e9;
  const double fd_ref = dl_ref.back();
  checks.add_property(
      "fig2c", "fully-digital DL rate within factor " +
                   std::to_string(static_cast<int>(factor)) + " of reference",
      fd_rate >= fd_ref / factor && fd_rate <= fd_ref * factor,
      std::to_string(fd_rate) + " vs " + std::to_string(fd_ref) + " Gbit/s");

  bool proportional = true;
  for (const SweepRow& row : table.rows) {
    proportional = proportional &&
                   std::abs(row.r_dl_at_30_load_bps - 0.3 * row.r_dl_bps) <=
                       1e-9 * row.r_dl_bps &&
                   std::abs(row.r_ul_at_30_load_bps - 0.3 * row.r_ul_bps) <=
                       1e-9 * std::max(row.r_ul_bps, 1.0);
    // rows carry full-load rates here (x = 1), so the 30% columns must be
    // exactly 0.3 of them
  }
  checks.add_property("fig2c", "rates proportional to load", proportional);
}

void check_ee(const json& targets, const ScenarioConfig& base,
              const std::filesystem::path& out_dir, const RateOptions& rates,
              CheckList& checks) {
  const json& t = targets.at("ee");
  const SweepTable& table = fig2c_sweep(targets, base, rates);
  save_table(table, out_dir, "ee");

  const std::vector<int> m_rf = int_list(t.at("m_rf"));
  std::vector<double> ee;
  for (const SweepRow& row : table.rows) ee.push_back(row.ee_bit_per_j / 1e6);

  size_t peak = 0;
  for (size_t i = 1; i < ee.size(); ++i)
    if (ee[i] > ee[peak]) peak = i;
  bool unimodal = true;
  for (size_t i = 1; i <= peak; ++i) unimodal = unimodal && ee[i] >= ee[i - 1];
  for (size_t i = peak + 1; i < ee.size(); ++i)
    unimodal = unimodal && ee[i] <= ee[i - 1];
  const bool interior = peak > 0 && peak + 1 < ee.size();
  checks.add_property("ee", "EE unimodal over M_rf", unimodal);
  checks.add_property("ee", "EE maximum at interior hybrid point",
                      interior && table.rows[peak].mode == "hybrid",
                      "peak at M_rf=" + std::to_string(m_rf[peak]));

  const double min_ratio = t.at("min_hybrid_over_fd_ratio").get<double>();
  const double ratio = ee[peak] / ee.back();
  checks.add_property("ee",
                      "hybrid max EE over fully-digital EE >= " +
                          std::to_string(min_ratio).substr(0, 3),
                      ratio >= min_ratio,
                      "ratio " + std::to_string(ratio).substr(0, 5));

  // Reference sequences, reported for context (rates are shape targets).
  const auto ref = t.at("full_load_mbit_per_j").get<std::vector<double>>();
  for (size_t i = 0; i < ee.size(); ++i) {
    std::printf("ee reference @%d: %.1f Mbit/J, computed %.2f Mbit/J\n",
                m_rf[i], ref[i], ee[i]);
  }
}

int run_reproduce(const std::string& figure, const CommonOptions& opts,
                  const std::string& out_dir_arg,
                  const std::string& targets_path, int drops) {
  const json targets = load_targets(targets_path);
  ScenarioConfig base = resolve_config(opts);

  const std::filesystem::path out_dir(out_dir_arg);
  std::filesystem::create_directories(out_dir);

  // Closed-form figures only need a light rate pre-pass for the
  // encoder/decoder terms; the rate figure runs at full quality.
  RateOptions light;
  light.n_drops = drops > 0 ? drops : 8;
  light.seed = opts.seed;
  light.workers = opts.workers;
  RateOptions full;
  full.n_drops = drops > 0 ? drops : 200;
  full.seed = opts.seed;
  full.workers = opts.workers;

  ScenarioConfig light_base = base;
  if (opts.n_sc_eval <= 0) light_base.channel.n_sc_eval = 8;

  CheckList checks;
  bool known = false;
  if (figure == "fig2b" || figure == "all") {
    check_fig2b(targets, base, out_dir, checks);
    known = true;
  }
  if (figure == "fig2a" || figure == "all") {
    check_fig2a(targets, light_base, out_dir, light, checks);
    known = true;
  }
  if (figure == "totals" || figure == "all") {
    check_totals(targets, light_base, out_dir, light, checks);
    known = true;
  }
  if (figure == "fig2c" || figure == "all") {
    check_fig2c(targets, base, out_dir, full, checks);
    known = true;
  }
  if (figure == "ee" || figure == "all") {
    check_ee(targets, base, out_dir, full, checks);
    known = true;
  }
  if (!known)
    throw CLI::ValidationError(
        "unknown figure id '" + figure +
        "' (expected fig2a, fig2b, fig2c, totals, ee or all)");

  checks.print();
  const std::string summary_name = "summary_" + figure + ".json";
  json summary = checks.to_json();
  summary["figure"] = figure;
  summary["seed"] = opts.seed;
  write_text_file((out_dir / summary_name).string(), summary.dump(2));
  std::printf("summary written to %s\n",
              (out_dir / summary_name).string().c_str());
  return checks.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "FR3 base-station power consumption and hybrid-beamforming link "
      "simulator"};
  app.require_subcommand(1);

  CommonOptions power_opts, rate_opts, repro_opts;

  auto* power = app.add_subcommand(
      "power", "evaluate the consumption breakdown of one scenario");
  add_common_flags(power, power_opts);
  std::string assume_rates, power_format = "table", power_out;
  int power_drops = 0;
  power->add_option("--assume-rates", assume_rates,
                    "skip the rate engine; DL,UL rates in bit/s");
  power->add_option("--drops", power_drops,
                    "run the rate engine with this many channel drops");
  power->add_option("--format", power_format, "table, json or csv");
  power->add_option("--out", power_out, "write to a file instead of stdout");

  auto* rate = app.add_subcommand(
      "rate", "Monte Carlo ergodic sum rates and energy efficiency");
  add_common_flags(rate, rate_opts);
  std::string rate_format = "table", rate_out, per_drop_csv, dump_channel;
  int rate_drops = 200;
  rate->add_option("--drops", rate_drops, "number of channel drops");
  rate->add_option("--format", rate_format, "table or json");
  rate->add_option("--out", rate_out, "write to a file instead of stdout");
  rate->add_option("--per-drop-csv", per_drop_csv,
                   "stream raw per-drop sums to a CSV for variance audits");
  rate->add_option("--dump-channel", dump_channel,
                   "write drop 0 as a binary channel dump");

  auto* repro = app.add_subcommand(
      "reproduce",
      "rerun a reference figure and compare against embedded targets");
  std::string figure, out_dir = "fr3sim_out", targets_path;
  int repro_drops = 0;
  repro->add_option("figure", figure,
                    "fig2a, fig2b, fig2c, totals, ee or all")
      ->required();
  add_common_flags(repro, repro_opts);
  repro->add_option("--out-dir", out_dir, "output directory for CSV/JSON");
  repro->add_option("--targets", targets_path,
                    "override the embedded targets file");
  repro->add_option("--drops", repro_drops, "override the rate-pass drops");

  CLI11_PARSE(app, argc, argv);

  try {
    if (power->parsed())
      return run_power(power_opts, assume_rates, power_drops, power_format,
                       power_out);
    if (rate->parsed())
      return run_rate(rate_opts, rate_drops, rate_format, rate_out,
                      per_drop_csv, dump_channel);
    if (repro->parsed()) {
      if (repro_opts.preset.empty() && repro_opts.scenario_file.empty())
        repro_opts.preset = "paper-fig2";
      return run_reproduce(figure, repro_opts, out_dir, targets_path,
                           repro_drops);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
