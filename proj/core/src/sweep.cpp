// SPDX-License-Identifier: Apache-2.0

#include "fr3sim/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "fr3sim/link_rate.hpp"
#include "fr3sim/power_model.hpp"

namespace fr3sim {

std::pair<int, int> upa_dims(int m_ant) {
  int rows = 1;
  while (rows * rows < m_ant) rows *= 2;
  if (m_ant <= 0 || m_ant % rows != 0)
    throw std::invalid_argument("antenna counts must be powers of two");
  return {rows, m_ant / rows};
}

namespace {

SweepRow evaluate_point(const Scenario& scenario, const RatePair& full_rates) {
  const double x_dl = scenario.load(Direction::kDownlink);
  const double x_ul = scenario.load(Direction::kUplink);
  const RatePair at_load{full_rates.r_dl_bps * x_dl,
                         full_rates.r_ul_bps * x_ul};
  const PowerBreakdown power = total_power(scenario, at_load);

  SweepRow row;
  row.m_rf = scenario.m_rf();
  row.m_ant = scenario.m_ant();
  row.x_dl = x_dl;
  row.x_ul = x_ul;
  row.mode = scenario.fully_digital() ? "fully-digital" : "hybrid";
  row.digital_load_indep_w = power.digital.load_independent;
  row.digital_load_dep_w = power.digital.load_dependent;
  row.analog_load_indep_w = power.analog.load_independent;
  row.analog_load_dep_w = power.analog.load_dependent;
  row.pa_load_indep_w = power.pa.load_independent;
  row.pa_load_dep_w = power.pa.load_dependent;
  row.total_w = power.total;
  row.r_dl_bps = at_load.r_dl_bps;
  row.r_ul_bps = at_load.r_ul_bps;
  if (row.total_w > 0.0)
    row.ee_bit_per_j = (row.r_dl_bps + row.r_ul_bps) / row.total_w;

  // 30 %-load markers, affine in the load-dependent spans.
  row.pa_at_30_load_w = power.pa.load_independent + 0.3 * power.pa.load_dependent;
  row.r_dl_at_30_load_bps = 0.3 * full_rates.r_dl_bps;
  row.r_ul_at_30_load_bps = 0.3 * full_rates.r_ul_bps;
  ScenarioConfig at30 = scenario.config();
  at30.x_dl = 0.3;
  at30.x_ul = 0.3;
  const PowerBreakdown p30 =
      total_power(Scenario::validate(at30),
                  RatePair{0.3 * full_rates.r_dl_bps, 0.3 * full_rates.r_ul_bps});
  if (p30.total > 0.0)
    row.ee_at_30_load_bit_per_j =
        (row.r_dl_at_30_load_bps + row.r_ul_at_30_load_bps) / p30.total;
  return row;
}

}  // namespace

SweepTable sweep_rf_chains(const ScenarioConfig& base,
                           const std::vector<int>& m_rf_list, double x_dl,
                           double x_ul, const RateOptions& rate_options) {
  std::vector<Scenario> rate_points;   // full load, for the rate pre-pass
  std::vector<Scenario> power_points;  // requested loads
  rate_points.reserve(m_rf_list.size());
  for (int m_rf : m_rf_list) {
    ScenarioConfig c = base;
    c.M_rf = m_rf;
    c.beamforming_mode = BeamformingMode::kAuto;
    c.x_dl = x_dl;
    c.x_ul = x_ul;
    power_points.push_back(Scenario::validate(c));
    c.x_dl = 1.0;
    c.x_ul = 1.0;
    rate_points.push_back(Scenario::validate(c));
  }

  std::vector<RatePair> full_rates(m_rf_list.size());
  if (!rate_options.skip) {
    const std::vector<RateReport> reports =
        ergodic_rates_common(rate_points, rate_options.n_drops,
                             rate_options.seed, rate_options.workers);
    for (size_t i = 0; i < reports.size(); ++i)
      full_rates[i] = RatePair{reports[i].r_dl_bps, reports[i].r_ul_bps};
  }

  SweepTable table;
  table.kind = "rf_chains";
  for (size_t i = 0; i < power_points.size(); ++i)
    table.rows.push_back(evaluate_point(power_points[i], full_rates[i]));
  return table;
}

SweepTable sweep_antennas(const ScenarioConfig& base,
                          const std::vector<int>& m_ant_list) {
  SweepTable table;
  table.kind = "antennas";
  for (int m_ant : m_ant_list) {
    ScenarioConfig c = base;
    std::tie(c.M_ant_rows, c.M_ant_cols) = upa_dims(m_ant);
    if (c.M_rf > m_ant || m_ant % c.M_rf != 0) c.M_rf = m_ant;
    c.beamforming_mode = BeamformingMode::kAuto;
    table.rows.push_back(
        evaluate_point(Scenario::validate(c), RatePair{}));
  }
  return table;
}

SweepTable sweep_loads(const ScenarioConfig& base,
                       const std::vector<std::pair<double, double>>& x_grid,
                       const RateOptions& rate_options) {
  ScenarioConfig full = base;
  full.x_dl = 1.0;
  full.x_ul = 1.0;
  const Scenario rate_scenario = Scenario::validate(full);

  RatePair full_rates;
  if (!rate_options.skip) {
    const RateReport report =
        ergodic_rates(rate_scenario, rate_options.n_drops, rate_options.seed,
                      rate_options.workers);
    full_rates = RatePair{report.r_dl_bps, report.r_ul_bps};
  }

  SweepTable table;
  table.kind = "loads";
  for (const auto& [x_dl, x_ul] : x_grid) {
    ScenarioConfig c = base;
    c.x_dl = x_dl;
    c.x_ul = x_ul;
    table.rows.push_back(evaluate_point(Scenario::validate(c), full_rates));
  }
  return table;
}

namespace {

constexpr const char* kCsvHeader =
    "m_rf,m_ant,x_dl,x_ul,mode,digital_load_indep_w,digital_load_dep_w,"
    "analog_load_indep_w,analog_load_dep_w,pa_load_indep_w,pa_load_dep_w,"
    "total_w,r_dl_bps,r_ul_bps,ee_bit_per_j,pa_at_30_load_w,"
    "r_dl_at_30_load_bps,r_ul_at_30_load_bps,ee_at_30_load_bit_per_j";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << kCsvHeader << '\n';
  for (const SweepRow& r : table.rows) {
    out << r.m_rf << ',' << r.m_ant << ',' << r.x_dl << ',' << r.x_ul << ','
        << r.mode << ',' << r.digital_load_indep_w << ','
        << r.digital_load_dep_w << ',' << r.analog_load_indep_w << ','
        << r.analog_load_dep_w << ',' << r.pa_load_indep_w << ','
        << r.pa_load_dep_w << ',' << r.total_w << ',' << r.r_dl_bps << ','
        << r.r_ul_bps << ',' << r.ee_bit_per_j << ',' << r.pa_at_30_load_w
        << ',' << r.r_dl_at_30_load_bps << ',' << r.r_ul_at_30_load_bps << ','
        << r.ee_at_30_load_bit_per_j << '\n';
  }
  return out.str();
}

SweepTable from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unrecognized sweep CSV header");

  SweepTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 19) throw std::runtime_error("malformed sweep CSV row");
    SweepRow r;
    r.m_rf = std::stoi(f[0]);
    r.m_ant = std::stoi(f[1]);
    r.x_dl = std::stod(f[2]);
    r.x_ul = std::stod(f[3]);
    r.mode = f[4];
    r.digital_load_indep_w = std::stod(f[5]);
    r.digital_load_dep_w = std::stod(f[6]);
    r.analog_load_indep_w = std::stod(f[7]);
    r.analog_load_dep_w = std::stod(f[8]);
    r.pa_load_indep_w = std::stod(f[9]);
    r.pa_load_dep_w = std::stod(f[10]);
    r.total_w = std::stod(f[11]);
    r.r_dl_bps = std::stod(f[12]);
    r.r_ul_bps = std::stod(f[13]);
    r.ee_bit_per_j = std::stod(f[14]);
    r.pa_at_30_load_w = std::stod(f[15]);
    r.r_dl_at_30_load_bps = std::stod(f[16]);
    r.r_ul_at_30_load_bps = std::stod(f[17]);
    r.ee_at_30_load_bit_per_j = std::stod(f[18]);
    table.rows.push_back(std::move(r));
  }
  return table;
}

namespace {

nlohmann::json row_to_json(const SweepRow& r) {
  return {{"m_rf", r.m_rf},
          {"m_ant", r.m_ant},
          {"x_dl", r.x_dl},
          {"x_ul", r.x_ul},
          {"mode", r.mode},
          {"digital_load_indep_w", r.digital_load_indep_w},
          {"digital_load_dep_w", r.digital_load_dep_w},
          {"analog_load_indep_w", r.analog_load_indep_w},
          {"analog_load_dep_w", r.analog_load_dep_w},
          {"pa_load_indep_w", r.pa_load_indep_w},
          {"pa_load_dep_w", r.pa_load_dep_w},
          {"total_w", r.total_w},
          {"r_dl_bps", r.r_dl_bps},
          {"r_ul_bps", r.r_ul_bps},
          {"ee_bit_per_j", r.ee_bit_per_j},
          {"pa_at_30_load_w", r.pa_at_30_load_w},
          {"r_dl_at_30_load_bps", r.r_dl_at_30_load_bps},
          {"r_ul_at_30_load_bps", r.r_ul_at_30_load_bps},
          {"ee_at_30_load_bit_per_j", r.ee_at_30_load_bit_per_j}};
}

}  // namespace

std::string to_json(const SweepTable& table) {
  nlohmann::json j;
  j["kind"] = table.kind;
  j["rows"] = nlohmann::json::array();
  for (const SweepRow& r : table.rows) j["rows"].push_back(row_to_json(r));
  return j.dump(2);
}

std::string to_plot_json(const SweepTable& table) {
  nlohmann::json j;
  j["kind"] = table.kind;
  j["x_label"] = table.kind == "antennas" ? "m_ant"
                 : table.kind == "loads"  ? "x_dl+x_ul"
                                          : "m_rf";
  nlohmann::json x = nlohmann::json::array();
  for (const SweepRow& r : table.rows) {
    if (table.kind == "antennas")
      x.push_back(r.m_ant);
    else if (table.kind == "loads")
      x.push_back(r.x_dl + r.x_ul);
    else
      x.push_back(r.m_rf);
  }
  j["x"] = x;

  auto series = [&table](auto getter) {
    nlohmann::json values = nlohmann::json::array();
    for (const SweepRow& r : table.rows) values.push_back(getter(r));
    return values;
  };
  j["stacks"] = {
      {{"name", "digital"},
       {"load_independent",
        series([](const SweepRow& r) { return r.digital_load_indep_w; })},
       {"load_dependent",
        series([](const SweepRow& r) { return r.digital_load_dep_w; })}},
      {{"name", "analog"},
       {"load_independent",
        series([](const SweepRow& r) { return r.analog_load_indep_w; })},
       {"load_dependent",
        series([](const SweepRow& r) { return r.analog_load_dep_w; })}},
      {{"name", "pa"},
       {"load_independent",
        series([](const SweepRow& r) { return r.pa_load_indep_w; })},
       {"load_dependent",
        series([](const SweepRow& r) { return r.pa_load_dep_w; })}},
  };
  j["rates"] = {
      {"r_dl_bps", series([](const SweepRow& r) { return r.r_dl_bps; })},
      {"r_ul_bps", series([](const SweepRow& r) { return r.r_ul_bps; })},
      {"r_dl_at_30_load_bps",
       series([](const SweepRow& r) { return r.r_dl_at_30_load_bps; })},
      {"r_ul_at_30_load_bps",
       series([](const SweepRow& r) { return r.r_ul_at_30_load_bps; })},
  };
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace fr3sim
