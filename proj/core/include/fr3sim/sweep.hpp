// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fr3sim/scenario.hpp"

namespace fr3sim {

/// Monte Carlo settings of the rate pre-pass feeding the encoder/decoder
/// power terms (and the rate/EE columns).
struct RateOptions {
  int n_drops = 200;
  std::uint64_t seed = 42;
  int workers = 0;
  bool skip = false;  // leave all rate columns at zero
};

struct SweepRow {
  int m_rf = 0;
  int m_ant = 0;
  double x_dl = 0.0;
  double x_ul = 0.0;
  std::string mode;  // "hybrid" or "fully-digital"
  double digital_load_indep_w = 0.0;
  double digital_load_dep_w = 0.0;
  double analog_load_indep_w = 0.0;
  double analog_load_dep_w = 0.0;
  double pa_load_indep_w = 0.0;
  double pa_load_dep_w = 0.0;
  double total_w = 0.0;
  double r_dl_bps = 0.0;
  double r_ul_bps = 0.0;
  double ee_bit_per_j = 0.0;
  // Affine 30 %-load markers derived from the same run.
  double pa_at_30_load_w = 0.0;
  double r_dl_at_30_load_bps = 0.0;
  double r_ul_at_30_load_bps = 0.0;
  double ee_at_30_load_bit_per_j = 0.0;
};

struct SweepTable {
  std::string kind;  // rf_chains | antennas | loads
  std::vector<SweepRow> rows;
};

/// Near-square power-of-two UPA factorization for a swept antenna count.
std::pair<int, int> upa_dims(int m_ant);

/// RF-chain sweep at fixed array size; the M_rf = M_ant endpoint runs
/// fully-digital. Each grid point gets a rate pre-pass on common random
/// channels before the power evaluation.
SweepTable sweep_rf_chains(const ScenarioConfig& base,
                           const std::vector<int>& m_rf_list, double x_dl,
                           double x_ul, const RateOptions& rate_options);

/// Antenna sweep with the per-PA drive held fixed (P_t_dl scales with M_ant
/// unless pinned); rate columns stay zero, the PA columns are closed-form.
SweepTable sweep_antennas(const ScenarioConfig& base,
                          const std::vector<int>& m_ant_list);

/// Load-grid sweep; the rate pre-pass runs once at full load and scales.
SweepTable sweep_loads(const ScenarioConfig& base,
                       const std::vector<std::pair<double, double>>& x_grid,
                       const RateOptions& rate_options);

std::string to_csv(const SweepTable& table);
SweepTable from_csv(const std::string& csv_text);
std::string to_json(const SweepTable& table);
/// Renderer-agnostic stacked-bar data (x values plus named series).
std::string to_plot_json(const SweepTable& table);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fr3sim
