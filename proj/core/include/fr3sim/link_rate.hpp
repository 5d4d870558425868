// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fr3sim/beamforming.hpp"
#include "fr3sim/channel.hpp"
#include "fr3sim/power_model.hpp"
#include "fr3sim/scenario.hpp"

namespace fr3sim {

struct RateReport {
  double r_dl_bps = 0.0;
  double r_ul_bps = 0.0;
  double stderr_dl_bps = 0.0;
  double stderr_ul_bps = 0.0;
  double ee_bit_per_j = 0.0;  // set by energy_efficiency
  int n_drops = 0;
  int n_sc_eval = 0;
  std::uint64_t seed = 0;
  std::string channel_model;
  int degenerate_drops = 0;  // drops regenerated due to rank deficiency
  // Per-user, per-subcarrier linear SINRs averaged over drops (K x n_sc).
  Eigen::MatrixXd mean_sinr_dl;
  Eigen::MatrixXd mean_sinr_ul;
  // Raw per-drop sums of log2(1 + SINR) over users and subcarriers.
  std::vector<double> drop_sum_dl;
  std::vector<double> drop_sum_ul;

  std::string to_json() const;
  void write_drop_sums_csv(const std::string& path) const;
};

/// Per-user DL SINRs of one subcarrier.
Eigen::VectorXd sinr_dl(const Eigen::MatrixXcd& h, const BeamformerSet& set,
                        int subcarrier, const Scenario& scenario);

/// Per-user UL SINRs; the effective noise variance is the thermal noise
/// scaled by the combiner row power of each user.
Eigen::VectorXd sinr_ul(const Eigen::MatrixXcd& h, const BeamformerSet& set,
                        int subcarrier, const Scenario& scenario);

/// Number of workers to use: explicit request, else FR3SIM_THREADS, else the
/// hardware concurrency.
int resolve_worker_count(int requested);

/// Monte Carlo ergodic sum rates over n_drops independent channel drops.
/// Deterministic for fixed (scenario, n_drops, seed) independent of the
/// worker count.
RateReport ergodic_rates(const Scenario& scenario, int n_drops,
                         std::uint64_t seed, int workers = 0);

/// Evaluates several scenarios against common random channels (all must
/// share K, the array geometry and the channel configuration). Drops are
/// generated once and reused, which keeps sweeps over M_rf on common random
/// numbers and saves the regeneration cost.
std::vector<RateReport> ergodic_rates_common(std::span<const Scenario> points,
                                             int n_drops, std::uint64_t seed,
                                             int workers = 0);

/// (R_DL + R_UL) / P_cons in bit/J.
double energy_efficiency(const RateReport& rates, const PowerBreakdown& power);

}  // namespace fr3sim
