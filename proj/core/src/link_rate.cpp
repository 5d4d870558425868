// SPDX-License-Identifier: Apache-2.0

#include "fr3sim/link_rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace fr3sim {
namespace {

constexpr int kMaxRetries = 8;

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / v.size();
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1) / v.size());
}

struct DropAccumulator {
  double sum_dl = 0.0;
  double sum_ul = 0.0;
  Eigen::MatrixXd sinr_dl_acc;
  Eigen::MatrixXd sinr_ul_acc;
  int retries = 0;
};

}  // namespace

Eigen::VectorXd sinr_dl(const Eigen::MatrixXcd& h, const BeamformerSet& set,
                        int subcarrier, const Scenario& scenario) {
  const Eigen::MatrixXcd& w_dig = set.w_dig.at(subcarrier);
  // Effective gains: row k holds h_k^T W_ana w_dig over all streams.
  const Eigen::MatrixXcd gains = effective_channel(h, set) * w_dig;
  const double p_t = scenario.p_t_dl();
  const double noise =
      scenario.data_subcarriers(Direction::kDownlink) *
      scenario.noise_power(Direction::kDownlink);

  const int k = scenario.k();
  Eigen::VectorXd out(k);
  for (int user = 0; user < k; ++user) {
    const double signal = std::norm(gains(user, user));
    const double row_power = gains.row(user).squaredNorm();
    const double interference = row_power - signal;
    out(user) = p_t * signal / (p_t * interference + noise);
  }
  return out;
}

Eigen::VectorXd sinr_ul(const Eigen::MatrixXcd& h, const BeamformerSet& set,
                        int subcarrier, const Scenario& scenario) {
  const Eigen::MatrixXcd& w_dig = set.w_dig.at(subcarrier);
  const double p_t = scenario.config().P_t_ul;
  const double q = scenario.data_subcarriers(Direction::kUplink);
  const double sigma2 = scenario.noise_power(Direction::kUplink);

  const int k = scenario.k();
  Eigen::VectorXd out(k);
  for (int user = 0; user < k; ++user) {
    // v_k^T V_ana = (W_ana w_dig,k)^H by reciprocity of the combiner stages.
    const Eigen::VectorXcd combined = apply_analog(set, w_dig.col(user));
    const Eigen::RowVectorXcd row = combined.adjoint();
    const Eigen::RowVectorXcd gains = row * h.conjugate().transpose();
    const double signal = std::norm(gains(user));
    const double interference = gains.squaredNorm() - signal;
    const double noise = q * sigma2 * row.squaredNorm();
    out(user) = p_t * signal / (p_t * interference + noise);
  }
  return out;
}

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FR3SIM_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Evaluates every scenario point against the drop's channel; returns one
// accumulator per point.
void evaluate_drop(std::span<const Scenario> points, std::uint64_t seed,
                   int drop, std::vector<DropAccumulator>& out) {
  const Scenario& reference = points.front();
  int retry = 0;
  while (true) {
    const ChannelRealization canonical =
        scenario_channel(reference, seed, drop, retry);
    try {
      for (size_t p = 0; p < points.size(); ++p) {
        const Scenario& s = points[p];
        const ChannelRealization channel = to_subarray_order(canonical, s);
        const BeamformerSet set = build_beamformers(channel, s);
        DropAccumulator acc;
        acc.sinr_dl_acc.setZero(s.k(), channel.n_sc());
        acc.sinr_ul_acc.setZero(s.k(), channel.n_sc());
        for (int nu = 0; nu < channel.n_sc(); ++nu) {
          const Eigen::VectorXd dl = sinr_dl(channel.h[nu], set, nu, s);
          const Eigen::VectorXd ul = sinr_ul(channel.h[nu], set, nu, s);
          acc.sinr_dl_acc.col(nu) = dl;
          acc.sinr_ul_acc.col(nu) = ul;
          for (int user = 0; user < s.k(); ++user) {
            acc.sum_dl += std::log2(1.0 + dl(user));
            acc.sum_ul += std::log2(1.0 + ul(user));
          }
        }
        acc.retries = retry;
        out[p] = std::move(acc);
      }
      return;
    } catch (const DegenerateDropError&) {
      if (++retry > kMaxRetries)
        throw std::runtime_error(
            "channel drops stay rank deficient after retries");
    }
  }
}

}  // namespace

std::vector<RateReport> ergodic_rates_common(std::span<const Scenario> points,
                                             int n_drops, std::uint64_t seed,
                                             int workers) {
  if (points.empty()) return {};
  if (n_drops < 1) throw std::invalid_argument("n_drops must be at least 1");
  const Scenario& ref = points.front();
  for (const Scenario& s : points) {
    if (s.k() != ref.k() || s.m_ant() != ref.m_ant() ||
        s.config().channel.n_sc_eval != ref.config().channel.n_sc_eval)
      throw std::invalid_argument(
          "common-random-number evaluation requires matching channel "
          "dimensions");
  }

  const int n_points = static_cast<int>(points.size());
  std::vector<std::vector<DropAccumulator>> results(
      n_drops, std::vector<DropAccumulator>(n_points));

  const int n_workers = std::min(resolve_worker_count(workers), n_drops);
  if (n_workers <= 1) {
    for (int d = 0; d < n_drops; ++d)
      evaluate_drop(points, seed, d, results[d]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      threads.emplace_back([&, w] {
        for (int d = w; d < n_drops; d += n_workers)
          evaluate_drop(points, seed, d, results[d]);
      });
    }
    for (std::thread& t : threads) t.join();
  }

  std::vector<RateReport> reports(n_points);
  for (int p = 0; p < n_points; ++p) {
    const Scenario& s = points[p];
    RateReport& report = reports[p];
    report.n_drops = n_drops;
    report.n_sc_eval = s.config().channel.n_sc_eval;
    report.seed = seed;
    report.channel_model = to_string(s.config().channel.model);
    report.mean_sinr_dl.setZero(s.k(), report.n_sc_eval);
    report.mean_sinr_ul.setZero(s.k(), report.n_sc_eval);
    report.drop_sum_dl.reserve(n_drops);
    report.drop_sum_ul.reserve(n_drops);

    for (int d = 0; d < n_drops; ++d) {
      const DropAccumulator& acc = results[d][p];
      report.drop_sum_dl.push_back(acc.sum_dl);
      report.drop_sum_ul.push_back(acc.sum_ul);
      report.mean_sinr_dl += acc.sinr_dl_acc;
      report.mean_sinr_ul += acc.sinr_ul_acc;
      if (p == 0) report.degenerate_drops += acc.retries;
    }
    report.mean_sinr_dl /= n_drops;
    report.mean_sinr_ul /= n_drops;
    if (p > 0) report.degenerate_drops = reports[0].degenerate_drops;

    const double mean_dl = mean_of(report.drop_sum_dl);
    const double mean_ul = mean_of(report.drop_sum_ul);
    // R_i = x_i tau_i (B_eff / q_i) (q_i / N_eval) E{sum log2(1 + SINR)}
    const double scale_dl = s.load(Direction::kDownlink) *
                            s.tau(Direction::kDownlink) * s.b_eff() /
                            report.n_sc_eval;
    const double scale_ul = s.load(Direction::kUplink) *
                            s.tau(Direction::kUplink) * s.b_eff() /
                            report.n_sc_eval;
    report.r_dl_bps = scale_dl * mean_dl;
    report.r_ul_bps = scale_ul * mean_ul;
    report.stderr_dl_bps = scale_dl * stderr_of(report.drop_sum_dl, mean_dl);
    report.stderr_ul_bps = scale_ul * stderr_of(report.drop_sum_ul, mean_ul);
  }
  return reports;
}

RateReport ergodic_rates(const Scenario& scenario, int n_drops,
                         std::uint64_t seed, int workers) {
  return ergodic_rates_common({&scenario, 1}, n_drops, seed, workers).front();
}

double energy_efficiency(const RateReport& rates, const PowerBreakdown& power) {
  if (!(power.total > 0.0))
    throw std::invalid_argument("energy efficiency requires positive power");
  return (rates.r_dl_bps + rates.r_ul_bps) / power.total;
}

std::string RateReport::to_json() const {
  nlohmann::json j;
  j["r_dl_bps"] = r_dl_bps;
  j["r_ul_bps"] = r_ul_bps;
  j["r_dl_gbps"] = r_dl_bps / 1e9;
  j["r_ul_gbps"] = r_ul_bps / 1e9;
  j["stderr_dl_bps"] = stderr_dl_bps;
  j["stderr_ul_bps"] = stderr_ul_bps;
  if (ee_bit_per_j > 0.0) j["ee_bit_per_j"] = ee_bit_per_j;
  j["n_drops"] = n_drops;
  j["n_sc_eval"] = n_sc_eval;
  j["seed"] = seed;
  j["channel_model"] = channel_model;
  j["degenerate_drops"] = degenerate_drops;
  return j.dump(2);
}

void RateReport::write_drop_sums_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "drop,sum_log2_dl,sum_log2_ul\n";
  out.precision(17);
  for (size_t d = 0; d < drop_sum_dl.size(); ++d)
    out << d << ',' << drop_sum_dl[d] << ',' << drop_sum_ul[d] << '\n';
}

}  // namespace fr3sim
