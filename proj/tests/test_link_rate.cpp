// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "fr3sim/link_rate.hpp"
#include "test_util.hpp"

using namespace fr3sim;
using fr3sim::test::rel_err;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.M_ant_rows = 4;
  c.M_ant_cols = 4;
  c.M_rf = 8;
  c.K = 3;
  c.P_t_dl = 1.0;
  c.channel.model = ChannelModel::kRayleigh;
  c.channel.n_sc_eval = 4;
  return c;
}

}  // namespace

TEST_SUITE("linkrate") {

TEST_CASE("single-user fully-digital SINR hits the closed form") {
  ScenarioConfig c;
  c.M_ant_rows = 2;
  c.M_ant_cols = 2;
  c.M_rf = 4;
  c.K = 1;
  c.P_t_dl = 2.0;
  const Scenario s = Scenario::validate(c);
  REQUIRE(s.fully_digital());

  ChannelRealization channel;
  channel.freq_hz = {0.0};
  Eigen::MatrixXcd h(1, 4);
  h << std::complex<double>(1, 0), std::complex<double>(0, 1),
      std::complex<double>(-1, 0), std::complex<double>(0, -1);
  channel.h = {h};  // ||h||^2 = M_ant = 4

  const BeamformerSet set = build_beamformers(channel, s);
  const Eigen::VectorXd sinr = sinr_dl(channel.h[0], set, 0, s);
  const double expected =
      2.0 * 4.0 / (c.q_dl * s.noise_power(Direction::kDownlink));
  CHECK(rel_err(sinr(0), expected) < 1e-12);
}

TEST_CASE("zero-forced interference is negligible in the denominator") {
  const ScenarioConfig c = small_config();
  const Scenario s = Scenario::validate(c);
  const ChannelRealization channel = to_subarray_order(
      scenario_channel(s, 42, 0), s);
  const BeamformerSet set = build_beamformers(channel, s);
  for (int nu = 0; nu < channel.n_sc(); ++nu) {
    const Eigen::VectorXd sinr = sinr_dl(channel.h[nu], set, nu, s);
    // With interference nulled the SINR equals signal over pure noise.
    const Eigen::MatrixXcd gains =
        effective_channel(channel.h[nu], set) * set.w_dig[nu];
    for (int k = 0; k < s.k(); ++k) {
      const double no_interference =
          s.p_t_dl() * std::norm(gains(k, k)) /
          (c.q_dl * s.noise_power(Direction::kDownlink));
      CHECK(rel_err(sinr(k), no_interference) < 1e-12);
    }
  }
}

TEST_CASE("vanishing transmit power zeroes the SINRs") {
  ScenarioConfig c = small_config();
  c.P_t_dl = 1e-300;
  const Scenario s = Scenario::validate(c);
  const ChannelRealization channel =
      to_subarray_order(scenario_channel(s, 1, 0), s);
  const BeamformerSet set = build_beamformers(channel, s);
  const Eigen::VectorXd sinr = sinr_dl(channel.h[0], set, 0, s);
  for (int k = 0; k < s.k(); ++k) CHECK(sinr(k) < 1e-250);
}

TEST_CASE("single-antenna uplink SINR hits the closed form") {
  ScenarioConfig c;
  c.M_ant_rows = 1;
  c.M_ant_cols = 1;
  c.M_rf = 1;
  c.K = 1;
  c.P_t_dl = 0.05;
  const Scenario s = Scenario::validate(c);

  ChannelRealization channel;
  channel.freq_hz = {0.0};
  channel.h = {Eigen::MatrixXcd::Ones(1, 1)};
  const BeamformerSet set = build_beamformers(channel, s);
  const Eigen::VectorXd sinr = sinr_ul(channel.h[0], set, 0, s);
  const double expected =
      c.P_t_ul / (c.q_ul * s.noise_power(Direction::kUplink));
  CHECK(rel_err(sinr(0), expected) < 1e-12);
}

TEST_CASE("unit-norm combiner rows keep the thermal noise variance") {
  ScenarioConfig c;
  c.M_ant_rows = 2;
  c.M_ant_cols = 1;
  c.M_rf = 2;
  c.K = 2;
  c.P_t_dl = 1.0;
  const Scenario s = Scenario::validate(c);

  BeamformerSet set;
  set.fully_digital = true;
  set.w_ana = Eigen::MatrixXcd::Identity(2, 2);
  set.w_dig = {Eigen::MatrixXcd::Identity(2, 2)};  // unit-norm rows

  const Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::VectorXd sinr = sinr_ul(h, set, 0, s);
  const double expected =
      c.P_t_ul / (c.q_ul * s.noise_power(Direction::kUplink));
  CHECK(rel_err(sinr(0), expected) < 1e-12);
  CHECK(rel_err(sinr(1), expected) < 1e-12);
}

TEST_CASE("uplink effective noise matches explicit noise propagation") {
  const ScenarioConfig c = small_config();
  const Scenario s = Scenario::validate(c);
  const ChannelRealization channel =
      to_subarray_order(scenario_channel(s, 9, 0), s);
  const BeamformerSet set = build_beamformers(channel, s);

  // Monte Carlo oracle: push explicit noise vectors through the dense
  // combiner chain and compare the output variance with the model's
  // sigma^2 ||v_k^T V_ana||^2.
  const Eigen::MatrixXcd v_ana = set.w_ana.adjoint();
  const Eigen::MatrixXcd v_dig = set.w_dig[0].adjoint();
  const double sigma2 = s.noise_power(Direction::kUplink);

  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma2 / 2.0));
  const int n_samples = 100000;
  Eigen::VectorXd measured = Eigen::VectorXd::Zero(s.k());
  for (int i = 0; i < n_samples; ++i) {
    Eigen::VectorXcd noise(s.m_ant());
    for (int m = 0; m < s.m_ant(); ++m)
      noise(m) = std::complex<double>(normal(rng), normal(rng));
    const Eigen::VectorXcd filtered = v_dig * (v_ana * noise);
    for (int k = 0; k < s.k(); ++k) measured(k) += std::norm(filtered(k));
  }
  measured /= n_samples;

  for (int k = 0; k < s.k(); ++k) {
    const Eigen::RowVectorXcd row = v_dig.row(k) * v_ana;
    const double model = sigma2 * row.squaredNorm();
    CHECK(rel_err(measured(k), model) < 0.03);
  }
}

TEST_CASE("zero load or zero duration produce exactly zero rate") {
  ScenarioConfig c = small_config();
  c.x_dl = 0.0;
  const RateReport r = ergodic_rates(Scenario::validate(c), 3, 1);
  CHECK(r.r_dl_bps == 0.0);
  CHECK(r.r_ul_bps > 0.0);

  ScenarioConfig c2 = small_config();
  c2.tau_ul = 0.0;
  const RateReport r2 = ergodic_rates(Scenario::validate(c2), 3, 1);
  CHECK(r2.r_ul_bps == 0.0);
}

TEST_CASE("rates scale linearly with load at a common seed") {
  ScenarioConfig c = small_config();
  c.x_dl = 0.4;
  c.x_ul = 0.2;
  const RateReport low = ergodic_rates(Scenario::validate(c), 5, 3);
  c.x_dl = 0.8;
  c.x_ul = 0.4;
  const RateReport high = ergodic_rates(Scenario::validate(c), 5, 3);
  CHECK(rel_err(high.r_dl_bps, 2.0 * low.r_dl_bps) < 1e-12);
  CHECK(rel_err(high.r_ul_bps, 2.0 * low.r_ul_bps) < 1e-12);
}

TEST_CASE("identical seeds reproduce the report bit for bit") {
  const Scenario s = Scenario::validate(small_config());
  const RateReport a = ergodic_rates(s, 4, 11);
  const RateReport b = ergodic_rates(s, 4, 11);
  CHECK(a.r_dl_bps == b.r_dl_bps);
  CHECK(a.r_ul_bps == b.r_ul_bps);
  CHECK(a.drop_sum_dl == b.drop_sum_dl);
  CHECK(a.drop_sum_ul == b.drop_sum_ul);

  const RateReport c = ergodic_rates(s, 4, 12);
  CHECK(a.r_dl_bps != c.r_dl_bps);
}

TEST_CASE("the report is independent of the worker count") {
  const Scenario s = Scenario::validate(small_config());
  const RateReport one = ergodic_rates(s, 6, 21, 1);
  const RateReport four = ergodic_rates(s, 6, 21, 4);
  CHECK(one.r_dl_bps == four.r_dl_bps);
  CHECK(one.r_ul_bps == four.r_ul_bps);
  CHECK(one.drop_sum_dl == four.drop_sum_dl);
}

TEST_CASE("doubling the drops tightens the standard error") {
  const Scenario s = Scenario::validate(small_config());
  const RateReport narrow = ergodic_rates(s, 100, 5);
  const RateReport wide = ergodic_rates(s, 25, 5);
  CHECK(narrow.stderr_dl_bps < wide.stderr_dl_bps);
  const double ratio = wide.stderr_dl_bps / narrow.stderr_dl_bps;
  CHECK(ratio > 1.2);  // ~2 expected for a consistent estimator
  CHECK(ratio < 3.4);
}

TEST_CASE("common-random evaluation matches the standalone path") {
  ScenarioConfig c = small_config();
  std::vector<Scenario> points;
  c.M_rf = 4;
  points.push_back(Scenario::validate(c));
  c.M_rf = 8;
  points.push_back(Scenario::validate(c));
  const auto reports = ergodic_rates_common(points, 4, 77);
  const RateReport alone = ergodic_rates(points[0], 4, 77);
  CHECK(reports[0].r_dl_bps == alone.r_dl_bps);
  CHECK(reports[0].r_ul_bps == alone.r_ul_bps);
  CHECK(reports[1].r_dl_bps != reports[0].r_dl_bps);
}

TEST_CASE("degenerate drops regenerate from an independent substream") {
  const Scenario s = Scenario::validate(small_config());
  const auto base = scenario_channel(s, 42, 3, 0);
  const auto retry = scenario_channel(s, 42, 3, 1);
  const auto retry_again = scenario_channel(s, 42, 3, 1);
  CHECK(base.h[0] != retry.h[0]);
  CHECK(retry.h[0] == retry_again.h[0]);
}

TEST_CASE("energy efficiency ties rates to consumed power") {
  const Scenario s = Scenario::validate(paper_fig2_preset());
  const PowerBreakdown power = total_power(s, RatePair{13.44e9, 2.35e9});
  RateReport rates;
  rates.r_dl_bps = 13.44e9;
  rates.r_ul_bps = 2.35e9;
  const double ee = energy_efficiency(rates, power);
  CHECK(ee == doctest::Approx((13.44e9 + 2.35e9) / power.total));

  rates.r_dl_bps = 0.0;
  rates.r_ul_bps = 0.0;
  CHECK(energy_efficiency(rates, power) == 0.0);
}

TEST_CASE("drop sums stream to CSV") {
  const Scenario s = Scenario::validate(small_config());
  RateReport r = ergodic_rates(s, 3, 2);
  const std::string path = "drop_sums_test.csv";
  r.write_drop_sums_csv(path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "drop,sum_log2_dl,sum_log2_ul");
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 3);
  in.close();
  std::remove(path.c_str());
}

}  // TEST_SUITE
