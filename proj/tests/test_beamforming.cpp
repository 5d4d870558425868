// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fr3sim/beamforming.hpp"
#include "test_util.hpp"

using namespace fr3sim;
using fr3sim::test::rel_err;

namespace {

Scenario small_hybrid(int rows = 4, int cols = 4, int m_rf = 4, int k = 2) {
  ScenarioConfig c;
  c.M_ant_rows = rows;
  c.M_ant_cols = cols;
  c.M_rf = m_rf;
  c.K = k;
  c.P_t_dl = 1.0;
  c.beamforming_mode = BeamformingMode::kHybrid;
  return Scenario::validate(c);
}

ChannelRealization rayleigh_for(const Scenario& s, int n_sc, std::uint64_t seed,
                                int drop) {
  return to_subarray_order(
      generate_rayleigh(s.k(), s.m_ant(), n_sc, false, seed, drop), s);
}

Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = std::complex<double>(normal(rng), normal(rng));
  return m;
}

}  // namespace

TEST_SUITE("beamforming") {

TEST_CASE("a ray on a grid direction selects the matching beam everywhere") {
  const Scenario s = small_hybrid();  // 4x4 array, 4 subarrays of 4x1
  const ArrayGeometry g = ArrayGeometry::of(s);
  REQUIRE(g.sub_rows == 4);
  REQUIRE(g.sub_cols == 1);

  // Beam p = 1 of a 4-element vertical subarray: u = 2p / 4. The downlink
  // gain is h^T W_ana w, so the matched channel row is the conjugate
  // steering vector.
  const double el = std::asin(0.5);
  ChannelRealization channel;
  channel.model = "synthetic";
  channel.freq_hz = {0.0};
  Eigen::MatrixXcd h(s.k(), s.m_ant());
  const Eigen::VectorXcd steer = upa_steering(g, 0.0, el);
  for (int user = 0; user < s.k(); ++user)
    h.row(user) = (1.0 + user) * steer.adjoint();
  channel.h = {h};

  std::vector<int> beams;
  const Eigen::MatrixXcd codebook = dft_codebook(4, 1);
  select_analog(channel, codebook, 4, &beams);
  for (int beam : beams) CHECK(beam == 1);
}

TEST_CASE("one-element subarrays make selection a no-op") {
  const Scenario s = small_hybrid(4, 4, 16, 2);
  REQUIRE(s.m_ps() == 1);
  const ChannelRealization channel = rayleigh_for(s, 2, 5, 0);
  const BeamformerSet set = build_beamformers(channel, s);
  CHECK((set.w_ana - Eigen::MatrixXcd::Identity(16, 16)).norm() <
        1e-12);
}

TEST_CASE("selection attains the exhaustive maximum of the metric") {
  const Scenario s = small_hybrid(8, 4, 8, 3);  // subarrays of 4x1
  const ChannelRealization channel = rayleigh_for(s, 3, 123, 1);
  const Eigen::MatrixXcd codebook =
      dft_codebook(s.subarray_rows(), s.subarray_cols());
  std::vector<int> beams;
  select_analog(channel, codebook, s.m_ps(), &beams);

  for (int r = 0; r < s.m_rf(); ++r) {
    double best_score = -1.0;
    int best_beam = -1;
    for (int b = 0; b < codebook.cols(); ++b) {
      double score = 0.0;
      for (const auto& h : channel.h)
        for (int user = 0; user < s.k(); ++user)
          score += std::norm(
              (h.row(user).segment(r * s.m_ps(), s.m_ps()) * codebook.col(b))
                  .value());
      if (score > best_score) {
        best_score = score;
        best_beam = b;
      }
    }
    CHECK(beams[r] == best_beam);
  }
}

TEST_CASE("zero forcing reduces to a matched filter for one user") {
  std::mt19937_64 rng(7);
  const Eigen::MatrixXcd h = random_matrix(1, 8, rng);
  const Eigen::MatrixXcd w = zf_digital(h);
  const std::complex<double> corr = (h.adjoint().col(0)).dot(w.col(0));
  CHECK(std::abs(corr) / (h.norm() * w.norm()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero forcing inverts the effective channel") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXcd h_eff = random_matrix(8, 16, rng);
    const Eigen::MatrixXcd w = zf_digital(h_eff);
    CHECK((h_eff * w - Eigen::MatrixXcd::Identity(8, 8)).norm() < 1e-10);

    // Independent oracle: minimum-norm least-squares solve per column.
    const auto cod = h_eff.completeOrthogonalDecomposition();
    for (int k = 0; k < 8; ++k) {
      const Eigen::VectorXcd oracle =
          cod.solve(Eigen::VectorXcd::Unit(8, k));
      CHECK((w.col(k) - oracle).norm() < 1e-8 * oracle.norm());
    }
  }
}

TEST_CASE("identity effective channel gives a scaled identity precoder") {
  const Eigen::MatrixXcd w = zf_digital(Eigen::MatrixXcd::Identity(4, 4));
  CHECK((w - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("rank-deficient channels raise a degenerate-drop error") {
  Eigen::MatrixXcd h_eff(2, 4);
  h_eff.row(0) = Eigen::RowVectorXcd::Ones(4);
  h_eff.row(1) = 2.0 * Eigen::RowVectorXcd::Ones(4);
  CHECK_THROWS_AS(zf_digital(h_eff), DegenerateDropError);
}

TEST_CASE("fully-digital identity channel build") {
  ScenarioConfig c;
  c.M_ant_rows = 2;
  c.M_ant_cols = 1;
  c.M_rf = 2;
  c.K = 2;
  c.P_t_dl = 1.0;
  const Scenario s = Scenario::validate(c);
  REQUIRE(s.fully_digital());

  ChannelRealization channel;
  channel.freq_hz = {0.0};
  channel.h = {Eigen::MatrixXcd::Identity(2, 2)};
  const BeamformerSet set = build_beamformers(channel, s);
  CHECK((set.w_ana - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
  CHECK((set.w_dig[0] -
         Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0))
            .norm() < 1e-12);
}

TEST_CASE("square hybrid systems invert exactly") {
  const Scenario s = small_hybrid(4, 4, 4, 4);  // M_rf = K = 4
  const ChannelRealization channel = rayleigh_for(s, 2, 31, 0);
  const BeamformerSet set = build_beamformers(channel, s);
  for (int nu = 0; nu < channel.n_sc(); ++nu) {
    const Eigen::MatrixXcd h_eff = effective_channel(channel.h[nu], set);
    const Eigen::MatrixXcd product = h_eff * set.w_dig[nu];
    // Proportional to the identity after joint normalization.
    const std::complex<double> scale = product(0, 0);
    CHECK((product - scale * Eigen::MatrixXcd::Identity(4, 4)).norm() <
          1e-10 * std::abs(scale));
  }
}

TEST_CASE("structural invariants of a built beamformer") {
  const Scenario s = small_hybrid(8, 8, 16, 4);  // subarrays of 4x1
  const ChannelRealization channel = rayleigh_for(s, 4, 2024, 3);
  const BeamformerSet set = build_beamformers(channel, s);
  const int m_ps = s.m_ps();

  for (int m = 0; m < s.m_ant(); ++m) {
    for (int r = 0; r < s.m_rf(); ++r) {
      const std::complex<double> entry = set.w_ana(m, r);
      if (m / m_ps == r) {
        CHECK(std::abs(entry) ==
              doctest::Approx(1.0 / std::sqrt(m_ps)).epsilon(1e-12));
      } else {
        CHECK(entry == std::complex<double>(0.0, 0.0));
      }
    }
  }

  for (int nu = 0; nu < channel.n_sc(); ++nu) {
    // Joint normalization, checked on the literal dense product.
    CHECK(std::abs((set.w_ana * set.w_dig[nu]).norm() - 1.0) < 1e-12);
  }

  // Reciprocity: the combiner stages are exact conjugate transposes.
  CHECK((set.v_ana() - set.w_ana.adjoint()).norm() == 0.0);
}

TEST_CASE("uplink gains are conjugate transposed downlink gains") {
  const Scenario s = small_hybrid(8, 4, 8, 3);
  const ChannelRealization channel = rayleigh_for(s, 2, 404, 0);
  const BeamformerSet set = build_beamformers(channel, s);
  const Eigen::MatrixXcd& h = channel.h[0];
  const Eigen::MatrixXcd& w = set.w_dig[0];

  Eigen::MatrixXcd g_dl(s.k(), s.k());  // h_k^T W_ana w_j
  Eigen::MatrixXcd g_ul(s.k(), s.k());  // v_k^T V_ana h_j^*
  const Eigen::MatrixXcd v_ana = set.v_ana();
  for (int k = 0; k < s.k(); ++k) {
    for (int j = 0; j < s.k(); ++j) {
      g_dl(k, j) = (h.row(k) * (set.w_ana * w.col(j))).value();
      g_ul(k, j) =
          (w.col(k).transpose().conjugate() * v_ana * h.row(j).adjoint())
              .value();
    }
  }
  CHECK((g_ul - g_dl.transpose().conjugate()).norm() < 1e-12 * g_dl.norm());
}

TEST_CASE("zero forcing nulls inter-user interference") {
  const Scenario s = small_hybrid(8, 8, 16, 8);
  const ChannelRealization channel = rayleigh_for(s, 3, 555, 0);
  const BeamformerSet set = build_beamformers(channel, s);
  for (int nu = 0; nu < channel.n_sc(); ++nu) {
    const Eigen::MatrixXcd gains =
        effective_channel(channel.h[nu], set) * set.w_dig[nu];
    for (int k = 0; k < s.k(); ++k) {
      const double signal = std::norm(gains(k, k));
      const double interference =
          gains.row(k).squaredNorm() - signal;
      CHECK(interference <= 1e-18 * signal);
    }
  }
}

TEST_CASE("channel scaling leaves the normalized beamformer unchanged") {
  const Scenario s = small_hybrid(4, 4, 4, 2);
  ChannelRealization channel = rayleigh_for(s, 2, 808, 0);
  const BeamformerSet base = build_beamformers(channel, s);
  for (auto& h : channel.h) h *= 3.0;
  const BeamformerSet scaled = build_beamformers(channel, s);
  CHECK((base.w_ana - scaled.w_ana).norm() < 1e-12);
  for (int nu = 0; nu < channel.n_sc(); ++nu)
    CHECK((base.w_dig[nu] - scaled.w_dig[nu]).norm() < 1e-12);
}

TEST_CASE("empty codebooks are rejected") {
  const ChannelRealization channel =
      rayleigh_for(small_hybrid(), 1, 1, 0);
  Eigen::MatrixXcd empty(4, 0);
  CHECK_THROWS_AS(select_analog(channel, empty, 4, nullptr),
                  std::invalid_argument);
}

}  // TEST_SUITE
