// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "fr3sim/channel.hpp"
#include "test_util.hpp"

using namespace fr3sim;
using fr3sim::test::rel_err;

TEST_SUITE("channel") {

TEST_CASE("generators are deterministic under the seed") {
  const auto a = generate_rayleigh(4, 8, 3, false, 42, 7);
  const auto b = generate_rayleigh(4, 8, 3, false, 42, 7);
  const auto c = generate_rayleigh(4, 8, 3, false, 43, 7);
  for (int nu = 0; nu < 3; ++nu) {
    CHECK(a.h[nu] == b.h[nu]);
  }
  CHECK(a.h[0] != c.h[0]);

  const ArrayGeometry g = ArrayGeometry::canonical(4, 4);
  const ClusterParams params;
  const auto d = generate_clustered(g, 2, 3, 400e6, params, 42, 7);
  const auto e = generate_clustered(g, 2, 3, 400e6, params, 42, 7);
  CHECK(d.h[1] == e.h[1]);
}

TEST_CASE("rayleigh magnitudes are exponentially distributed") {
  // K = 1 against many antennas gives i.i.d. samples of |h|^2.
  const int n = 100000;
  const auto r = generate_rayleigh(1, n, 1, false, 1234, 0);
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = std::norm(r.h[0](0, i));
  std::sort(samples.begin(), samples.end());
  double d_stat = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-samples[i]);
    d_stat = std::max(d_stat, std::abs(cdf - (i + 1.0) / n));
    d_stat = std::max(d_stat, std::abs(cdf - static_cast<double>(i) / n));
  }
  // Kolmogorov-Smirnov critical value at p = 0.01.
  CHECK(d_stat < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("rayleigh mean per-element power is one") {
  const int drops = 1000, k = 4, m = 16;
  double acc = 0.0;
  for (int d = 0; d < drops; ++d) {
    const auto r = generate_rayleigh(k, m, 1, false, 99, d);
    acc += r.h[0].squaredNorm() / (k * m);
  }
  const double mean = acc / drops;
  const double sigma = 1.0 / std::sqrt(static_cast<double>(drops) * k * m);
  CHECK(std::abs(mean - 1.0) < 3.0 * sigma);
}

TEST_CASE("frequency-flat rayleigh reuses one draw") {
  const auto r = generate_rayleigh(2, 4, 5, true, 5, 0);
  for (int nu = 1; nu < 5; ++nu) CHECK(r.h[nu] == r.h[0]);
}

TEST_CASE("single ray gives a rank-one channel with steering norm") {
  const ArrayGeometry g = ArrayGeometry::canonical(4, 4);
  ClusterParams params;
  params.n_clusters = 1;
  params.rays_per_cluster = 1;
  double power_acc = 0.0;
  const int drops = 400;
  for (int d = 0; d < drops; ++d) {
    const auto r = generate_clustered(g, 1, 3, 400e6, params, 21, d);
    for (const auto& h : r.h) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
      CHECK(svd.singularValues()(0) ==
            doctest::Approx(h.norm()).epsilon(1e-12));
    }
    power_acc += r.h[0].squaredNorm() / g.m_ant();
  }
  // E{|gain|^2} = 1, so the mean squared singular value is M_ant.
  CHECK(std::abs(power_acc / drops - 1.0) < 0.3);
}

TEST_CASE("path delay rotates the phase across subcarriers") {
  const ArrayGeometry g = ArrayGeometry::canonical(2, 2);
  ClusterParams params;
  params.n_clusters = 1;
  params.rays_per_cluster = 1;
  params.fixed_delays_s = std::vector<double>{2.5e-9};  // 1 / B
  // Grid {-B/2, 0, +B/2}: a delay of 1/B rotates by pi between neighbors.
  const auto r = generate_clustered(g, 1, 3, 400e6, params, 3, 1);
  for (int col = 0; col < g.m_ant(); ++col) {
    const std::complex<double> ratio = r.h[2](0, col) / r.h[1](0, col);
    CHECK(ratio.real() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(ratio.imag() == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("default clustered parameters are frequency selective") {
  const ArrayGeometry g = ArrayGeometry::canonical(8, 8);
  const ClusterParams params;
  double corr_acc = 0.0;
  const int drops = 100;
  for (int d = 0; d < drops; ++d) {
    const auto r = generate_clustered(g, 2, 16, 360e6, params, 17, d);
    const auto& first = r.h.front();
    const auto& last = r.h.back();
    const double corr =
        std::abs((first.cwiseProduct(last.conjugate())).sum()) /
        (first.norm() * last.norm());
    corr_acc += corr;
  }
  CHECK(corr_acc / drops < 0.9);
}

TEST_CASE("clustered per-element power stays normalized") {
  const ArrayGeometry g = ArrayGeometry::canonical(4, 4);
  const ClusterParams params;
  double acc = 0.0;
  const int drops = 1500;
  for (int d = 0; d < drops; ++d) {
    const auto r = generate_clustered(g, 2, 2, 360e6, params, 31, d);
    acc += r.h[0].squaredNorm() / (2.0 * g.m_ant());
  }
  CHECK(std::abs(acc / drops - 1.0) < 0.05);
}

TEST_CASE("large-scale gain scales the channel power") {
  const ArrayGeometry g = ArrayGeometry::canonical(4, 4);
  const ClusterParams params;
  const std::vector<double> gains{0.01, 1.0};
  const auto r = generate_clustered(g, 2, 1, 360e6, params, 8, 0, gains);
  const auto equal = generate_clustered(g, 2, 1, 360e6, params, 8, 0);
  CHECK(rel_err(r.h[0].row(0).squaredNorm(),
                0.01 * equal.h[0].row(0).squaredNorm()) < 1e-9);
}

TEST_CASE("DFT codebook structure") {
  const Eigen::MatrixXcd trivial = dft_codebook(1, 1);
  CHECK(trivial.rows() == 1);
  CHECK(trivial(0, 0) == std::complex<double>(1.0, 0.0));

  const Eigen::MatrixXcd book = dft_codebook(4, 1);
  const Eigen::MatrixXcd gram = book.adjoint() * book;
  CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);

  const Eigen::MatrixXcd big = dft_codebook(8, 8);
  for (int i = 0; i < big.rows(); ++i)
    for (int j = 0; j < big.cols(); ++j)
      CHECK(std::abs(big(i, j)) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

  // Beamforming gain toward a grid direction equals M_ps.
  const ArrayGeometry sub = ArrayGeometry::canonical(8, 8);
  const double u = 2.0 / 8.0, v = 4.0 / 8.0;  // beam (p = 1, q = 2)
  const double el = std::asin(u);
  const double az = std::asin(v / std::cos(el));
  const Eigen::VectorXcd steer = upa_steering(sub, az, el);
  const double gain = std::norm(steer.dot(big.col(1 * 8 + 2)));
  CHECK(gain == doctest::Approx(64.0).epsilon(1e-9));
}

TEST_CASE("subarray-major reordering preserves entries") {
  ScenarioConfig c;
  c.M_ant_rows = 4;
  c.M_ant_cols = 4;
  c.M_rf = 4;
  c.K = 2;
  c.P_t_dl = 1.0;
  const Scenario s = Scenario::validate(c);
  const ArrayGeometry g = ArrayGeometry::of(s);
  CHECK(g.m_ps() == 4);

  const auto canonical = generate_rayleigh(2, 16, 2, false, 77, 0);
  const auto ordered = to_subarray_order(canonical, s);
  for (int m = 0; m < 16; ++m) {
    const auto p = g.position(m);
    CHECK(ordered.h[0].col(m) == canonical.h[0].col(p.row * 4 + p.col));
  }
  // Same multiset of entries, just permuted.
  CHECK(ordered.h[0].squaredNorm() ==
        doctest::Approx(canonical.h[0].squaredNorm()).epsilon(1e-12));
}

TEST_CASE("binary dump round trip") {
  const auto r = generate_rayleigh(3, 5, 4, false, 11, 2);
  const std::string path = "channel_dump_test.bin";
  write_channel_dump(r, path);
  const auto back = read_channel_dump(path);
  REQUIRE(back.n_sc() == r.n_sc());
  REQUIRE(back.k() == r.k());
  REQUIRE(back.m_ant() == r.m_ant());
  for (int nu = 0; nu < r.n_sc(); ++nu) {
    for (int row = 0; row < r.k(); ++row) {
      for (int col = 0; col < r.m_ant(); ++col) {
        // complex64 payload: float precision
        CHECK(std::abs(back.h[nu](row, col) - r.h[nu](row, col)) < 1e-6);
      }
    }
  }
  std::remove(path.c_str());
  CHECK_THROWS(read_channel_dump("does_not_exist.bin"));
}

TEST_CASE("evaluation grid spans the band symmetrically") {
  CHECK(eval_subcarrier_frequencies(1, 400e6) == std::vector<double>{0.0});
  const auto f = eval_subcarrier_frequencies(5, 400e6);
  CHECK(f.front() == doctest::Approx(-200e6));
  CHECK(f.back() == doctest::Approx(200e6));
  CHECK(f[2] == doctest::Approx(0.0));
}

}  // TEST_SUITE
