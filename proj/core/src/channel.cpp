// SPDX-License-Identifier: Apache-2.0

#include "fr3sim/channel.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fr3sim {
namespace {

using std::numbers::pi;

std::mt19937_64 drop_rng(std::uint64_t seed, int drop_index, int retry) {
  std::seed_seq seq{static_cast<std::uint64_t>(0x66723372u), seed,
                    static_cast<std::uint64_t>(drop_index),
                    static_cast<std::uint64_t>(retry)};
  return std::mt19937_64(seq);
}

std::vector<double> resolve_user_gains(int k,
                                       const std::vector<double>& user_gain) {
  if (user_gain.empty()) return std::vector<double>(k, 1.0);
  if (static_cast<int>(user_gain.size()) != k)
    throw std::invalid_argument("user_gain must have K entries");
  return user_gain;
}

}  // namespace

ArrayGeometry ArrayGeometry::of(const Scenario& scenario) {
  ArrayGeometry g;
  g.rows = scenario.config().M_ant_rows;
  g.cols = scenario.config().M_ant_cols;
  if (scenario.fully_digital()) {
    g.sub_rows = g.rows;
    g.sub_cols = g.cols;
  } else {
    g.sub_rows = scenario.subarray_rows();
    g.sub_cols = scenario.subarray_cols();
  }
  return g;
}

ArrayGeometry ArrayGeometry::canonical(int rows, int cols) {
  ArrayGeometry g;
  g.rows = rows;
  g.cols = cols;
  g.sub_rows = rows;
  g.sub_cols = cols;
  return g;
}

ArrayGeometry::Position ArrayGeometry::position(int linear_index) const {
  const int mps = m_ps();
  const int subarray = linear_index / mps;
  const int local = linear_index % mps;
  const int tiles_per_col = rows / sub_rows;  // subarray tiles down a column
  Position p;
  p.row = (subarray % tiles_per_col) * sub_rows + local / sub_cols;
  p.col = (subarray / tiles_per_col) * sub_cols + local % sub_cols;
  return p;
}

Eigen::VectorXcd upa_steering(const ArrayGeometry& geometry,
                              double azimuth_rad, double elevation_rad) {
  const double u = std::sin(elevation_rad);
  const double v = std::cos(elevation_rad) * std::sin(azimuth_rad);
  Eigen::VectorXcd a(geometry.m_ant());
  for (int m = 0; m < geometry.m_ant(); ++m) {
    const auto p = geometry.position(m);
    const double phase = pi * (p.row * u + p.col * v);
    a(m) = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return a;
}

std::vector<double> eval_subcarrier_frequencies(int n_sc, double span_hz) {
  std::vector<double> f(n_sc, 0.0);
  if (n_sc == 1) return f;
  for (int i = 0; i < n_sc; ++i)
    f[i] = -0.5 * span_hz + span_hz * i / (n_sc - 1);
  return f;
}

ChannelRealization generate_rayleigh(int k, int m_ant, int n_sc,
                                     bool frequency_flat, std::uint64_t seed,
                                     int drop_index,
                                     const std::vector<double>& user_gain) {
  if (k <= 0 || m_ant <= 0 || n_sc <= 0)
    throw std::invalid_argument("channel dimensions must be positive");
  const std::vector<double> gains = resolve_user_gains(k, user_gain);

  auto rng = drop_rng(seed, drop_index, 0);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

  ChannelRealization r;
  r.seed = seed;
  r.drop_index = drop_index;
  r.model = frequency_flat ? "rayleigh-flat" : "rayleigh";
  r.freq_hz.assign(n_sc, 0.0);
  r.h.reserve(n_sc);

  const int draws = frequency_flat ? 1 : n_sc;
  for (int nu = 0; nu < draws; ++nu) {
    Eigen::MatrixXcd h(k, m_ant);
    for (int row = 0; row < k; ++row) {
      const double scale = std::sqrt(gains[row]);
      for (int col = 0; col < m_ant; ++col)
        h(row, col) =
            scale * std::complex<double>(normal(rng), normal(rng));
    }
    r.h.push_back(std::move(h));
  }
  while (static_cast<int>(r.h.size()) < n_sc) r.h.push_back(r.h.front());
  return r;
}

ChannelRealization generate_clustered(const ArrayGeometry& geometry, int k,
                                      int n_sc, double span_hz,
                                      const ClusterParams& params,
                                      std::uint64_t seed, int drop_index,
                                      const std::vector<double>& user_gain) {
  if (k <= 0 || n_sc <= 0)
    throw std::invalid_argument("channel dimensions must be positive");
  if (params.n_clusters <= 0 || params.rays_per_cluster <= 0)
    throw std::invalid_argument("cluster counts must be positive");
  if (params.angular_spread_deg <= 0.0)
    throw std::invalid_argument("angular_spread_deg must be positive");
  const std::vector<double> gains = resolve_user_gains(k, user_gain);

  auto rng = drop_rng(seed, drop_index, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::exponential_distribution<double> delay_dist(1.0 /
                                                   params.delay_spread_s);

  const int m_ant = geometry.m_ant();
  const double spread_rad = params.angular_spread_deg * pi / 180.0;
  const int n_rays = params.n_clusters * params.rays_per_cluster;

  ChannelRealization r;
  r.seed = seed;
  r.drop_index = drop_index;
  r.model = "clustered";
  r.freq_hz = eval_subcarrier_frequencies(n_sc, span_hz);
  r.h.assign(n_sc, Eigen::MatrixXcd::Zero(k, m_ant));

  Eigen::MatrixXcd rays(m_ant, n_rays);       // steering columns
  Eigen::VectorXcd amplitudes(n_rays);        // per-ray complex gains
  std::vector<double> delays(n_rays, 0.0);

  for (int user = 0; user < k; ++user) {
    // Cluster powers follow the delay profile; the LoS ray, when enabled,
    // takes the Ricean share of the total unit power.
    std::vector<double> cluster_delay(params.n_clusters);
    std::vector<double> cluster_power(params.n_clusters);
    double power_sum = 0.0;
    for (int c = 0; c < params.n_clusters; ++c) {
      cluster_delay[c] = params.fixed_delays_s
                             ? (*params.fixed_delays_s)[c % params.fixed_delays_s->size()]
                             : delay_dist(rng);
      cluster_power[c] = std::exp(-cluster_delay[c] / params.delay_spread_s);
      power_sum += cluster_power[c];
    }
    constexpr double kRiceFactor = 10.0;
    const double scatter_share =
        params.los ? 1.0 / (kRiceFactor + 1.0) : 1.0;
    for (double& p : cluster_power) p *= scatter_share / power_sum;

    int ray = 0;
    for (int c = 0; c < params.n_clusters; ++c) {
      const double az_center = (uniform(rng) - 0.5) * (2.0 * pi / 3.0);
      const double el_center = (uniform(rng) - 0.5) * (pi / 6.0);
      const double ray_power = cluster_power[c] / params.rays_per_cluster;
      for (int l = 0; l < params.rays_per_cluster; ++l, ++ray) {
        const double az = az_center + spread_rad * normal(rng);
        const double el = el_center + spread_rad * normal(rng);
        rays.col(ray) = upa_steering(geometry, az, el);
        amplitudes(ray) =
            std::sqrt(ray_power * 0.5) *
            std::complex<double>(normal(rng), normal(rng));
        delays[ray] = cluster_delay[c];
      }
    }

    Eigen::VectorXcd los_component = Eigen::VectorXcd::Zero(m_ant);
    if (params.los) {
      const double az = (uniform(rng) - 0.5) * (2.0 * pi / 3.0);
      const double el = (uniform(rng) - 0.5) * (pi / 6.0);
      const double phase = 2.0 * pi * uniform(rng);
      los_component = upa_steering(geometry, az, el) *
                      (std::sqrt(kRiceFactor / (kRiceFactor + 1.0)) *
                       std::complex<double>(std::cos(phase), std::sin(phase)));
    }

    const double user_scale = std::sqrt(gains[user]);
    for (int nu = 0; nu < n_sc; ++nu) {
      Eigen::VectorXcd weighted(n_rays);
      for (int j = 0; j < n_rays; ++j) {
        const double phase = -2.0 * pi * r.freq_hz[nu] * delays[j];
        weighted(j) = amplitudes(j) *
                      std::complex<double>(std::cos(phase), std::sin(phase));
      }
      Eigen::VectorXcd h_user = rays * weighted + los_component;
      r.h[nu].row(user) = user_scale * h_user.transpose();
    }
  }
  return r;
}

ChannelRealization scenario_channel(const Scenario& scenario,
                                    std::uint64_t seed, int drop_index,
                                    int retry) {
  const ChannelConfig& ch = scenario.config().channel;
  std::vector<double> gains(scenario.k(),
                            std::pow(10.0, ch.large_scale_gain_db / 10.0));
  if (ch.per_user_gain_db) {
    for (int i = 0; i < scenario.k(); ++i)
      gains[i] = std::pow(10.0, (*ch.per_user_gain_db)[i] / 10.0);
  }
  // The evaluation grid spans the occupied data band.
  const double span_hz = scenario.config().q_dl * scenario.config().delta_f;
  const int effective_drop = drop_index + 1000000 * retry;
  if (ch.model == ChannelModel::kRayleigh) {
    return generate_rayleigh(scenario.k(), scenario.m_ant(), ch.n_sc_eval,
                             ch.frequency_flat, seed, effective_drop, gains);
  }
  return generate_clustered(
      ArrayGeometry::canonical(scenario.config().M_ant_rows,
                               scenario.config().M_ant_cols),
      scenario.k(), ch.n_sc_eval, span_hz, ch.clusters, seed, effective_drop,
      gains);
}

ChannelRealization to_subarray_order(const ChannelRealization& canonical,
                                     const Scenario& scenario) {
  const ArrayGeometry g = ArrayGeometry::of(scenario);
  if (g.m_ant() != canonical.m_ant())
    throw std::invalid_argument("array size mismatch in channel reordering");

  ChannelRealization out;
  out.freq_hz = canonical.freq_hz;
  out.seed = canonical.seed;
  out.drop_index = canonical.drop_index;
  out.model = canonical.model;
  out.h.reserve(canonical.h.size());
  if (scenario.fully_digital()) {
    out.h = canonical.h;
    return out;
  }

  std::vector<int> source(g.m_ant());
  for (int m = 0; m < g.m_ant(); ++m) {
    const auto p = g.position(m);
    source[m] = p.row * g.cols + p.col;
  }
  for (const Eigen::MatrixXcd& h : canonical.h) {
    Eigen::MatrixXcd reordered(h.rows(), h.cols());
    for (int m = 0; m < g.m_ant(); ++m) reordered.col(m) = h.col(source[m]);
    out.h.push_back(std::move(reordered));
  }
  return out;
}

Eigen::MatrixXcd dft_codebook(int sub_rows, int sub_cols) {
  if (sub_rows <= 0 || sub_cols <= 0)
    throw std::invalid_argument("codebook dimensions must be positive");
  const int m_ps = sub_rows * sub_cols;
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_ps));
  Eigen::MatrixXcd book(m_ps, m_ps);
  for (int p = 0; p < sub_rows; ++p) {
    for (int q = 0; q < sub_cols; ++q) {
      const int beam = p * sub_cols + q;
      for (int r = 0; r < sub_rows; ++r) {
        for (int c = 0; c < sub_cols; ++c) {
          const double phase =
              2.0 * pi * (static_cast<double>(r) * p / sub_rows +
                          static_cast<double>(c) * q / sub_cols);
          book(r * sub_cols + c, beam) =
              scale * std::complex<double>(std::cos(phase), std::sin(phase));
        }
      }
    }
  }
  return book;
}

namespace {

constexpr char kDumpMagic[4] = {'F', 'R', '3', 'C'};

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void write_channel_dump(const ChannelRealization& realization,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(kDumpMagic, sizeof(kDumpMagic));
  write_pod<std::uint32_t>(out, 1);  // format version
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(realization.n_sc()));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(realization.k()));
  write_pod<std::uint32_t>(out,
                           static_cast<std::uint32_t>(realization.m_ant()));
  for (double f : realization.freq_hz) write_pod<double>(out, f);
  for (const Eigen::MatrixXcd& h : realization.h) {
    for (int row = 0; row < h.rows(); ++row) {
      for (int col = 0; col < h.cols(); ++col) {
        write_pod<float>(out, static_cast<float>(h(row, col).real()));
        write_pod<float>(out, static_cast<float>(h(row, col).imag()));
      }
    }
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ChannelRealization read_channel_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kDumpMagic, sizeof(magic)) != 0)
    throw std::runtime_error("'" + path + "' is not a channel dump");
  const auto version = read_pod<std::uint32_t>(in);
  if (version != 1) throw std::runtime_error("unsupported channel dump version");
  const auto n_sc = read_pod<std::uint32_t>(in);
  const auto k = read_pod<std::uint32_t>(in);
  const auto m_ant = read_pod<std::uint32_t>(in);

  ChannelRealization r;
  r.model = "dump";
  r.freq_hz.resize(n_sc);
  for (auto& f : r.freq_hz) f = read_pod<double>(in);
  r.h.assign(n_sc, Eigen::MatrixXcd(k, m_ant));
  for (auto& h : r.h) {
    for (std::uint32_t row = 0; row < k; ++row) {
      for (std::uint32_t col = 0; col < m_ant; ++col) {
        const float re = read_pod<float>(in);
        const float im = read_pod<float>(in);
        h(row, col) = std::complex<double>(re, im);
      }
    }
  }
  if (!in) throw std::runtime_error("truncated channel dump '" + path + "'");
  return r;
}

}  // namespace fr3sim
