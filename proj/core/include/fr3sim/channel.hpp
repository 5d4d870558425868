// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fr3sim/scenario.hpp"

namespace fr3sim {

/// Uniform planar array with half-wavelength spacing, tiled into
/// partially-connected subarrays. Antennas are indexed subarray-major
/// (subarray r owns linear indices [r*M_ps, (r+1)*M_ps)), row-major inside a
/// subarray, so the analog beamforming matrix is block-diagonal.
struct ArrayGeometry {
  int rows = 1;
  int cols = 1;
  int sub_rows = 1;
  int sub_cols = 1;

  static ArrayGeometry of(const Scenario& scenario);
  /// Plain row-major indexing of the full UPA (one subarray covering it).
  static ArrayGeometry canonical(int rows, int cols);

  int m_ant() const { return rows * cols; }
  int m_ps() const { return sub_rows * sub_cols; }
  int n_subarrays() const { return m_ant() / m_ps(); }

  struct Position {
    int row = 0;
    int col = 0;
  };
  Position position(int linear_index) const;
};

/// Array response toward (azimuth, elevation), unit-modulus entries, ordered
/// like ArrayGeometry's linear index. Norm is sqrt(M_ant).
Eigen::VectorXcd upa_steering(const ArrayGeometry& geometry, double azimuth_rad,
                              double elevation_rad);

/// Per-subcarrier K x M_ant channel matrices of one drop.
struct ChannelRealization {
  std::vector<Eigen::MatrixXcd> h;
  std::vector<double> freq_hz;
  std::uint64_t seed = 0;
  int drop_index = 0;
  std::string model;

  int n_sc() const { return static_cast<int>(h.size()); }
  int k() const { return h.empty() ? 0 : static_cast<int>(h.front().rows()); }
  int m_ant() const {
    return h.empty() ? 0 : static_cast<int>(h.front().cols());
  }
};

/// Evaluation subcarrier offsets: n_sc points evenly spanning span_hz around
/// the carrier.
std::vector<double> eval_subcarrier_frequencies(int n_sc, double span_hz);

/// I.i.d. unit-variance circularly-symmetric Gaussian entries; one common
/// draw for all subcarriers when frequency_flat.
ChannelRealization generate_rayleigh(int k, int m_ant, int n_sc,
                                     bool frequency_flat, std::uint64_t seed,
                                     int drop_index,
                                     const std::vector<double>& user_gain = {});

/// Clustered multipath stand-in for an urban-micro wideband model: per user,
/// n_clusters clusters of rays_per_cluster rays with Gaussian angular spread
/// around a random center and exponentially distributed cluster delays.
/// E{||h_k||^2} = M_ant * user_gain[k].
ChannelRealization generate_clustered(const ArrayGeometry& geometry, int k,
                                      int n_sc, double span_hz,
                                      const ClusterParams& params,
                                      std::uint64_t seed, int drop_index,
                                      const std::vector<double>& user_gain = {});

/// One drop per the scenario's channel configuration, in canonical row-major
/// antenna ordering (independent of the RF-chain count, so sweeps over M_rf
/// share common random channels). retry selects an independent substream for
/// regenerating degenerate drops.
ChannelRealization scenario_channel(const Scenario& scenario,
                                    std::uint64_t seed, int drop_index,
                                    int retry = 0);

/// Reorders the antenna columns of a canonical realization into the
/// scenario's subarray-major indexing expected by the beamforming stage.
ChannelRealization to_subarray_order(const ChannelRealization& canonical,
                                     const Scenario& scenario);

/// 2D-DFT beam codebook of a sub_rows x sub_cols subarray: M_ps beams as
/// columns, entries of modulus 1/sqrt(M_ps), mutually orthonormal.
Eigen::MatrixXcd dft_codebook(int sub_rows, int sub_cols);

/// Binary exchange format: dimension header plus row-major complex64 payload.
void write_channel_dump(const ChannelRealization& realization,
                        const std::string& path);
ChannelRealization read_channel_dump(const std::string& path);

}  // namespace fr3sim
