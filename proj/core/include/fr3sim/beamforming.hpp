// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fr3sim/channel.hpp"
#include "fr3sim/scenario.hpp"

namespace fr3sim {

/// Raised when the effective channel of a drop is rank deficient; the caller
/// regenerates the drop from the next seed substream.
class DegenerateDropError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hybrid beamformer of one drop: a frequency-flat analog stage and one
/// zero-forcing digital stage per evaluation subcarrier, jointly normalized
/// to ||W_ana * W_dig||_F = 1. Uplink combiners are the conjugate transposes
/// (V_ana = W_ana^H, V_dig = W_dig^H).
struct BeamformerSet {
  Eigen::MatrixXcd w_ana;               // M_ant x M_rf, block-diagonal
  std::vector<Eigen::MatrixXcd> w_dig;  // per subcarrier, M_rf x K
  std::vector<int> beam_index;          // selected beam per subarray
  bool fully_digital = false;
  int m_ps = 0;

  Eigen::MatrixXcd v_ana() const { return w_ana.adjoint(); }
};

/// Wideband analog beam selection: for every subarray, the codebook beam
/// maximizing the captured power summed over users and evaluation
/// subcarriers. Returns the block-diagonal analog matrix.
Eigen::MatrixXcd select_analog(const ChannelRealization& channel,
                               const Eigen::MatrixXcd& codebook, int m_ps,
                               std::vector<int>* beam_index = nullptr);

/// Unnormalized zero-forcing stage W = H_eff^H (H_eff H_eff^H)^-1.
/// Throws DegenerateDropError when H_eff is rank deficient.
Eigen::MatrixXcd zf_digital(const Eigen::MatrixXcd& h_eff);

/// Effective channel H * W_ana, exploiting the block-diagonal analog
/// structure (or passing H through in fully-digital mode).
Eigen::MatrixXcd effective_channel(const Eigen::MatrixXcd& h,
                                   const BeamformerSet& set);

/// Applies the analog stage to a digital vector: W_ana * x.
Eigen::VectorXcd apply_analog(const BeamformerSet& set,
                              const Eigen::VectorXcd& x);

/// Builds analog selection plus per-subcarrier normalized ZF stages.
BeamformerSet build_beamformers(const ChannelRealization& channel,
                                const Scenario& scenario);

}  // namespace fr3sim
