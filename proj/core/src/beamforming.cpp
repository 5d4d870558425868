// SPDX-License-Identifier: Apache-2.0

#include "fr3sim/beamforming.hpp"

#include <cmath>

namespace fr3sim {

Eigen::MatrixXcd select_analog(const ChannelRealization& channel,
                               const Eigen::MatrixXcd& codebook, int m_ps,
                               std::vector<int>* beam_index) {
  if (codebook.rows() != m_ps || codebook.cols() == 0)
    throw std::invalid_argument("codebook is empty or has the wrong height");
  const int m_ant = channel.m_ant();
  if (m_ant % m_ps != 0)
    throw std::invalid_argument("M_ps does not divide the antenna count");
  const int n_subarrays = m_ant / m_ps;
  const int n_beams = static_cast<int>(codebook.cols());

  Eigen::MatrixXcd w_ana = Eigen::MatrixXcd::Zero(m_ant, n_subarrays);
  if (beam_index) beam_index->assign(n_subarrays, 0);

  for (int r = 0; r < n_subarrays; ++r) {
    Eigen::VectorXd score = Eigen::VectorXd::Zero(n_beams);
    for (const Eigen::MatrixXcd& h : channel.h) {
      // rows: users, cols: beams
      score += (h.middleCols(r * m_ps, m_ps) * codebook)
                   .cwiseAbs2()
                   .colwise()
                   .sum()
                   .transpose();
    }
    int best = 0;
    score.maxCoeff(&best);
    w_ana.block(r * m_ps, r, m_ps, 1) = codebook.col(best);
    if (beam_index) (*beam_index)[r] = best;
  }
  return w_ana;
}

Eigen::MatrixXcd zf_digital(const Eigen::MatrixXcd& h_eff) {
  const int k = static_cast<int>(h_eff.rows());
  const Eigen::MatrixXcd gram = h_eff * h_eff.adjoint();
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw DegenerateDropError("effective channel is rank deficient");
  // Guard against numerically singular Gram factors that LLT still accepts.
  const Eigen::MatrixXcd l = llt.matrixL();
  double min_diag = std::abs(l(0, 0)), max_diag = std::abs(l(0, 0));
  for (int i = 1; i < k; ++i) {
    min_diag = std::min(min_diag, std::abs(l(i, i)));
    max_diag = std::max(max_diag, std::abs(l(i, i)));
  }
  // The Cholesky diagonal of a numerically rank-deficient Gram factor sits
  // at sqrt(eps) of the dominant one.
  if (!(min_diag > max_diag * 1e-7))
    throw DegenerateDropError("effective channel is numerically singular");

  Eigen::MatrixXcd inv = llt.solve(Eigen::MatrixXcd::Identity(k, k));
  // One refinement step keeps the interference floor near machine epsilon.
  inv += llt.solve(Eigen::MatrixXcd::Identity(k, k) - gram * inv);
  return h_eff.adjoint() * inv;
}

Eigen::MatrixXcd effective_channel(const Eigen::MatrixXcd& h,
                                   const BeamformerSet& set) {
  if (set.fully_digital) return h;
  const int n_subarrays = static_cast<int>(set.w_ana.cols());
  Eigen::MatrixXcd h_eff(h.rows(), n_subarrays);
  for (int r = 0; r < n_subarrays; ++r) {
    h_eff.col(r) = h.middleCols(r * set.m_ps, set.m_ps) *
                   set.w_ana.block(r * set.m_ps, r, set.m_ps, 1);
  }
  return h_eff;
}

Eigen::VectorXcd apply_analog(const BeamformerSet& set,
                              const Eigen::VectorXcd& x) {
  if (set.fully_digital) return x;
  const int m_ps = set.m_ps;
  Eigen::VectorXcd out(set.w_ana.rows());
  for (int r = 0; r < x.size(); ++r)
    out.segment(r * m_ps, m_ps) =
        set.w_ana.block(r * m_ps, r, m_ps, 1) * x(r);
  return out;
}

BeamformerSet build_beamformers(const ChannelRealization& channel,
                                const Scenario& scenario) {
  BeamformerSet set;
  set.fully_digital = scenario.fully_digital();
  set.m_ps = scenario.m_ps();

  if (set.fully_digital) {
    set.w_ana = Eigen::MatrixXcd::Identity(channel.m_ant(), channel.m_ant());
  } else {
    const Eigen::MatrixXcd codebook =
        dft_codebook(scenario.subarray_rows(), scenario.subarray_cols());
    set.w_ana =
        select_analog(channel, codebook, scenario.m_ps(), &set.beam_index);
  }

  set.w_dig.reserve(channel.n_sc());
  for (const Eigen::MatrixXcd& h : channel.h) {
    Eigen::MatrixXcd w = zf_digital(effective_channel(h, set));
    // The analog columns are orthonormal (disjoint unit-norm blocks), so the
    // joint Frobenius norm equals the digital-stage norm.
    w /= w.norm();
    set.w_dig.push_back(std::move(w));
  }
  return set;
}

}  // namespace fr3sim
