// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>

#include "fr3sim/scenario.hpp"

namespace fr3sim::test {

inline double rel_err(double got, double expected) {
  return std::abs(got - expected) / std::max(std::abs(expected), 1e-300);
}

/// Random valid scenario for property tests. Keeps the hardware constants at
/// their defaults and varies geometry, ratios and loads.
inline ScenarioConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pow2(0, 3);

  ScenarioConfig c;
  c.M_ant_rows = 1 << (2 + pow2(rng));  // 4..32
  c.M_ant_cols = 1 << (2 + pow2(rng));
  const int m_ant = c.M_ant_rows * c.M_ant_cols;
  do {
    c.M_rf = 1 << (1 + std::uniform_int_distribution<int>(
                            0, static_cast<int>(std::log2(m_ant)) - 1)(rng));
  } while (m_ant % c.M_rf != 0);
  c.K = std::min(c.M_rf, 2 + std::uniform_int_distribution<int>(0, 6)(rng));
  c.tau_dl = 0.1 + 0.8 * unit(rng);
  c.tau_ul = (1.0 - c.tau_dl) * unit(rng);
  c.tau_dl_sig = 0.2 * unit(rng);
  c.tau_ul_sig = 0.2 * unit(rng);
  c.x_dl = unit(rng);
  c.x_ul = unit(rng);
  c.delta_dig_micro = unit(rng);
  c.delta_dig_idle = unit(rng);
  c.delta_ana_micro = unit(rng);
  c.delta_ana_idle = unit(rng);
  c.delta_pa_micro = unit(rng);
  c.delta_pa_idle = unit(rng);
  c.P_t_dl = 0.09 * m_ant * unit(rng) + 1e-3;
  return c;
}

}  // namespace fr3sim::test
