// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fr3sim {

enum class Direction { kDownlink, kUplink };

enum class BeamformingMode {
  kAuto,          // fully-digital iff M_rf == M_ant, hybrid otherwise
  kHybrid,        // partially-connected, M_ps = M_ant / M_rf phase shifters per chain
  kFullyDigital,  // one RF chain per antenna, no phase-shifter stage
};

/// Weighting of the signaling phase in the frame averages. The equation form
/// weights it by tau_i * tau_i_sig; the prose form additionally scales it by
/// (1 - x_i).
enum class SignalingWeightMode { kEquation, kProse };

enum class ChannelModel { kClustered, kRayleigh };

struct DigitalHardware {
  // Channel encoder / decoder (ASIC).
  double coder_static_w = 0.1;
  double coder_gops_per_w = 2000.0;
  // MIMO precoder / combiner (FPGA, one FPGA shared among fpga_share antennas).
  double precoder_static_w = 1.0;
  double precoder_gops_per_w = 200.0;
  int fpga_share = 32;
  // IFFT/FFT (ASIC).
  double fft_static_w = 0.1;
  double fft_gops_per_w = 2000.0;
  // Digital pre-distortion (ASIC), DL only.
  double dpd_static_w = 0.1;
  double dpd_gops_per_w = 2000.0;
  double dpd_ops_per_sample = 50.0;
  // Baseband filter (FPGA, shared like the precoder).
  double bb_static_w = 1.0;
  double bb_gops_per_w = 200.0;
  int bb_taps = 20;
  int bb_oversampling = 4;
};

struct AnalogHardware {
  int dac_bits = 8;
  double dac_rate_hz = 5e9;
  double dac_static_coeff_w = 1.5e-5;   // static term: coeff * 2^bits
  double dac_dynamic_coeff_w = 1.5e-12; // dynamic term: coeff * bits * rate
  int adc_bits = 8;
  double adc_rate_hz = 5e9;
  double adc_walden_j_per_step = 70e-15;
  double mixer_w_per_hz = 2.5e-13;  // of carrier frequency
  double ps_w_per_hz = 3.5e-11;     // of bandwidth
  double lna_w_per_hz = 2.7e-11;    // of bandwidth
  double lo_w = 0.040;              // one LO shared per direction
  double rf_filter_w = 0.005;       // per chain path
};

struct PaModel {
  double p_max_w = 0.1;  // maximal output power after back-off
  double eta_max = 0.15;
  double alpha = 0.75;
  double xi = 0.1;  // static-to-dynamic consumption ratio
};

struct HardwareConstants {
  DigitalHardware digital;
  AnalogHardware analog;
  PaModel pa;
};

struct ClusterParams {
  int n_clusters = 6;
  int rays_per_cluster = 8;
  double angular_spread_deg = 5.0;
  double delay_spread_s = 100e-9;
  bool los = false;  // adds a dominant direct ray per user
  // Overrides the random exponential cluster delays when set.
  std::optional<std::vector<double>> fixed_delays_s;
};

struct ChannelConfig {
  ChannelModel model = ChannelModel::kClustered;
  ClusterParams clusters;
  bool frequency_flat = false;  // Rayleigh only: one draw for all subcarriers
  int n_sc_eval = 64;           // evaluation subcarriers per drop
  double large_scale_gain_db = 0.0;
  // Per-user large-scale gain; scalar gain applies to all users when unset.
  std::optional<std::vector<double>> per_user_gain_db;
};

/// Raw run parameters. Field names follow the JSON schema one-to-one; all
/// values can be overridden from a scenario file.
struct ScenarioConfig {
  double f_c = 10e9;            // carrier frequency, Hz
  double B = 400e6;             // bandwidth, Hz
  std::optional<double> B_eff;  // effective bandwidth; 0.9 * B when unset
  double mu = 0.9;              // constellation-rate fraction, f_sI = mu * B
  std::int64_t Q_ifft = 4096;   // IFFT/FFT size
  double delta_f = 120e3;       // subcarrier spacing, f_sII = Q_ifft * delta_f
  int q_dl = 3000;              // data subcarriers, DL
  int q_ul = 3000;              // data subcarriers, UL
  int K = 8;                    // single-antenna users
  int M_ant_rows = 32;          // UPA rows (per link direction)
  int M_ant_cols = 32;          // UPA columns
  int M_rf = 16;                // RF chains per direction
  std::optional<double> P_t_dl; // total DL transmit power; 100 * M_ant / 1024 when unset
  double P_t_ul = 0.1;          // per-user UL transmit power, W
  double sigma2_dl = 5.011872336272715e-16;  // -123 dBm
  double sigma2_ul = 5.011872336272715e-16;
  double tau_dl = 0.75;
  double tau_ul = 0.25;
  double tau_dl_sig = 1.0 / 14.0;
  double tau_ul_sig = 1.0 / 14.0;
  double zeta_dl_sig = 1.0 / 12.0;  // signaling output-power fraction
  double x_dl = 1.0;                // average physical resource load, DL
  double x_ul = 1.0;
  double delta_dig_micro = 0.5;
  double delta_dig_idle = 0.25;
  double delta_ana_micro = 0.75;
  double delta_ana_idle = 0.5;
  double delta_pa_micro = 0.5;
  double delta_pa_idle = 0.25;
  double eta_dig_sc = 0.8;
  double eta_ana_sc = 0.8;
  double eta_pa_sc = 0.8;
  double upsilon_coh = 14.0 * 3300.0;  // samples per coherence block
  BeamformingMode beamforming_mode = BeamformingMode::kAuto;
  SignalingWeightMode signaling_weight_mode = SignalingWeightMode::kEquation;
  HardwareConstants hardware;
  ChannelConfig channel;
};

/// A ScenarioConfig with every invariant checked and derived quantities
/// resolved. Immutable; safe to share across worker threads.
class Scenario {
 public:
  /// Throws std::invalid_argument naming the first violated invariant.
  static Scenario validate(const ScenarioConfig& config);

  const ScenarioConfig& config() const { return config_; }

  int m_ant() const { return m_ant_; }
  int m_rf() const { return config_.M_rf; }
  int m_ps() const { return m_ps_; }
  bool fully_digital() const { return m_ps_ == 0; }
  int k() const { return config_.K; }

  double f_s1() const { return f_s1_; }  // constellation rate, samples/s
  double f_s2() const { return f_s2_; }  // oversampled rate, samples/s
  double b_eff() const { return b_eff_; }
  double p_t_dl() const { return p_t_dl_; }
  double p_a() const { return p_t_dl_ / m_ant_; }  // per-PA transmit power

  // Subarray tile driven by the partially-connected mapping; antennas are
  // indexed subarray-major so the analog matrix is block-diagonal.
  int subarray_rows() const { return sub_rows_; }
  int subarray_cols() const { return sub_cols_; }

  double tau(Direction d) const;
  double tau_sig(Direction d) const;
  double load(Direction d) const;
  double noise_power(Direction d) const;
  int data_subcarriers(Direction d) const;

 private:
  explicit Scenario(ScenarioConfig config);

  ScenarioConfig config_;
  int m_ant_ = 0;
  int m_ps_ = 0;
  int sub_rows_ = 0;
  int sub_cols_ = 0;
  double f_s1_ = 0.0;
  double f_s2_ = 0.0;
  double b_eff_ = 0.0;
  double p_t_dl_ = 0.0;
};

/// Frame-phase weighting coefficients of one link direction. The active-mode
/// power of a component is multiplied by `data + signaling`, its micro-sleep
/// power by `micro_sleep` and its idle power by `idle` (sleep reduction
/// factors are applied by the power model, not here).
struct PhaseWeights {
  double data = 0.0;
  double signaling = 0.0;
  double micro_sleep = 0.0;
  double idle = 0.0;
};

PhaseWeights phase_weights(const Scenario& scenario, Direction direction);

/// Scenario (de)serialization. Unknown JSON fields are rejected.
ScenarioConfig scenario_from_json(const std::string& json_text);
ScenarioConfig scenario_from_json_file(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);

/// The reference evaluation parameter set (fig. 2): 32x32 UPA, 400 MHz at
/// 10 GHz, K = 8, TDD 0.75/0.25, clustered channel with a -140 dB large-scale
/// gain standing in for the urban-micro pathloss.
ScenarioConfig paper_fig2_preset();

const char* to_string(Direction d);
const char* to_string(BeamformingMode m);
const char* to_string(SignalingWeightMode m);
const char* to_string(ChannelModel m);

}  // namespace fr3sim
