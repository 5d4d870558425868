// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fr3sim/scenario.hpp"

namespace fr3sim {

/// Link rates feeding the encoder/decoder compute loads, bit/s.
struct RatePair {
  double r_dl_bps = 0.0;
  double r_ul_bps = 0.0;
};

// ---------------------------------------------------------------------------
// Subcomponent active-mode powers. The formula-level functions take explicit
// parameters; the scenario-level overloads pull everything from a validated
// Scenario. Efficiencies are complex GOPS/W, i.e. 1e9 ops/s per watt; all op
// counts are complex operations per sample.
// ---------------------------------------------------------------------------

double coder_power(double rate_over_beff, double f_s1, double static_w,
                   double gops_per_w, Direction direction);
double coder_power(const Scenario& s, Direction direction,
                   double rate_over_beff);

double precoder_combiner_power(const Scenario& s, Direction direction);

double fft_power(double f_s2, int m_rf, std::int64_t q_ifft, double static_w,
                 double gops_per_w);
double fft_power(const Scenario& s);

double dpd_power(double f_s2, int m_rf, double ops_per_sample, double static_w,
                 double gops_per_w);
double dpd_power(const Scenario& s);

double bb_filter_power(double f_s2, int m_rf, int taps, int oversampling,
                       double static_w, double gops_per_w, int fpga_share);
double bb_filter_power(const Scenario& s);

/// Sum of the per-direction digital chain: encoder/precoder/IFFT/DPD/BB in
/// DL, decoder/combiner/FFT/BB in UL.
double digital_active_power(const Scenario& s, Direction direction,
                            const RatePair& rates);

double dac_power(const AnalogHardware& hw);
double adc_power(const AnalogHardware& hw);
double mixer_power(const AnalogHardware& hw, double f_c);
double phase_shifter_power(const AnalogHardware& hw, double bandwidth);
double lna_power(const AnalogHardware& hw, double bandwidth);

/// LO plus M_rf RF chains; the phase-shifter stage drops out in
/// fully-digital mode.
double analog_active_power(const Scenario& s, Direction direction);

/// Instantaneous PA consumption at output power p. Throws when p exceeds the
/// backed-off maximum.
double pa_instantaneous_power(double p_out_w, const PaModel& pa);

/// Frame average for one PA: data at P_a, signaling at zeta*P_max, zero
/// output scaled by the micro-sleep/idle factors elsewhere.
double pa_frame_average_per_antenna(const Scenario& s);
double pa_frame_average_power(const Scenario& s);  // times M_ant

// ---------------------------------------------------------------------------
// Frame-averaged totals (Eq. 5 style: component averages divided by their
// supply/cooling efficiencies).
// ---------------------------------------------------------------------------

struct ComponentSplit {
  double load_independent = 0.0;  // value at x_dl = x_ul = 0
  double load_dependent = 0.0;    // value at the given loads minus the above
  double total() const { return load_independent + load_dependent; }
};

/// Active-mode subcomponent powers kept for auditability; one value each, at
/// the scenario's M_rf (the BB filter figure is per direction, identical).
struct SubcomponentAudit {
  double encoder = 0.0;
  double decoder = 0.0;
  double precoder = 0.0;
  double combiner = 0.0;
  double ifft = 0.0;
  double dpd = 0.0;
  double bb_filter = 0.0;
  double dac = 0.0;
  double adc = 0.0;
  double mixer = 0.0;
  double ps = 0.0;
  double lna = 0.0;
  double lo = 0.0;
  double rf_filter = 0.0;
  double pa_per_antenna = 0.0;  // instantaneous consumption at drive P_a
};

struct PowerBreakdown {
  ComponentSplit digital;  // consumed power, already divided by eta_dig_sc
  ComponentSplit analog;
  ComponentSplit pa;
  SubcomponentAudit audit;
  RatePair rates;
  double total = 0.0;

  std::string to_json() const;
  static std::string csv_header();
  std::string to_csv_row() const;
};

/// Frame-averaged digital / analog consumption of one direction (before the
/// supply/cooling division).
double digital_frame_average(const Scenario& s, Direction direction,
                             const RatePair& rates);
double analog_frame_average(const Scenario& s, Direction direction);

/// Full evaluation of the consumption model at the scenario's loads.
PowerBreakdown total_power(const Scenario& s, const RatePair& rates);

}  // namespace fr3sim
