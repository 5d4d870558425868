// SPDX-License-Identifier: Apache-2.0

#include "fr3sim/power_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fr3sim {
namespace {

constexpr double kGops = 1e9;

double dynamic_power(double sample_rate, double ops_per_sample,
                     double gops_per_w) {
  return sample_rate * ops_per_sample / (gops_per_w * kGops);
}

int shared_fpga_count(int m_rf, int fpga_share) {
  return (m_rf + fpga_share - 1) / fpga_share;
}

int log2_exact(std::int64_t q) {
  int bits = 0;
  while (q > 1) {
    if (q % 2 != 0) throw std::invalid_argument("Q_ifft must be a power of two");
    q /= 2;
    ++bits;
  }
  return bits;
}

}  // namespace

double coder_power(double rate_over_beff, double f_s1, double static_w,
                   double gops_per_w, Direction direction) {
  if (rate_over_beff < 0.0)
    throw std::invalid_argument("rate_over_beff must be nonnegative");
  const double ops = direction == Direction::kDownlink
                         ? (14.0 / 24.0) * rate_over_beff
                         : (175.0 / 6.0) * rate_over_beff;
  return static_w + dynamic_power(f_s1, ops, gops_per_w);
}

double coder_power(const Scenario& s, Direction direction,
                   double rate_over_beff) {
  const DigitalHardware& d = s.config().hardware.digital;
  return coder_power(rate_over_beff, s.f_s1(), d.coder_static_w,
                     d.coder_gops_per_w, direction);
}

double precoder_combiner_power(const Scenario& s, Direction direction) {
  const DigitalHardware& d = s.config().hardware.digital;
  const double k = s.k();
  double ops = 2.0 * k;
  if (direction == Direction::kDownlink) {
    // Precoding-matrix updates once per coherence block.
    ops += (k * k * k / (3.0 * s.m_rf()) + 3.0 * k * k + k) /
           s.config().upsilon_coh;
  }
  return shared_fpga_count(s.m_rf(), d.fpga_share) * d.precoder_static_w +
         dynamic_power(s.f_s1() * s.m_rf(), ops, d.precoder_gops_per_w);
}

double fft_power(double f_s2, int m_rf, std::int64_t q_ifft, double static_w,
                 double gops_per_w) {
  const double ops = 1.5 * log2_exact(q_ifft);
  return static_w + dynamic_power(f_s2 * m_rf, ops, gops_per_w);
}

double fft_power(const Scenario& s) {
  const DigitalHardware& d = s.config().hardware.digital;
  return fft_power(s.f_s2(), s.m_rf(), s.config().Q_ifft, d.fft_static_w,
                   d.fft_gops_per_w);
}

double dpd_power(double f_s2, int m_rf, double ops_per_sample, double static_w,
                 double gops_per_w) {
  return static_w + dynamic_power(f_s2 * m_rf, ops_per_sample, gops_per_w);
}

double dpd_power(const Scenario& s) {
  const DigitalHardware& d = s.config().hardware.digital;
  return dpd_power(s.f_s2(), s.m_rf(), d.dpd_ops_per_sample, d.dpd_static_w,
                   d.dpd_gops_per_w);
}

double bb_filter_power(double f_s2, int m_rf, int taps, int oversampling,
                       double static_w, double gops_per_w, int fpga_share) {
  const double ops = static_cast<double>(taps) * oversampling;
  return shared_fpga_count(m_rf, fpga_share) * static_w +
         dynamic_power(f_s2 * m_rf, ops, gops_per_w);
}

double bb_filter_power(const Scenario& s) {
  const DigitalHardware& d = s.config().hardware.digital;
  return bb_filter_power(s.f_s2(), s.m_rf(), d.bb_taps, d.bb_oversampling,
                         d.bb_static_w, d.bb_gops_per_w, d.fpga_share);
}

double digital_active_power(const Scenario& s, Direction direction,
                            const RatePair& rates) {
  if (direction == Direction::kDownlink) {
    return coder_power(s, direction, rates.r_dl_bps / s.b_eff()) +
           precoder_combiner_power(s, direction) + fft_power(s) +
           dpd_power(s) + bb_filter_power(s);
  }
  return coder_power(s, direction, rates.r_ul_bps / s.b_eff()) +
         precoder_combiner_power(s, direction) + fft_power(s) +
         bb_filter_power(s);
}

double dac_power(const AnalogHardware& hw) {
  return hw.dac_static_coeff_w * std::pow(2.0, hw.dac_bits) +
         hw.dac_dynamic_coeff_w * hw.dac_bits * hw.dac_rate_hz;
}

double adc_power(const AnalogHardware& hw) {
  return hw.adc_walden_j_per_step * hw.adc_rate_hz *
         std::pow(2.0, hw.adc_bits);
}

double mixer_power(const AnalogHardware& hw, double f_c) {
  return hw.mixer_w_per_hz * f_c;
}

double phase_shifter_power(const AnalogHardware& hw, double bandwidth) {
  return hw.ps_w_per_hz * bandwidth;
}

double lna_power(const AnalogHardware& hw, double bandwidth) {
  return hw.lna_w_per_hz * bandwidth;
}

double analog_active_power(const Scenario& s, Direction direction) {
  const AnalogHardware& hw = s.config().hardware.analog;
  const double ps_stage = s.m_ps() * phase_shifter_power(hw, s.config().B);
  double chain;
  if (direction == Direction::kDownlink) {
    chain = 2.0 * dac_power(hw) + 2.0 * hw.rf_filter_w +
            2.0 * mixer_power(hw, s.config().f_c) + ps_stage;
  } else {
    chain = 2.0 * adc_power(hw) + 2.0 * hw.rf_filter_w +
            2.0 * mixer_power(hw, s.config().f_c) + ps_stage +
            lna_power(hw, s.config().B);
  }
  return hw.lo_w + s.m_rf() * chain;
}

double pa_instantaneous_power(double p_out_w, const PaModel& pa) {
  if (p_out_w < 0.0)
    throw std::invalid_argument("PA output power must be nonnegative");
  if (p_out_w > pa.p_max_w * (1.0 + 1e-12))
    throw std::invalid_argument(
        "PA output power exceeds the backed-off maximum P_max");
  return pa.xi * std::pow(pa.p_max_w, pa.alpha) / pa.eta_max +
         (1.0 - pa.xi) * std::pow(pa.p_max_w, 1.0 - pa.alpha) *
             std::pow(p_out_w, pa.alpha) / pa.eta_max;
}

double pa_frame_average_per_antenna(const Scenario& s) {
  const PaModel& pa = s.config().hardware.pa;
  if (s.p_a() > pa.p_max_w * (1.0 + 1e-12))
    throw std::invalid_argument(
        "per-antenna transmit power P_a exceeds PA P_max (array over-driven)");
  const PhaseWeights w = phase_weights(s, Direction::kDownlink);
  const double p_idle = pa_instantaneous_power(0.0, pa);
  return w.data * pa_instantaneous_power(s.p_a(), pa) +
         w.signaling *
             pa_instantaneous_power(s.config().zeta_dl_sig * pa.p_max_w, pa) +
         w.micro_sleep * p_idle * s.config().delta_pa_micro +
         w.idle * p_idle * s.config().delta_pa_idle;
}

double pa_frame_average_power(const Scenario& s) {
  return s.m_ant() * pa_frame_average_per_antenna(s);
}

double digital_frame_average(const Scenario& s, Direction direction,
                             const RatePair& rates) {
  const PhaseWeights w = phase_weights(s, direction);
  const double active = digital_active_power(s, direction, rates);
  return (w.data + w.signaling) * active +
         w.micro_sleep * active * s.config().delta_dig_micro +
         w.idle * active * s.config().delta_dig_idle;
}

double analog_frame_average(const Scenario& s, Direction direction) {
  const PhaseWeights w = phase_weights(s, direction);
  const double active = analog_active_power(s, direction);
  return (w.data + w.signaling) * active +
         w.micro_sleep * active * s.config().delta_ana_micro +
         w.idle * active * s.config().delta_ana_idle;
}

namespace {

struct ConsumedTriple {
  double digital = 0.0;
  double analog = 0.0;
  double pa = 0.0;
};

// Component averages at the given loads, divided by the supply/cooling
// efficiencies.
ConsumedTriple consumed_components(const Scenario& s, const RatePair& rates) {
  ConsumedTriple t;
  t.digital = (digital_frame_average(s, Direction::kDownlink, rates) +
               digital_frame_average(s, Direction::kUplink, rates)) /
              s.config().eta_dig_sc;
  t.analog = (analog_frame_average(s, Direction::kDownlink) +
              analog_frame_average(s, Direction::kUplink)) /
             s.config().eta_ana_sc;
  t.pa = pa_frame_average_power(s) / s.config().eta_pa_sc;
  return t;
}

}  // namespace

PowerBreakdown total_power(const Scenario& s, const RatePair& rates) {
  // Load-independent part: the same scenario evaluated at zero load. The
  // rates scale with the load, so they vanish there as well.
  ScenarioConfig zero_load = s.config();
  zero_load.x_dl = 0.0;
  zero_load.x_ul = 0.0;
  const Scenario s0 = Scenario::validate(zero_load);

  const ConsumedTriple at_load = consumed_components(s, rates);
  const ConsumedTriple floor = consumed_components(s0, RatePair{});

  PowerBreakdown b;
  b.digital.load_independent = floor.digital;
  b.digital.load_dependent = at_load.digital - floor.digital;
  b.analog.load_independent = floor.analog;
  b.analog.load_dependent = at_load.analog - floor.analog;
  b.pa.load_independent = floor.pa;
  b.pa.load_dependent = at_load.pa - floor.pa;
  b.total = at_load.digital + at_load.analog + at_load.pa;
  b.rates = rates;

  const AnalogHardware& hw = s.config().hardware.analog;
  b.audit.encoder =
      coder_power(s, Direction::kDownlink, rates.r_dl_bps / s.b_eff());
  b.audit.decoder =
      coder_power(s, Direction::kUplink, rates.r_ul_bps / s.b_eff());
  b.audit.precoder = precoder_combiner_power(s, Direction::kDownlink);
  b.audit.combiner = precoder_combiner_power(s, Direction::kUplink);
  b.audit.ifft = fft_power(s);
  b.audit.dpd = dpd_power(s);
  b.audit.bb_filter = bb_filter_power(s);
  b.audit.dac = dac_power(hw);
  b.audit.adc = adc_power(hw);
  b.audit.mixer = mixer_power(hw, s.config().f_c);
  b.audit.ps = phase_shifter_power(hw, s.config().B);
  b.audit.lna = lna_power(hw, s.config().B);
  b.audit.lo = hw.lo_w;
  b.audit.rf_filter = hw.rf_filter_w;
  b.audit.pa_per_antenna =
      pa_instantaneous_power(s.p_a(), s.config().hardware.pa);
  return b;
}

namespace {

void put_split(nlohmann::json& j, const char* name,
               const ComponentSplit& split) {
  j[name] = {{"load_independent_w", split.load_independent},
             {"load_dependent_w", split.load_dependent},
             {"total_w", split.total()}};
}

}  // namespace

std::string PowerBreakdown::to_json() const {
  nlohmann::json j;
  put_split(j, "digital", digital);
  put_split(j, "analog", analog);
  put_split(j, "pa", pa);
  j["total_w"] = total;
  j["rates"] = {{"r_dl_bps", rates.r_dl_bps}, {"r_ul_bps", rates.r_ul_bps}};
  j["audit"] = {{"encoder_w", audit.encoder},
                {"decoder_w", audit.decoder},
                {"precoder_w", audit.precoder},
                {"combiner_w", audit.combiner},
                {"ifft_w", audit.ifft},
                {"dpd_w", audit.dpd},
                {"bb_filter_w", audit.bb_filter},
                {"dac_w", audit.dac},
                {"adc_w", audit.adc},
                {"mixer_w", audit.mixer},
                {"ps_w", audit.ps},
                {"lna_w", audit.lna},
                {"lo_w", audit.lo},
                {"rf_filter_w", audit.rf_filter},
                {"pa_per_antenna_w", audit.pa_per_antenna}};
  return j.dump(2);
}

std::string PowerBreakdown::csv_header() {
  return "digital_load_indep_w,digital_load_dep_w,analog_load_indep_w,"
         "analog_load_dep_w,pa_load_indep_w,pa_load_dep_w,total_w,"
         "r_dl_bps,r_ul_bps,encoder_w,decoder_w,precoder_w,combiner_w,"
         "ifft_w,dpd_w,bb_filter_w,dac_w,adc_w,mixer_w,ps_w,lna_w,lo_w,"
         "rf_filter_w,pa_per_antenna_w";
}

std::string PowerBreakdown::to_csv_row() const {
  std::ostringstream out;
  out.precision(12);
  out << digital.load_independent << ',' << digital.load_dependent << ','
      << analog.load_independent << ',' << analog.load_dependent << ','
      << pa.load_independent << ',' << pa.load_dependent << ',' << total << ','
      << rates.r_dl_bps << ',' << rates.r_ul_bps << ',' << audit.encoder << ','
      << audit.decoder << ',' << audit.precoder << ',' << audit.combiner << ','
      << audit.ifft << ',' << audit.dpd << ',' << audit.bb_filter << ','
      << audit.dac << ',' << audit.adc << ',' << audit.mixer << ','
      << audit.ps << ',' << audit.lna << ',' << audit.lo << ','
      << audit.rf_filter << ',' << audit.pa_per_antenna;
  return out.str();
}

}  // namespace fr3sim
