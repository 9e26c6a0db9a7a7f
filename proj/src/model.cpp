#include "qtrans/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qtrans {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double ModeRates::max_total() const {
  return std::max({kappa_o(), kappa_e(), kappa_m});
}

double ModeRates::min_total() const {
  return std::min({kappa_o(), kappa_e(), kappa_m});
}

std::complex<double> Couplings::g_em() const {
  return std::polar(g_em_mag, normalize_phase(theta));
}

double normalize_phase(double theta) {
  double t = std::fmod(theta, constants::two_pi);
  if (t < 0.0) t += constants::two_pi;
  // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
  if (t >= constants::two_pi) t = 0.0;
  return t;
}

std::vector<std::string> validate(const TransducerParams& params) {
  const auto& r = params.rates;
  require(finite_nonneg(r.kappa_o_c), "rates.kappa_o_c must be finite and >= 0");
  require(finite_nonneg(r.kappa_o_i), "rates.kappa_o_i must be finite and >= 0");
  require(finite_nonneg(r.kappa_e_c), "rates.kappa_e_c must be finite and >= 0");
  require(finite_nonneg(r.kappa_e_i), "rates.kappa_e_i must be finite and >= 0");
  require(finite_pos(r.kappa_m), "rates.kappa_m must be finite and > 0");
  require(r.kappa_o() > 0.0, "optical total decay kappa_o_c + kappa_o_i must be > 0");
  require(r.kappa_e() > 0.0, "electrical total decay kappa_e_c + kappa_e_i must be > 0");

  const auto& c = params.couplings;
  require(finite_nonneg(c.g_om), "couplings.g_om must be finite and >= 0");
  require(finite_nonneg(c.g_em_mag), "couplings.g_em_mag must be finite and >= 0");
  require(std::isfinite(c.theta), "couplings.theta must be finite");

  const auto& f = params.frequencies;
  require(finite_pos(f.optical_hz), "frequencies_hz.optical must be > 0");
  require(finite_pos(f.electrical_hz), "frequencies_hz.electrical must be > 0");
  require(finite_pos(f.mechanical_hz), "frequencies_hz.mechanical must be > 0");

  std::vector<std::string> warnings;
  const double microwave = std::max(f.electrical_hz, f.mechanical_hz);
  if (f.optical_hz < 100.0 * microwave) {
    std::ostringstream os;
    os << "optical frequency " << f.optical_hz
       << " Hz is not far above the microwave frequencies; neglecting optical "
          "thermal noise may be inaccurate";
    warnings.push_back(os.str());
  }
  return warnings;
}

void validate(const NoiseEnvironment& env) {
  require(finite_pos(env.temperature_k), "environment.temperature_k must be > 0");
  require(std::isfinite(env.chi) && std::abs(env.chi) <= 1.0,
          "environment.chi must lie in [-1, 1]");
}

void validate(const DimensionlessParams& d) {
  require(finite_nonneg(d.C_om), "C_om must be finite and >= 0");
  require(finite_nonneg(d.C_em), "C_em must be finite and >= 0");
  require(std::isfinite(d.zeta_o) && d.zeta_o >= 0.0 && d.zeta_o <= 1.0,
          "zeta_o must lie in [0, 1]");
  require(std::isfinite(d.zeta_e) && d.zeta_e >= 0.0 && d.zeta_e <= 1.0,
          "zeta_e must lie in [0, 1]");
  require(std::isfinite(d.theta), "theta must be finite");
}

TransducerParams from_dimensionless(const DimensionlessParams& d,
                                    const ModeFrequencies& freqs) {
  validate(d);
  TransducerParams p;
  p.rates.kappa_o_c = d.zeta_o;
  p.rates.kappa_o_i = 1.0 - d.zeta_o;
  p.rates.kappa_e_c = d.zeta_e;
  p.rates.kappa_e_i = 1.0 - d.zeta_e;
  p.rates.kappa_m = 1.0;
  // C = 4 g^2 / (kappa_x kappa_m) with unit rates.
  p.couplings.g_om = 0.5 * std::sqrt(d.C_om);
  p.couplings.g_em_mag = 0.5 * std::sqrt(d.C_em);
  p.couplings.theta = normalize_phase(d.theta);
  p.frequencies = freqs;
  return p;
}

DimensionlessParams to_dimensionless(const TransducerParams& params) {
  const auto [zo, ze] = extraction_ratios(params);
  return {cooperativity_om(params), cooperativity_em(params), zo, ze,
          normalize_phase(params.couplings.theta)};
}

double cooperativity_om(const TransducerParams& params) {
  const double g = params.couplings.g_om;
  return 4.0 * g * g / (params.rates.kappa_o() * params.rates.kappa_m);
}

double cooperativity_em(const TransducerParams& params) {
  const double g = params.couplings.g_em_mag;
  return 4.0 * g * g / (params.rates.kappa_e() * params.rates.kappa_m);
}

std::pair<double, double> extraction_ratios(const TransducerParams& params) {
  const auto& r = params.rates;
  return {r.kappa_o_c / r.kappa_o(), r.kappa_e_c / r.kappa_e()};
}

double thermal_occupation(double freq_hz, double temperature_k) {
  if (!(freq_hz > 0.0) || !(temperature_k > 0.0)) {
    throw ValidationError("thermal_occupation needs freq_hz > 0 and temperature_k > 0");
  }
  const double x = constants::planck * freq_hz / (constants::boltzmann * temperature_k);
  // exp overflows past log(DBL_MAX); the occupation is 0 to double precision
  // long before that.
  if (x > std::log(std::numeric_limits<double>::max())) return 0.0;
  return 1.0 / std::expm1(x);
}

}  // namespace qtrans
