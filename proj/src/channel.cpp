#include "qtrans/channel.hpp"

#include <algorithm>
#include <cmath>

namespace qtrans {

ThermalLossChannel::ThermalLossChannel(double eta, double n_e,
                                       const NoiseCoefficients& coefficients)
    : eta_(eta), n_e_(n_e), coefficients_(coefficients) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw ValidationError("thermal loss channel needs 0 <= eta < 1");
  }
  if (!(n_e >= 0.0) || !std::isfinite(n_e)) {
    throw ValidationError("thermal loss channel needs finite n_e >= 0");
  }
}

double bath_occupation(const TransducerParams& params, const NoiseEnvironment& env) {
  const double n_e = thermal_occupation(params.frequencies.electrical_hz, env.temperature_k);
  const double n_m = thermal_occupation(params.frequencies.mechanical_hz, env.temperature_k);
  return n_e == n_m ? n_e : std::sqrt(n_e * n_m);
}

namespace {

ThermalLossChannel extract(const TransducerParams& params, const NoiseEnvironment& env,
                           double chi) {
  validate(params);
  validate(env);

  const DimensionlessParams d = to_dimensionless(params);
  const ClosedFormElements cf = closed_form_elements(d);
  const ScatteringMatrix s = scattering_matrix(params, 0.0);

  NoiseCoefficients coeffs;
  coeffs.S11 = s(Port::OpticalCoupling, Port::OpticalCoupling);
  coeffs.S12 = s(Port::OpticalCoupling, Port::OpticalIntrinsic);
  coeffs.S14 = cf.S14;
  coeffs.S15 = cf.S15;

  const double n_th_e = thermal_occupation(params.frequencies.electrical_hz, env.temperature_k);
  const double n_th_m = thermal_occupation(params.frequencies.mechanical_hz, env.temperature_k);
  const double n_cross = bath_occupation(params, env);

  // Optical inputs are vacuum; only the intrinsic electrical port and the
  // mechanical port feed thermal photons.
  double flux = std::norm(cf.S14) * n_th_e + std::norm(cf.S15) * n_th_m +
                cross_term(d) * chi * n_cross;
  // |cross| <= |S14|^2 + |S15|^2, so anything negative here is rounding.
  flux = std::max(flux, 0.0);
  return ThermalLossChannel(cf.eta, flux / (1.0 - cf.eta), coeffs);
}

}  // namespace

ThermalLossChannel channel_independent(const TransducerParams& params,
                                       const NoiseEnvironment& env) {
  return extract(params, env, 0.0);
}

ThermalLossChannel channel_correlated(const TransducerParams& params,
                                      const NoiseEnvironment& env) {
  return extract(params, env, env.chi);
}

double bosonic_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double capacity_lower_bound(double eta, double n_e) {
  if (!(eta >= 0.0 && eta < 1.0) || !(n_e >= 0.0)) {
    throw ValidationError("capacity_lower_bound needs 0 <= eta < 1 and n_e >= 0");
  }
  if (eta <= 0.5) return 0.0;
  // log2(eta / (1 - eta)) written so that simple eta such as 0.8 come out exact.
  return std::max(0.0, -std::log2(1.0 / eta - 1.0) - bosonic_entropy(n_e));
}

GaussianState apply_gaussian(const ThermalLossChannel& channel, const GaussianState& state) {
  const double eta = channel.eta();
  GaussianState out;
  out.mean = std::sqrt(eta) * state.mean;
  out.cov = eta * state.cov +
            (1.0 - eta) * (2.0 * channel.n_e() + 1.0) * Eigen::Matrix2d::Identity();
  return out;
}

}  // namespace qtrans
