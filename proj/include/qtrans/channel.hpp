#ifndef QTRANS_CHANNEL_HPP
#define QTRANS_CHANNEL_HPP

#include <Eigen/Dense>

#include "qtrans/model.hpp"
#include "qtrans/scattering.hpp"

namespace qtrans {

/// Zero-frequency scattering elements that make up the environment mode of
/// the microwave-to-optical channel.
struct NoiseCoefficients {
  cplx S11;
  cplx S12;
  cplx S14;
  cplx S15;
};

/// Thermal loss channel N(eta, n_e).
class ThermalLossChannel {
 public:
  /// Throws ValidationError unless 0 <= eta < 1 and n_e >= 0.
  ThermalLossChannel(double eta, double n_e, const NoiseCoefficients& coefficients = {});

  double eta() const { return eta_; }
  double n_e() const { return n_e_; }
  const NoiseCoefficients& coefficients() const { return coefficients_; }

 private:
  double eta_;
  double n_e_;
  NoiseCoefficients coefficients_;
};

/// Quadrature mean and covariance, vacuum covariance = identity.
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
};

/// Independent baths: n_e = (|S14|^2 n_e_th + |S15|^2 n_m_th) / (1 - eta).
/// env.chi is ignored.
ThermalLossChannel channel_independent(const TransducerParams& params,
                                       const NoiseEnvironment& env);

/// Correlated intrinsic electrical and mechanical baths,
/// <c_in,i^dag b_in> = chi * n_th.
ThermalLossChannel channel_correlated(const TransducerParams& params,
                                      const NoiseEnvironment& env);

/// Bosonic entropy g(x) = (x+1) log2(x+1) - x log2 x, with g(0) = 0.
double bosonic_entropy(double x);

/// max{0, log2(eta / (1 - eta)) - g(n_e)} in qubits per channel use.
double capacity_lower_bound(double eta, double n_e);

/// V -> eta V + (1 - eta)(2 n_e + 1) I, mean -> sqrt(eta) mean.
GaussianState apply_gaussian(const ThermalLossChannel& channel, const GaussianState& state);

/// Occupation shared by the intrinsic baths: sqrt(n_e_th * n_m_th), which is
/// n_th itself when both modes see the same occupation.
double bath_occupation(const TransducerParams& params, const NoiseEnvironment& env);

}  // namespace qtrans

#endif  // QTRANS_CHANNEL_HPP
