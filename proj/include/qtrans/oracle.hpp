#ifndef QTRANS_ORACLE_HPP
#define QTRANS_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

#include "qtrans/model.hpp"

namespace qtrans {

/// Raised for an unusable simulation configuration.
class SimConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time-domain simulation settings. Times are in units of 1 / rate.
struct SimConfig {
  double dt = 0.0;
  double total_time = 0.0;  // recorded length, after burn-in
  double burn_in = 0.0;
  int n_trajectories = 16;
  std::uint64_t seed = 42;
  int psd_window = 16384;  // samples per Welch segment, 50% overlap
  int threads = 0;         // 0 = hardware concurrency; never changes the result
};

/// Defaults scaled to the slowest and fastest total decay rates.
SimConfig default_sim_config(const TransducerParams& params);

/// Throws SimConfigError when the step is too coarse (dt * kappa_max > 0.05),
/// the burn-in is shorter than 10 / kappa_min, or the record is too short.
void validate(const SimConfig& cfg, const TransducerParams& params);

struct OracleResult {
  double noise_flux_estimate = 0.0;
  double std_error = 0.0;
  double analytic_target = 0.0;  // (1 - eta) n_e from the correlated channel
};

/// Derives an independent 64-bit seed for a trajectory (splitmix64 mix).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// White noise for the intrinsic electrical port and the mechanical port,
/// per step of length dt:
///   b   = sqrt(n_m / dt) z1
///   c_i = sqrt(n_e / dt) (chi z1 + sqrt(1 - chi^2) z2)
/// with z1, z2 independent complex standard normals (E|z|^2 = 1).
class CorrelatedBathNoise {
 public:
  CorrelatedBathNoise(double n_th_e, double n_th_m, double chi, double dt,
                      std::uint64_t seed);

  struct Sample {
    std::complex<double> c_intrinsic;
    std::complex<double> mechanical;
  };

  Sample next();

 private:
  std::complex<double> complex_normal();

  double amp_e_;
  double amp_m_;
  double chi_;
  double chi_perp_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

/// Sample second moments of CorrelatedBathNoise, each scaled by dt, with
/// their standard errors. Expected: n_th_e, n_th_m, chi sqrt(n_th_e n_th_m).
struct NoiseMoments {
  double c_power = 0.0, c_power_se = 0.0;
  double b_power = 0.0, b_power_se = 0.0;
  double cross = 0.0, cross_se = 0.0;  // Re <c* b> dt
};

NoiseMoments sample_noise_moments(double n_th_e, double n_th_m, double chi, double dt,
                                  long long n_draws, std::uint64_t seed);

/// Hann-windowed Welch estimate of the one-sided PSD at zero frequency,
/// dt |sum w y|^2 / sum w^2 averaged over 50%-overlapping segments. A white
/// sequence with E|y|^2 = n / dt gives n.
struct PsdEstimate {
  double value = 0.0;
  double std_error = 0.0;  // spread of segment periodograms, ignores overlap
  int segments = 0;
};

PsdEstimate welch_psd_at_zero(std::span<const std::complex<double>> series, double dt,
                              int window);

/// Euler-Maruyama integration of the Langevin equations with correlated
/// intrinsic baths; estimates the zero-frequency noise flux leaving the
/// optical coupling port and compares with (1 - eta) n_e.
OracleResult simulate_output_noise(const TransducerParams& params,
                                   const NoiseEnvironment& env, const SimConfig& cfg);

}  // namespace qtrans

#endif  // QTRANS_ORACLE_HPP
