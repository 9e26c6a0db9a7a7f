#include "qtrans/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "qtrans/channel.hpp"
#include "qtrans/scattering.hpp"

namespace qtrans {

namespace {

constexpr double kMaxStepTimesRate = 0.05;
constexpr double kMinBurnInDecays = 10.0;

long long step_count(double span, double dt) {
  return static_cast<long long>(std::llround(span / dt));
}

}  // namespace

SimConfig default_sim_config(const TransducerParams& params) {
  SimConfig cfg;
  const double k_max = params.rates.max_total();
  const double k_min = params.rates.min_total();
  cfg.dt = 0.01 / k_max;
  cfg.burn_in = 20.0 / k_min;
  cfg.total_time = 2000.0 / k_min;
  return cfg;
}

void validate(const SimConfig& cfg, const TransducerParams& params) {
  const double k_max = params.rates.max_total();
  const double k_min = params.rates.min_total();
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw SimConfigError("dt must be > 0");
  if (cfg.dt * k_max > kMaxStepTimesRate * (1.0 + 1e-12)) {
    throw SimConfigError("dt * kappa_max = " + std::to_string(cfg.dt * k_max) +
                         " exceeds the stability guard 0.05");
  }
  if (!(cfg.burn_in * k_min >= kMinBurnInDecays * (1.0 - 1e-12))) {
    throw SimConfigError("burn_in must be at least 10 / kappa_min");
  }
  if (cfg.n_trajectories < 1) throw SimConfigError("n_trajectories must be >= 1");
  if (cfg.psd_window < 2) throw SimConfigError("psd_window must be >= 2 samples");
  if (!(cfg.total_time > 0.0) || step_count(cfg.total_time, cfg.dt) < 2) {
    throw SimConfigError("total_time must cover at least two steps");
  }
  if (cfg.threads < 0) throw SimConfigError("threads must be >= 0");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CorrelatedBathNoise::CorrelatedBathNoise(double n_th_e, double n_th_m, double chi,
                                         double dt, std::uint64_t seed)
    : amp_e_(std::sqrt(n_th_e / dt)),
      amp_m_(std::sqrt(n_th_m / dt)),
      chi_(chi),
      chi_perp_(std::sqrt(std::max(0.0, 1.0 - chi * chi))),
      rng_(seed),
      normal_(0.0, std::sqrt(0.5)) {}

std::complex<double> CorrelatedBathNoise::complex_normal() {
  const double re = normal_(rng_);
  const double im = normal_(rng_);
  return {re, im};
}

CorrelatedBathNoise::Sample CorrelatedBathNoise::next() {
  const std::complex<double> z1 = complex_normal();
  const std::complex<double> z2 = complex_normal();
  return {amp_e_ * (chi_ * z1 + chi_perp_ * z2), amp_m_ * z1};
}

NoiseMoments sample_noise_moments(double n_th_e, double n_th_m, double chi, double dt,
                                  long long n_draws, std::uint64_t seed) {
  if (n_draws < 2) throw SimConfigError("need at least two draws");
  CorrelatedBathNoise noise(n_th_e, n_th_m, chi, dt, seed);

  // Running sums of x and x^2 for the three per-draw moments.
  double s[3] = {0, 0, 0}, s2[3] = {0, 0, 0};
  for (long long k = 0; k < n_draws; ++k) {
    const auto x = noise.next();
    const double v[3] = {std::norm(x.c_intrinsic) * dt, std::norm(x.mechanical) * dt,
                         std::real(std::conj(x.c_intrinsic) * x.mechanical) * dt};
    for (int j = 0; j < 3; ++j) {
      s[j] += v[j];
      s2[j] += v[j] * v[j];
    }
  }
  const double n = static_cast<double>(n_draws);
  double mean[3], se[3];
  for (int j = 0; j < 3; ++j) {
    mean[j] = s[j] / n;
    const double var = std::max(0.0, (s2[j] - n * mean[j] * mean[j]) / (n - 1.0));
    se[j] = std::sqrt(var / n);
  }
  return {mean[0], se[0], mean[1], se[1], mean[2], se[2]};
}

PsdEstimate welch_psd_at_zero(std::span<const std::complex<double>> series, double dt,
                              int window) {
  const auto len = static_cast<long long>(series.size());
  if (window < 2 || len < window) {
    throw SimConfigError("series shorter than the PSD window");
  }
  std::vector<double> w(static_cast<std::size_t>(window));
  double w2 = 0.0;
  for (int n = 0; n < window; ++n) {
    const double s = std::sin(std::numbers::pi * (n + 0.5) / window);
    w[static_cast<std::size_t>(n)] = s * s;
    w2 += s * s * s * s;
  }

  const long long hop = std::max(1, window / 2);
  std::vector<double> periodograms;
  for (long long start = 0; start + window <= len; start += hop) {
    std::complex<double> acc = 0.0;
    for (int n = 0; n < window; ++n) {
      acc += w[static_cast<std::size_t>(n)] * series[static_cast<std::size_t>(start + n)];
    }
    periodograms.push_back(dt * std::norm(acc) / w2);
  }

  PsdEstimate est;
  est.segments = static_cast<int>(periodograms.size());
  double sum = 0.0;
  for (double p : periodograms) sum += p;
  est.value = sum / est.segments;
  if (est.segments > 1) {
    double ss = 0.0;
    for (double p : periodograms) ss += (p - est.value) * (p - est.value);
    est.std_error = std::sqrt(ss / (est.segments - 1) / est.segments);
  }
  return est;
}

OracleResult simulate_output_noise(const TransducerParams& params,
                                   const NoiseEnvironment& env, const SimConfig& cfg) {
  validate(params);
  validate(env);
  validate(cfg, params);

  const double n_th_e = thermal_occupation(params.frequencies.electrical_hz, env.temperature_k);
  const double n_th_m = thermal_occupation(params.frequencies.mechanical_hz, env.temperature_k);

  // Euler-Maruyama propagator a <- (I + dt A) a + dt B u. Only the intrinsic
  // electrical port and the mechanical port carry noise.
  const Eigen::Matrix3cd step = Eigen::Matrix3cd::Identity() + cfg.dt * build_dynamics(params).m;
  const auto b = build_input_coupling(params).m;
  const double drive_e = cfg.dt * b(1, static_cast<int>(Port::ElectricalIntrinsic));
  const double drive_m = cfg.dt * b(2, static_cast<int>(Port::Mechanical));
  const double readout = b(0, static_cast<int>(Port::OpticalCoupling));

  const long long burn_steps = step_count(cfg.burn_in, cfg.dt);
  const long long rec_steps = step_count(cfg.total_time, cfg.dt);
  const int window = static_cast<int>(std::min<long long>(cfg.psd_window, rec_steps));

  std::vector<PsdEstimate> per_traj(static_cast<std::size_t>(cfg.n_trajectories));

  auto run_trajectory = [&](int index) {
    CorrelatedBathNoise noise(n_th_e, n_th_m, env.chi, cfg.dt,
                              stream_seed(cfg.seed, static_cast<std::uint64_t>(index)));
    Eigen::Vector3cd a = Eigen::Vector3cd::Zero();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(rec_steps));
    for (long long k = 0; k < burn_steps + rec_steps; ++k) {
      if (k >= burn_steps) {
        // The optical coupling input is vacuum, so a_out,c = sqrt(kappa_o,c) a.
        out[static_cast<std::size_t>(k - burn_steps)] = readout * a(0);
      }
      const auto u = noise.next();
      Eigen::Vector3cd next = step * a;
      next(1) += drive_e * u.c_intrinsic;
      next(2) += drive_m * u.mechanical;
      a = next;
    }
    per_traj[static_cast<std::size_t>(index)] = welch_psd_at_zero(out, cfg.dt, window);
  };

  detail::parallel_for(static_cast<std::size_t>(cfg.n_trajectories), cfg.threads,
                       [&](std::size_t i) { run_trajectory(static_cast<int>(i)); });

  OracleResult result;
  double sum = 0.0;
  for (const auto& e : per_traj) sum += e.value;
  const double n = static_cast<double>(cfg.n_trajectories);
  result.noise_flux_estimate = sum / n;
  if (cfg.n_trajectories > 1) {
    // Trajectories are independent, so their spread absorbs the correlation
    // between overlapping segments.
    double ss = 0.0;
    for (const auto& e : per_traj) {
      ss += (e.value - result.noise_flux_estimate) * (e.value - result.noise_flux_estimate);
    }
    result.std_error = std::sqrt(ss / (n - 1.0) / n);
  } else {
    result.std_error = per_traj.front().std_error;
  }

  const ThermalLossChannel ch = channel_correlated(params, env);
  result.analytic_target = (1.0 - ch.eta()) * ch.n_e();
  return result;
}

}  // namespace qtrans
