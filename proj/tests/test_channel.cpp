#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "qtrans/channel.hpp"
#include "qtrans/golden_section.hpp"

using namespace qtrans;

namespace {

constexpr double pi = std::numbers::pi;

TransducerParams baseline(double theta) { return from_dimensionless({4, 4, 0.9, 0.9, theta}); }

}  // namespace

// Frozen values below come from direct closed-form arithmetic with
// n_th = 1 / expm1(h * 10 GHz / (k_B * 1 K)) = 1.623502914385847,
// |S14|^2 + |S15|^2 = 20.16 / 81, cross = -8 sqrt(0.4) 3.6 / 81 sin(theta).

TEST_CASE("independent channel at the baseline") {
  const auto ch = channel_independent(baseline(1.5 * pi), {1.0, 0.9});
  CHECK(ch.eta() == doctest::Approx(0.64).epsilon(1e-13));
  CHECK(ch.n_e() == doctest::Approx(1.122421767970462).epsilon(1e-10));

  const auto cold = channel_independent(baseline(1.5 * pi), {1e-6, 0.0});
  CHECK(cold.n_e() == 0.0);
}

TEST_CASE("no intrinsic electrical loss leaves only the mechanical term") {
  const auto p = from_dimensionless({4, 400, 0.9, 1.0, 1.5 * pi});
  const auto ch = channel_correlated(p, {1.0, 0.9});
  const double n_th = thermal_occupation(10e9, 1.0);
  CHECK(std::norm(ch.coefficients().S14) == 0.0);
  CHECK(ch.n_e() == doctest::Approx(std::norm(ch.coefficients().S15) * n_th / (1.0 - ch.eta())));
}

TEST_CASE("correlated channel") {
  const NoiseEnvironment env{1.0, 0.9};
  const auto suppressed = channel_correlated(baseline(1.5 * pi), env);
  CHECK(suppressed.n_e() == doctest::Approx(0.20971652399168478).epsilon(1e-9));
  CHECK(suppressed.n_e() < 0.5);

  const auto enhanced = channel_correlated(baseline(0.5 * pi), env);
  CHECK(enhanced.n_e() == doctest::Approx(2.035127011949239).epsilon(1e-9));
  CHECK(enhanced.n_e() > channel_independent(baseline(0.5 * pi), env).n_e());
}

TEST_CASE("zero correlation reproduces the independent channel bit for bit") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto p = testing::random_params(rng);
    const NoiseEnvironment env{0.5 + k * 0.01, 0.0};
    const auto a = channel_independent(p, env);
    const auto b = channel_correlated(p, env);
    CHECK(a.eta() == b.eta());
    CHECK(a.n_e() == b.n_e());
  }
  // sin(theta) = 0 as well.
  const auto a = channel_independent(baseline(0.0), {1.0, 0.9});
  const auto b = channel_correlated(baseline(0.0), {1.0, 0.9});
  CHECK(a.n_e() == b.n_e());
}

TEST_CASE("coefficient normalisation") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto ch = channel_correlated(testing::random_params(rng), {1.0, 0.3});
    const auto& c = ch.coefficients();
    const double sum = std::norm(c.S11) + std::norm(c.S12) + std::norm(c.S14) + std::norm(c.S15);
    CHECK(std::abs(sum - (1.0 - ch.eta())) < 1e-10);
    CHECK(ch.eta() < 1.0);
  }
}

TEST_CASE("noise stays nonnegative") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> chi(-1.0, 1.0), temp(0.01, 10.0);
  for (int k = 0; k < 2000; ++k) {
    auto d = testing::random_dimensionless(rng);
    const auto ch = channel_correlated(from_dimensionless(d), {temp(rng), chi(rng)});
    CHECK(ch.n_e() >= 0.0);
  }
  // Extremal case |chi| = 1 with |S14| = |S15|: C_em (1 - zeta_e) = 1.
  const auto p = from_dimensionless({3.0, 2.0, 0.8, 0.5, 1.5 * pi});
  CHECK(channel_correlated(p, {1.0, 1.0}).n_e() >= 0.0);
  CHECK(channel_correlated(p, {1.0, 1.0}).n_e() < 1e-12);
}

TEST_CASE("minimising phase") {
  auto n_e_at = [](double chi) {
    return [chi](double theta) {
      return channel_correlated(from_dimensionless({4, 4, 0.9, 0.9, theta}), {1.0, chi}).n_e();
    };
  };
  for (double chi : {0.3, 0.9, -0.4, -0.9}) {
    const auto f = n_e_at(chi);
    double best = 0.0, best_val = f(0.0);
    for (int i = 1; i < 720; ++i) {
      const double t = i * 2.0 * pi / 720;
      if (f(t) < best_val) best_val = f(t), best = t;
    }
    const auto refined = golden_section_minimize(f, best - 0.02, best + 0.02, 1e-9);
    const double expected = chi > 0 ? 1.5 * pi : 0.5 * pi;
    CHECK(refined.x == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("capacity lower bound") {
  CHECK(capacity_lower_bound(0.5, 0.0) == 0.0);
  CHECK(capacity_lower_bound(0.8, 0.0) == 2.0);
  // log2(0.64 / 0.36) - g(0.20971652399168478)
  CHECK(capacity_lower_bound(0.64, 0.20971652399168478) ==
        doctest::Approx(0.025209773381352996).epsilon(1e-9));
  CHECK(bosonic_entropy(0.0) == 0.0);
  CHECK(bosonic_entropy(1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(capacity_lower_bound(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(capacity_lower_bound(0.7, -0.1), ValidationError);
}

TEST_CASE("capacity bound monotonicity and threshold") {
  for (double eta = 0.0; eta < 0.999; eta += 0.013) {
    double prev = capacity_lower_bound(eta, 0.0);
    for (double n = 0.01; n < 5.0; n += 0.07) {
      const double q = capacity_lower_bound(eta, n);
      CHECK(q <= prev);
      if (eta <= 0.5) CHECK(q == 0.0);
      prev = q;
    }
  }
  for (double n = 0.0; n < 3.0; n += 0.1) {
    double prev = capacity_lower_bound(0.0, n);
    for (double eta = 0.01; eta < 0.999; eta += 0.01) {
      const double q = capacity_lower_bound(eta, n);
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("Gaussian map") {
  const ThermalLossChannel ch(0.64, 0.209);
  const auto vac = apply_gaussian(ch, GaussianState{});
  CHECK(vac.cov(0, 0) == doctest::Approx(1.15048).epsilon(1e-12));
  CHECK(vac.cov(1, 1) == doctest::Approx(1.15048).epsilon(1e-12));
  CHECK(vac.cov(0, 1) == 0.0);

  GaussianState coherent;
  coherent.mean = {2.0, -1.0};
  const auto out = apply_gaussian(ch, coherent);
  CHECK(out.mean(0) == doctest::Approx(1.6));
  CHECK(out.mean(1) == doctest::Approx(-0.8));

  // Near-identity channel.
  GaussianState squeezed;
  squeezed.cov << 0.25, 0.0, 0.0, 4.0;
  const auto id = apply_gaussian(ThermalLossChannel(1.0 - 1e-12, 0.0), squeezed);
  CHECK((id.cov - squeezed.cov).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(ThermalLossChannel(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(ThermalLossChannel(0.5, -1.0), ValidationError);
}

TEST_CASE("Gaussian map preserves the uncertainty relation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0), r(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const ThermalLossChannel ch(0.999 * u(rng), 5.0 * u(rng));
    // Pure squeezed thermal input: R diag(s, 1/s) R^T scaled by (2n + 1).
    const double s = std::exp(r(rng)), phi = r(rng), n = 2.0 * u(rng);
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    GaussianState in;
    in.cov = (2.0 * n + 1.0) * rot * Eigen::Vector2d(s, 1.0 / s).asDiagonal() * rot.transpose();
    const auto out = apply_gaussian(ch, in);
    CHECK(out.cov.determinant() >= 1.0 - 1e-9);
  }
}
