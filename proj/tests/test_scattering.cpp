#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "qtrans/scattering.hpp"

using namespace qtrans;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

// Independent route: adjugate inverse of (-i w - A), no LU involved.
Eigen::Matrix<cplx, 5, 5> scattering_by_adjugate(const TransducerParams& p, double omega) {
  Eigen::Matrix3cd m = -I * omega * Eigen::Matrix3cd::Identity() - build_dynamics(p).m;
  auto cof = [&m](int r, int c) {
    const int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
    return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
  };
  Eigen::Matrix3cd adj;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) adj(c, r) = cof(r, c);
  const cplx det = m(0, 0) * cof(0, 0) + m(0, 1) * cof(0, 1) + m(0, 2) * cof(0, 2);
  const Eigen::Matrix<cplx, 3, 5> b = build_input_coupling(p).m.cast<cplx>();
  return b.transpose() * (adj / det) * b - Eigen::Matrix<cplx, 5, 5>::Identity();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

TransducerParams dimless(double c_om, double c_em, double zo, double ze, double theta) {
  return from_dimensionless({c_om, c_em, zo, ze, theta});
}

}  // namespace

TEST_CASE("dynamics matrix layout") {
  TransducerParams p;
  p.rates = {1.0, 1.0, 2.0, 2.0, 3.0};
  p.couplings = {0.0, 0.0, 0.0};
  const auto a = build_dynamics(p).m;
  CHECK(a(0, 0) == cplx(-1.0, 0.0));
  CHECK(a(1, 1) == cplx(-2.0, 0.0));
  CHECK(a(2, 2) == cplx(-1.5, 0.0));
  CHECK(a(0, 1) == cplx(0.0));
  CHECK(a(0, 2) == cplx(0.0));

  p.couplings = {0.5, 2.0, 0.0};
  const auto real_coupling = build_dynamics(p).m;
  CHECK(real_coupling(1, 2) == cplx(0.0, -2.0));
  CHECK(real_coupling(2, 1) == cplx(0.0, -2.0));
  CHECK(real_coupling(0, 2) == cplx(0.0, -0.5));
  CHECK(real_coupling(2, 0) == cplx(0.0, -0.5));
  CHECK(real_coupling(0, 1) == cplx(0.0));
  CHECK(real_coupling(1, 0) == cplx(0.0));

  // g_em = i |g|: (3,2) = -i * i |g| = |g|, (2,3) = -i * (-i) |g| = -|g|.
  p.couplings.theta = pi / 2;
  const auto quarter = build_dynamics(p).m;
  CHECK(std::abs(quarter(2, 1) - cplx(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(quarter(1, 2) - cplx(-2.0, 0.0)) < 1e-15);
}

TEST_CASE("input coupling matrix") {
  TransducerParams p;
  p.rates = {4.0, 1.0, 1.0, 1.0, 1.0};
  const auto b = build_input_coupling(p).m;
  CHECK(b(0, 0) == 2.0);
  CHECK(b(0, 1) == 1.0);

  p.rates = {0.0, 0.0, 0.0, 0.0, 1.0};
  const auto single = build_input_coupling(p).m;
  CHECK(single(2, 4) == 1.0);
  CHECK((single.array() != 0.0).count() == 1);

  p.rates = {0.3, 0.7, 1.1, 2.2, 5.0};
  const Eigen::Matrix3d gram = build_input_coupling(p).m * build_input_coupling(p).m.transpose();
  CHECK(gram(0, 0) == doctest::Approx(1.0));
  CHECK(gram(1, 1) == doctest::Approx(3.3));
  CHECK(gram(2, 2) == doctest::Approx(5.0));
  CHECK(gram(0, 1) == 0.0);
}

TEST_CASE("decoupled modes reflect their own ports") {
  TransducerParams p;
  p.rates = {3.0, 1.0, 1.0, 1.0, 1.0};
  const auto s = scattering_matrix(p, 0.0);
  // Single mode: S11 = kappa_c / (kappa / 2) - 1 = 2 zeta - 1.
  CHECK(std::abs(s(Port::OpticalCoupling, Port::OpticalCoupling) - cplx(0.5)) < 1e-14);
  CHECK(std::abs(s(Port::OpticalCoupling, Port::ElectricalCoupling)) == 0.0);
  CHECK(std::abs(s(Port::Mechanical, Port::Mechanical) - cplx(1.0)) < 1e-14);
}

TEST_CASE("baseline transmissivity and closed forms") {
  const auto p = dimless(4, 4, 0.9, 0.9, 0.0);
  const auto s = scattering_matrix(p, 0.0);
  CHECK(std::norm(s(Port::OpticalCoupling, Port::ElectricalCoupling)) ==
        doctest::Approx(0.64).epsilon(1e-12));

  const auto cf = closed_form_elements(p);
  CHECK(cf.eta == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(std::norm(cf.S14) == doctest::Approx(5.76 / 81.0).epsilon(1e-13));
  CHECK(std::norm(cf.S15) == doctest::Approx(14.4 / 81.0).epsilon(1e-13));

  const auto no_intrinsic = closed_form_elements(dimless(4, 4, 0.9, 1.0, 1.0));
  CHECK(no_intrinsic.S14 == cplx(0.0));

  const auto no_optomech = closed_form_elements(dimless(0, 4, 0.9, 0.9, 1.0));
  CHECK(no_optomech.eta == 0.0);
  CHECK(std::abs(no_optomech.S14) == 0.0);
  CHECK(std::abs(no_optomech.S15) == 0.0);
}

TEST_CASE("cross term") {
  CHECK(cross_term(dimless(4, 4, 0.9, 0.9, 0.0)) == 0.0);
  CHECK(std::abs(cross_term(dimless(4, 4, 0.9, 0.9, pi))) < 1e-16);
  // -8 sqrt(0.4) 3.6 / 81
  CHECK(cross_term(dimless(4, 4, 0.9, 0.9, 1.5 * pi)) ==
        doctest::Approx(-0.224873078056418).epsilon(1e-12));
  CHECK(cross_term(dimless(4, 4, 0.9, 0.9, 0.5 * pi)) ==
        doctest::Approx(-cross_term(dimless(4, 4, 0.9, 0.9, 1.5 * pi))).epsilon(1e-14));
}

TEST_CASE("numerical solve agrees with the adjugate oracle and the closed forms") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> w(-5.0, 5.0);
  for (int k = 0; k < 300; ++k) {
    const auto p = testing::random_params(rng);
    const double omega = w(rng);
    const auto s = scattering_matrix(p, omega).entries;
    const auto oracle = scattering_by_adjugate(p, omega);
    CHECK((s - oracle).cwiseAbs().maxCoeff() < 1e-9);

    const auto s0 = scattering_matrix(p, 0.0);
    const auto cf = closed_form_elements(p);
    CHECK(std::norm(s0(Port::OpticalCoupling, Port::ElectricalCoupling)) ==
          doctest::Approx(cf.eta).epsilon(1e-10));
    CHECK(rel(s0(Port::OpticalCoupling, Port::ElectricalIntrinsic), cf.S14) < 1e-10);
    CHECK(rel(s0(Port::OpticalCoupling, Port::Mechanical), cf.S15) < 1e-10);
    const double numeric_cross = 2.0 * std::real(std::conj(s0(Port::OpticalCoupling, Port::ElectricalIntrinsic)) *
                                                 s0(Port::OpticalCoupling, Port::Mechanical));
    CHECK(std::abs(numeric_cross - cross_term(p)) < 1e-12 * (1.0 + std::abs(cross_term(p))));
  }
}

TEST_CASE("unitarity holds at every frequency") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    const auto p = testing::random_params(rng);
    const double k_max = std::max({p.rates.kappa_o(), p.rates.kappa_e(), p.rates.kappa_m});
    std::uniform_real_distribution<double> w(-10.0 * k_max, 10.0 * k_max);
    const auto s = scattering_matrix(p, w(rng)).entries;
    const auto defect = (s.adjoint() * s - Eigen::Matrix<cplx, 5, 5>::Identity()).cwiseAbs().maxCoeff();
    CHECK(defect < 1e-10);
  }
}

TEST_CASE("magnitudes do not depend on the coupling phase") {
  const auto ref = scattering_matrix(dimless(3, 5, 0.8, 0.7, 0.0), 0.0).entries.cwiseAbs();
  for (double theta = 0.1; theta < 2.0 * pi; theta += 0.3) {
    const auto s = scattering_matrix(dimless(3, 5, 0.8, 0.7, theta), 0.0).entries.cwiseAbs();
    CHECK((s - ref).maxCoeff() < 1e-13);
  }
}

TEST_CASE("first row normalisation") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::random_params(rng);
    const auto s = scattering_matrix(p, 0.0);
    const auto cf = closed_form_elements(p);
    const double others = std::norm(s(Port::OpticalCoupling, Port::OpticalCoupling)) +
                          std::norm(s(Port::OpticalCoupling, Port::OpticalIntrinsic)) +
                          std::norm(s(Port::OpticalCoupling, Port::ElectricalIntrinsic)) +
                          std::norm(s(Port::OpticalCoupling, Port::Mechanical));
    CHECK(std::abs(others - (1.0 - cf.eta)) < 1e-10);
  }
}

TEST_CASE("phase shifted by 2 pi gives the same matrix") {
  const auto a = scattering_matrix(dimless(2, 3, 0.6, 0.4, 1.1), 0.3).entries;
  auto p = dimless(2, 3, 0.6, 0.4, 1.1);
  p.couplings.theta += 2.0 * pi;
  const auto b = scattering_matrix(p, 0.3).entries;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cross_term(p) == doctest::Approx(cross_term(dimless(2, 3, 0.6, 0.4, 1.1))).epsilon(1e-14));
}

TEST_CASE("singular solve names the undamped mode") {
  TransducerParams p;
  p.rates = {1.0, 1.0, 0.0, 0.0, 1.0};
  p.couplings = {1.0, 0.0, 0.0};
  try {
    scattering_matrix(p, 0.0);
    FAIL("expected SingularSystemError");
  } catch (const SingularSystemError& e) {
    CHECK(std::string(e.what()).find("electrical") != std::string::npos);
  }
}
