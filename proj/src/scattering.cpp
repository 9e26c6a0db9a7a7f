#include "qtrans/scattering.hpp"

#include <cmath>
#include <string>

namespace qtrans {

namespace {

constexpr cplx kI{0.0, 1.0};

// Smallest reciprocal condition number we accept from the 3x3 LU.
constexpr double kMinRcond = 1e-14;

std::string zero_rate_modes(const ModeRates& r) {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += ", ";
    out += name;
  };
  if (!(r.kappa_o() > 0.0)) add("optical");
  if (!(r.kappa_e() > 0.0)) add("electrical");
  if (!(r.kappa_m > 0.0)) add("mechanical");
  return out.empty() ? std::string("none with zero decay") : out;
}

}  // namespace

DynamicsMatrix build_dynamics(const TransducerParams& params) {
  const auto& r = params.rates;
  const double g_om = params.couplings.g_om;
  const cplx g_em = params.couplings.g_em();

  DynamicsMatrix a;
  a.m.setZero();
  a.m(0, 0) = -0.5 * r.kappa_o();
  a.m(1, 1) = -0.5 * r.kappa_e();
  a.m(2, 2) = -0.5 * r.kappa_m;
  a.m(0, 2) = -kI * g_om;
  a.m(2, 0) = -kI * g_om;
  a.m(1, 2) = -kI * std::conj(g_em);
  a.m(2, 1) = -kI * g_em;
  return a;
}

InputCouplingMatrix build_input_coupling(const TransducerParams& params) {
  const auto& r = params.rates;
  InputCouplingMatrix b;
  b.m.setZero();
  b.m(0, static_cast<int>(Port::OpticalCoupling)) = std::sqrt(r.kappa_o_c);
  b.m(0, static_cast<int>(Port::OpticalIntrinsic)) = std::sqrt(r.kappa_o_i);
  b.m(1, static_cast<int>(Port::ElectricalCoupling)) = std::sqrt(r.kappa_e_c);
  b.m(1, static_cast<int>(Port::ElectricalIntrinsic)) = std::sqrt(r.kappa_e_i);
  b.m(2, static_cast<int>(Port::Mechanical)) = std::sqrt(r.kappa_m);
  return b;
}

ScatteringMatrix scattering_matrix(const TransducerParams& params, double omega) {
  const Eigen::Matrix3cd a = build_dynamics(params).m;
  const Eigen::Matrix<cplx, kNumModes, kNumPorts> b =
      build_input_coupling(params).m.cast<cplx>();

  const Eigen::Matrix3cd lhs = -kI * omega * Eigen::Matrix3cd::Identity() - a;
  const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(lhs);
  const double rcond = lu.rcond();
  if (!(rcond > kMinRcond)) {
    throw SingularSystemError("scattering solve is singular at omega = " +
                              std::to_string(omega) + " (modes without decay: " +
                              zero_rate_modes(params.rates) + ")");
  }

  Eigen::Matrix<cplx, kNumModes, kNumPorts> x;
  for (int col = 0; col < kNumPorts; ++col) x.col(col) = lu.solve(b.col(col));

  ScatteringMatrix s;
  s.omega = omega;
  s.entries = b.transpose() * x;
  s.entries -= Eigen::Matrix<cplx, kNumPorts, kNumPorts>::Identity();
  return s;
}

ClosedFormElements closed_form_elements(const DimensionlessParams& d) {
  const double denom = 1.0 + d.C_om + d.C_em;
  ClosedFormElements e;
  e.S14 = -2.0 * std::polar(1.0, normalize_phase(d.theta)) *
          std::sqrt(d.C_em * d.C_om * (1.0 - d.zeta_e) * d.zeta_o) / denom;
  e.S15 = -2.0 * kI * std::sqrt(d.C_om * d.zeta_o) / denom;
  e.eta = 4.0 * d.C_om * d.C_em * d.zeta_o * d.zeta_e / (denom * denom);
  return e;
}

double cross_term(const DimensionlessParams& d) {
  const double denom = 1.0 + d.C_om + d.C_em;
  return 8.0 * std::sqrt(d.C_em * (1.0 - d.zeta_e)) * d.C_om * d.zeta_o *
         std::sin(normalize_phase(d.theta)) / (denom * denom);
}

ClosedFormElements closed_form_elements(const TransducerParams& params) {
  return closed_form_elements(to_dimensionless(params));
}

double cross_term(const TransducerParams& params) {
  return cross_term(to_dimensionless(params));
}

}  // namespace qtrans
