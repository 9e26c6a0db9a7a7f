#ifndef QTRANS_SCATTERING_HPP
#define QTRANS_SCATTERING_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

#include "qtrans/model.hpp"

namespace qtrans {

using cplx = std::complex<double>;

/// Port order shared by the input and output vectors.
enum class Port : int {
  OpticalCoupling = 0,
  OpticalIntrinsic = 1,
  ElectricalCoupling = 2,
  ElectricalIntrinsic = 3,
  Mechanical = 4,
};

inline constexpr int kNumPorts = 5;
inline constexpr int kNumModes = 3;

inline constexpr std::array<std::string_view, kNumPorts> kPortNames = {
    "a_c", "a_i", "c_c", "c_i", "b"};

/// Thrown when (-i w I - A) cannot be solved.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode order: optical a, electrical c, mechanical b.
struct DynamicsMatrix {
  Eigen::Matrix3cd m;
};

struct InputCouplingMatrix {
  Eigen::Matrix<double, kNumModes, kNumPorts> m;
};

struct ScatteringMatrix {
  double omega = 0.0;
  Eigen::Matrix<cplx, kNumPorts, kNumPorts> entries;

  cplx operator()(Port out, Port in) const {
    return entries(static_cast<int>(out), static_cast<int>(in));
  }
};

DynamicsMatrix build_dynamics(const TransducerParams& params);
InputCouplingMatrix build_input_coupling(const TransducerParams& params);

/// S[w] = B^T (-i w I - A)^{-1} B - I, solved with LU column by column.
ScatteringMatrix scattering_matrix(const TransducerParams& params, double omega);

/// Closed-form zero-frequency elements of the microwave-to-optical row.
struct ClosedFormElements {
  cplx S14;
  cplx S15;
  double eta = 0.0;
};

ClosedFormElements closed_form_elements(const TransducerParams& params);

/// S14* S15 + S15* S14, proportional to sin(theta).
double cross_term(const TransducerParams& params);

/// Same quantities straight from the dimensionless parameters.
ClosedFormElements closed_form_elements(const DimensionlessParams& d);
double cross_term(const DimensionlessParams& d);

}  // namespace qtrans

#endif  // QTRANS_SCATTERING_HPP
