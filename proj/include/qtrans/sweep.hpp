#ifndef QTRANS_SWEEP_HPP
#define QTRANS_SWEEP_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtrans/model.hpp"

namespace qtrans {

/// Full dimensionless operating point, including the bath.
struct OperatingPoint {
  double C_om = 4.0;
  double C_em = 4.0;
  double zeta_o = 0.9;
  double zeta_e = 0.9;
  double theta = 0.0;
  double chi = 0.0;
  double f_hz = 10e9;  // electrical and mechanical frequency
  double T_k = 1.0;
};

enum class AxisName { C_om, C_em, zeta_e, zeta_o, theta, chi, T_k };
enum class Quantity { n_e, eta, q_lb, cross_term };

std::string_view to_string(AxisName a);
std::string_view to_string(Quantity q);
std::optional<AxisName> parse_axis_name(std::string_view s);
std::optional<Quantity> parse_quantity(std::string_view s);

struct Axis {
  AxisName name = AxisName::theta;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double value(int i) const;
};

struct SweepSpec {
  OperatingPoint fixed;
  std::vector<Axis> axes;  // one or two; the first axis is the row index
  Quantity quantity = Quantity::n_e;
};

/// Thrown for malformed specs (wrong axis count, bad ranges).
class SweepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything the pipeline produces at one point. n_e and q_lb use the
/// correlated-noise channel, which reduces to the independent one at chi = 0.
struct PointEvaluation {
  double eta = 0.0;
  double n_e = 0.0;
  double q_lb = 0.0;
  double cross_term = 0.0;
  double n_th = 0.0;

  double get(Quantity q) const;
};

PointEvaluation evaluate_point(const OperatingPoint& p);

struct GridLocation {
  std::size_t index = 0;  // row-major
  std::vector<double> coords;
  double value = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> values;  // row-major over spec.axes
  GridLocation argmin;
  GridLocation argmax;

  std::size_t rows() const;
  std::size_t cols() const;
  double at(std::size_t i, std::size_t j = 0) const { return values[i * cols() + j]; }
};

void validate(const SweepSpec& spec);

/// Evaluates the spec on its grid. threads = 0 uses the hardware
/// concurrency; the result never depends on it.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Operating point at a row-major grid index.
OperatingPoint grid_point(const SweepSpec& spec, std::size_t index);

struct Cell {
  int i = 0;
  int j = 0;
  auto operator<=>(const Cell&) const = default;
};

struct CapacityRegion {
  std::vector<Cell> positive;      // q_lb > 0
  std::vector<Cell> transmissive;  // eta > 0.5
};

/// Cells of a 2-D spec with positive capacity bound and with eta > 1/2.
CapacityRegion positive_capacity_region(const SweepSpec& spec, int threads = 0);

struct ZetaOptimum {
  double zeta_e = 1.0;
  double q_lb = 0.0;
  bool no_capacity = false;  // q_lb vanished on the whole coarse grid
  std::vector<double> coarse_q_lb;  // 1001 samples over [0, 1]
};

/// Maximises q_lb over zeta_e in [0, 1]: coarse grid, then golden-section
/// refinement to 1e-6. fixed.zeta_e is ignored.
ZetaOptimum optimize_zeta_e(const OperatingPoint& fixed);

}  // namespace qtrans

#endif  // QTRANS_SWEEP_HPP
