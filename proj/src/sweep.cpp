#include "qtrans/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "qtrans/channel.hpp"
#include "qtrans/golden_section.hpp"
#include "qtrans/scattering.hpp"

namespace qtrans {

namespace {

constexpr int kZetaGridPoints = 1001;
constexpr double kZetaTolerance = 1e-6;
constexpr double kTieTolerance = 1e-12;

void set_axis(OperatingPoint& p, AxisName name, double v) {
  switch (name) {
    case AxisName::C_om: p.C_om = v; break;
    case AxisName::C_em: p.C_em = v; break;
    case AxisName::zeta_e: p.zeta_e = v; break;
    case AxisName::zeta_o: p.zeta_o = v; break;
    case AxisName::theta: p.theta = v; break;
    case AxisName::chi: p.chi = v; break;
    case AxisName::T_k: p.T_k = v; break;
  }
}

std::vector<double> coords_of(const SweepSpec& spec, std::size_t index) {
  if (spec.axes.size() == 1) return {spec.axes[0].value(static_cast<int>(index))};
  const auto cols = static_cast<std::size_t>(spec.axes[1].steps);
  return {spec.axes[0].value(static_cast<int>(index / cols)),
          spec.axes[1].value(static_cast<int>(index % cols))};
}

std::size_t cell_count(const SweepSpec& spec) {
  std::size_t n = 1;
  for (const auto& a : spec.axes) n *= static_cast<std::size_t>(a.steps);
  return n;
}

}  // namespace

std::string_view to_string(AxisName a) {
  switch (a) {
    case AxisName::C_om: return "C_om";
    case AxisName::C_em: return "C_em";
    case AxisName::zeta_e: return "zeta_e";
    case AxisName::zeta_o: return "zeta_o";
    case AxisName::theta: return "theta";
    case AxisName::chi: return "chi";
    case AxisName::T_k: return "T_k";
  }
  return "?";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::n_e: return "n_e";
    case Quantity::eta: return "eta";
    case Quantity::q_lb: return "q_lb";
    case Quantity::cross_term: return "cross_term";
  }
  return "?";
}

std::optional<AxisName> parse_axis_name(std::string_view s) {
  for (auto a : {AxisName::C_om, AxisName::C_em, AxisName::zeta_e, AxisName::zeta_o,
                 AxisName::theta, AxisName::chi, AxisName::T_k}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<Quantity> parse_quantity(std::string_view s) {
  for (auto q : {Quantity::n_e, Quantity::eta, Quantity::q_lb, Quantity::cross_term}) {
    if (s == to_string(q)) return q;
  }
  return std::nullopt;
}

double Axis::value(int i) const {
  if (i == steps - 1) return max;
  return min + i * ((max - min) / (steps - 1));
}

double PointEvaluation::get(Quantity q) const {
  switch (q) {
    case Quantity::n_e: return n_e;
    case Quantity::eta: return eta;
    case Quantity::q_lb: return q_lb;
    case Quantity::cross_term: return cross_term;
  }
  return 0.0;
}

PointEvaluation evaluate_point(const OperatingPoint& p) {
  ModeFrequencies freqs;
  freqs.electrical_hz = p.f_hz;
  freqs.mechanical_hz = p.f_hz;
  const TransducerParams params =
      from_dimensionless({p.C_om, p.C_em, p.zeta_o, p.zeta_e, p.theta}, freqs);
  const NoiseEnvironment env{p.T_k, p.chi};

  const ThermalLossChannel ch = channel_correlated(params, env);
  PointEvaluation e;
  e.eta = ch.eta();
  e.n_e = ch.n_e();
  e.q_lb = capacity_lower_bound(e.eta, e.n_e);
  e.cross_term = cross_term(params);
  e.n_th = bath_occupation(params, env);
  return e;
}

std::size_t SweepResult::rows() const {
  return spec.axes.empty() ? 0 : static_cast<std::size_t>(spec.axes[0].steps);
}

std::size_t SweepResult::cols() const {
  return spec.axes.size() > 1 ? static_cast<std::size_t>(spec.axes[1].steps) : 1;
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw SweepError("a sweep needs one or two axes");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
    throw SweepError("sweep axes must differ");
  }
  for (const auto& a : spec.axes) {
    const std::string name(to_string(a.name));
    if (a.steps < 2) throw SweepError("axis " + name + " needs steps >= 2");
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || a.min > a.max) {
      throw SweepError("axis " + name + " needs finite min <= max");
    }
    bool ok = true;
    switch (a.name) {
      case AxisName::C_om:
      case AxisName::C_em: ok = a.min >= 0.0; break;
      case AxisName::zeta_e:
      case AxisName::zeta_o: ok = a.min >= 0.0 && a.max <= 1.0; break;
      case AxisName::chi: ok = a.min >= -1.0 && a.max <= 1.0; break;
      case AxisName::T_k: ok = a.min > 0.0; break;
      case AxisName::theta: break;
    }
    if (!ok) throw SweepError("axis " + name + " range violates its domain");
  }
}

OperatingPoint grid_point(const SweepSpec& spec, std::size_t index) {
  OperatingPoint p = spec.fixed;
  const auto c = coords_of(spec, index);
  for (std::size_t k = 0; k < spec.axes.size(); ++k) set_axis(p, spec.axes[k].name, c[k]);
  return p;
}

namespace {

PointEvaluation evaluate_cell(const SweepSpec& spec, std::size_t index) {
  try {
    return evaluate_point(grid_point(spec, index));
  } catch (const ValidationError& e) {
    std::ostringstream os;
    os.precision(17);
    os << "at grid index " << index << " (";
    const auto c = coords_of(spec, index);
    for (std::size_t k = 0; k < c.size(); ++k) {
      os << (k ? ", " : "") << to_string(spec.axes[k].name) << " = " << c[k];
    }
    os << "): " << e.what();
    throw ValidationError(os.str());
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  validate(spec);
  SweepResult r;
  r.spec = spec;
  r.values.assign(cell_count(spec), 0.0);
  detail::parallel_for(r.values.size(), threads, [&](std::size_t i) {
    r.values[i] = evaluate_cell(spec, i).get(spec.quantity);
  });

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < r.values.size(); ++i) {
    if (r.values[i] < r.values[lo]) lo = i;
    if (r.values[i] > r.values[hi]) hi = i;
  }
  r.argmin = {lo, coords_of(spec, lo), r.values[lo]};
  r.argmax = {hi, coords_of(spec, hi), r.values[hi]};
  return r;
}

CapacityRegion positive_capacity_region(const SweepSpec& spec, int threads) {
  validate(spec);
  if (spec.axes.size() != 2) throw SweepError("capacity region needs a 2-D sweep");

  std::vector<PointEvaluation> evals(cell_count(spec));
  detail::parallel_for(evals.size(), threads,
                       [&](std::size_t i) { evals[i] = evaluate_cell(spec, i); });

  CapacityRegion region;
  const int cols = spec.axes[1].steps;
  for (std::size_t k = 0; k < evals.size(); ++k) {
    const Cell cell{static_cast<int>(k) / cols, static_cast<int>(k) % cols};
    if (evals[k].q_lb > 0.0) region.positive.push_back(cell);
    if (evals[k].eta > 0.5) region.transmissive.push_back(cell);
  }
  return region;
}

ZetaOptimum optimize_zeta_e(const OperatingPoint& fixed) {
  auto q_at = [&fixed](double zeta_e) {
    OperatingPoint p = fixed;
    p.zeta_e = std::clamp(zeta_e, 0.0, 1.0);
    return evaluate_point(p).q_lb;
  };

  ZetaOptimum opt;
  opt.coarse_q_lb.resize(kZetaGridPoints);
  const double step = 1.0 / (kZetaGridPoints - 1);
  for (int i = 0; i < kZetaGridPoints; ++i) {
    opt.coarse_q_lb[static_cast<std::size_t>(i)] =
        q_at(i == kZetaGridPoints - 1 ? 1.0 : i * step);
  }

  int best = 0;
  for (int i = 1; i < kZetaGridPoints; ++i) {
    // Strictly larger beyond the tie tolerance, so ties keep the smaller zeta.
    if (opt.coarse_q_lb[static_cast<std::size_t>(i)] >
        opt.coarse_q_lb[static_cast<std::size_t>(best)] + kTieTolerance) {
      best = i;
    }
  }
  const double best_value = opt.coarse_q_lb[static_cast<std::size_t>(best)];
  if (!(best_value > 0.0)) {
    opt.zeta_e = 1.0;
    opt.q_lb = 0.0;
    opt.no_capacity = true;
    return opt;
  }

  const double lo = std::max(0.0, (best - 1) * step);
  const double hi = std::min(1.0, (best + 1) * step);
  const LineOptimum refined = golden_section_maximize(q_at, lo, hi, kZetaTolerance);
  if (refined.value >= best_value) {
    opt.zeta_e = refined.x;
    opt.q_lb = refined.value;
  } else {
    opt.zeta_e = best == kZetaGridPoints - 1 ? 1.0 : best * step;
    opt.q_lb = best_value;
  }
  return opt;
}

}  // namespace qtrans
