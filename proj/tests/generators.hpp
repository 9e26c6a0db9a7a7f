// Random valid parameter sets for property-style tests.
#ifndef QTRANS_TESTS_GENERATORS_HPP
#define QTRANS_TESTS_GENERATORS_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "qtrans/model.hpp"

namespace qtrans::testing {

/// Rates over several decades, nonzero intrinsic losses, arbitrary phase.
inline TransducerParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_rate(-2.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  auto rate = [&] { return std::pow(10.0, log_rate(rng)); };
  TransducerParams p;
  p.rates = {rate(), rate(), rate(), rate(), rate()};
  p.couplings = {rate(), rate(), phase(rng)};
  return p;
}

inline DimensionlessParams random_dimensionless(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coop(0.0, 30.0), ratio(0.0, 1.0),
      phase(0.0, 2.0 * std::numbers::pi);
  return {coop(rng), coop(rng), ratio(rng), ratio(rng), phase(rng)};
}

}  // namespace qtrans::testing

#endif
