#ifndef QTRANS_MODEL_HPP
#define QTRANS_MODEL_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtrans {

/// CODATA exact values.
namespace constants {
inline constexpr double planck = 6.62607015e-34;     // J s
inline constexpr double boltzmann = 1.380649e-23;    // J / K
inline constexpr double two_pi = 6.283185307179586476925286766559;
}  // namespace constants

/// Raised when a parameter set violates a type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decay rates of the three modes into their ports. Units only need to be
/// mutually consistent with the couplings.
struct ModeRates {
  double kappa_o_c = 0.0;
  double kappa_o_i = 0.0;
  double kappa_e_c = 0.0;
  double kappa_e_i = 0.0;
  double kappa_m = 0.0;

  double kappa_o() const { return kappa_o_c + kappa_o_i; }
  double kappa_e() const { return kappa_e_c + kappa_e_i; }
  /// Largest / smallest of the three total mode decay rates.
  double max_total() const;
  double min_total() const;
};

/// Beam-splitter couplings. The piezo-mechanical coupling is
/// g_em = g_em_mag * exp(i theta).
struct Couplings {
  double g_om = 0.0;
  double g_em_mag = 0.0;
  double theta = 0.0;

  std::complex<double> g_em() const;
};

/// Mode frequencies in Hz (ordinary, not angular).
struct ModeFrequencies {
  double optical_hz = 193.4e12;
  double electrical_hz = 10e9;
  double mechanical_hz = 10e9;
};

struct TransducerParams {
  ModeRates rates;
  Couplings couplings;
  ModeFrequencies frequencies;
};

struct NoiseEnvironment {
  double temperature_k = 1.0;
  double chi = 0.0;  // real correlation coefficient of the intrinsic baths
};

/// The dimensionless parametrisation every channel quantity depends on.
struct DimensionlessParams {
  double C_om = 0.0;
  double C_em = 0.0;
  double zeta_o = 1.0;
  double zeta_e = 1.0;
  double theta = 0.0;
};

/// Wraps an angle into [0, 2 pi).
double normalize_phase(double theta);

/// Checks every invariant of the parameter set and throws ValidationError on
/// the first violation. Soft problems (optical frequency not far above the
/// microwave one) are returned as warnings.
std::vector<std::string> validate(const TransducerParams& params);
void validate(const NoiseEnvironment& env);
void validate(const DimensionlessParams& dimless);

/// Builds raw rates with kappa_m = kappa_o = kappa_e = 1. theta is stored
/// normalized.
TransducerParams from_dimensionless(const DimensionlessParams& dimless,
                                    const ModeFrequencies& freqs = {});
DimensionlessParams to_dimensionless(const TransducerParams& params);

double cooperativity_om(const TransducerParams& params);
double cooperativity_em(const TransducerParams& params);

/// (zeta_o, zeta_e): fraction of each mode's decay into its coupling port.
std::pair<double, double> extraction_ratios(const TransducerParams& params);

/// Bose-Einstein occupation 1 / (exp(h f / k_B T) - 1). Returns 0 once the
/// exponent is beyond the double range.
double thermal_occupation(double freq_hz, double temperature_k);

}  // namespace qtrans

#endif  // QTRANS_MODEL_HPP
