#ifndef QTRANS_CONFIG_IO_HPP
#define QTRANS_CONFIG_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qtrans/model.hpp"
#include "qtrans/sweep.hpp"

namespace qtrans {

/// Malformed parameter file: bad JSON, missing or unknown field, wrong type.
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParameterSet {
  TransducerParams params;
  NoiseEnvironment env;
};

/// Parses either the raw form ("rates", "couplings", "frequencies_hz",
/// "environment") or the dimensionless form ("dimensionless",
/// "environment", optional "frequencies_hz"). Structural problems raise
/// ConfigParseError; the values themselves are checked separately with
/// validate().
ParameterSet parse_parameters(std::string_view text);
ParameterSet load_parameters(const std::filesystem::path& path);

/// Raw-form document that parse_parameters reads back to the same values.
nlohmann::json to_json(const ParameterSet& set);

/// The built-in operating point of the reference figures:
/// C_om = C_em = 4, zeta_o = zeta_e = 0.9, theta = 3 pi / 2, chi = 0.9,
/// 10 GHz, 1 K.
ParameterSet baseline_parameters();

OperatingPoint to_operating_point(const ParameterSet& set);

/// 17 significant digits, locale independent.
std::string format_number(double v);

}  // namespace qtrans

#endif  // QTRANS_CONFIG_IO_HPP
