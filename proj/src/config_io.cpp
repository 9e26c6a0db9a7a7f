#include "qtrans/config_io.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace qtrans {

using nlohmann::json;

namespace {

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigParseError(path + "." + key + ": missing field");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) throw ConfigParseError(path + "." + key + ": expected a number");
  return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigParseError(path + "." + it.key() + ": unknown field");
  }
}

ModeFrequencies parse_frequencies(const json& f) {
  reject_unknown(f, {"optical", "electrical", "mechanical"}, "frequencies_hz");
  return {number(f, "optical", "frequencies_hz"), number(f, "electrical", "frequencies_hz"),
          number(f, "mechanical", "frequencies_hz")};
}

}  // namespace

ParameterSet parse_parameters(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigParseError("top level: expected an object");

  const bool raw = doc.contains("rates") || doc.contains("couplings");
  const bool dimless = doc.contains("dimensionless");
  if (raw && dimless) {
    throw ConfigParseError("top level: \"dimensionless\" cannot be combined with "
                           "\"rates\"/\"couplings\"");
  }
  if (!raw && !dimless) {
    throw ConfigParseError("top level: need either \"rates\" + \"couplings\" or "
                           "\"dimensionless\"");
  }

  ParameterSet set;
  const json& env = member(doc, "environment", "top level");
  reject_unknown(env, {"temperature_k", "chi"}, "environment");
  set.env.temperature_k = number(env, "temperature_k", "environment");
  set.env.chi = number(env, "chi", "environment");

  if (raw) {
    reject_unknown(doc, {"rates", "couplings", "frequencies_hz", "environment"}, "top level");
    const json& r = member(doc, "rates", "top level");
    reject_unknown(r, {"kappa_o_c", "kappa_o_i", "kappa_e_c", "kappa_e_i", "kappa_m"}, "rates");
    set.params.rates = {number(r, "kappa_o_c", "rates"), number(r, "kappa_o_i", "rates"),
                        number(r, "kappa_e_c", "rates"), number(r, "kappa_e_i", "rates"),
                        number(r, "kappa_m", "rates")};
    const json& c = member(doc, "couplings", "top level");
    reject_unknown(c, {"g_om", "g_em_mag", "theta"}, "couplings");
    set.params.couplings = {number(c, "g_om", "couplings"),
                            number(c, "g_em_mag", "couplings"),
                            number(c, "theta", "couplings")};
    set.params.frequencies = parse_frequencies(member(doc, "frequencies_hz", "top level"));
  } else {
    reject_unknown(doc, {"dimensionless", "frequencies_hz", "environment"}, "top level");
    const json& d = member(doc, "dimensionless", "top level");
    reject_unknown(d, {"C_om", "C_em", "zeta_o", "zeta_e", "theta"}, "dimensionless");
    const DimensionlessParams dp{number(d, "C_om", "dimensionless"),
                                 number(d, "C_em", "dimensionless"),
                                 number(d, "zeta_o", "dimensionless"),
                                 number(d, "zeta_e", "dimensionless"),
                                 number(d, "theta", "dimensionless")};
    const ModeFrequencies freqs = doc.contains("frequencies_hz")
                                      ? parse_frequencies(doc["frequencies_hz"])
                                      : ModeFrequencies{};
    // Range problems here are validation failures, not parse failures.
    set.params = from_dimensionless(dp, freqs);
  }
  return set;
}

ParameterSet load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_parameters(buf.str());
  } catch (const ConfigParseError& e) {
    throw ConfigParseError(path.string() + ": " + e.what());
  }
}

json to_json(const ParameterSet& set) {
  const auto& r = set.params.rates;
  const auto& c = set.params.couplings;
  const auto& f = set.params.frequencies;
  return json{
      {"rates",
       {{"kappa_o_c", r.kappa_o_c},
        {"kappa_o_i", r.kappa_o_i},
        {"kappa_e_c", r.kappa_e_c},
        {"kappa_e_i", r.kappa_e_i},
        {"kappa_m", r.kappa_m}}},
      {"couplings", {{"g_om", c.g_om}, {"g_em_mag", c.g_em_mag}, {"theta", c.theta}}},
      {"frequencies_hz",
       {{"optical", f.optical_hz}, {"electrical", f.electrical_hz}, {"mechanical", f.mechanical_hz}}},
      {"environment", {{"temperature_k", set.env.temperature_k}, {"chi", set.env.chi}}},
  };
}

ParameterSet baseline_parameters() {
  ParameterSet set;
  set.params = from_dimensionless({4.0, 4.0, 0.9, 0.9, 1.5 * std::numbers::pi});
  set.env = {1.0, 0.9};
  return set;
}

OperatingPoint to_operating_point(const ParameterSet& set) {
  const DimensionlessParams d = to_dimensionless(set.params);
  OperatingPoint p;
  p.C_om = d.C_om;
  p.C_em = d.C_em;
  p.zeta_o = d.zeta_o;
  p.zeta_e = d.zeta_e;
  p.theta = d.theta;
  p.chi = set.env.chi;
  p.f_hz = set.params.frequencies.electrical_hz;
  p.T_k = set.env.temperature_k;
  return p;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace qtrans
