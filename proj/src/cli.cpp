#include "qtrans/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtrans/channel.hpp"
#include "qtrans/config_io.hpp"
#include "qtrans/oracle.hpp"
#include "qtrans/scattering.hpp"
#include "qtrans/sweep.hpp"

namespace qtrans::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << text;
  if (!f) throw IoError(path.string() + ": write failed");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Accepts plain numbers and multiples of pi such as "pi", "1.5pi", "-2pi".
double parse_scalar(const std::string& s) {
  std::string body = s;
  double scale = 1.0;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    body.resize(body.size() - 2);
    scale = std::numbers::pi;
    if (body.empty() || body == "+") return scale;
    if (body == "-") return -scale;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw ConfigParseError("not a number: \"" + s + "\"");
  }
  if (used != body.size()) throw ConfigParseError("not a number: \"" + s + "\"");
  return v * scale;
}

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) {
    throw ConfigParseError("--axis expects <name>:<min>:<max>:<steps>, got \"" + text + "\"");
  }
  const auto name = parse_axis_name(parts[0]);
  if (!name) throw ConfigParseError("unknown axis \"" + parts[0] + "\"");
  Axis a;
  a.name = *name;
  a.min = parse_scalar(parts[1]);
  a.max = parse_scalar(parts[2]);
  const double steps = parse_scalar(parts[3]);
  if (steps != std::floor(steps) || steps > std::numeric_limits<int>::max()) {
    throw ConfigParseError("axis steps must be an integer: \"" + parts[3] + "\"");
  }
  a.steps = static_cast<int>(steps);
  return a;
}

ParameterSet load_or_baseline(const std::string& path) {
  return path.empty() ? baseline_parameters() : load_parameters(path);
}

json point_json(const OperatingPoint& p) {
  return json{{"C_om", p.C_om}, {"C_em", p.C_em}, {"zeta_o", p.zeta_o},
              {"zeta_e", p.zeta_e}, {"theta", p.theta}, {"chi", p.chi},
              {"f_hz", p.f_hz}, {"T_k", p.T_k}};
}

json spec_json(const SweepSpec& spec) {
  json axes = json::array();
  for (const auto& a : spec.axes) {
    axes.push_back({{"name", std::string(to_string(a.name))},
                    {"min", a.min},
                    {"max", a.max},
                    {"steps", a.steps}});
  }
  return json{{"fixed", point_json(spec.fixed)},
              {"axes", axes},
              {"quantity", std::string(to_string(spec.quantity))}};
}

json location_json(const GridLocation& loc) {
  return json{{"index", loc.index}, {"coords", loc.coords}, {"value", loc.value}};
}

json summary_json(const SweepResult& r) {
  return json{{"spec", spec_json(r.spec)},
              {"argmin", location_json(r.argmin)},
              {"argmax", location_json(r.argmax)}};
}

std::string sweep_csv(const SweepResult& r) {
  std::string csv;
  for (const auto& a : r.spec.axes) csv += std::string(to_string(a.name)) + ",";
  csv += std::string(to_string(r.spec.quantity)) + "\n";
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (r.spec.axes.size() == 1) {
      csv += format_number(r.spec.axes[0].value(static_cast<int>(k)));
    } else {
      csv += format_number(r.spec.axes[0].value(static_cast<int>(k / r.cols()))) + "," +
             format_number(r.spec.axes[1].value(static_cast<int>(k % r.cols())));
    }
    csv += "," + format_number(r.values[k]) + "\n";
  }
  return csv;
}

fs::path sidecar_path(const fs::path& out) {
  fs::path p = out;
  p.replace_extension(".json");
  return p;
}

struct Common {
  std::string config;
  std::string out;
  std::string format;
  int threads = 0;
  int verbosity = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_config = true) {
  if (with_config) cmd->add_option("--config", c.config, "Parameter file (JSON)");
  cmd->add_option("--out", c.out,
                  with_config ? "Output path (stdout when omitted)" : "Output directory (default .)");
  cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("-v,--verbose", c.verbosity, "Print warnings and progress to stderr");
}

void report_warnings(const ParameterSet& set, const Common& c, std::ostream& err) {
  const auto warnings = validate(set.params);
  validate(set.env);
  if (c.verbosity > 0) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
  }
}

int cmd_channel(const Common& c, bool echo, std::ostream& out, std::ostream& err) {
  const ParameterSet set = load_or_baseline(c.config);
  report_warnings(set, c, err);
  if (echo) {
    emit(dump(to_json(set)), c.out, out);
    return kOk;
  }
  const ThermalLossChannel ind = channel_independent(set.params, set.env);
  const ThermalLossChannel cor = channel_correlated(set.params, set.env);
  const std::vector<std::pair<std::string, double>> fields = {
      {"eta", cor.eta()},
      {"n_th", bath_occupation(set.params, set.env)},
      {"n_e_independent", ind.n_e()},
      {"n_e_correlated", cor.n_e()},
      {"cross_term", cross_term(set.params)},
      {"q_lb_independent", capacity_lower_bound(ind.eta(), ind.n_e())},
      {"q_lb_correlated", capacity_lower_bound(cor.eta(), cor.n_e())},
  };
  if (c.format == "csv") {
    std::string csv = "key,value\n";
    for (const auto& [k, v] : fields) csv += k + "," + format_number(v) + "\n";
    emit(csv, c.out, out);
  } else {
    json j = json::object();
    for (const auto& [k, v] : fields) j[k] = v;
    emit(dump(j), c.out, out);
  }
  return kOk;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& axis_args,
              const std::string& quantity, std::ostream& out, std::ostream& err) {
  const ParameterSet set = load_or_baseline(c.config);
  report_warnings(set, c, err);
  SweepSpec spec;
  spec.fixed = to_operating_point(set);
  if (axis_args.empty() || axis_args.size() > 2) {
    throw ConfigParseError("sweep needs one or two --axis options");
  }
  for (const auto& a : axis_args) spec.axes.push_back(parse_axis(a));
  const auto q = parse_quantity(quantity);
  if (!q) throw ConfigParseError("unknown quantity \"" + quantity + "\"");
  spec.quantity = *q;

  const SweepResult r = run_sweep(spec, c.threads);
  if (c.format == "json") {
    json j = summary_json(r);
    j["values"] = r.values;
    emit(dump(j), c.out, out);
  } else {
    emit(sweep_csv(r), c.out, out);
    if (!c.out.empty()) write_file(sidecar_path(c.out), dump(summary_json(r)));
  }
  return kOk;
}

int cmd_optimize(const Common& c, std::ostream& out, std::ostream& err) {
  const ParameterSet set = load_or_baseline(c.config);
  report_warnings(set, c, err);
  const OperatingPoint fixed = to_operating_point(set);
  const ZetaOptimum opt = optimize_zeta_e(fixed);
  if (c.format == "csv") {
    std::string csv = "zeta_e,q_lb\n";
    for (std::size_t i = 0; i < opt.coarse_q_lb.size(); ++i) {
      const double z = i + 1 == opt.coarse_q_lb.size()
                           ? 1.0
                           : static_cast<double>(i) / (opt.coarse_q_lb.size() - 1);
      csv += format_number(z) + "," + format_number(opt.coarse_q_lb[i]) + "\n";
    }
    emit(csv, c.out, out);
  } else {
    json fixed_json = point_json(fixed);
    fixed_json.erase("zeta_e");
    emit(dump(json{{"zeta_e_star", opt.zeta_e},
                   {"q_lb_star", opt.q_lb},
                   {"no_capacity", opt.no_capacity},
                   {"fixed", fixed_json}}),
         c.out, out);
  }
  return kOk;
}

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::optional<double> dt, total_time, burn_in;
  std::optional<int> trajectories, psd_window;
  double target_offset = 0.0;
};

int cmd_verify(const Common& c, const VerifyOptions& v, std::ostream& out, std::ostream& err) {
  const ParameterSet set = load_or_baseline(c.config);
  report_warnings(set, c, err);
  SimConfig cfg = default_sim_config(set.params);
  cfg.seed = v.seed;
  cfg.threads = c.threads;
  if (v.dt) cfg.dt = *v.dt;
  if (v.total_time) cfg.total_time = *v.total_time;
  if (v.burn_in) cfg.burn_in = *v.burn_in;
  if (v.trajectories) cfg.n_trajectories = *v.trajectories;
  if (v.psd_window) cfg.psd_window = *v.psd_window;

  OracleResult r = simulate_output_noise(set.params, set.env, cfg);
  r.analytic_target += v.target_offset;
  const double diff = r.noise_flux_estimate - r.analytic_target;

  json z;
  bool agree = false;
  if (r.std_error > 0.0) {
    z = diff / r.std_error;
    agree = std::abs(diff / r.std_error) <= 3.0;
  } else {
    agree = diff == 0.0;
    z = agree ? json(0.0) : json(nullptr);
  }

  const json sim{{"dt", cfg.dt},
                 {"total_time", cfg.total_time},
                 {"burn_in", cfg.burn_in},
                 {"n_trajectories", cfg.n_trajectories},
                 {"seed", cfg.seed},
                 {"psd_window", cfg.psd_window}};
  json report{{"estimate", r.noise_flux_estimate},
              {"std_error", r.std_error},
              {"analytic_target", r.analytic_target},
              {"z_score", z},
              {"config_echo", {{"parameters", to_json(set)}, {"sim", sim}}}};
  if (v.target_offset != 0.0) report["config_echo"]["target_offset"] = v.target_offset;
  emit(dump(report), c.out, out);
  if (!agree && c.verbosity > 0) err << "verify: estimate disagrees with the analytic target\n";
  return agree ? kOk : kVerificationFailed;
}

}  // namespace

void write_figures(const fs::path& dir, int threads) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": " + ec.message());

  OperatingPoint base;  // C_om = C_em = 4, zeta = 0.9, 10 GHz, 1 K
  const double pi = std::numbers::pi;

  // (a) n_e against the coupling phase for three correlation strengths.
  {
    std::string csv = "chi,theta,n_e\n";
    json summary = json::array();
    for (double chi : {0.7, 0.8, 0.9}) {
      SweepSpec spec;
      spec.fixed = base;
      spec.fixed.chi = chi;
      spec.axes = {Axis{AxisName::theta, 0.0, 2.0 * pi, 361}};
      spec.quantity = Quantity::n_e;
      const SweepResult r = run_sweep(spec, threads);
      for (std::size_t k = 0; k < r.values.size(); ++k) {
        csv += format_number(chi) + "," +
               format_number(spec.axes[0].value(static_cast<int>(k))) + "," +
               format_number(r.values[k]) + "\n";
      }
      summary.push_back({{"chi", chi}, {"summary", summary_json(r)}});
    }
    write_file(dir / "fig1a.csv", csv);
    write_file(dir / "fig1a.json", dump(summary));
  }

  // (b), (c) capacity bound over the cooperativities.
  const std::pair<const char*, double> panels[] = {{"fig1b", 1.25 * pi}, {"fig1c", 1.5 * pi}};
  for (const auto& [name, theta] : panels) {
    SweepSpec spec;
    spec.fixed = base;
    spec.fixed.theta = theta;
    spec.fixed.chi = 0.9;
    spec.axes = {Axis{AxisName::C_om, 0.0, 8.0, 81}, Axis{AxisName::C_em, 0.0, 8.0, 81}};
    spec.quantity = Quantity::q_lb;
    const SweepResult q = run_sweep(spec, threads);
    SweepSpec eta_spec = spec;
    eta_spec.quantity = Quantity::eta;
    const SweepResult eta = run_sweep(eta_spec, threads);
    const CapacityRegion region = positive_capacity_region(spec, threads);

    std::string csv = "C_om,C_em,q_lb,eta\n";
    for (std::size_t k = 0; k < q.values.size(); ++k) {
      csv += format_number(spec.axes[0].value(static_cast<int>(k / q.cols()))) + "," +
             format_number(spec.axes[1].value(static_cast<int>(k % q.cols()))) + "," +
             format_number(q.values[k]) + "," + format_number(eta.values[k]) + "\n";
    }
    json summary = summary_json(q);
    summary["positive_cells"] = region.positive.size();
    summary["eta_above_half_cells"] = region.transmissive.size();
    write_file(dir / (std::string(name) + ".csv"), csv);
    write_file(dir / (std::string(name) + ".json"), dump(summary));
  }

  // (d) capacity bound against the electrical extraction ratio.
  {
    std::string csv = "C_om,C_em,zeta_e,q_lb\n";
    json summary = json::array();
    for (double coop : {4.0, 5.0, 6.0}) {
      OperatingPoint p = base;
      p.C_om = coop;
      p.C_em = coop;
      p.theta = 1.5 * pi;
      p.chi = 0.9;
      const ZetaOptimum opt = optimize_zeta_e(p);
      const std::size_t n = opt.coarse_q_lb.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double z = i + 1 == n ? 1.0 : static_cast<double>(i) / (n - 1);
        csv += format_number(coop) + "," + format_number(coop) + "," + format_number(z) + "," +
               format_number(opt.coarse_q_lb[i]) + "\n";
      }
      summary.push_back({{"C_om", coop},
                         {"C_em", coop},
                         {"zeta_e_star", opt.zeta_e},
                         {"q_lb_star", opt.q_lb},
                         {"no_capacity", opt.no_capacity}});
    }
    write_file(dir / "fig1d.csv", csv);
    write_file(dir / "fig1d.json", dump(summary));
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Microwave-to-optical transducer channel toolkit", "qtrans"};
  app.require_subcommand(1);

  Common common;
  bool echo = false;
  std::vector<std::string> axes;
  std::string quantity = "n_e";
  VerifyOptions vopt;

  auto* channel = app.add_subcommand("channel", "Thermal loss channel and capacity bound");
  add_common(channel, common);
  channel->add_option("--format", common.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  channel->add_flag("--echo-config", echo, "Print the parsed parameters as a parameter file");

  auto* sweep = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
  add_common(sweep, common);
  sweep->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--axis", axes, "<name>:<min>:<max>:<steps>, at most twice");
  sweep->add_option("--quantity", quantity, "n_e | eta | q_lb | cross_term");

  auto* optimize = app.add_subcommand("optimize", "Best electrical extraction ratio");
  add_common(optimize, common);
  optimize->add_option("--format", common.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* figures = app.add_subcommand("figures", "Write the fig1a..fig1d datasets");
  add_common(figures, common, false);

  auto* verify = app.add_subcommand("verify", "Stochastic time-domain cross-check");
  add_common(verify, common);
  verify->add_option("--seed", vopt.seed, "RNG seed");
  verify->add_option("--dt", vopt.dt, "Time step");
  verify->add_option("--total-time", vopt.total_time, "Recorded time after burn-in");
  verify->add_option("--burn-in", vopt.burn_in, "Discarded initial time");
  verify->add_option("--trajectories", vopt.trajectories, "Independent realisations");
  verify->add_option("--psd-window", vopt.psd_window, "Welch segment length in samples");
  verify->add_option("--target-offset", vopt.target_offset,
                     "Shift the analytic target (negative control)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (channel->parsed()) {
      if (common.format.empty()) common.format = "json";
      return cmd_channel(common, echo, out, err);
    }
    if (sweep->parsed()) {
      if (common.format.empty()) common.format = "csv";
      return cmd_sweep(common, axes, quantity, out, err);
    }
    if (optimize->parsed()) {
      if (common.format.empty()) common.format = "json";
      return cmd_optimize(common, out, err);
    }
    if (figures->parsed()) {
      write_figures(common.out.empty() ? fs::path(".") : fs::path(common.out), common.threads);
      return kOk;
    }
    if (verify->parsed()) return cmd_verify(common, vopt, out, err);
  } catch (const ConfigParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kValidationError;
  } catch (const SweepError& e) {
    err << "invalid sweep: " << e.what() << "\n";
    return kValidationError;
  } catch (const SimConfigError& e) {
    err << "invalid simulation config: " << e.what() << "\n";
    return kValidationError;
  } catch (const SingularSystemError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kValidationError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
  return kParseError;
}

}  // namespace qtrans::cli
