// qfimeter: maximal quantum Fisher information of the two-mode Bose-Hubbard
// interferometer. Exit status: 0 success, 1 validation/numerical failure,
// 2 usage or configuration error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfimeter/analytic_limits.hpp"
#include "qfimeter/contour.hpp"
#include "qfimeter/errors.hpp"
#include "qfimeter/records.hpp"
#include "qfimeter/sweep.hpp"
#include "qfimeter/validation.hpp"

namespace {

using namespace qfimeter;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "start:stop:count" or a comma-separated list.
std::vector<double> parse_axis(const std::string& text, const char* name) {
  std::vector<double> axis;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream ss(text);
      std::string a, b, c;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, c, ':');
      const double count = io::parse_double(c);
      if (count < 1 || count != std::floor(count)) throw UsageError("bad count");
      axis = linspace(io::parse_double(a), io::parse_double(b), static_cast<int>(count));
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) axis.push_back(io::parse_double(item));
    }
    check_axis(axis, name);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--") + name + " '" + text + "': " + e.what());
  }
  return axis;
}

std::vector<int> parse_n_series(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw UsageError("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--n-series: '" + item + "' is not an integer");
    }
  }
  return out;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open output path '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw UsageError("write to output failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string format = "csv";
  std::string out;
  int parallel = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

int run_point(const HamiltonianParams& p, const QfiOptions& options, Common& c) {
  const QfiPoint point = evaluate_point(p, options);
  Output out(c.out);
  if (c.format == "json") {
    out.stream() << io::point_to_json(point).dump(2) << '\n';
  } else {
    io::write_point_csv(out.stream(), point);
  }
  out.finish();
  if (point.degenerate_generator) {
    std::cerr << "warning: L is proportional to the identity; every input state is optimal\n";
  }
  return kExitOk;
}

int run_sweep(int n, double eps, const std::string& tau_spec, const std::string& u_spec,
              const QfiOptions& options, Common& c) {
  const SweepGrid grid = sweep(parse_axis(tau_spec, "tau-axis"), parse_axis(u_spec, "u-axis"),
                               eps, n, c.parallel, options);
  Output out(c.out);
  if (c.format == "json") {
    out.stream() << io::sweep_to_json(grid).dump(2) << '\n';
  } else {
    io::write_sweep_csv(out.stream(), grid);
  }
  out.finish();
  return kExitOk;
}

int run_extrapolate(double tau, double u, double eps, const std::string& series,
                    const std::string& tau_spec, const std::string& u_spec,
                    const QfiOptions& options, Common& c) {
  const std::vector<int> ns = parse_n_series(series);
  Output out(c.out);
  if (!tau_spec.empty() || !u_spec.empty()) {
    const ExtrapolatedGrid grid =
        sweep_extrapolated(parse_axis(tau_spec.empty() ? "0:4:41" : tau_spec, "tau-axis"),
                           parse_axis(u_spec.empty() ? "0:10:41" : u_spec, "u-axis"), eps, ns,
                           c.parallel, options);
    if (c.format == "json") {
      out.stream() << io::extrapolated_grid_to_json(grid).dump(2) << '\n';
    } else {
      io::write_extrapolated_grid_csv(out.stream(), grid);
    }
  } else {
    const ExtrapolationResult r = extrapolate_point(tau, u, eps, ns, options);
    if (c.format == "json") {
      out.stream() << io::extrapolation_to_json(tau, eps, u, r).dump(2) << '\n';
    } else {
      io::write_extrapolation_csv(out.stream(), tau, eps, u, r);
      std::cerr << "f_infinity=" << io::format_double(r.f_infinity)
                << " error_estimate=" << io::format_double(r.error_estimate) << '\n';
    }
  }
  out.finish();
  return kExitOk;
}

int run_limits(const HamiltonianParams& p, const QfiOptions& options, Common& c) {
  p.validate();
  if (p.n_atoms < 1) throw InvalidParams("limits: need N >= 1");
  const double n2 = static_cast<double>(p.n_atoms) * p.n_atoms;
  struct Row {
    std::string regime;
    HamiltonianParams at;
    double analytic;
  };
  std::vector<Row> rows;
  if (p.tau != 0.0 || p.eps != 0.0) {
    const HamiltonianParams at{1e4 * p.tau, 1e4 * p.eps, 0.0, p.n_atoms};
    rows.push_back({"no_interaction_large_T", at, fisher_limit_no_interaction(at)});
  }
  rows.push_back({"strong_interaction", {p.tau, p.eps, 1e4, p.n_atoms},
                  fisher_limit_strong_interaction(p.n_atoms)});
  rows.push_back({"small_scaling", {1e-4 * p.tau, 1e-4 * p.eps, 1e-4 * p.u, p.n_atoms}, n2});
  rows.push_back({"large_eps", {p.tau, 1e4, p.u, p.n_atoms}, n2});
  rows.push_back({"eps_zero", {p.tau, 1e-6, p.u, p.n_atoms}, fisher_eps_zero(p, options).fisher_max});

  Output out(c.out);
  nlohmann::json list = nlohmann::json::array();
  if (c.format == "csv") out.stream() << "regime,n_atoms,tau,eps,u,F_limit,F_numeric,f_limit,f_numeric\n";
  for (const Row& r : rows) {
    const double numeric = evaluate_point(r.at, options).fisher_max;
    if (c.format == "json") {
      list.push_back({{"regime", r.regime}, {"n_atoms", r.at.n_atoms}, {"tau", r.at.tau},
                      {"eps", r.at.eps}, {"u", r.at.u}, {"F_limit", r.analytic},
                      {"F_numeric", numeric}, {"f_limit", r.analytic / n2},
                      {"f_numeric", numeric / n2}});
    } else {
      out.stream() << r.regime << ',' << r.at.n_atoms << ',' << io::format_double(r.at.tau) << ','
                   << io::format_double(r.at.eps) << ',' << io::format_double(r.at.u) << ','
                   << io::format_double(r.analytic) << ',' << io::format_double(numeric) << ','
                   << io::format_double(r.analytic / n2) << ','
                   << io::format_double(numeric / n2) << '\n';
    }
  }
  if (c.format == "json") out.stream() << list.dump(2) << '\n';
  out.finish();
  return kExitOk;
}

int run_validate(const std::string& suite, const validation::Config& config, Common& c) {
  const validation::Report report = validation::run(suite, config);
  Output out(c.out);
  out.stream() << report.to_json().dump(2) << '\n';
  out.finish();
  return report.all_pass() ? kExitOk : kExitFailure;
}

int run_contour(const std::string& in_path, const std::string& out_path, double spacing,
                const std::string& value_column, const std::string& title) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot read '" + in_path + "'");
  const plot::ScalarGrid grid = plot::read_grid_csv(in, "tau", "u", value_column);
  plot::SvgOptions opt;
  opt.title = title;
  const std::string svg = plot::render_svg(grid, plot::trace_contours(grid, spacing), opt);
  Output out(out_path);
  out.stream() << svg;
  out.finish();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal quantum Fisher information of a nonlinear double-well interferometer"};
  app.require_subcommand(1);

  HamiltonianParams point_params{0.0, 1.0, 0.0, 2};
  HamiltonianParams sweep_params{0.0, 1.0, 0.0, 8};
  HamiltonianParams extrap_params{1.0, 1.0, 2.0, 0};
  HamiltonianParams limits_params{1.0, 1.0, 2.0, 8};
  int validate_n = 4;
  QfiOptions options;
  Common common;
  std::string tau_axis = "0:4:41", u_axis = "0:10:41", n_series = "8,16,32,64";
  std::string suite = "all", in_path, value_column = "f_M", title;
  double spacing = 0.1;
  std::uint64_t seed = 7;

  auto add_params = [&](CLI::App* cmd, HamiltonianParams& params, bool with_tau_u) {
    cmd->add_option("--n", params.n_atoms, "Atom number N")->check(CLI::Range(0, 1 << 20));
    cmd->add_option("--eps", params.eps, "Energy difference eps (the measured parameter)");
    if (with_tau_u) {
      cmd->add_option("--tau", params.tau, "Tunneling amplitude tau");
      cmd->add_option("--u", params.u, "Scaled interaction u = N U");
    }
    cmd->add_flag("--jitter", options.jitter,
                  "Break degeneracies with a 1e-10 J_z term instead of degenerate PT");
  };

  CLI::App* point = app.add_subcommand("point", "F_M, f_M and the optimal state at one point");
  add_params(point, point_params, true);
  point->add_option("--rel-phase", options.rel_phase, "Relative phase of the optimal state");
  add_common(point, common);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "f_M over a (tau, u) grid");
  add_params(sweep_cmd, sweep_params, false);
  sweep_cmd->add_option("--tau-axis", tau_axis, "start:stop:count or comma list");
  sweep_cmd->add_option("--u-axis", u_axis, "start:stop:count or comma list");
  sweep_cmd->add_option("--parallel", common.parallel, "Worker threads")->check(CLI::PositiveNumber);
  add_common(sweep_cmd, common);

  std::string ex_tau_axis, ex_u_axis;
  CLI::App* extrap = app.add_subcommand("extrapolate", "Richardson extrapolation to N -> infinity");
  extrap->add_option("--tau", extrap_params.tau, "Tunneling amplitude tau");
  extrap->add_option("--u", extrap_params.u, "Scaled interaction u");
  extrap->add_option("--eps", extrap_params.eps, "Energy difference eps");
  extrap->add_option("--n-series", n_series, "Comma-separated increasing N values");
  extrap->add_option("--tau-axis", ex_tau_axis, "Extrapolate a whole grid instead of one point");
  extrap->add_option("--u-axis", ex_u_axis, "Extrapolate a whole grid instead of one point");
  extrap->add_option("--parallel", common.parallel, "Worker threads")->check(CLI::PositiveNumber);
  add_common(extrap, common);

  CLI::App* limits = app.add_subcommand("limits", "Analytic limits next to the full computation");
  add_params(limits, limits_params, true);
  add_common(limits, common);

  CLI::App* validate = app.add_subcommand("validate", "Run oracle cross-checks, JSON report");
  validate->add_option("--suite", suite, "fd, quadrature, bounds, sampling, limits or all");
  validate->add_option("--seed", seed, "Random seed");
  validate->add_option("--n", validate_n, "Atom number for the fd suite");
  validate->add_option("--out", common.out, "Output file (default: stdout)");

  CLI::App* contour = app.add_subcommand("contour", "SVG contour plot from a grid CSV");
  contour->add_option("--in", in_path, "Grid CSV (sweep or extrapolated-grid schema)")->required();
  contour->add_option("--out", common.out, "SVG path (default: stdout)");
  contour->add_option("--spacing", spacing, "Level spacing")->check(CLI::PositiveNumber);
  contour->add_option("--value", value_column, "Column to contour (f_M, f_inf, ...)");
  contour->add_option("--title", title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (point->parsed()) return run_point(point_params, options, common);
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_params.n_atoms, sweep_params.eps, tau_axis, u_axis, options, common);
    }
    if (extrap->parsed()) {
      return run_extrapolate(extrap_params.tau, extrap_params.u, extrap_params.eps, n_series,
                             ex_tau_axis, ex_u_axis, options, common);
    }
    if (limits->parsed()) return run_limits(limits_params, options, common);
    if (validate->parsed()) return run_validate(suite, {seed, validate_n}, common);
    if (contour->parsed()) return run_contour(in_path, common.out, spacing, value_column, title);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
