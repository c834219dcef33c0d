#include "qfimeter/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qfimeter/analytic_limits.hpp"
#include "qfimeter/errors.hpp"
#include "qfimeter/oracles.hpp"

namespace qfimeter::validation {

namespace {

Check check_below(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance};
}

std::string label(const char* prefix, const HamiltonianParams& p) {
  std::ostringstream os;
  os.precision(6);
  os << prefix << " N=" << p.n_atoms << " tau=" << p.tau << " eps=" << p.eps << " u=" << p.u;
  return os.str();
}

class ParamSampler {
 public:
  ParamSampler(std::uint64_t seed, double tau_max, double eps_max, double u_max, int n_max)
      : rng_(seed), tau_(-tau_max, tau_max), eps_(-eps_max, eps_max), u_(-u_max, u_max),
        n_(1, n_max) {}

  HamiltonianParams operator()() {
    HamiltonianParams p;
    p.tau = tau_(rng_);
    p.eps = eps_(rng_);
    p.u = u_(rng_);
    p.n_atoms = n_(rng_);
    return p;
  }
  std::uint64_t next_seed() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> tau_, eps_, u_;
  std::uniform_int_distribution<int> n_;
};

constexpr double kFdStep = 1e-5;
constexpr double kFdTolerance = 1e-6;
constexpr int kQuadratureNodes = 10001;
constexpr double kQuadratureTolerance = 1e-8;

}  // namespace

bool Report::all_pass() const {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const Check& c : checks) {
    list.push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return {{"suite", suite}, {"pass", all_pass()}, {"checks", std::move(list)}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fd",       "quadrature", "bounds",
                                              "sampling", "limits",     "all"};
  return names;
}

Report fd_suite(const Config& config) {
  Report report{"fd", {}};
  ParamSampler sample(config.seed, 2.0, 2.0, 5.0, 1);
  for (int i = 0; i < 20; ++i) {
    HamiltonianParams p = i == 0 ? HamiltonianParams{1.0, 1.0, 1.0, config.n_atoms} : sample();
    p.n_atoms = config.n_atoms;
    const PointAnalysis pa = analyze_point(p);
    const StateVector psi0 = oracles::random_state(pa.kprime.dim(), sample.next_seed());
    const ComplexVector pt = derivative_state_pt(pa.eig, pa.kprime, psi0);
    const ComplexVector fd = oracles::derivative_state_fd(p, psi0, kFdStep);
    report.checks.push_back(
        check_below(label("fd/pt relative error", p), (pt - fd).norm() / pt.norm(), kFdTolerance));
  }
  return report;
}

Report quadrature_suite(const Config& config) {
  Report report{"quadrature", {}};
  ParamSampler sample(config.seed, 2.0, 2.0, 5.0, 8);
  for (int i = 0; i < 12; ++i) {
    const HamiltonianParams p = i == 0 ? HamiltonianParams{1.0, 1.0, 1.0, 2} : sample();
    const PointAnalysis pa = analyze_point(p);
    const HermitianMatrix quad =
        oracles::quadrature_local_generator(pa.eig, pa.kprime, kQuadratureNodes);
    const double diff = (pa.generator.matrix.matrix() - quad.matrix()).cwiseAbs().maxCoeff();
    report.checks.push_back(check_below(label("L vs Simpson max-entry", p), diff,
                                        kQuadratureTolerance));
  }
  return report;
}

Report bounds_suite(const Config& config) {
  Report report{"bounds", {}};
  ParamSampler sample(config.seed, 5.0, 5.0, 20.0, 16);
  for (int i = 0; i < 200; ++i) {
    const HamiltonianParams p = sample();
    const PointAnalysis pa = analyze_point(p);
    const oracles::BoundsReport b = oracles::spectrum_respects_generator_bounds(pa.generator, p.n_atoms);
    // value: how far the spectrum pokes outside [-N/2, N/2] (<= 0 when contained)
    const double excess = -std::min(b.lower_margin, b.upper_margin);
    report.checks.push_back({label("spectrum(L) within [-N/2, N/2]", p), excess,
                             oracles::kBoundsSlack, b.pass});
  }
  return report;
}

Report sampling_suite(const Config& config) {
  Report report{"sampling", {}};
  ParamSampler sample(config.seed, 3.0, 3.0, 10.0, 8);
  for (int i = 0; i < 10; ++i) {
    const HamiltonianParams p = sample();
    const QfiPoint point = evaluate_point(p);
    const double best = oracles::random_state_fisher_sample(p, 100, sample.next_seed());
    report.checks.push_back(
        check_below(label("max random-state F minus F_M", p), best - point.fisher_max, 1e-8));
  }
  return report;
}

Report limits_suite(const Config&) {
  Report report{"limits", {}};

  {
    const double x = 1e4;
    const HamiltonianParams p{x, x, 0.0, 8};
    const double full = evaluate_point(p).fisher_max;
    const double limit = fisher_limit_no_interaction(p);
    report.checks.push_back(check_below("no interaction, x=1e4: relative deviation from N^2 cos^2(phi)",
                                        std::abs(full - limit) / limit, 1e-2));
  }
  // N = 1 is excluded: J_z^2 = I/4 there, so u has no effect.
  for (int n : {2, 4, 8}) {
    for (double u : {1e4, -1e4}) {
      const HamiltonianParams p{1.0, 1.0, u, n};
      const double full = evaluate_point(p).fisher_max;
      const double limit = fisher_limit_strong_interaction(n);
      report.checks.push_back(
          check_below(label("strong interaction: relative deviation from N^2,", p),
                      std::abs(full - limit) / limit, 1e-2));
    }
  }
  {
    const double x = 1e-4;
    const HamiltonianParams p{x, x, x, 8};
    report.checks.push_back(check_below("small scaling x=1e-4: |f_M - 1|",
                                        std::abs(evaluate_point(p).fisher_scaled - 1.0), 1e-6));
  }
  {
    const HamiltonianParams p{1.0, 1e4, 1.0, 8};
    report.checks.push_back(check_below("large eps=1e4: |f_M - 1|",
                                        std::abs(evaluate_point(p).fisher_scaled - 1.0), 1e-3));
  }
  {
    const HamiltonianParams p{1.0, 1e-6, 2.0, 8};
    const double diff =
        std::abs(evaluate_point(p).fisher_scaled - fisher_eps_zero(p).fisher_scaled);
    report.checks.push_back(check_below("eps -> 0: |f_M(eps=1e-6) - f_M(eps=0)|", diff, 1e-4));
  }
  return report;
}

Report run(const std::string& suite, const Config& config) {
  if (suite == "fd") return fd_suite(config);
  if (suite == "quadrature") return quadrature_suite(config);
  if (suite == "bounds") return bounds_suite(config);
  if (suite == "sampling") return sampling_suite(config);
  if (suite == "limits") return limits_suite(config);
  if (suite == "all") {
    Report all{"all", {}};
    for (const char* name : {"fd", "quadrature", "bounds", "sampling", "limits"}) {
      Report part = run(name, config);
      for (Check& c : part.checks) {
        c.name = part.suite + ": " + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  throw InvalidParams("unknown validation suite '" + suite + "'");
}

}  // namespace qfimeter::validation
