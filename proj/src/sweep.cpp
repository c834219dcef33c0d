#include "qfimeter/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "qfimeter/errors.hpp"

namespace qfimeter {

SweepError::SweepError(std::vector<PointFailure> failures)
    : Error([&] {
        std::ostringstream os;
        os << "sweep: " << failures.size() << " grid point(s) failed";
        if (!failures.empty()) {
          const PointFailure& f = failures.front();
          os << "; first at tau=" << f.tau << " u=" << f.u << " N=" << f.n_atoms << ": "
             << f.message;
        }
        return os.str();
      }()),
      failures_(std::move(failures)) {}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw InvalidParams("linspace: count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw InvalidParams(std::string(name) + ": axis is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw InvalidParams(std::string(name) + ": non-finite value");
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw InvalidParams(std::string(name) + ": axis must be strictly increasing");
    }
  }
}

namespace {

// Runs job(i) for i in [0, count) on up to `workers` threads. Each index is written by
// exactly one job, so results land by index regardless of completion order.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  }
}

}  // namespace

SweepGrid sweep(const std::vector<double>& tau_axis, const std::vector<double>& u_axis,
                double eps, int n_atoms, int parallelism, const QfiOptions& options) {
  check_axis(tau_axis, "tau_axis");
  check_axis(u_axis, "u_axis");
  if (n_atoms < 1) throw InvalidParams("sweep: need N >= 1");
  if (!std::isfinite(eps)) throw InvalidParams("sweep: eps must be finite");

  SweepGrid grid{tau_axis, u_axis, eps, n_atoms, {}};
  const std::size_t count = tau_axis.size() * u_axis.size();
  grid.records.resize(count);

  std::mutex failures_mutex;
  std::vector<std::pair<std::size_t, PointFailure>> failures;
  parallel_for(count, parallelism, [&](std::size_t i) {
    const double u = u_axis[i / tau_axis.size()];
    const double tau = tau_axis[i % tau_axis.size()];
    try {
      const QfiPoint p = evaluate_point({tau, eps, u, n_atoms}, options);
      grid.records[i] = {p.fisher_scaled, p.fisher_max, p.ell_max, p.ell_min};
    } catch (const std::exception& e) {
      std::lock_guard lock(failures_mutex);
      failures.push_back({i, {tau, u, n_atoms, e.what()}});
    }
  });

  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<PointFailure> list;
    for (auto& f : failures) list.push_back(std::move(f.second));
    throw SweepError(std::move(list));
  }
  return grid;
}

ExtrapolationResult richardson_extrapolate(const std::vector<std::pair<int, double>>& values_by_n) {
  if (values_by_n.size() < 3) {
    throw InvalidParams("richardson_extrapolate: need at least 3 points");
  }
  ExtrapolationResult out{};
  for (std::size_t i = 0; i < values_by_n.size(); ++i) {
    const auto [n, f] = values_by_n[i];
    if (n < 1) throw InvalidParams("richardson_extrapolate: N must be positive");
    if (i > 0 && n <= values_by_n[i - 1].first) {
      throw InvalidParams(n == values_by_n[i - 1].first
                              ? "richardson_extrapolate: duplicate N"
                              : "richardson_extrapolate: N must be strictly increasing");
    }
    if (!std::isfinite(f)) throw InvalidParams("richardson_extrapolate: non-finite value");
    out.n_series.push_back(n);
    out.values.push_back(f);
  }

  // Neville's scheme evaluated at h = 0.
  const std::size_t count = out.values.size();
  std::vector<double> h(count);
  for (std::size_t i = 0; i < count; ++i) h[i] = 1.0 / out.n_series[i];
  out.tableau.push_back(out.values);
  for (std::size_t k = 1; k < count; ++k) {
    const std::vector<double>& prev = out.tableau.back();
    std::vector<double> next(count - k);
    for (std::size_t i = 0; i + k < count; ++i) {
      next[i] = (h[i] * prev[i + 1] - h[i + k] * prev[i]) / (h[i] - h[i + k]);
    }
    out.tableau.push_back(std::move(next));
  }
  const std::size_t last = count - 1;
  out.f_infinity = out.tableau[last][0];
  out.error_estimate = std::abs(out.tableau[last][0] - out.tableau[last - 1][1]);
  return out;
}

ExtrapolationResult extrapolate_point(double tau, double u, double eps,
                                      const std::vector<int>& n_series,
                                      const QfiOptions& options) {
  std::vector<std::pair<int, double>> values;
  for (int n : n_series) values.emplace_back(n, evaluate_point({tau, eps, u, n}, options).fisher_scaled);
  return richardson_extrapolate(values);
}

ExtrapolatedGrid sweep_extrapolated(const std::vector<double>& tau_axis,
                                    const std::vector<double>& u_axis, double eps,
                                    const std::vector<int>& n_series, int parallelism,
                                    const QfiOptions& options) {
  if (n_series.size() < 3) throw InvalidParams("sweep_extrapolated: need at least 3 N values");
  std::vector<SweepGrid> grids;
  for (int n : n_series) grids.push_back(sweep(tau_axis, u_axis, eps, n, parallelism, options));

  ExtrapolatedGrid out{tau_axis, u_axis, eps, n_series, {}, {}};
  const std::size_t count = tau_axis.size() * u_axis.size();
  out.f_infinity.resize(count);
  out.error_estimate.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::pair<int, double>> series;
    for (std::size_t g = 0; g < grids.size(); ++g) {
      series.emplace_back(n_series[g], grids[g].records[i].f_scaled);
    }
    const ExtrapolationResult r = richardson_extrapolate(series);
    out.f_infinity[i] = r.f_infinity;
    out.error_estimate[i] = r.error_estimate;
  }
  return out;
}

double u_sign_symmetry_report(const SweepGrid& grid_pos, const SweepGrid& grid_neg) {
  const std::size_t nu = grid_pos.u_axis.size();
  bool ok = grid_pos.tau_axis == grid_neg.tau_axis && nu == grid_neg.u_axis.size() &&
            grid_pos.eps == grid_neg.eps && grid_pos.n_atoms == grid_neg.n_atoms;
  for (std::size_t i = 0; ok && i < nu; ++i) {
    ok = grid_pos.u_axis[i] == -grid_neg.u_axis[nu - 1 - i];
  }
  if (!ok) throw InvalidParams("u_sign_symmetry_report: grids do not share mirrored axes");

  double worst = 0.0;
  for (std::size_t iu = 0; iu < nu; ++iu) {
    for (std::size_t it = 0; it < grid_pos.tau_axis.size(); ++it) {
      worst = std::max(worst, std::abs(grid_pos.value(iu, it) - grid_neg.value(nu - 1 - iu, it)));
    }
  }
  return worst;
}

}  // namespace qfimeter
