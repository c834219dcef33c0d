#pragma once

#include <utility>
#include <vector>

#include "qfimeter/qfi_core.hpp"

namespace qfimeter {

/// The per-point numbers a grid keeps (the optimal state is dropped).
struct GridRecord {
  double f_scaled;
  double fisher_max;
  double ell_max;
  double ell_min;
};

/// f_M over a (tau, u) grid at fixed eps and N. Records are row-major: u outer, tau inner.
struct SweepGrid {
  std::vector<double> tau_axis;
  std::vector<double> u_axis;
  double eps = 0.0;
  int n_atoms = 0;
  std::vector<GridRecord> records;

  const GridRecord& at(std::size_t iu, std::size_t itau) const {
    return records[iu * tau_axis.size() + itau];
  }
  double value(std::size_t iu, std::size_t itau) const { return at(iu, itau).f_scaled; }
};

/// `count` evenly spaced points on [start, stop].
std::vector<double> linspace(double start, double stop, int count);

/// Throws InvalidParams unless the axis is nonempty, finite and strictly increasing.
void check_axis(const std::vector<double>& axis, const char* name);

/// Evaluates every grid point independently on up to `parallelism` threads. The result
/// does not depend on `parallelism`. Any failing point aborts the sweep with a
/// SweepError listing every failure.
SweepGrid sweep(const std::vector<double>& tau_axis, const std::vector<double>& u_axis,
                double eps, int n_atoms, int parallelism = 1, const QfiOptions& options = {});

struct ExtrapolationResult {
  std::vector<int> n_series;
  std::vector<double> values;
  double f_infinity;
  double error_estimate;
  /// Neville tableau in h = 1/N: tableau[k][i] combines points i..i+k.
  std::vector<std::vector<double>> tableau;
};

/// Polynomial extrapolation in 1/N to 1/N = 0. Needs >= 3 strictly increasing N.
/// error_estimate = |tableau[k][0] - tableau[k-1][1]| for the last column k, the two
/// highest-order estimates.
ExtrapolationResult richardson_extrapolate(const std::vector<std::pair<int, double>>& values_by_n);

/// f_M at (tau, u, eps) for each N of the series, then extrapolated.
ExtrapolationResult extrapolate_point(double tau, double u, double eps,
                                      const std::vector<int>& n_series,
                                      const QfiOptions& options = {});

inline const std::vector<int> kDefaultNSeries = {8, 16, 32, 64};

/// N -> infinity limit over a (tau, u) grid.
struct ExtrapolatedGrid {
  std::vector<double> tau_axis;
  std::vector<double> u_axis;
  double eps = 0.0;
  std::vector<int> n_series;
  std::vector<double> f_infinity;      // row-major, u outer
  std::vector<double> error_estimate;  // same layout
};

ExtrapolatedGrid sweep_extrapolated(const std::vector<double>& tau_axis,
                                    const std::vector<double>& u_axis, double eps,
                                    const std::vector<int>& n_series, int parallelism = 1,
                                    const QfiOptions& options = {});

/// max |f(tau, u) - f(tau, -u)|, pairing `neg` (axis -u_max..-u_min) with `pos` mirrored.
double u_sign_symmetry_report(const SweepGrid& grid_pos, const SweepGrid& grid_neg);

}  // namespace qfimeter
