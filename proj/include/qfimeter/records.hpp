#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qfimeter/sweep.hpp"

namespace qfimeter::io {

/// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_double(double x);

/// Inverse of format_double; throws SchemaError on anything but a full numeric field.
double parse_double(std::string_view text);

inline constexpr std::string_view kSweepCsvHeader = "n_atoms,tau,eps,u,f_M,F_M,ell_max,ell_min";
inline constexpr std::string_view kPointCsvHeader = "n_atoms,tau,eps,u,U,ell_max,ell_min,F_M,f_M";
inline constexpr std::string_view kExtrapolationCsvHeader = "tau,eps,u,n_atoms,f_M";
inline constexpr std::string_view kExtrapolatedGridCsvHeader = "tau,eps,u,f_inf,error_estimate";

void write_point_csv(std::ostream& os, const QfiPoint& point);
nlohmann::json point_to_json(const QfiPoint& point);

/// Header line then one row per grid point, u outer and tau inner.
void write_sweep_csv(std::ostream& os, const SweepGrid& grid);
nlohmann::json sweep_to_json(const SweepGrid& grid);

/// Reads what write_sweep_csv wrote. Throws SchemaError on a wrong header, a ragged or
/// non-rectangular grid, or mixed eps / N.
SweepGrid read_sweep_csv(std::istream& is);

void write_extrapolation_csv(std::ostream& os, double tau, double eps, double u,
                             const ExtrapolationResult& r);
nlohmann::json extrapolation_to_json(double tau, double eps, double u,
                                     const ExtrapolationResult& r);

void write_extrapolated_grid_csv(std::ostream& os, const ExtrapolatedGrid& grid);
nlohmann::json extrapolated_grid_to_json(const ExtrapolatedGrid& grid);

}  // namespace qfimeter::io
