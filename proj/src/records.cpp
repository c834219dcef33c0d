#include "qfimeter/records.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "qfimeter/errors.hpp"

namespace qfimeter::io {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) {
    throw SchemaError("expected a number, got '" + std::string(text) + "'");
  }
  return x;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

nlohmann::json amplitudes_json(const StateVector& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index k = 0; k < s.dim(); ++k) arr.push_back({s(k).real(), s(k).imag()});
  return arr;
}

}  // namespace

void write_point_csv(std::ostream& os, const QfiPoint& p) {
  os << kPointCsvHeader << '\n'
     << p.params.n_atoms << ',' << format_double(p.params.tau) << ','
     << format_double(p.params.eps) << ',' << format_double(p.params.u) << ','
     << format_double(p.params.bare_interaction()) << ',' << format_double(p.ell_max) << ','
     << format_double(p.ell_min) << ',' << format_double(p.fisher_max) << ','
     << format_double(p.fisher_scaled) << '\n';
}

nlohmann::json point_to_json(const QfiPoint& p) {
  return {{"n_atoms", p.params.n_atoms},
          {"tau", p.params.tau},
          {"eps", p.params.eps},
          {"u", p.params.u},
          {"U", p.params.bare_interaction()},
          {"ell_max", p.ell_max},
          {"ell_min", p.ell_min},
          {"F_M", p.fisher_max},
          {"f_M", p.fisher_scaled},
          {"degenerate_generator", p.degenerate_generator},
          {"optimal_state", amplitudes_json(p.optimal_state)}};
}

void write_sweep_csv(std::ostream& os, const SweepGrid& grid) {
  os << kSweepCsvHeader << '\n';
  for (std::size_t iu = 0; iu < grid.u_axis.size(); ++iu) {
    for (std::size_t it = 0; it < grid.tau_axis.size(); ++it) {
      const GridRecord& r = grid.at(iu, it);
      os << grid.n_atoms << ',' << format_double(grid.tau_axis[it]) << ','
         << format_double(grid.eps) << ',' << format_double(grid.u_axis[iu]) << ','
         << format_double(r.f_scaled) << ',' << format_double(r.fisher_max) << ','
         << format_double(r.ell_max) << ',' << format_double(r.ell_min) << '\n';
    }
  }
}

nlohmann::json sweep_to_json(const SweepGrid& grid) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t iu = 0; iu < grid.u_axis.size(); ++iu) {
    for (std::size_t it = 0; it < grid.tau_axis.size(); ++it) {
      const GridRecord& r = grid.at(iu, it);
      rows.push_back({{"n_atoms", grid.n_atoms},
                      {"tau", grid.tau_axis[it]},
                      {"eps", grid.eps},
                      {"u", grid.u_axis[iu]},
                      {"f_M", r.f_scaled},
                      {"F_M", r.fisher_max},
                      {"ell_max", r.ell_max},
                      {"ell_min", r.ell_min}});
    }
  }
  return {{"n_atoms", grid.n_atoms},
          {"eps", grid.eps},
          {"tau_axis", grid.tau_axis},
          {"u_axis", grid.u_axis},
          {"points", std::move(rows)}};
}

SweepGrid read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim_cr(line) != kSweepCsvHeader) {
    throw SchemaError("sweep CSV: header must be exactly '" + std::string(kSweepCsvHeader) + "'");
  }

  struct Row {
    int n;
    double tau, eps, u;
    GridRecord rec;
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view text = trim_cr(line);
    if (text.empty()) continue;
    const auto f = split_fields(text);
    if (f.size() != 8) {
      throw SchemaError("sweep CSV line " + std::to_string(line_no) + ": expected 8 fields");
    }
    int n = 0;
    const auto res = std::from_chars(f[0].data(), f[0].data() + f[0].size(), n);
    if (res.ec != std::errc() || res.ptr != f[0].data() + f[0].size()) {
      throw SchemaError("sweep CSV line " + std::to_string(line_no) + ": bad n_atoms");
    }
    rows.push_back({n, parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                    {parse_double(f[4]), parse_double(f[5]), parse_double(f[6]),
                     parse_double(f[7])}});
  }
  if (rows.empty()) throw SchemaError("sweep CSV: no data rows");

  SweepGrid grid{{}, {}, rows.front().eps, rows.front().n, {}};
  // tau axis: the first run of rows sharing the first u.
  for (const Row& r : rows) {
    if (r.u != rows.front().u) break;
    grid.tau_axis.push_back(r.tau);
  }
  const std::size_t width = grid.tau_axis.size();
  if (rows.size() % width != 0) throw SchemaError("sweep CSV: ragged grid");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.n != grid.n_atoms || r.eps != grid.eps) {
      throw SchemaError("sweep CSV: mixed eps or n_atoms");
    }
    if (i % width == 0) grid.u_axis.push_back(r.u);
    if (r.tau != grid.tau_axis[i % width] || r.u != grid.u_axis.back()) {
      throw SchemaError("sweep CSV: ragged grid at row " + std::to_string(i + 2));
    }
    grid.records.push_back(r.rec);
  }
  try {
    check_axis(grid.tau_axis, "tau");
    check_axis(grid.u_axis, "u");
  } catch (const InvalidParams& e) {
    throw SchemaError(std::string("sweep CSV: ") + e.what());
  }
  return grid;
}

void write_extrapolation_csv(std::ostream& os, double tau, double eps, double u,
                             const ExtrapolationResult& r) {
  os << kExtrapolationCsvHeader << '\n';
  for (std::size_t i = 0; i < r.n_series.size(); ++i) {
    os << format_double(tau) << ',' << format_double(eps) << ',' << format_double(u) << ','
       << r.n_series[i] << ',' << format_double(r.values[i]) << '\n';
  }
  // N = infinity row; n_atoms 0 marks the extrapolated limit.
  os << format_double(tau) << ',' << format_double(eps) << ',' << format_double(u) << ",0,"
     << format_double(r.f_infinity) << '\n';
}

nlohmann::json extrapolation_to_json(double tau, double eps, double u,
                                     const ExtrapolationResult& r) {
  return {{"tau", tau},
          {"eps", eps},
          {"u", u},
          {"n_series", r.n_series},
          {"f_M", r.values},
          {"f_infinity", r.f_infinity},
          {"error_estimate", r.error_estimate}};
}

void write_extrapolated_grid_csv(std::ostream& os, const ExtrapolatedGrid& grid) {
  os << kExtrapolatedGridCsvHeader << '\n';
  const std::size_t width = grid.tau_axis.size();
  for (std::size_t iu = 0; iu < grid.u_axis.size(); ++iu) {
    for (std::size_t it = 0; it < width; ++it) {
      const std::size_t i = iu * width + it;
      os << format_double(grid.tau_axis[it]) << ',' << format_double(grid.eps) << ','
         << format_double(grid.u_axis[iu]) << ',' << format_double(grid.f_infinity[i]) << ','
         << format_double(grid.error_estimate[i]) << '\n';
    }
  }
}

nlohmann::json extrapolated_grid_to_json(const ExtrapolatedGrid& grid) {
  return {{"eps", grid.eps},
          {"n_series", grid.n_series},
          {"tau_axis", grid.tau_axis},
          {"u_axis", grid.u_axis},
          {"f_infinity", grid.f_infinity},
          {"error_estimate", grid.error_estimate}};
}

}  // namespace qfimeter::io
