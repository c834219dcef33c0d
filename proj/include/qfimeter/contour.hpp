#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfimeter::plot {

/// Scalar field sampled on a rectangular grid; values are row-major with y outer.
struct ScalarGrid {
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  std::vector<double> values;

  double at(std::size_t iy, std::size_t ix) const { return values[iy * x_axis.size() + ix]; }
};

struct Point {
  double x;
  double y;
};

using Polyline = std::vector<Point>;

struct ContourLevel {
  double level;
  std::vector<Polyline> lines;
};

/// Reads columns `x_column`, `y_column` and `value_column` from a CSV with a header row.
/// Rows must list y outer, x inner over a complete rectangular grid; anything else is a
/// SchemaError.
ScalarGrid read_grid_csv(std::istream& is, const std::string& x_column,
                         const std::string& y_column, const std::string& value_column);

/// Levels k * spacing strictly inside (min, max) of the data.
std::vector<double> contour_levels(const ScalarGrid& grid, double spacing);

/// Marching squares. A corner counts as "above" when value >= level. Segments are
/// chained into polylines; closed loops repeat their first point at the end.
ContourLevel trace_level(const ScalarGrid& grid, double level);

std::vector<ContourLevel> trace_contours(const ScalarGrid& grid, double spacing);

struct SvgOptions {
  std::string x_label = "τ";
  std::string y_label = "u";
  std::string title;
  int width = 640;
  int height = 520;
};

/// Deterministic SVG document: frame, linear axes with ticks, one <g> per level.
std::string render_svg(const ScalarGrid& grid, const std::vector<ContourLevel>& levels,
                       const SvgOptions& options = {});

}  // namespace qfimeter::plot
