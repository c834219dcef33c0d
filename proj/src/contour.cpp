#include "qfimeter/contour.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <tuple>

#include "qfimeter/errors.hpp"
#include "qfimeter/records.hpp"

namespace qfimeter::plot {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw SchemaError("grid CSV: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

// Grid edges are identified by (cell corner, direction) so that segment endpoints from
// neighbouring cells match exactly.
struct EdgeId {
  std::size_t iy, ix;
  int dir;  // 0: horizontal edge to (iy, ix+1); 1: vertical edge to (iy+1, ix)
  bool operator<(const EdgeId& o) const {
    return std::tie(iy, ix, dir) < std::tie(o.iy, o.ix, o.dir);
  }
  bool operator==(const EdgeId& o) const { return iy == o.iy && ix == o.ix && dir == o.dir; }
};

Point crossing(const ScalarGrid& g, const EdgeId& e, double level) {
  const std::size_t iy2 = e.dir == 1 ? e.iy + 1 : e.iy;
  const std::size_t ix2 = e.dir == 0 ? e.ix + 1 : e.ix;
  const double a = g.at(e.iy, e.ix);
  const double b = g.at(iy2, ix2);
  const double t = (a == b) ? 0.5 : (level - a) / (b - a);
  return {g.x_axis[e.ix] + t * (g.x_axis[ix2] - g.x_axis[e.ix]),
          g.y_axis[e.iy] + t * (g.y_axis[iy2] - g.y_axis[e.iy])};
}

}  // namespace

ScalarGrid read_grid_csv(std::istream& is, const std::string& x_column,
                         const std::string& y_column, const std::string& value_column) {
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("grid CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line);
  const std::size_t cx = column_index(header, x_column);
  const std::size_t cy = column_index(header, y_column);
  const std::size_t cv = column_index(header, value_column);

  std::vector<Point> coords;
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != header.size()) throw SchemaError("grid CSV: row width differs from header");
    coords.push_back({io::parse_double(f[cx]), io::parse_double(f[cy])});
    values.push_back(io::parse_double(f[cv]));
  }
  if (values.empty()) throw SchemaError("grid CSV: no data rows");

  ScalarGrid g;
  for (const Point& p : coords) {
    if (p.y != coords.front().y) break;
    g.x_axis.push_back(p.x);
  }
  const std::size_t width = g.x_axis.size();
  if (coords.size() % width != 0) throw SchemaError("grid CSV: ragged grid");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i % width == 0) g.y_axis.push_back(coords[i].y);
    if (coords[i].x != g.x_axis[i % width] || coords[i].y != g.y_axis.back()) {
      throw SchemaError("grid CSV: ragged grid at data row " + std::to_string(i + 1));
    }
  }
  for (std::size_t i = 1; i < g.x_axis.size(); ++i) {
    if (!(g.x_axis[i] > g.x_axis[i - 1])) throw SchemaError("grid CSV: x not increasing");
  }
  for (std::size_t i = 1; i < g.y_axis.size(); ++i) {
    if (!(g.y_axis[i] > g.y_axis[i - 1])) throw SchemaError("grid CSV: y not increasing");
  }
  g.values = std::move(values);
  return g;
}

std::vector<double> contour_levels(const ScalarGrid& grid, double spacing) {
  if (!(spacing > 0.0)) throw InvalidParams("contour_levels: spacing must be positive");
  const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  std::vector<double> out;
  for (long k = static_cast<long>(std::floor(*lo / spacing)); k * spacing <= *hi; ++k) {
    // Rounded so 0.1-spaced levels print as 0.3, not 0.30000000000000004.
    const double level = std::round(k * spacing * 1e12) / 1e12;
    if (level > *lo && level < *hi) out.push_back(level);
  }
  return out;
}

ContourLevel trace_level(const ScalarGrid& g, double level) {
  ContourLevel out{level, {}};
  const std::size_t nx = g.x_axis.size();
  const std::size_t ny = g.y_axis.size();
  if (nx < 2 || ny < 2) return out;

  std::vector<std::pair<EdgeId, EdgeId>> segments;
  for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
      // Corners counter-clockwise from bottom-left; edges bottom, right, top, left.
      const double v[4] = {g.at(iy, ix), g.at(iy, ix + 1), g.at(iy + 1, ix + 1), g.at(iy + 1, ix)};
      const EdgeId edge[4] = {{iy, ix, 0}, {iy, ix + 1, 1}, {iy + 1, ix, 0}, {iy, ix, 1}};
      int mask = 0;
      for (int c = 0; c < 4; ++c) mask |= (v[c] >= level ? 1 : 0) << c;
      if (mask == 0 || mask == 15) continue;

      std::vector<int> cut;
      for (int e = 0; e < 4; ++e) {
        const bool a = (mask >> e) & 1;
        const bool b = (mask >> ((e + 1) % 4)) & 1;
        if (a != b) cut.push_back(e);
      }
      if (cut.size() == 2) {
        segments.push_back({edge[cut[0]], edge[cut[1]]});
        continue;
      }
      // Saddle: the cell-centre average decides which diagonal is connected.
      const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
      const bool centre_above = centre >= level;
      const bool bl_above = mask & 1;
      if (centre_above == bl_above) {
        // bottom-left and top-right corners joined through the centre
        segments.push_back({edge[0], edge[1]});
        segments.push_back({edge[2], edge[3]});
      } else {
        segments.push_back({edge[0], edge[3]});
        segments.push_back({edge[1], edge[2]});
      }
    }
  }

  // Chain segments sharing an edge crossing. Each crossing belongs to at most two segments.
  std::map<EdgeId, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    touching[segments[s].first].push_back(s);
    touching[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  auto other_end = [&](std::size_t s, const EdgeId& e) {
    return segments[s].first == e ? segments[s].second : segments[s].first;
  };
  auto next_segment = [&](const EdgeId& e) -> std::ptrdiff_t {
    for (std::size_t s : touching[e]) {
      if (!used[s]) return static_cast<std::ptrdiff_t>(s);
    }
    return -1;
  };
  auto walk = [&](std::size_t start) {
    std::vector<EdgeId> chain{segments[start].first, segments[start].second};
    used[start] = true;
    for (std::ptrdiff_t s = next_segment(chain.back()); s >= 0; s = next_segment(chain.back())) {
      used[static_cast<std::size_t>(s)] = true;
      chain.push_back(other_end(static_cast<std::size_t>(s), chain.back()));
    }
    std::vector<EdgeId> head;
    for (std::ptrdiff_t s = next_segment(chain.front()); s >= 0;
         s = next_segment(head.empty() ? chain.front() : head.back())) {
      used[static_cast<std::size_t>(s)] = true;
      head.push_back(other_end(static_cast<std::size_t>(s), head.empty() ? chain.front() : head.back()));
    }
    chain.insert(chain.begin(), head.rbegin(), head.rend());
    Polyline line;
    for (const EdgeId& e : chain) line.push_back(crossing(g, e, level));
    return line;
  };
  // Open lines start at boundary crossings (touched once); loops are picked up after.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s] && (touching[segments[s].first].size() == 1 ||
                     touching[segments[s].second].size() == 1)) {
      out.lines.push_back(walk(s));
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) out.lines.push_back(walk(s));
  }
  return out;
}

std::vector<ContourLevel> trace_contours(const ScalarGrid& grid, double spacing) {
  std::vector<ContourLevel> out;
  for (double level : contour_levels(grid, spacing)) {
    ContourLevel traced = trace_level(grid, level);
    if (!traced.lines.empty()) out.push_back(std::move(traced));
  }
  return out;
}

namespace {

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  std::string s = os.str();
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os << std::round(v * 1e6) / 1e6;
  return os.str();
}

std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

}  // namespace

std::string render_svg(const ScalarGrid& grid, const std::vector<ContourLevel>& levels,
                       const SvgOptions& opt) {
  const double left = 70, right = 20, top = opt.title.empty() ? 20 : 45, bottom = 55;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  const double x0 = grid.x_axis.front(), x1 = grid.x_axis.back();
  const double y0 = grid.y_axis.front(), y1 = grid.y_axis.back();
  auto sx = [&](double x) { return left + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * pw; };
  auto sy = [&](double y) { return top + ph - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
     << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(opt.title) << "</text>\n";
  }
  os << "<rect class=\"frame\" x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\""
     << fixed(pw) << "\" height=\"" << fixed(ph)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  os << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double t : nice_ticks(x0, x1)) {
    const double px = sx(t);
    os << "<line x1=\"" << fixed(px) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(px)
       << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fixed(px) << "\" y=\"" << fixed(top + ph + 19)
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : nice_ticks(y0, y1)) {
    const double py = sy(t);
    os << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(py) << "\" x2=\"" << fixed(left)
       << "\" y2=\"" << fixed(py) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py + 4)
       << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  os << "<text class=\"x-label\" x=\"" << fixed(left + pw / 2) << "\" y=\""
     << fixed(opt.height - 12.0) << "\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(opt.x_label)
     << "</text>\n"
     << "<text class=\"y-label\" x=\"18\" y=\"" << fixed(top + ph / 2)
     << "\" text-anchor=\"middle\" font-size=\"15\" transform=\"rotate(-90 18 "
     << fixed(top + ph / 2) << ")\">" << xml_escape(opt.y_label) << "</text>\n"
     << "</g>\n";

  for (const ContourLevel& lv : levels) {
    os << "<g class=\"contour\" data-level=\"" << tick_label(lv.level)
       << "\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.2\">\n";
    for (const Polyline& line : lv.lines) {
      os << "<polyline points=\"";
      for (std::size_t i = 0; i < line.size(); ++i) {
        os << (i ? " " : "") << fixed(sx(line[i].x)) << ',' << fixed(sy(line[i].y));
      }
      os << "\"/>\n";
    }
    // Label the end of the longest line, nudged inside the frame.
    const auto longest = std::max_element(
        lv.lines.begin(), lv.lines.end(),
        [](const Polyline& a, const Polyline& b) { return a.size() < b.size(); });
    if (longest != lv.lines.end() && !longest->empty()) {
      const Point end = longest->back().y >= longest->front().y ? longest->back() : longest->front();
      const double px = std::clamp(sx(end.x) + 3.0, left + 2.0, left + pw - 24.0);
      const double py = std::clamp(sy(end.y) - 3.0, top + 12.0, top + ph - 3.0);
      os << "<text class=\"level-label\" x=\"" << fixed(px) << "\" y=\"" << fixed(py)
         << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#1f4e99\" stroke=\"none\">"
         << tick_label(lv.level) << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qfimeter::plot
