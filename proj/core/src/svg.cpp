#include "rfspectra/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfspectra/csv.hpp"
#include "rfspectra/errors.hpp"

namespace rfspectra {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// Tick step of the form {1,2,5} * 10^k giving at most `max_ticks` ticks.
double nice_step(const Range& r, int max_ticks) {
  const double raw = (r.hi - r.lo) / std::max(1, max_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) return mag * mult;
  }
  return mag * 10.0;
}

std::string trim_float(double v) {
  // short label: up to 6 significant digits
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

}  // namespace

std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series, int width,
                             int height) {
  if (series.empty()) throw ConfigError("cannot plot an empty series list");

  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw ConfigError("series x and y lengths differ");
    }
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
    for (double v : s.band_low) yr.include(v);
    for (double v : s.band_high) yr.include(v);
  }
  xr.pad();
  yr.pad();

  const double plot_w = width - kMarginLeft - kMarginRight;
  const double plot_h = height - kMarginTop - kMarginBottom;
  const auto map_x = [&](double v) {
    return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto map_y = [&](double v) {
    return kMarginTop + (yr.hi - v) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title
      << "</text>\n";

  // axes
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop
      << "\" x2=\"" << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
      << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\""
      << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

  const double xstep = nice_step(xr, 8);
  for (double tick = std::ceil(xr.lo / xstep) * xstep; tick <= xr.hi + 1e-12;
       tick += xstep) {
    const double px = map_x(tick);
    svg << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << px << "\" y2=\"" << kMarginTop + plot_h + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << trim_float(tick) << "</text>\n";
  }
  const double ystep = nice_step(yr, 8);
  for (double tick = std::ceil(yr.lo / ystep) * ystep; tick <= yr.hi + 1e-12;
       tick += ystep) {
    const double py = map_y(tick);
    svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 9 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << trim_float(tick) << "</text>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& cur = series[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];

    if (!cur.band_low.empty() && cur.band_low.size() == cur.x.size() &&
        cur.band_high.size() == cur.x.size()) {
      svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.18\" "
          << "stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < cur.x.size(); ++i) {
        svg << map_x(cur.x[i]) << ',' << map_y(cur.band_high[i]) << ' ';
      }
      for (std::size_t i = cur.x.size(); i-- > 0;) {
        svg << map_x(cur.x[i]) << ',' << map_y(cur.band_low[i]) << ' ';
      }
      svg << "\"/>\n";
    }

    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < cur.x.size(); ++i) {
      svg << map_x(cur.x[i]) << ',' << map_y(cur.y[i]) << ' ';
    }
    svg << "\"/>\n";

    // legend entry
    const double lx = kMarginLeft + plot_w - 160;
    const double ly = kMarginTop + 14 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24
        << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << cur.label
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rfspectra
