#pragma once

#include <string>
#include <vector>

namespace rfspectra {

/// One plotted curve: a mean polyline and an optional shaded band.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band_low;   // empty = no band
  std::vector<double> band_high;  // same length as band_low
};

/// Minimal self-contained line plot: polylines, shaded band polygons, axis
/// ticks, and a legend. Deterministic output (no timestamps, fixed palette).
std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series,
                             int width = 860, int height = 560);

}  // namespace rfspectra
