#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mpg/core/format.hpp"
#include "mpg/exec/trace_io.hpp"

namespace mpg::cli {

struct PlotBand {
  std::string primitive;
  double t0 = 0.0;
  double t1 = 0.0;
};

/// Contiguous stretches with the same active primitive; idle stretches are skipped.
inline std::vector<PlotBand> primitiveBands(const std::vector<exec::TraceRow>& rows) {
  std::vector<PlotBand> bands;
  for (const auto& r : rows) {
    if (!bands.empty() && bands.back().primitive == r.active) {
      bands.back().t1 = r.t;
      continue;
    }
    if (!bands.empty()) bands.back().t1 = r.t;
    bands.push_back({r.active, r.t, r.t});
  }
  bands.erase(std::remove_if(bands.begin(), bands.end(),
                             [](const PlotBand& b) { return b.primitive == "idle"; }),
              bands.end());
  return bands;
}

namespace detail {

inline const char* bandColor(const std::string& id) {
  static const std::map<std::string, const char*> colors{
      {"LieB", "#c6dbef"}, {"StandB", "#c7e9c0"}, {"WalkB", "#fdd0a2"}, {"LandB", "#dadaeb"}};
  auto it = colors.find(id);
  return it == colors.end() ? "#eeeeee" : it->second;
}

struct Series {
  std::string name;
  int coord;
  const char* color;
};

}  // namespace detail

/// Renders trace.csv in `traceDir` as an SVG timeline: a primitive band
/// strip, replan and violation markers, and panels for height, attitude,
/// planar velocity and vertical velocity. Returns the SVG path.
inline std::filesystem::path plotTrace(const std::filesystem::path& traceDir,
                                       std::filesystem::path out = {}) {
  const auto rows = exec::readTraceCsv(traceDir / "trace.csv");
  if (out.empty()) out = traceDir / "timeline.svg";

  const double width = 1000, left = 70, right = 20, bandH = 28, panelH = 150, gap = 30;
  const double plotW = width - left - right;
  const double tMin = rows.front().t;
  const double tMax = std::max(rows.back().t, tMin + 1e-9);
  auto xOf = [&](double t) { return left + (t - tMin) / (tMax - tMin) * plotW; };

  using detail::Series;
  const std::vector<std::pair<std::string, std::vector<Series>>> panels{
      {"height [m]", {{"h_m", bench::kH, "#08519c"}}},
      {"attitude [rad]", {{"thx_rad", bench::kThx, "#a50f15"}, {"thy_rad", bench::kThy, "#006d2c"}}},
      {"planar velocity [m/s]", {{"vx_mps", bench::kVx, "#54278f"}, {"vy_mps", bench::kVy, "#d94801"}}},
      {"vertical velocity [m/s]", {{"vz_mps", bench::kVz, "#252525"}}},
  };
  const double height = 20 + bandH + gap + panels.size() * (panelH + gap);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double bandTop = 20;
  for (const auto& b : primitiveBands(rows)) {
    const double x0 = xOf(b.t0), x1 = std::max(xOf(b.t1), x0 + 0.5);
    svg << "<rect class=\"band\" data-primitive=\"" << b.primitive << "\" x=\"" << formatDouble(x0, 6)
        << "\" y=\"" << bandTop << "\" width=\"" << formatDouble(x1 - x0, 6) << "\" height=\"" << bandH
        << "\" fill=\"" << detail::bandColor(b.primitive) << "\" stroke=\"#636363\"><title>" << b.primitive
        << " " << formatDouble(b.t0, 6) << "-" << formatDouble(b.t1, 6) << " s</title></rect>\n";
    if (x1 - x0 > 40) {
      svg << "<text x=\"" << formatDouble(x0 + 4, 6) << "\" y=\"" << bandTop + 18 << "\">" << b.primitive
          << "</text>\n";
    }
  }
  svg << "<text x=\"4\" y=\"" << bandTop + 18 << "\">primitive</text>\n";

  const double markTop = bandTop, markBottom = height - gap;
  bool first = true;
  for (const auto& r : rows) {
    if (r.events.find("plan_request") != std::string::npos) {
      if (!first) {
        svg << "<line class=\"replan\" x1=\"" << formatDouble(xOf(r.t), 6) << "\" x2=\""
            << formatDouble(xOf(r.t), 6) << "\" y1=\"" << markTop << "\" y2=\"" << markBottom
            << "\" stroke=\"#e6550d\" stroke-dasharray=\"4 3\"><title>replan at "
            << formatDouble(r.t, 6) << " s</title></line>\n";
      }
      first = false;
    }
    if (r.violation) {
      svg << "<circle class=\"violation\" cx=\"" << formatDouble(xOf(r.t), 6) << "\" cy=\""
          << bandTop + bandH + 8 << "\" r=\"3\" fill=\"#de2d26\"/>\n";
    }
  }

  const std::size_t stride = std::max<std::size_t>(1, rows.size() / 2000);
  double top = bandTop + bandH + gap;
  for (const auto& [title, series] : panels) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : rows) {
      for (const auto& s : series) {
        lo = std::min(lo, r.coords[s.coord]);
        hi = std::max(hi, r.coords[s.coord]);
      }
    }
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto yOf = [&](double v) { return top + (hi - v) / (hi - lo) * panelH; };

    svg << "<g class=\"panel\">\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plotW << "\" height=\"" << panelH
        << "\" fill=\"none\" stroke=\"#969696\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << top - 6 << "\">" << title << "</text>\n";
    svg << "<text x=\"4\" y=\"" << top + 10 << "\">" << formatDouble(hi, 3) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << top + panelH << "\">" << formatDouble(lo, 3) << "</text>\n";
    double legendX = left + plotW - 160;
    for (const auto& s : series) {
      svg << "<polyline class=\"series\" data-name=\"" << s.name << "\" fill=\"none\" stroke=\""
          << s.color << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < rows.size(); i += stride) {
        svg << formatDouble(xOf(rows[i].t), 6) << ',' << formatDouble(yOf(rows[i].coords[s.coord]), 6)
            << ' ';
      }
      svg << formatDouble(xOf(rows.back().t), 6) << ','
          << formatDouble(yOf(rows.back().coords[s.coord]), 6) << "\"/>\n";
      svg << "<text x=\"" << legendX << "\" y=\"" << top + 14 << "\" fill=\"" << s.color << "\">"
          << s.name << "</text>\n";
      legendX += 70;
    }
    svg << "</g>\n";
    top += panelH + gap;
  }
  svg << "<text x=\"" << left + plotW / 2 << "\" y=\"" << height - 8 << "\">t [s] "
      << formatDouble(tMin, 4) << " - " << formatDouble(tMax, 4) << "</text>\n";
  svg << "</svg>\n";

  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out.string());
  f << svg.str();
  return out;
}

}  // namespace mpg::cli
