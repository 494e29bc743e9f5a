#include "galt_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace galt::cli {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

const char* colour(int series) { return kPalette[static_cast<std::size_t>(std::max(series, 0)) % 6]; }

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

ScatterPlot::ScatterPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void ScatterPlot::add_point(double x, double y, const std::string& label, int series) {
  points_.push_back({x, y, label, series});
}

void ScatterPlot::add_segment(double x0, double y0, double x1, double y1, int series) {
  segments_.push_back({x0, y0, x1, y1, series});
}

std::string ScatterPlot::render(int width, int height) const {
  double xmin = origin_ ? 0.0 : INFINITY, xmax = origin_ ? 0.0 : -INFINITY;
  double ymin = xmin, ymax = xmax;
  auto grow = [&](double x, double y) {
    xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  };
  for (const auto& p : points_) grow(p.x, p.y);
  for (const auto& s : segments_) grow(s.x0, s.y0), grow(s.x1, s.y1);
  if (!std::isfinite(xmin)) xmin = ymin = -1.0, xmax = ymax = 1.0;
  const double padx = std::max(1e-9, 0.08 * (xmax - xmin)), pady = std::max(1e-9, 0.08 * (ymax - ymin));
  xmin -= padx, xmax += padx, ymin -= pady, ymax += pady;

  const double left = 60, right = width - 20.0, top = 40, bottom = height - 50.0;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<title>" + xml_escape(title_) + "</title>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(title_) + "</text>\n";
  svg += "<g class=\"axes\" stroke=\"#999\" stroke-dasharray=\"4 3\">\n";
  if (xmin < 0 && xmax > 0) {
    svg += "<line x1=\"" + fixed(sx(0)) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(sx(0)) + "\" y2=\"" +
           fixed(bottom) + "\"/>\n";
  }
  if (ymin < 0 && ymax > 0) {
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(sy(0)) + "\" x2=\"" + fixed(right) + "\" y2=\"" +
           fixed(sy(0)) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<rect class=\"frame\" x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(right - left) +
         "\" height=\"" + fixed(bottom - top) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg += "<text x=\"" + fixed((left + right) / 2) + "\" y=\"" + fixed(height - 15.0) + "\" text-anchor=\"middle\">" +
         xml_escape(x_label_) + "</text>\n";
  svg += "<text transform=\"translate(16," + fixed((top + bottom) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         xml_escape(y_label_) + "</text>\n";

  svg += "<g class=\"segments\">\n";
  for (const auto& s : segments_) {
    svg += "<line x1=\"" + fixed(sx(s.x0)) + "\" y1=\"" + fixed(sy(s.y0)) + "\" x2=\"" + fixed(sx(s.x1)) +
           "\" y2=\"" + fixed(sy(s.y1)) + "\" stroke=\"" + colour(s.series) + "\" stroke-width=\"1\"/>\n";
  }
  svg += "</g>\n<g class=\"points\">\n";
  for (const auto& p : points_) {
    svg += "<circle cx=\"" + fixed(sx(p.x)) + "\" cy=\"" + fixed(sy(p.y)) + "\" r=\"3\" fill=\"" + colour(p.series) +
           "\"/>";
    if (!p.label.empty()) {
      svg += "<text x=\"" + fixed(sx(p.x) + 4) + "\" y=\"" + fixed(sy(p.y) - 4) + "\" fill=\"" + colour(p.series) +
             "\">" + xml_escape(p.label) + "</text>";
    }
    svg += "\n";
  }
  svg += "</g>\n";
  if (!series_names_.empty()) {
    svg += "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < series_names_.size(); ++i) {
      const double y = top + 14.0 + 14.0 * static_cast<double>(i);
      svg += "<rect x=\"" + fixed(right - 110) + "\" y=\"" + fixed(y - 8) + "\" width=\"8\" height=\"8\" fill=\"" +
             colour(static_cast<int>(i)) + "\"/><text x=\"" + fixed(right - 98) + "\" y=\"" + fixed(y) + "\">" +
             xml_escape(series_names_[i]) + "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace galt::cli
