#pragma once

#include <string>
#include <vector>

namespace galt::cli {

// Minimal static scatter plot: labelled points, optional segments, one
// colour per series.
class ScatterPlot {
 public:
  ScatterPlot(std::string title, std::string x_label, std::string y_label);

  void add_point(double x, double y, const std::string& label, int series);
  void add_segment(double x0, double y0, double x1, double y1, int series);
  void set_series_names(std::vector<std::string> names) { series_names_ = std::move(names); }
  // Keeps both axes through the origin visible.
  void include_origin(bool on) { origin_ = on; }

  std::string render(int width = 720, int height = 560) const;

 private:
  struct Point {
    double x, y;
    std::string label;
    int series;
  };
  struct Segment {
    double x0, y0, x1, y1;
    int series;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Point> points_;
  std::vector<Segment> segments_;
  std::vector<std::string> series_names_;
  bool origin_ = true;
};

std::string xml_escape(const std::string& text);

}  // namespace galt::cli
