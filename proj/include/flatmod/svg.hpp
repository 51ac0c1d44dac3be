#pragma once

#include <string>
#include <utility>
#include <vector>

namespace flatmod {

/// Minimal SVG builder for the report figures. Coordinates are in pixels with
/// the origin at the top left, as in SVG itself.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none", double opacity = 1.0);
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, double opacity = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                double width = 1.5);
  void polygon(const std::vector<std::pair<double, double>>& points, const std::string& fill,
               double opacity);
  void circle(double cx, double cy, double r, const std::string& fill, double opacity = 1.0);
  void text(double x, double y, const std::string& content, double size = 12,
            const std::string& anchor = "start", double rotate = 0.0);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

/// "#rrggbb" for a gray level in [0, 1], 0 = white, 1 = black.
std::string gray(double level);

/// Fixed-point text with the given number of decimals.
std::string fixed(double value, int decimals);

/// Plot-area helper for 2-D charts: maps data coordinates into a rectangle.
struct PlotArea {
  double left, top, width, height;
  double x_min, x_max, y_min, y_max;

  double x(double v) const;
  double y(double v) const;
  /// Axes box, ticks and labels.
  void draw_axes(SvgDocument& svg, const std::string& x_label, const std::string& y_label,
                 int x_ticks = 5, int y_ticks = 5) const;
};

const std::vector<std::string>& palette();

}  // namespace flatmod
