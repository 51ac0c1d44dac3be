#include "flatmod/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace flatmod {

namespace {

std::string num(double v) { return fixed(v, 2); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

}  // namespace

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    // Avoid "-0.00" from tiny negative noise.
    if (std::all_of(s.begin() + 1, s.end(), [](char c) { return c == '0' || c == '.'; })) {
      s.erase(0, 1);
    }
  }
  return s;
}

std::string gray(double level) {
  level = std::clamp(level, 0.0, 1.0);
  const int v = static_cast<int>(std::lround(255.0 * (1.0 - level)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", v, v, v);
  return buf;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {
  rect(0, 0, width, height, "white");
}

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill,
                       const std::string& stroke, double opacity) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"";
  if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                       double width, double opacity) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"";
  if (opacity < 1.0) body_ += " stroke-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& points,
                           const std::string& stroke, double width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
           "\" points=\"";
  for (const auto& [x, y] : points) body_ += num(x) + "," + num(y) + " ";
  body_ += "\"/>\n";
}

void SvgDocument::polygon(const std::vector<std::pair<double, double>>& points,
                          const std::string& fill, double opacity) {
  body_ += "<polygon fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) +
           "\" stroke=\"none\" points=\"";
  for (const auto& [x, y] : points) body_ += num(x) + "," + num(y) + " ";
  body_ += "\"/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill,
                         double opacity) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
           "\" fill=\"" + fill + "\"";
  if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content, double size,
                       const std::string& anchor, double rotate) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           num(size) + "\" text-anchor=\"" + anchor + "\"";
  if (rotate != 0.0) {
    body_ += " transform=\"rotate(" + num(rotate) + " " + num(x) + " " + num(y) + ")\"";
  }
  body_ += ">" + escape(content) + "</text>\n";
}

std::string SvgDocument::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" +
         body_ + "</svg>\n";
}

double PlotArea::x(double v) const {
  const double span = x_max - x_min;
  return left + (span == 0 ? 0.5 : (v - x_min) / span) * width;
}

double PlotArea::y(double v) const {
  const double span = y_max - y_min;
  return top + height - (span == 0 ? 0.5 : (v - y_min) / span) * height;
}

void PlotArea::draw_axes(SvgDocument& svg, const std::string& x_label,
                         const std::string& y_label, int x_ticks, int y_ticks) const {
  svg.rect(left, top, width, height, "none", "black");
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = x_min + (x_max - x_min) * i / x_ticks;
    svg.line(x(v), top + height, x(v), top + height + 4, "black");
    svg.text(x(v), top + height + 16, fixed(v, 2), 10, "middle");
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = y_min + (y_max - y_min) * i / y_ticks;
    svg.line(left - 4, y(v), left, y(v), "black");
    svg.text(left - 6, y(v) + 3, fixed(v, 2), 10, "end");
  }
  svg.text(left + width / 2, top + height + 34, x_label, 12, "middle");
  svg.text(left - 42, top + height / 2, y_label, 12, "middle", -90);
}

const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                               "#ff7f0e", "#8c564b"};
  return colors;
}

}  // namespace flatmod
