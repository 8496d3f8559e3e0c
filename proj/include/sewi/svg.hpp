#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace sewi::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool markers = true;
};

/// Dashed reference line of the given slope through (x0, y0).
struct SlopeGuide {
  double slope;
  double x0;
  double y0;
  std::string label;
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = true;
  bool log_y = true;
  std::vector<Series> series;
  std::vector<SlopeGuide> guides;
};

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 600;

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace detail

inline std::string render(const Plot& p) {
  const double left = 90, right = 200, top = 50, bottom = 70;
  const double pw = kWidth - left - right, ph = kHeight - top - bottom;
  auto tx = [&](double v) { return p.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return p.log_y ? std::log10(v) : v; };
  auto ok_x = [&](double v) { return std::isfinite(v) && (!p.log_x || v > 0); };
  auto ok_y = [&](double v) { return std::isfinite(v) && (!p.log_y || v > 0); };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!ok_x(s.x[i]) || !ok_y(s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  double dx = 0.05 * (x1 - x0), dy = 0.08 * (y1 - y0);
  x0 -= dx, x1 += dx, y0 -= dy, y1 += dy;
  auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return top + (y1 - v) / (y1 - y0) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) + "\" height=\"" +
       std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<defs><clipPath id=\"plot\"><rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" +
       detail::num(pw) + "\" height=\"" + detail::num(ph) + "\"/></clipPath></defs>\n";
  o += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" + detail::num(pw) +
       "\" height=\"" + detail::num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  auto ticks = [](double lo, double hi, bool logscale) {
    std::vector<double> t;
    if (logscale) {
      for (double e = std::ceil(lo); e <= std::floor(hi); e += 1.0) t.push_back(e);
      if (t.size() > 12) {
        std::vector<double> thin;
        for (std::size_t i = 0; i < t.size(); i += 2) thin.push_back(t[i]);
        t = thin;
      }
      if (t.empty()) t = {lo, hi};
    } else {
      double span = hi - lo, step = std::pow(10.0, std::floor(std::log10(span / 5)));
      if (span / step > 10) step *= 2;
      if (span / step > 10) step *= 2.5;
      for (double v = std::ceil(lo / step) * step; v <= hi; v += step) t.push_back(v);
    }
    return t;
  };
  for (double v : ticks(x0, x1, p.log_x)) {
    double X = px(v);
    std::string lab = p.log_x ? "1e" + detail::tick(v) : detail::tick(v);
    o += "<line x1=\"" + detail::num(X) + "\" y1=\"" + detail::num(top + ph) + "\" x2=\"" + detail::num(X) + "\" y2=\"" +
         detail::num(top) + "\" stroke=\"#dddddd\"/>\n";
    o += "<text x=\"" + detail::num(X) + "\" y=\"" + detail::num(top + ph + 20) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + lab + "</text>\n";
  }
  for (double v : ticks(y0, y1, p.log_y)) {
    double Y = py(v);
    std::string lab = p.log_y ? "1e" + detail::tick(v) : detail::tick(v);
    o += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(Y) + "\" x2=\"" + detail::num(left + pw) +
         "\" y2=\"" + detail::num(Y) + "\" stroke=\"#dddddd\"/>\n";
    o += "<text x=\"" + detail::num(left - 8) + "\" y=\"" + detail::num(Y + 4) +
         "\" font-size=\"12\" text-anchor=\"end\">" + lab + "</text>\n";
  }
  o += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"28\" font-size=\"16\" text-anchor=\"middle\">" +
       detail::escape(p.title) + "</text>\n";
  o += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"" + detail::num(kHeight - 20.0) +
       "\" font-size=\"14\" text-anchor=\"middle\">" + detail::escape(p.xlabel) + "</text>\n";
  o += "<text transform=\"translate(24," + detail::num(top + ph / 2) +
       ") rotate(-90)\" font-size=\"14\" text-anchor=\"middle\">" + detail::escape(p.ylabel) + "</text>\n";

  double ly = top + 10;
  auto legend = [&](const std::string& label, const std::string& color, bool dashed) {
    o += "<line x1=\"" + detail::num(left + pw + 15) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" +
         detail::num(left + pw + 45) + "\" y2=\"" + detail::num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
         (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    o += "<text x=\"" + detail::num(left + pw + 52) + "\" y=\"" + detail::num(ly + 4) + "\" font-size=\"12\">" +
         detail::escape(label) + "</text>\n";
    ly += 20;
  };

  for (const auto& g : p.guides) {
    if (!(g.x0 > 0 && g.y0 > 0) || !p.log_x || !p.log_y) continue;
    double lx = std::log10(g.x0), lyv = std::log10(g.y0);
    double a = x0, b = x1;
    o += "<line clip-path=\"url(#plot)\" x1=\"" + detail::num(px(a)) + "\" y1=\"" +
         detail::num(py(lyv + g.slope * (a - lx))) + "\" x2=\"" + detail::num(px(b)) + "\" y2=\"" +
         detail::num(py(lyv + g.slope * (b - lx))) + "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
    legend(g.label, "#888888", true);
  }
  for (const auto& s : p.series) {
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!ok_x(s.x[i]) || !ok_y(s.y[i])) continue;
      pts += detail::num(px(tx(s.x[i]))) + "," + detail::num(py(ty(s.y[i]))) + " ";
    }
    o += "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\" points=\"" + pts +
         "\"/>\n";
    if (s.markers)
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!ok_x(s.x[i]) || !ok_y(s.y[i])) continue;
        o += "<circle cx=\"" + detail::num(px(tx(s.x[i]))) + "\" cy=\"" + detail::num(py(ty(s.y[i]))) + "\" r=\"4\" fill=\"" +
             s.color + "\"/>\n";
      }
    legend(s.label, s.color, false);
  }
  o += "</svg>\n";
  return o;
}

}  // namespace sewi::svg
