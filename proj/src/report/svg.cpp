#include "epf/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "epf/core/error.hpp"

namespace epf::report {

namespace {

constexpr double kW = 800, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

// Maps data ranges onto the plot area and writes the frame.
class Plot {
 public:
  Plot(const std::string& title, double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ <= x0_) x1_ = x0_ + 1;
    if (y1_ <= y0_) {
      y0_ -= 0.5;
      y1_ += 0.5;
    }
    os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os_ << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    os_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight << "\" height=\""
        << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double v = y0_ + (y1_ - y0_) * i / 4.0;
      os_ << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
          << "</text>\n";
    }
  }

  double x(double v) const { return kLeft + (v - x0_) / (x1_ - x0_) * (kW - kLeft - kRight); }
  double y(double v) const { return kH - kBottom - (v - y0_) / (y1_ - y0_) * (kH - kTop - kBottom); }

  std::ostringstream& out() { return os_; }

  void line(double xa, double ya, double xb, double yb, const std::string& style) {
    os_ << "<line x1=\"" << num(x(xa)) << "\" y1=\"" << num(y(ya)) << "\" x2=\"" << num(x(xb)) << "\" y2=\""
        << num(y(yb)) << "\" " << style << "/>\n";
  }

  void x_label(double v, const std::string& text, bool rotate = false) {
    os_ << "<text x=\"" << num(x(v)) << "\" y=\"" << kH - kBottom + 14 << "\" text-anchor=\""
        << (rotate ? "end" : "middle") << "\"";
    if (rotate) os_ << " transform=\"rotate(-40 " << num(x(v)) << " " << kH - kBottom + 14 << ")\"";
    os_ << ">" << escape(text) << "</text>\n";
  }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  double x0_, x1_, y0_, y1_;
  std::ostringstream os_;
};

}  // namespace

std::string svg_lines(const std::string& title, const std::vector<Line>& lines, const std::string& x_label) {
  double lo = INFINITY, hi = -INFINITY;
  std::size_t n = 0;
  for (const auto& l : lines) {
    n = std::max(n, l.values.size());
    for (double v : l.values)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  }
  if (n == 0) throw InvalidArgumentError("report", "line chart without data");
  Plot p(title, 0, static_cast<double>(n - 1), lo, hi);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    p.out() << "<polyline fill=\"none\" stroke=\"" << kPalette[k % 7] << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < lines[k].values.size(); ++i) {
      if (!std::isfinite(lines[k].values[i])) continue;
      p.out() << (first ? "" : " ") << num(p.x(static_cast<double>(i))) << "," << num(p.y(lines[k].values[i]));
      first = false;
    }
    p.out() << "\"/>\n";
    p.out() << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 14 * k << "\" fill=\"" << kPalette[k % 7]
            << "\">" << escape(lines[k].name) << "</text>\n";
  }
  if (!x_label.empty()) p.x_label(static_cast<double>(n - 1) / 2, x_label);
  return p.finish();
}

std::string svg_boxplot(const std::string& title, const std::vector<backtest::GroupStats>& groups) {
  if (groups.empty()) throw InvalidArgumentError("report", "boxplot without groups");
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& g : groups) {
    lo = std::min(lo, g.stats.min);
    hi = std::max(hi, g.stats.max);
  }
  const double n = static_cast<double>(groups.size());
  Plot p(title, 0, n, lo, hi);
  p.line(0, 0, n, 0, "stroke=\"#bbb\" stroke-dasharray=\"3,3\"");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& s = groups[i].stats;
    const double c = i + 0.5, w = 0.3;
    p.line(c, s.min, c, s.q1, "stroke=\"#333\"");
    p.line(c, s.q3, c, s.max, "stroke=\"#333\"");
    p.out() << "<rect x=\"" << num(p.x(c - w)) << "\" y=\"" << num(p.y(s.q3)) << "\" width=\""
            << num(p.x(c + w) - p.x(c - w)) << "\" height=\"" << num(p.y(s.q1) - p.y(s.q3))
            << "\" fill=\"#9ecae1\" stroke=\"#333\"/>\n";
    p.line(c - w, s.median, c + w, s.median, "stroke=\"#d62728\" stroke-width=\"2\"");
    p.out() << "<circle cx=\"" << num(p.x(c)) << "\" cy=\"" << num(p.y(s.mean)) << "\" r=\"2.5\" fill=\"#333\"/>\n";
    p.x_label(c, groups[i].label, groups.size() > 12);
  }
  return p.finish();
}

std::string svg_stems(const std::string& title, const std::vector<double>& values, std::size_t n_obs) {
  if (values.empty()) throw InvalidArgumentError("report", "stem plot without data");
  double lo = 0, hi = 0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double band = n_obs ? 2.0 / std::sqrt(static_cast<double>(n_obs)) : 0.0;
  lo = std::min(lo, -band);
  hi = std::max(hi, band);
  const double n = static_cast<double>(values.size());
  Plot p(title, 0, n + 1, lo, hi);
  p.line(0, 0, n + 1, 0, "stroke=\"#444\"");
  if (band > 0) {
    p.line(0, band, n + 1, band, "stroke=\"#1f77b4\" stroke-dasharray=\"4,3\"");
    p.line(0, -band, n + 1, -band, "stroke=\"#1f77b4\" stroke-dasharray=\"4,3\"");
  }
  for (std::size_t i = 0; i < values.size(); ++i) p.line(i + 1.0, 0, i + 1.0, values[i], "stroke=\"#d62728\"");
  const std::size_t step = values.size() > 48 ? 24 : values.size() > 12 ? 6 : 1;
  for (std::size_t lag = step; lag <= values.size(); lag += step) p.x_label(static_cast<double>(lag), std::to_string(lag));
  return p.finish();
}

std::string svg_heatmap(const std::string& title, const stats::PairwiseMatrix& m) {
  const std::size_t k = m.order.size();
  if (k == 0) throw InvalidArgumentError("report", "heat map without methods");
  const double cell = std::min(40.0, 560.0 / k), left = 200, top = 60;
  std::ostringstream os;
  const double w = left + cell * k + 40, h = top + cell * k + 40;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  for (std::size_t i = 0; i < k; ++i) {
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + cell * (i + 0.6)) << "\" text-anchor=\"end\">"
       << escape(m.order[i]) << "</text>\n";
    os << "<text x=\"" << num(left + cell * (i + 0.5)) << "\" y=\"" << num(top - 6) << "\" text-anchor=\"middle\">"
       << i + 1 << "</text>\n";
    for (std::size_t j = 0; j < k; ++j) {
      const double p = std::clamp(m.p[i][j], 0.0, 1.0);
      const int g = static_cast<int>(std::lround(40 + 215 * std::sqrt(p)));
      char fill[16];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", g, g, std::min(255, g + 20));
      os << "<rect x=\"" << num(left + cell * j) << "\" y=\"" << num(top + cell * i) << "\" width=\"" << num(cell)
         << "\" height=\"" << num(cell) << "\" fill=\"" << fill << "\" stroke=\"white\"><title>" << escape(m.order[i])
         << " vs " << escape(m.order[j]) << ": p=" << num(p) << "</title></rect>\n";
      os << "<text x=\"" << num(left + cell * (j + 0.5)) << "\" y=\"" << num(top + cell * (i + 0.6))
         << "\" text-anchor=\"middle\" fill=\"" << (p < 0.3 ? "white" : "black") << "\">" << num(p) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_scatter(const std::string& title, const std::vector<std::string>& labels,
                        const std::vector<std::array<double, 2>>& points) {
  if (points.empty() || labels.size() != points.size())
    throw InvalidArgumentError("report", "scatter needs one label per point");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : points) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double px = 0.1 * std::max(x1 - x0, 1e-9), py = 0.1 * std::max(y1 - y0, 1e-9);
  Plot p(title, x0 - px, x1 + px, y0 - py, y1 + py);
  for (std::size_t i = 0; i < points.size(); ++i) {
    p.out() << "<circle cx=\"" << num(p.x(points[i][0])) << "\" cy=\"" << num(p.y(points[i][1]))
            << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
    p.out() << "<text x=\"" << num(p.x(points[i][0]) + 5) << "\" y=\"" << num(p.y(points[i][1]) - 4) << "\">"
            << escape(labels[i]) << "</text>\n";
  }
  return p.finish();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgumentError("report", "cannot write " + path);
  f << text;
}

}  // namespace epf::report
