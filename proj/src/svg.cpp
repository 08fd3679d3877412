#include "spectraflow/svg.hpp"

#include "spectraflow/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace spectraflow {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("svg: CSV lacks column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
  double number(std::size_t row, std::size_t col) const { return std::stod(rows[row][col]); }
};

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Table parse_csv(std::string_view text) {
  Table t;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (first) {
      t.header = split(line);
      first = false;
    } else {
      t.rows.push_back(split(line));
    }
  }
  if (t.header.empty()) throw ConfigError("svg: empty CSV");
  return t;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

class Canvas {
public:
  Canvas(double x_lo, double x_hi, double y_lo, double y_hi, std::string_view x_name, std::string_view y_name)
      : x_lo_(x_lo), x_hi_(x_hi > x_lo ? x_hi : x_lo + 1.0), y_lo_(y_lo), y_hi_(y_hi > y_lo ? y_hi : y_lo + 1.0) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<g stroke=\"black\" stroke-width=\"1\">\n"
         << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
         << kHeight - kBottom << "\"/>\n"
         << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
         << "\"/>\n</g>\n"
         << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\">" << label(x_lo_) << "</text>\n"
         << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"end\">"
         << label(x_hi_) << "</text>\n"
         << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">" << label(y_lo_)
         << "</text>\n"
         << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << label(y_hi_)
         << "</text>\n"
         << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
         << x_name << "</text>\n"
         << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2 << "\" transform=\"rotate(-90 16 "
         << (kTop + kHeight - kBottom) / 2 << ")\" text-anchor=\"middle\">" << y_name << "</text>\n</g>\n";
  }

  double x(double v) const { return kLeft + (v - x_lo_) / (x_hi_ - x_lo_) * (kWidth - kLeft - kRight); }
  double y(double v) const { return kHeight - kBottom - (v - y_lo_) / (y_hi_ - y_lo_) * (kHeight - kTop - kBottom); }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::size_t color) {
    out_ << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kPalette[color % 10] << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << fmt(x(pts[i].first)) << ',' << fmt(y(pts[i].second));
    out_ << "\"/>\n";
  }

  void bar(double lo, double hi, double height) {
    out_ << "<rect fill=\"#4c72b0\" stroke=\"white\" x=\"" << fmt(x(lo)) << "\" y=\"" << fmt(y(height))
         << "\" width=\"" << fmt(x(hi) - x(lo)) << "\" height=\"" << fmt(y(y_lo_) - y(height)) << "\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

private:
  static constexpr int kWidth = 720;
  static constexpr int kHeight = 480;
  static constexpr int kLeft = 70;
  static constexpr int kRight = 20;
  static constexpr int kTop = 20;
  static constexpr int kBottom = 50;

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::ostringstream out_;
};

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::string series_plot(std::string_view csv, std::string_view key, std::string_view y_name, std::string_view y_label,
                        std::optional<std::pair<double, double>> y_range) {
  const Table t = parse_csv(csv);
  const std::size_t cg = t.column("g");
  const std::size_t ck = t.column(key);
  const std::size_t cy = t.column(y_name);

  std::map<long, std::vector<std::pair<double, double>>> series;
  Bounds bx, by;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double g = t.number(r, cg);
    const double v = t.number(r, cy);
    series[std::stol(t.rows[r][ck])].emplace_back(g, v);
    bx.add(g);
    by.add(v);
  }
  if (t.rows.empty()) bx = by = Bounds{0.0, 1.0};
  if (y_range) by = Bounds{y_range->first, y_range->second};
  Canvas canvas(bx.lo, bx.hi, by.lo, by.hi, "g", y_label);
  for (const auto& [id, pts] : series) canvas.polyline(pts, static_cast<std::size_t>(id));
  return canvas.finish();
}

} // namespace

std::string spectrum_svg(std::string_view csv) {
  return series_plot(csv, "line_id", "energy", "E_n", std::nullopt);
}

std::string uncertainty_svg(std::string_view csv) {
  return series_plot(csv, "eigen_index", "delta", "Delta", std::make_pair(0.0, 0.5));
}

std::string histogram_svg(std::string_view csv) {
  const Table t = parse_csv(csv);
  const std::size_t clo = t.column("bin_lo");
  const std::size_t chi = t.column("bin_hi");
  const std::size_t cp = t.column("probability");
  Bounds bx;
  double top = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    bx.add(t.number(r, clo));
    bx.add(t.number(r, chi));
    top = std::max(top, t.number(r, cp));
  }
  if (t.rows.empty()) bx = Bounds{0.0, 0.5};
  Canvas canvas(bx.lo, bx.hi, 0.0, top > 0.0 ? top : 1.0, "Delta", "probability");
  for (std::size_t r = 0; r < t.rows.size(); ++r) canvas.bar(t.number(r, clo), t.number(r, chi), t.number(r, cp));
  return canvas.finish();
}

} // namespace spectraflow
