#include "spectraflow/outputs.hpp"

#include "spectraflow/errors.hpp"

#include <cstdio>
#include <sstream>

namespace spectraflow {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

const char* parity_field(Parity p) {
  switch (p) {
  case Parity::Even: return "+1";
  case Parity::Odd: return "-1";
  case Parity::None: return "0";
  }
  return "0";
}

} // namespace

std::string spectrum_csv(const SpectralFlow& flow) {
  if (!flow.tracked()) throw ConfigError("spectrum_csv: flow has no line identities");
  std::ostringstream out;
  out << "g,line_id,sorted_index,energy,parity\n";
  for (std::size_t k = 0; k < flow.points.size(); ++k) {
    const FlowPoint& point = flow.points[k];
    for (std::size_t line = 0; line < flow.levels; ++line) {
      const std::size_t i = flow.sorted_index(k, line);
      out << format_number(point.g) << ',' << line << ',' << i << ',' << format_number(point.energies[i]) << ','
          << parity_field(point.parity[i].value) << '\n';
    }
  }
  return out.str();
}

std::string crossings_csv(const CrossingScan& scan) {
  std::ostringstream out;
  out << "g_star,energy,line_a,line_b,min_gap,kind\n";
  for (const Crossing& c : scan.crossings)
    out << format_number(c.g_star) << ',' << format_number(c.energy) << ',' << c.line_a << ',' << c.line_b << ','
        << format_number(c.min_gap) << ',' << to_string(c.kind) << '\n';
  return out.str();
}

std::string uncertainty_csv(std::span<const UncertaintyRecord> records) {
  std::ostringstream out;
  out << "g,eigen_index,sx,sz,dsx,dsy,delta\n";
  for (const auto& r : records)
    out << format_number(r.g) << ',' << r.eigen_index << ',' << format_number(r.sx) << ',' << format_number(r.sz)
        << ',' << format_number(r.dsx) << ',' << format_number(r.dsy) << ',' << format_number(r.delta) << '\n';
  return out.str();
}

std::string histogram_csv(const Histogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count,probability\n";
  for (std::size_t b = 0; b < hist.bins(); ++b)
    out << format_number(hist.edges[b]) << ',' << format_number(hist.edges[b + 1]) << ',' << hist.counts[b] << ','
        << format_number(hist.probabilities[b]) << '\n';
  return out.str();
}

} // namespace spectraflow
