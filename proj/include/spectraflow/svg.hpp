#pragma once

#include <string>
#include <string_view>

namespace spectraflow {

// Minimal SVG renderings. Each takes the CSV text produced by the matching
// writer in outputs.hpp, so a plot never carries data the CSV does not.

// One polyline per line_id, energy against g.
std::string spectrum_svg(std::string_view spectrum_csv);
// One polyline per eigen_index, delta against g.
std::string uncertainty_svg(std::string_view uncertainty_csv);
// One bar per bin, probability against the bin range.
std::string histogram_svg(std::string_view histogram_csv);

} // namespace spectraflow
