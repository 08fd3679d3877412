#pragma once

#include "spectraflow/observables.hpp"
#include "spectraflow/spectra.hpp"

#include <span>
#include <string>

namespace spectraflow {

// 12 significant digits ("%.12g"), with negative zero printed as 0.
std::string format_number(double x);

// g,line_id,sorted_index,energy,parity; rows g-major then line_id.
std::string spectrum_csv(const SpectralFlow& flow);
// g_star,energy,line_a,line_b,min_gap,kind; sorted by g_star.
std::string crossings_csv(const CrossingScan& scan);
// g,eigen_index,sx,sz,dsx,dsy,delta; g-major.
std::string uncertainty_csv(std::span<const UncertaintyRecord> records);
// bin_lo,bin_hi,count,probability.
std::string histogram_csv(const Histogram& hist);

} // namespace spectraflow
