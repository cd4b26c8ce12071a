#pragma once

#include <cstdint>

#include "qgp/grid.hpp"

namespace qgp {

struct SmoothFieldSpec {
    std::uint64_t seed = 1;
    int bumps = 8;
    double spread = 5.0;       // bump centres uniform in [-spread, spread]
    double bump_width = 1.0;   // Gaussian widths uniform in [w, 2w]
    double band_fraction = 0.25;  // keep |k| <= band_fraction * k_max
};

// Superposition of seeded Gaussian bumps, low-pass filtered and scaled to
// unit sup norm. Identical seeds give bit-identical fields.
GridFunction random_smooth_field(const Grid& grid, const SmoothFieldSpec& spec);

}  // namespace qgp
