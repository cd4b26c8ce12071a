#include "qgp/random_field.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qgp/errors.hpp"
#include "qgp/fft.hpp"

namespace qgp {
namespace {

// Raw mt19937_64 output is specified by the standard; the distributions are
// not, so draw uniforms by hand.
double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace

GridFunction random_smooth_field(const Grid& grid, const SmoothFieldSpec& spec) {
    if (spec.bumps < 1 || !(spec.bump_width > 0.0) || !(spec.band_fraction > 0.0)) {
        throw ValidationError("random_smooth_field: invalid parameters");
    }
    std::mt19937_64 gen(spec.seed);
    GridFunction f(grid);
    for (int b = 0; b < spec.bumps; ++b) {
        const double centre = uniform(gen, -spec.spread, spec.spread);
        const double width = uniform(gen, spec.bump_width, 2.0 * spec.bump_width);
        const double amp = uniform(gen, -1.0, 1.0);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double z = (grid.x(j) - centre) / width;
            f[j] += amp * std::exp(-0.5 * z * z);
        }
    }

    Fft fft(grid.size());
    std::vector<std::complex<double>> spec_c(fft.spectrum_size());
    fft.forward(f.values(), spec_c);
    const double cut = spec.band_fraction * grid.k_max();
    for (std::size_t m = 0; m < spec_c.size(); ++m) {
        const double r = grid.wavenumber(m) / cut;
        spec_c[m] *= r >= 1.0 ? 0.0 : std::exp(-std::pow(r, 8) / (1.0 - r * r));
    }
    fft.inverse_destroy(spec_c, f.values());

    const double m = f.max_abs();
    if (!(m > 0.0)) throw NumericalError("random_smooth_field: vanishing field");
    f *= 1.0 / m;
    return f;
}

}  // namespace qgp
