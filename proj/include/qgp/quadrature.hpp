#pragma once

#include <functional>

namespace qgp {

struct QuadratureResult {
    double value;
    // |30-point - 20-point| over the same panels.
    double error_estimate;
};

// Composite Gauss-Legendre on [a, b]: `base_panels` uniform panels, the last
// one split geometrically (ratio 1/4) toward b until the finest panel is
// narrower than `fine_scale`. Used for integrands with a boundary layer of
// width ~fine_scale at b.
QuadratureResult graded_gauss(const std::function<double(double)>& f, double a, double b,
                              double fine_scale, int base_panels = 8);

}  // namespace qgp
