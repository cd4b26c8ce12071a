#include "qgp/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <vector>

#include "qgp/errors.hpp"

namespace qgp {

QuadratureResult graded_gauss(const std::function<double(double)>& f, double a, double b,
                              double fine_scale, int base_panels) {
    if (!(b > a) || base_panels < 1) throw ValidationError("graded_gauss: empty interval");
    using boost::math::quadrature::gauss;

    const double width = (b - a) / base_panels;
    std::vector<double> breaks;
    for (int i = 0; i < base_panels; ++i) breaks.push_back(a + i * width);
    double w = width;
    while (w > fine_scale / 4.0 && w > 1e-14 * (b - a)) {
        w *= 0.25;
        breaks.push_back(b - w);
    }
    breaks.push_back(b);

    double fine = 0.0;
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        fine += gauss<double, 30>::integrate(f, breaks[i], breaks[i + 1]);
        coarse += gauss<double, 20>::integrate(f, breaks[i], breaks[i + 1]);
    }
    if (!std::isfinite(fine)) throw NumericalError("graded_gauss: non-finite integral");
    return {fine, std::abs(fine - coarse)};
}

}  // namespace qgp
