#include "qgp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "qgp/errors.hpp"
#include "qgp/fft.hpp"

namespace qgp {

Grid::Grid(double half_length, std::size_t n) : half_length_(half_length), n_(n), dx_(0.0) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw ValidationError("grid half-length must be positive and finite");
    }
    if (n < 8) throw ValidationError("grid needs at least 8 points");
    if (n % 2 != 0) throw ValidationError("grid size must be even");
    dx_ = 2.0 * half_length / static_cast<double>(n);
}

std::vector<double> Grid::points() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
}

double Grid::k_max() const noexcept { return std::numbers::pi / dx_; }

double Grid::wavenumber(std::size_t m) const noexcept {
    return std::numbers::pi * static_cast<double>(m) / half_length_;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ValidationError("grid function length does not match grid");
    }
}

GridFunction::GridFunction(Grid grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

GridFunction GridFunction::from(const Grid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return {grid, std::move(v)};
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }
double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!(o.grid_ == grid_)) throw ValidationError("grid mismatch in +=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!(o.grid_ == grid_)) throw ValidationError("grid mismatch in -=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

void GridFunction::require_finite(const char* what) const {
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw ValidationError(std::string(what) + ": non-finite value at x = " +
                                  std::to_string(grid_.x(j)));
        }
    }
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("grid mismatch in product");
    GridFunction out(a.grid());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

GridFunction derivative(const GridFunction& f, int order) {
    if (order < 1 || order > 3) throw ValidationError("derivative order must be 1, 2 or 3");
    f.require_finite("derivative");
    const Grid& g = f.grid();
    Fft fft(g.size());
    std::vector<std::complex<double>> spec(fft.spectrum_size());
    fft.forward(f.values(), spec);
    apply_derivative_symbol(spec, g.size(), 2.0 * g.half_length(), order);
    GridFunction out(g);
    fft.inverse_destroy(spec, out.values());
    return out;
}

namespace {

GridFunction fd4_first(const GridFunction& f) {
    const std::size_t n = f.size();
    const double h = f.grid().dx();
    GridFunction d(f.grid());
    for (std::size_t j = 2; j + 2 < n; ++j) {
        d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
    }
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                 3.0 * f[n - 5]) / (12.0 * h);
    d[n - 2] =
        -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]) /
        (12.0 * h);
    return d;
}

GridFunction fd4_second(const GridFunction& f) {
    const std::size_t n = f.size();
    const double h2 = f.grid().dx() * f.grid().dx();
    GridFunction d(f.grid());
    for (std::size_t j = 2; j + 2 < n; ++j) {
        d[j] = (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) /
               (12.0 * h2);
    }
    auto left0 = [&](auto at) {
        return (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4) -
                10.0 * at(5)) / (12.0 * h2);
    };
    auto left1 = [&](auto at) {
        return (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) + at(5)) /
               (12.0 * h2);
    };
    auto fwd = [&](std::size_t k) { return f[k]; };
    auto bwd = [&](std::size_t k) { return f[n - 1 - k]; };
    d[0] = left0(fwd);
    d[1] = left1(fwd);
    d[n - 1] = left0(bwd);
    d[n - 2] = left1(bwd);
    return d;
}

}  // namespace

GridFunction derivative_fd4(const GridFunction& f, int order) {
    f.require_finite("derivative_fd4");
    switch (order) {
        case 1: return fd4_first(f);
        case 2: return fd4_second(f);
        case 3: return fd4_first(fd4_second(f));
        default: throw ValidationError("derivative order must be 1, 2 or 3");
    }
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().dx();
}

double dot(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid() == g.grid())) throw ValidationError("grid mismatch in dot");
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
    return s * f.grid().dx();
}

GridFunction shift(const GridFunction& f, double s) {
    const Grid& g = f.grid();
    Fft fft(g.size());
    std::vector<std::complex<double>> spec(fft.spectrum_size());
    fft.forward(f.values(), spec);
    const std::size_t nyquist = g.size() / 2;
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const double phase = -g.wavenumber(m) * s;
        if (m == nyquist) {
            spec[m] *= std::cos(phase);
        } else {
            spec[m] *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    GridFunction out(g);
    fft.inverse_destroy(spec, out.values());
    return out;
}

double norm_l2(const GridFunction& f) { return std::sqrt(dot(f, f)); }

double norm_h1(const GridFunction& f) {
    const GridFunction d = derivative(f, 1);
    return std::sqrt(dot(f, f) + dot(d, d));
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("grid mismatch in sup_distance");
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

void write_csv(std::ostream& os, const GridFunction& f) {
    os << "x,value\n";
    char buf[64];
    for (std::size_t j = 0; j < f.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid().x(j), f[j]);
        os << buf;
    }
}

}  // namespace qgp
