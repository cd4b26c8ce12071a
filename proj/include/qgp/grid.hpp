#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qgp {

// Uniform periodic grid on [-L, L) with n points, x_j = -L + j*dx.
class Grid {
public:
    Grid(double half_length, std::size_t n);

    double half_length() const noexcept { return half_length_; }
    std::size_t size() const noexcept { return n_; }
    double dx() const noexcept { return dx_; }
    double x(std::size_t j) const noexcept { return -half_length_ + static_cast<double>(j) * dx_; }
    std::vector<double> points() const;

    // Index of the node x = 0 (n is even, so it is always a node).
    std::size_t center() const noexcept { return n_ / 2; }

    // Largest resolved wavenumber pi/dx.
    double k_max() const noexcept;
    // Wavenumber of the m-th real-to-complex coefficient, m = 0..n/2.
    double wavenumber(std::size_t m) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double half_length_;
    std::size_t n_;
    double dx_;
};

class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);
    explicit GridFunction(Grid grid, double fill = 0.0);

    static GridFunction from(const Grid& grid, const std::function<double(double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double& operator[](std::size_t j) noexcept { return values_[j]; }

    double max() const;
    double min() const;
    double max_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double s);

    // Throws ValidationError if any value is NaN or infinite.
    void require_finite(const char* what) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);
// Pointwise product.
GridFunction operator*(const GridFunction& a, const GridFunction& b);

// Fourier derivative of order 1, 2 or 3.
GridFunction derivative(const GridFunction& f, int order);

// Fourth-order centred finite differences, one-sided near the ends; for data
// that is not periodic-compatible.
GridFunction derivative_fd4(const GridFunction& f, int order);

// Rectangle rule dx * sum(f).
double integrate(const GridFunction& f);

// Inner product dx * sum(f g).
double dot(const GridFunction& f, const GridFunction& g);

// f(x - s), by phase multiplication.
GridFunction shift(const GridFunction& f, double s);

double norm_l2(const GridFunction& f);
double norm_h1(const GridFunction& f);

double sup_distance(const GridFunction& a, const GridFunction& b);

// CSV with header `x,value`, 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& f);

}  // namespace qgp
