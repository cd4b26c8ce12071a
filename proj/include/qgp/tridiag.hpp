#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qgp {

// Real symmetric tridiagonal matrix: diagonal d (n), off-diagonal e (n - 1).
class SymTridiagonal {
public:
    SymTridiagonal(std::vector<double> diag, std::vector<double> off);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> off() const noexcept { return off_; }

    std::vector<double> apply(std::span<const double> x) const;

    // Number of eigenvalues strictly below `shift`, from the signs of the
    // LDL^T pivots of T - shift. A zero pivot nudges the shift by 1e-12.
    std::size_t count_below(double shift) const;

    // Gershgorin enclosure of the spectrum.
    double lower_bound() const;
    double upper_bound() const;

    // k-th smallest eigenvalue (k = 0 is the ground state) by bisection.
    double eigenvalue(std::size_t k, double tolerance = 1e-10) const;

    // Solves (T - shift) x = rhs by Gaussian elimination with partial pivoting.
    std::vector<double> solve_shifted(double shift, std::span<const double> rhs) const;

    // Inverse iteration at `eigenvalue`, orthogonalised against `previous`
    // (each assumed unit Euclidean norm). Result has unit Euclidean norm.
    std::vector<double> eigenvector(double eigenvalue, std::span<const std::vector<double>> previous = {},
                                    int iterations = 3) const;

private:
    std::vector<double> diag_;
    std::vector<double> off_;
};

}  // namespace qgp
