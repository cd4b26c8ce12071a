#include "qgp/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgp/errors.hpp"

namespace qgp {

SymTridiagonal::SymTridiagonal(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.empty()) throw ValidationError("tridiagonal matrix must be non-empty");
    if (off_.size() + 1 != diag_.size()) throw ValidationError("off-diagonal must have n - 1 entries");
}

std::vector<double> SymTridiagonal::apply(std::span<const double> x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag_[i] * x[i];
        if (i > 0) s += off_[i - 1] * x[i - 1];
        if (i + 1 < n) s += off_[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::size_t SymTridiagonal::count_below(double shift) const {
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::size_t negatives = 0;
        double q = diag_[0] - shift;
        bool zero_pivot = q == 0.0;
        if (q < 0.0) ++negatives;
        for (std::size_t i = 1; i < size() && !zero_pivot; ++i) {
            q = (diag_[i] - shift) - off_[i - 1] * off_[i - 1] / q;
            if (q == 0.0) zero_pivot = true;
            if (q < 0.0) ++negatives;
        }
        if (!zero_pivot) return negatives;
        shift += 1e-12 * (1.0 + std::abs(shift));
    }
    throw NumericalError("Sturm count: repeated zero pivots");
}

double SymTridiagonal::lower_bound() const {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off_[i - 1]);
        if (i + 1 < size()) r += std::abs(off_[i]);
        lo = std::min(lo, diag_[i] - r);
    }
    return lo;
}

double SymTridiagonal::upper_bound() const {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off_[i - 1]);
        if (i + 1 < size()) r += std::abs(off_[i]);
        hi = std::max(hi, diag_[i] + r);
    }
    return hi;
}

double SymTridiagonal::eigenvalue(std::size_t k, double tolerance) const {
    if (k >= size()) throw ValidationError("eigenvalue index out of range");
    double lo = lower_bound();
    double hi = upper_bound();
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> SymTridiagonal::solve_shifted(double shift, std::span<const double> rhs) const {
    const std::size_t n = size();
    // Rows after pivoting have up to three non-zeros: u0 (diagonal), u1, u2.
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), lower(n, 0.0);
    std::vector<double> b(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) u0[i] = diag_[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = off_[i];

    // Row i+1 initially: [off_[i], diag_[i+1] - shift, off_[i+1]].
    std::vector<double> sub(off_.begin(), off_.end());
    const double tiny = std::numeric_limits<double>::epsilon() *
                        std::max(std::abs(lower_bound()), std::abs(upper_bound()));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(u0[i])) {
            // Swap rows i and i+1.
            const double next_diag = u0[i + 1];
            const double next_super = i + 2 < n ? off_[i + 1] : 0.0;
            std::swap(b[i], b[i + 1]);
            const double r0 = sub[i], r1 = next_diag, r2 = next_super;
            const double s0 = u0[i], s1 = u1[i], s2 = u2[i];
            u0[i] = r0;
            u1[i] = r1;
            u2[i] = r2;
            const double m = s0 / r0;
            u0[i + 1] = s1 - m * r1;
            if (i + 2 < n) u1[i + 1] = s2 - m * r2;
            b[i + 1] -= m * b[i];
        } else {
            if (u0[i] == 0.0) u0[i] = tiny;
            const double m = sub[i] / u0[i];
            u0[i + 1] -= m * u1[i];
            if (i + 2 < n) u1[i + 1] -= m * u2[i];
            b[i + 1] -= m * b[i];
        }
    }
    if (u0[n - 1] == 0.0) u0[n - 1] = tiny;
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        if (ii + 1 < n) s -= u1[ii] * x[ii + 1];
        if (ii + 2 < n) s -= u2[ii] * x[ii + 2];
        x[ii] = s / u0[ii];
    }
    return x;
}

std::vector<double> SymTridiagonal::eigenvector(double eigenvalue,
                                                std::span<const std::vector<double>> previous,
                                                int iterations) const {
    const std::size_t n = size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(0.37 * static_cast<double>(i));

    auto orthonormalise = [&](std::vector<double>& y) {
        for (const auto& q : previous) {
            double p = 0.0;
            for (std::size_t i = 0; i < n; ++i) p += q[i] * y[i];
            for (std::size_t i = 0; i < n; ++i) y[i] -= p * q[i];
        }
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) return false;
        for (double& v : y) v /= norm;
        return true;
    };

    if (!orthonormalise(x)) throw NumericalError("inverse iteration: degenerate start vector");
    for (int attempt = 0; attempt < 4; ++attempt) {
        // A tiny jitter keeps T - shift numerically non-singular.
        const double shift = eigenvalue + attempt * 1e-9 * (1.0 + std::abs(eigenvalue));
        bool ok = true;
        std::vector<double> y = x;
        for (int it = 0; it < iterations && ok; ++it) {
            y = solve_shifted(shift, y);
            ok = orthonormalise(y);
        }
        if (ok) return y;
    }
    throw NumericalError("inverse iteration stagnated");
}

}  // namespace qgp
