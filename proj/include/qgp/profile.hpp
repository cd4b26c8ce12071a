#pragma once

#include <cstddef>

#include "qgp/grid.hpp"

namespace qgp {

// Wave speed c in (0, sqrt 2) and quasilinear strength kappa < 1/2.
struct SolitonParams {
    double c;
    double kappa;
};

// Throws ParameterError unless 0 < c < sqrt(2) and kappa < 1/2.
void validate(const SolitonParams& p);

// Amplitude 1 - c^2/2 = eta(0).
double peak_depth(double c);

// G(eta) = (eta')^2 along the profile:
//   eta^2 (2 - 2 eta - c^2) / (1 - 2 kappa (1 - eta)).
// Throws DomainError for eta outside [0, 1 - c^2/2].
double first_integral_rhs(double eta, const SolitonParams& p);
double first_integral_rhs_derivative(double eta, const SolitonParams& p);

// Exponential rate of the eta tail, sqrt((2 - c^2) / (1 - 2 kappa)).
double decay_rate(const SolitonParams& p);

// Half-width of the region around x = 0 where 1 - eta stays within a factor
// two of its minimum c^2/2. Small when c is small.
double core_width(const SolitonParams& p);

// Half-length with e^{-rate L} below 1e-12 (about 28 decay lengths).
double default_half_length(const SolitonParams& p);
Grid default_grid(const SolitonParams& p, std::size_t n = 4096);
// Like default_grid but doubles n until dx resolves the core (dx <= core_width / 16).
Grid resolved_grid(const SolitonParams& p, std::size_t n_min = 4096);

struct SolitonProfile {
    SolitonParams params;
    Grid grid;
    GridFunction eta;
    GridFunction v;
    GridFunction theta;
    GridFunction eta_x;
    GridFunction eta_xx;

    // max(eta(-L), eta(L - dx)).
    double tail() const;
};

// Dark soliton from the first integral, centred at x = 0 with theta(0) = 0.
// Throws TruncationError if L < 12 / decay_rate.
SolitonProfile solve_profile(const SolitonParams& p, const Grid& grid);

// kappa = 0 closed form eta = (1 - c^2/2) sech^2(sqrt(2 - c^2) x / 2).
SolitonProfile analytic_gp_profile(double c, const Grid& grid);

// Builds the remaining fields from eta: v = -c eta / (2 (1 - eta)), spectral
// derivatives, and theta = int_0^x v by the supplied values.
SolitonProfile make_profile(const SolitonParams& p, GridFunction eta, GridFunction theta);

// Sup norm of the scalar profile equation
//   -a(eta) eta'' - eta'^2 / (4 (1 - eta)^2) + eta + c^2 (eta^2 - 2 eta) / (4 (1 - eta)^2)
// with a(eta) = (1 - 2 kappa + 2 kappa eta) / (2 (1 - eta)), derivatives spectral.
double residual_ode(const GridFunction& eta, const SolitonParams& p);
double residual_ode(const SolitonProfile& profile);

// Sup norm of eta'^2 - G(eta) using the spectral eta'.
double first_integral_defect(const SolitonProfile& profile);

}  // namespace qgp
