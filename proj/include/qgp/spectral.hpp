#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qgp/grid.hpp"
#include "qgp/profile.hpp"
#include "qgp/tridiag.hpp"

namespace qgp {

// The scalar operator
//   L_c = -d/dx (a d/dx) + w,
//   a = (1 - 2 kappa + 2 kappa eta) / (2 (1 - eta)),
//   w = -eta'' / (2 (1 - eta)^2) - eta'^2 / (2 (1 - eta)^3) + 1 - c^2 / (2 (1 - eta)^3),
// discretised in divergence form on the grid nodes with Dirichlet ends. The
// matrix is the lumped-mass P1 Galerkin matrix with element integrals of a
// and w evaluated accurately, so its eigenvalues sit above those of the
// truncated continuum problem and the translation eigenvalue is >= 0.
struct OperatorLc {
    Grid grid;
    double c;
    double kappa;
    GridFunction a;
    GridFunction w;
    SymTridiagonal matrix;

    double essential_edge() const noexcept { return 1.0 - 0.5 * c * c; }
    // max(|w(-L) - edge|, |w(L - dx) - edge|).
    double boundary_potential_defect() const;
};

OperatorLc assemble_lc(const SolitonProfile& profile);
// For an arbitrary eta (vacuum tests, perturbed states); derivatives spectral.
OperatorLc assemble_lc(const SolitonParams& params, const GridFunction& eta);

// Matrix action (second order).
GridFunction apply_lc(const OperatorLc& op, const GridFunction& f);
// Spectral action -D(a D f) + w f.
GridFunction apply_lc_spectral(const OperatorLc& op, const GridFunction& f);
// <L f, f> = int a (f')^2 + w f^2 with the spectral f'.
double lc_form(const OperatorLc& op, const GridFunction& f);

std::size_t count_negative_eigenvalues(const OperatorLc& op);

struct EigenPair {
    double value;
    GridFunction vector;  // unit L2 norm, positive at its largest-magnitude node
};

// Every eigenpair of the matrix below edge - margin, ascending.
std::vector<EigenPair> eigenpairs_below(const OperatorLc& op, double edge, double margin = 1e-9);

// Ground eigenpair of the spectral operator, refined from a matrix eigenpair
// by preconditioned inverse iteration (the matrix is the preconditioner).
EigenPair refine_ground_state(const OperatorLc& op, const EigenPair& start, double next_eigenvalue);

struct SpectrumReport {
    std::size_t negative_count;          // Sturm count at 0
    std::size_t negative_count_listed;   // eigenvalues < 0 among discrete_eigenvalues
    double mu_minus;                     // ground eigenvalue, spectrally refined
    double mu_minus_matrix;              // ground eigenvalue of the matrix
    double mu_zero;                      // matrix eigenvalue nearest 0
    double kernel_residual;              // ||L eta'|| / ||eta'|| (matrix action)
    double kernel_overlap;               // |<e_2, eta'/||eta'||>|
    double essential_edge;
    double spectral_gap;                 // smallest eigenvalue above mu_zero (or the edge)
    std::vector<double> discrete_eigenvalues;
    GridFunction chi1;
    std::vector<EigenPair> eigenpairs;   // matrix eigenpairs below the edge
};

SpectrumReport analyze_spectrum(const SolitonProfile& profile);

// Second variation of E - cP at the soliton, assembled term by term from
// E'' and P'' (spectral derivatives).
double hessian_full(const SolitonProfile& profile, const GridFunction& d_eta, const GridFunction& d_v);
// Same form written as <L_c d_eta, d_eta> + int 2 (1 - eta) (d_v + c d_eta / (2 (1 - eta)^2))^2.
double hessian_reduced(const SolitonProfile& profile, const GridFunction& d_eta, const GridFunction& d_v);

struct Direction {
    GridFunction eta;
    GridFunction v;
};

// (chi1, -c chi1 / (2 (1 - eta)^2)).
Direction negative_direction(const SolitonProfile& profile, const SpectrumReport& report);
Direction negative_direction(const SolitonProfile& profile);

// d/dc of (eta_c, v_c) by central differences of re-solved profiles on the
// profile's grid.
Direction speed_tangent(const SolitonParams& params, const Grid& grid, double h = 1e-4);

struct CurvePoint {
    GridFunction eta;
    GridFunction v;
    double l;
    double energy_drop;  // E(Psi(q)) - E(eta_c, v_c)
};

// Psi(q) = (eta_q, v_q) + l chi_- with P(Psi(q)) = P(eta_c, v_c). P is
// quadratic in l; the root continuous through l(c) = 0 is returned.
// Requires |q - c| < 0.05.
CurvePoint unstable_curve(const SolitonProfile& profile, const Direction& chi_minus, double q);

// d''(c) = -dP/dc.
double d_second(double c, double kappa);

}  // namespace qgp
