#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgp/grid.hpp"
#include "qgp/io.hpp"

namespace qgp {

// Hydrodynamical energy
//   int eta_x^2 / (4 (1 - eta)) + v^2 (1 - eta) + (eta^2 - kappa eta_x^2) / 2.
// Throws FrameError where eta >= 1.
double energy(const GridFunction& eta, const GridFunction& v, double kappa);
// P = -int eta v.
double momentum(const GridFunction& eta, const GridFunction& v);
// N = -int eta.
double particles(const GridFunction& eta);
// Theta = int v.
double twist(const GridFunction& v);

// Momentum and energy of the soliton u_{c,kappa}, by quadrature in eta along
// the first integral (dx = d eta / eta'), with eta = eta0 sin^2(phi) to
// absorb the inverse square root at the turning point. energy_of_speed also
// accepts c = 0, the black-soliton limit.
double momentum_of_speed(double c, double kappa);
double energy_of_speed(double c, double kappa);

// Limit of E(u_{c,kappa}) as c -> 0+.
double black_soliton_energy(double kappa);

// Limit of P(u_{c,kappa}) as c -> 0+, by quadratic extrapolation from
// c = 0.05, 0.02, 0.01.
double black_soliton_momentum(double kappa);

struct Slope {
    double value;
    double error_estimate;
};

// Central differences with one Richardson step, h = 1e-3 min(c, sqrt2 - c).
Slope momentum_slope(double c, double kappa);
Slope energy_slope(double c, double kappa);

struct BranchSample {
    double c;
    double momentum;
    double energy;
    double dPdc;
    double dEdc;
};

struct BranchCurve {
    double kappa;
    std::vector<BranchSample> samples;  // c strictly increasing
    std::optional<double> cusp;         // speed where dP/dc changes sign
};

BranchCurve branch_curve(double kappa, double c_min, double c_max, int n_samples);

enum class Verdict { Stable, Unstable, Degenerate };

std::string to_string(Verdict v);

struct StabilityVerdict {
    double c;
    double kappa;
    double dPdc;
    Verdict verdict;
    double tolerance;
};

// Stable iff dP/dc < -tol, Unstable iff dP/dc > tol, else Degenerate.
StabilityVerdict vk_classify(double c, double kappa, double tolerance = 1e-6);

// Speed at which dP/dc vanishes, or nothing when dP/dc < 0 on the whole
// branch (scanned down to c = 1e-3).
std::optional<double> find_c_tilde(double kappa);

// True when dP/dc is positive somewhere on the scan grid.
bool has_unstable_band(double kappa);

// Threshold below which the unstable band exists, bisected to width 1e-3.
double find_kappa0();

struct QStar {
    double q_star;
    double c_star;
    double level;       // E(u_{0,kappa})
    bool at_endpoint;   // crossing only in the limit c -> 0
};

// Where the stable part of the branch meets the black-soliton energy level.
// Requires kappa <= 0.
std::optional<QStar> find_q_star(double kappa);

// Writes `<csv>` (c,P,E,dPdc,dEdc plus half-scale columns) and `<svg>` (E vs
// P with the cusp and the black-soliton level). Throws ValidationError on an
// empty curve before touching the filesystem.
void emit_diagram(const BranchCurve& curve, const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path, const io::Provenance& provenance = {});

std::string diagram_csv(const BranchCurve& curve, const io::Provenance& provenance);
std::string diagram_svg(const BranchCurve& curve, const io::Provenance& provenance);

}  // namespace qgp
