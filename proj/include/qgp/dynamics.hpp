#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgp/fft.hpp"
#include "qgp/grid.hpp"
#include "qgp/profile.hpp"

namespace qgp {

// Hydrodynamical unknowns (eta, v = theta_x) at time t.
struct HydroState {
    double t;
    GridFunction eta;
    GridFunction v;
    double kappa;
};

struct HydroRate {
    GridFunction eta_t;
    GridFunction v_t;
};

// Throws FrameError at the first node where eta >= 1, or, for 0 < kappa < 1/2,
// where 1 - eta >= 1 / (2 kappa). Non-finite values are reported the same way.
void check_frame(const HydroState& state);

// Right-hand side of
//   eta_t = (2 v (1 - eta))_x,
//   v_t = -(eta_xx / (2 (1 - eta)) + eta_x^2 / (4 (1 - eta)^2) + v^2 - eta - kappa eta_xx)_x
// with spectral derivatives. Keeps FFT buffers, so reuse one instance per
// trajectory; not thread-safe.
class HydroRhs {
public:
    explicit HydroRhs(const Grid& grid, bool dealias = false);

    const Grid& grid() const noexcept { return grid_; }
    void operator()(const HydroState& state, HydroRate& out);
    HydroRate operator()(const HydroState& state);

private:
    void differentiate(std::vector<double>& data, int order);

    Grid grid_;
    Fft fft_;
    bool dealias_;
    std::vector<std::complex<double>> spec_;
    std::vector<std::complex<double>> work_;
    std::vector<double> eta_x_;
    std::vector<double> eta_xx_;
    std::vector<double> flux_;
    std::vector<double> pressure_;
};

HydroRate rhs(const HydroState& state);

// 0.5 * 2.8 / omega(k_max), omega^2 = 2 k^2 + (1 - 2 kappa) k^4.
double stable_dt(const Grid& grid, double kappa);

class Rk4Stepper {
public:
    explicit Rk4Stepper(const Grid& grid, bool dealias = false);
    // In place. A frame violation in any stage throws FrameError naming the stage.
    void step(HydroState& state, double dt);

private:
    HydroRhs rhs_;
    HydroRate k1_, k2_, k3_, k4_;
    HydroState stage_;
};

HydroState step_rk4(const HydroState& state, double dt);

struct OrbitalFit {
    double distance;
    double best_shift;
};

// inf over s of ||eta - eta_c(. - s)||_{H^1} + ||v - v_c(. - s)||_{L^2},
// evaluated in Fourier space. All n node shifts are scanned via one
// cross-correlation, then golden-section search refines s to 1e-12.
class OrbitTracker {
public:
    explicit OrbitTracker(const SolitonProfile& profile);
    OrbitalFit operator()(const GridFunction& eta, const GridFunction& v) const;

private:
    double distance_at(const std::vector<std::complex<double>>& de,
                       const std::vector<std::complex<double>>& dv, double s) const;

    Grid grid_;
    Fft fft_;
    std::vector<std::complex<double>> eta_hat_;
    std::vector<std::complex<double>> v_hat_;
};

OrbitalFit orbital_distance(const HydroState& state, const SolitonProfile& profile);

// V = E - cP - E_c + cP_c + K (P - P_c)^2.
double lyapunov(const HydroState& state, const SolitonProfile& profile, double K = 100.0);

struct Validity {
    bool ok = true;
    double t = 0.0;        // time of the violation
    double x = 0.0;        // first offending node
    std::string message;
};

struct EvolutionReport {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> energy_drift;
    std::vector<double> momentum_drift;
    std::vector<double> particles_drift;
    std::vector<double> twist_drift;
    std::vector<double> orbital_distance;
    std::vector<double> best_shift;
    std::vector<double> lyapunov;
    Validity validity;
};

struct EvolveOptions {
    double T = 10.0;
    double dt = 0.0;             // 0 selects stable_dt
    double sample_every = 0.5;   // time between samples
    double K = 100.0;
    bool dealias = false;
    // Called with the state at every sample, after it is recorded.
    std::function<void(const HydroState&)> on_sample;
};

// Integrates from state0 to T. A frame violation ends the run and is recorded
// in the report's validity rather than thrown.
EvolutionReport evolve(HydroState state0, const SolitonProfile& profile, const EvolveOptions& options);

enum class PerturbationMode { AlongChiMinus, RandomSmooth, PsiQ };

std::string to_string(PerturbationMode m);
// Throws ValidationError for unknown names.
PerturbationMode parse_perturbation_mode(const std::string& name);

struct Perturbation {
    PerturbationMode mode = PerturbationMode::RandomSmooth;
    double amplitude = 1e-2;
    std::uint64_t seed = 1;
};

// Soliton plus perturbation.
//   along_chi_minus: amplitude * chi_-, with chi_- scaled to unit size in the
//     orbital metric ||.||_{H^1} + ||.||_{L^2}.
//   random_smooth: amplitude times seeded smooth fields added to eta and v,
//     scaled down if needed so min(1 - eta) stays above half its unperturbed value.
//   psi_q: the unstable-curve point at q = c + amplitude.
HydroState perturbed_state(const SolitonProfile& profile, const Perturbation& perturbation);

enum class DynamicVerdict { Bounded, Departing, Inconclusive, BlowupSuspect };

std::string to_string(DynamicVerdict v);

struct ExperimentResult {
    EvolutionReport report;
    DynamicVerdict verdict;
    double initial_distance;
    double max_distance;
};

// Grid used by stability experiments when none is supplied: n = 4096 on
// default_half_length; for kappa <= -10, dx = 0.1 on a box of half length
// at least 128.
Grid experiment_grid(const SolitonParams& p);

// Bounded if max distance <= 5x initial, departing if >= 10x initial before
// any frame violation, blowup-suspect if the frame breaks first, else
// inconclusive.
ExperimentResult stability_experiment(const SolitonParams& p, const Perturbation& perturbation, double T,
                                      std::optional<Grid> grid = std::nullopt,
                                      EvolveOptions options = {});

}  // namespace qgp
