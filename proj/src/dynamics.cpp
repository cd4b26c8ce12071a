#include "qgp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgp/conserved.hpp"
#include "qgp/errors.hpp"
#include "qgp/random_field.hpp"
#include "qgp/spectral.hpp"

namespace qgp {
namespace {

using Spectrum = std::vector<std::complex<double>>;

double relative_change(double value, double reference) {
    const double scale = std::abs(reference);
    return scale > 0.0 ? (value - reference) / scale : value - reference;
}

// Half-spectrum Parseval weights: 1 for the mean and Nyquist modes, else 2.
double parseval_weight(std::size_t m, std::size_t n) { return (m == 0 || m == n / 2) ? 1.0 : 2.0; }

}  // namespace

void check_frame(const HydroState& s) {
    const Grid& g = s.eta.grid();
    const bool bounded_above = s.kappa > 0.0 && s.kappa < 0.5;
    const double upper = bounded_above ? 1.0 / (2.0 * s.kappa) : 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double om = 1.0 - s.eta[j];
        if (!std::isfinite(s.eta[j]) || !std::isfinite(s.v[j])) {
            throw FrameError("non-finite state", g.x(j));
        }
        if (!(om > 0.0)) {
            std::ostringstream os;
            os << "frame violation: eta >= 1 at x = " << g.x(j) << ", t = " << s.t;
            throw FrameError(os.str(), g.x(j));
        }
        if (bounded_above && !(om < upper)) {
            std::ostringstream os;
            os << "frame violation: |psi|^2 = " << om << " outside (0, 1/(2 kappa)) at x = " << g.x(j)
               << ", t = " << s.t;
            throw FrameError(os.str(), g.x(j));
        }
    }
}

HydroRhs::HydroRhs(const Grid& grid, bool dealias)
    : grid_(grid),
      fft_(grid.size()),
      dealias_(dealias),
      spec_(fft_.spectrum_size()),
      work_(fft_.spectrum_size()),
      eta_x_(grid.size()),
      eta_xx_(grid.size()),
      flux_(grid.size()),
      pressure_(grid.size()) {}

void HydroRhs::differentiate(std::vector<double>& data, int order) {
    fft_.forward(data, spec_);
    apply_derivative_symbol(spec_, grid_.size(), 2.0 * grid_.half_length(), order);
    if (dealias_) {
        for (std::size_t m = grid_.size() / 3; m < spec_.size(); ++m) spec_[m] = 0.0;
    }
    fft_.inverse_destroy(spec_, data);
}

void HydroRhs::operator()(const HydroState& s, HydroRate& out) {
    check_frame(s);
    const std::size_t n = grid_.size();
    const double period = 2.0 * grid_.half_length();

    fft_.forward(s.eta.values(), spec_);
    work_ = spec_;
    apply_derivative_symbol(work_, n, period, 1);
    if (dealias_) std::fill(work_.begin() + static_cast<std::ptrdiff_t>(n / 3), work_.end(), 0.0);
    fft_.inverse_destroy(work_, eta_x_);
    apply_derivative_symbol(spec_, n, period, 2);
    if (dealias_) std::fill(spec_.begin() + static_cast<std::ptrdiff_t>(n / 3), spec_.end(), 0.0);
    fft_.inverse_destroy(spec_, eta_xx_);

    const double kappa = s.kappa;
    for (std::size_t j = 0; j < n; ++j) {
        const double eta = s.eta[j];
        const double v = s.v[j];
        const double om = 1.0 - eta;
        flux_[j] = 2.0 * v * om;
        pressure_[j] = eta_xx_[j] / (2.0 * om) + eta_x_[j] * eta_x_[j] / (4.0 * om * om) + v * v - eta -
                       kappa * eta_xx_[j];
    }
    differentiate(flux_, 1);
    differentiate(pressure_, 1);

    auto et = out.eta_t.values();
    auto vt = out.v_t.values();
    for (std::size_t j = 0; j < n; ++j) {
        et[j] = flux_[j];
        vt[j] = -pressure_[j];
    }
}

HydroRate HydroRhs::operator()(const HydroState& s) {
    HydroRate out{GridFunction(grid_), GridFunction(grid_)};
    (*this)(s, out);
    return out;
}

HydroRate rhs(const HydroState& state) {
    HydroRhs f(state.eta.grid());
    return f(state);
}

double stable_dt(const Grid& grid, double kappa) {
    if (!(kappa < 0.5)) throw ParameterError("stable_dt: kappa must be < 1/2");
    const double k = grid.k_max();
    const double omega = std::sqrt(2.0 * k * k + (1.0 - 2.0 * kappa) * k * k * k * k);
    return 0.5 * 2.8 / omega;
}

Rk4Stepper::Rk4Stepper(const Grid& grid, bool dealias)
    : rhs_(grid, dealias),
      k1_{GridFunction(grid), GridFunction(grid)},
      k2_{GridFunction(grid), GridFunction(grid)},
      k3_{GridFunction(grid), GridFunction(grid)},
      k4_{GridFunction(grid), GridFunction(grid)},
      stage_{0.0, GridFunction(grid), GridFunction(grid), 0.0} {}

void Rk4Stepper::step(HydroState& s, double dt) {
    const std::size_t n = s.eta.size();
    stage_.kappa = s.kappa;
    auto stage = [&](const HydroRate& k, double h, int index) {
        stage_.t = s.t + h;
        for (std::size_t j = 0; j < n; ++j) {
            stage_.eta[j] = s.eta[j] + h * k.eta_t[j];
            stage_.v[j] = s.v[j] + h * k.v_t[j];
        }
        (void)index;
    };
    auto guarded = [&](const HydroState& at, HydroRate& k, int index) {
        try {
            rhs_(at, k);
        } catch (const FrameError& e) {
            throw FrameError("RK4 stage " + std::to_string(index) + ": " + e.what(), e.position());
        }
    };
    guarded(s, k1_, 1);
    stage(k1_, 0.5 * dt, 2);
    guarded(stage_, k2_, 2);
    stage(k2_, 0.5 * dt, 3);
    guarded(stage_, k3_, 3);
    stage(k3_, dt, 4);
    guarded(stage_, k4_, 4);
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < n; ++j) {
        s.eta[j] += w * (k1_.eta_t[j] + 2.0 * k2_.eta_t[j] + 2.0 * k3_.eta_t[j] + k4_.eta_t[j]);
        s.v[j] += w * (k1_.v_t[j] + 2.0 * k2_.v_t[j] + 2.0 * k3_.v_t[j] + k4_.v_t[j]);
    }
    s.t += dt;
}

HydroState step_rk4(const HydroState& state, double dt) {
    if (!(dt > 0.0)) throw ValidationError("step_rk4: dt must be positive");
    HydroState out = state;
    Rk4Stepper stepper(state.eta.grid());
    stepper.step(out, dt);
    return out;
}

OrbitTracker::OrbitTracker(const SolitonProfile& profile)
    : grid_(profile.grid), fft_(profile.grid.size()), eta_hat_(fft_.spectrum_size()), v_hat_(fft_.spectrum_size()) {
    fft_.forward(profile.eta.values(), eta_hat_);
    fft_.forward(profile.v.values(), v_hat_);
}

double OrbitTracker::distance_at(const Spectrum& f_eta, const Spectrum& f_v, double s) const {
    const std::size_t n = grid_.size();
    const std::size_t nyquist = n / 2;
    double a = 0.0;
    double b = 0.0;
    for (std::size_t m = 0; m < f_eta.size(); ++m) {
        const double k = grid_.wavenumber(m);
        const double phase = -k * s;
        const std::complex<double> rot =
            m == nyquist ? std::complex<double>(std::cos(phase), 0.0) : std::polar(1.0, phase);
        const double w = parseval_weight(m, n);
        const double sobolev = m == nyquist ? 1.0 : 1.0 + k * k;
        a += w * sobolev * std::norm(f_eta[m] - eta_hat_[m] * rot);
        b += w * std::norm(f_v[m] - v_hat_[m] * rot);
    }
    const double scale = grid_.dx() / static_cast<double>(n);
    return std::sqrt(a * scale) + std::sqrt(b * scale);
}

OrbitalFit OrbitTracker::operator()(const GridFunction& eta, const GridFunction& v) const {
    if (!(eta.grid() == grid_) || !(v.grid() == grid_)) throw ValidationError("orbital_distance: grid mismatch");
    const std::size_t n = grid_.size();
    const std::size_t nyquist = n / 2;
    Spectrum f_eta(fft_.spectrum_size());
    Spectrum f_v(fft_.spectrum_size());
    fft_.forward(eta.values(), f_eta);
    fft_.forward(v.values(), f_v);

    // Coarse scan over node shifts s_j = j dx via cross-correlation.
    double norms_a = 0.0;
    double norms_b = 0.0;
    Spectrum cross_a(f_eta.size());
    Spectrum cross_b(f_eta.size());
    for (std::size_t m = 0; m < f_eta.size(); ++m) {
        const double k = grid_.wavenumber(m);
        const double w = parseval_weight(m, n);
        const double sobolev = m == nyquist ? 1.0 : 1.0 + k * k;
        norms_a += w * sobolev * (std::norm(f_eta[m]) + std::norm(eta_hat_[m]));
        norms_b += w * (std::norm(f_v[m]) + std::norm(v_hat_[m]));
        cross_a[m] = sobolev * f_eta[m] * std::conj(eta_hat_[m]);
        cross_b[m] = f_v[m] * std::conj(v_hat_[m]);
    }
    std::vector<double> corr_a(n);
    std::vector<double> corr_b(n);
    fft_.inverse_destroy(cross_a, corr_a);
    fft_.inverse_destroy(cross_b, corr_b);
    const double scale = grid_.dx() / static_cast<double>(n);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        // The c2r inverse divides by n; undo that to recover the Parseval sums.
        const double a = std::max(0.0, scale * (norms_a - 2.0 * static_cast<double>(n) * corr_a[j]));
        const double b = std::max(0.0, scale * (norms_b - 2.0 * static_cast<double>(n) * corr_b[j]));
        const double d = std::sqrt(a) + std::sqrt(b);
        if (d < best_value) {
            best_value = d;
            best = j;
        }
    }
    const double period = 2.0 * grid_.half_length();
    double s0 = static_cast<double>(best) * grid_.dx();
    if (s0 >= grid_.half_length()) s0 -= period;

    // Golden-section refinement on [s0 - dx, s0 + dx].
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = s0 - grid_.dx();
    double hi = s0 + grid_.dx();
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = distance_at(f_eta, f_v, x1);
    double f2 = distance_at(f_eta, f_v, x2);
    while (hi - lo > 1e-12 * (1.0 + std::abs(s0))) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = distance_at(f_eta, f_v, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = distance_at(f_eta, f_v, x2);
        }
    }
    OrbitalFit fit{distance_at(f_eta, f_v, s0), s0};
    const double mid = 0.5 * (lo + hi);
    const double f_mid = distance_at(f_eta, f_v, mid);
    if (f_mid < fit.distance) fit = {f_mid, mid};
    return fit;
}

OrbitalFit orbital_distance(const HydroState& state, const SolitonProfile& profile) {
    return OrbitTracker(profile)(state.eta, state.v);
}

double lyapunov(const HydroState& state, const SolitonProfile& profile, double K) {
    const double c = profile.params.c;
    const double p = momentum(state.eta, state.v);
    const double pc = momentum(profile.eta, profile.v);
    const double e = energy(state.eta, state.v, state.kappa);
    const double ec = energy(profile.eta, profile.v, profile.params.kappa);
    return (e - c * p) - (ec - c * pc) + K * (p - pc) * (p - pc);
}

EvolutionReport evolve(HydroState state, const SolitonProfile& profile, const EvolveOptions& options) {
    if (!(options.T >= 0.0) || !std::isfinite(options.T)) throw ValidationError("evolve: T must be >= 0");
    if (!(options.dt >= 0.0)) throw ValidationError("evolve: dt must be >= 0");
    if (!(options.sample_every > 0.0)) throw ValidationError("evolve: sample_every must be positive");
    if (!(state.eta.grid() == profile.grid)) throw ValidationError("evolve: state and profile grids differ");
    check_frame(state);

    const Grid& grid = profile.grid;
    const double dt_max = options.dt > 0.0 ? options.dt : stable_dt(grid, state.kappa);
    const auto steps = static_cast<std::size_t>(std::ceil(options.T / dt_max - 1e-9));
    const double dt = steps > 0 ? options.T / static_cast<double>(steps) : dt_max;
    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.sample_every / dt)));

    EvolutionReport report;
    report.dt = dt;
    const double e0 = energy(state.eta, state.v, state.kappa);
    const double p0 = momentum(state.eta, state.v);
    const double n0 = particles(state.eta);
    const double th0 = twist(state.v);
    const OrbitTracker tracker(profile);
    const double t0 = state.t;

    auto sample = [&] {
        report.times.push_back(state.t);
        report.energy_drift.push_back(relative_change(energy(state.eta, state.v, state.kappa), e0));
        report.momentum_drift.push_back(relative_change(momentum(state.eta, state.v), p0));
        report.particles_drift.push_back(relative_change(particles(state.eta), n0));
        report.twist_drift.push_back(relative_change(twist(state.v), th0));
        const OrbitalFit fit = tracker(state.eta, state.v);
        report.orbital_distance.push_back(fit.distance);
        report.best_shift.push_back(fit.best_shift);
        report.lyapunov.push_back(lyapunov(state, profile, options.K));
        if (options.on_sample) options.on_sample(state);
    };

    sample();
    Rk4Stepper stepper(grid, options.dealias);
    for (std::size_t i = 1; i <= steps; ++i) {
        try {
            stepper.step(state, dt);
            if (i == steps) state.t = t0 + options.T;
            if (i % stride == 0 || i == steps) {
                check_frame(state);
                sample();
            }
        } catch (const FrameError& e) {
            report.validity = {false, state.t, e.position(), e.what()};
            break;
        }
    }
    return report;
}

std::string to_string(PerturbationMode m) {
    switch (m) {
        case PerturbationMode::AlongChiMinus: return "along_chi_minus";
        case PerturbationMode::RandomSmooth: return "random_smooth";
        case PerturbationMode::PsiQ: return "psi_q";
    }
    return "unknown";
}

PerturbationMode parse_perturbation_mode(const std::string& name) {
    if (name == "along_chi_minus") return PerturbationMode::AlongChiMinus;
    if (name == "random_smooth") return PerturbationMode::RandomSmooth;
    if (name == "psi_q") return PerturbationMode::PsiQ;
    throw ValidationError("unknown perturbation mode '" + name + "' (expected along_chi_minus, random_smooth or psi_q)");
}

HydroState perturbed_state(const SolitonProfile& profile, const Perturbation& pert) {
    if (!std::isfinite(pert.amplitude)) throw ValidationError("perturbation amplitude must be finite");
    const double kappa = profile.params.kappa;
    switch (pert.mode) {
        case PerturbationMode::AlongChiMinus: {
            const Direction chi = negative_direction(profile);
            const double scale = pert.amplitude / (norm_h1(chi.eta) + norm_l2(chi.v));
            HydroState s{0.0, profile.eta + scale * chi.eta, profile.v + scale * chi.v, kappa};
            check_frame(s);
            return s;
        }
        case PerturbationMode::RandomSmooth: {
            const GridFunction f_eta = random_smooth_field(profile.grid, {pert.seed});
            const GridFunction f_v = random_smooth_field(profile.grid, {pert.seed + 0x9e3779b97f4a7c15ULL});
            double amp = pert.amplitude;
            const double floor = 0.5 * (1.0 - profile.eta.max());
            for (int tries = 0; tries < 60; ++tries) {
                GridFunction eta = profile.eta + amp * f_eta;
                if (1.0 - eta.max() > floor) break;
                amp *= 0.5;
            }
            HydroState s{0.0, profile.eta + amp * f_eta, profile.v + amp * f_v, kappa};
            check_frame(s);
            return s;
        }
        case PerturbationMode::PsiQ: {
            const Direction chi = negative_direction(profile);
            const CurvePoint pt = unstable_curve(profile, chi, profile.params.c + pert.amplitude);
            HydroState s{0.0, pt.eta, pt.v, kappa};
            check_frame(s);
            return s;
        }
    }
    throw ValidationError("unknown perturbation mode");
}

std::string to_string(DynamicVerdict v) {
    switch (v) {
        case DynamicVerdict::Bounded: return "bounded";
        case DynamicVerdict::Departing: return "departing";
        case DynamicVerdict::Inconclusive: return "inconclusive";
        case DynamicVerdict::BlowupSuspect: return "blowup_suspect";
    }
    return "unknown";
}

Grid experiment_grid(const SolitonParams& p) {
    validate(p);
    if (p.kappa > -10.0) return default_grid(p, 4096);
    const double L = std::max(default_half_length(p), 128.0);
    return Grid(L, 2 * static_cast<std::size_t>(std::ceil(L / 0.1)));
}

ExperimentResult stability_experiment(const SolitonParams& p, const Perturbation& perturbation, double T,
                                      std::optional<Grid> grid, EvolveOptions options) {
    validate(p);
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("stability_experiment: T must be positive");
    const Grid g = grid ? *grid : experiment_grid(p);
    const SolitonProfile profile = solve_profile(p, g);
    const HydroState s0 = perturbed_state(profile, perturbation);
    options.T = T;
    EvolutionReport report = evolve(s0, profile, options);

    const double d0 = report.orbital_distance.front();
    const double dmax = *std::max_element(report.orbital_distance.begin(), report.orbital_distance.end());
    DynamicVerdict verdict = DynamicVerdict::Inconclusive;
    if (!(d0 > 0.0)) {
        if (!report.validity.ok) verdict = DynamicVerdict::BlowupSuspect;
    } else if (dmax >= 10.0 * d0) {
        verdict = DynamicVerdict::Departing;
    } else if (!report.validity.ok) {
        verdict = DynamicVerdict::BlowupSuspect;
    } else if (dmax <= 5.0 * d0) {
        verdict = DynamicVerdict::Bounded;
    }
    return {std::move(report), verdict, d0, dmax};
}

}  // namespace qgp
