#include "qgp/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qgp/errors.hpp"

namespace qgp {
namespace {

constexpr double kTailSwitch = 1e-10;
constexpr double kMinDecayLengths = 12.0;
constexpr double kDefaultDecayLengths = 28.0;

double denom(double eta, const SolitonParams& p) { return 1.0 - 2.0 * p.kappa * (1.0 - eta); }

// G without the range check; clamped at zero past the turning point.
double g_unchecked(double eta, const SolitonParams& p) {
    const double num = eta * eta * (2.0 - 2.0 * eta - p.c * p.c);
    return std::max(num, 0.0) / denom(eta, p);
}

double g_prime_unchecked(double eta, const SolitonParams& p) {
    const double s = 2.0 - 2.0 * eta - p.c * p.c;
    const double num = eta * eta * s;
    const double num_prime = 2.0 * eta * s - 2.0 * eta * eta;
    const double d = denom(eta, p);
    return (num_prime * d - 2.0 * p.kappa * num) / (d * d);
}

double velocity(double eta, double c) { return -c * eta / (2.0 * (1.0 - eta)); }

}  // namespace

void validate(const SolitonParams& p) {
    if (!std::isfinite(p.c) || !std::isfinite(p.kappa)) {
        throw ParameterError("soliton parameters must be finite");
    }
    if (!(p.c > 0.0 && p.c < std::numbers::sqrt2)) {
        std::ostringstream os;
        os << "wave speed c = " << p.c << " outside the admissible range (0, sqrt(2))";
        throw ParameterError(os.str());
    }
    if (!(p.kappa < 0.5)) {
        std::ostringstream os;
        os << "kappa = " << p.kappa << " outside the admissible range (-inf, 1/2)";
        throw ParameterError(os.str());
    }
}

double peak_depth(double c) { return 1.0 - 0.5 * c * c; }

double first_integral_rhs(double eta, const SolitonParams& p) {
    const double top = peak_depth(p.c);
    if (!(eta >= 0.0 && eta <= top)) {
        std::ostringstream os;
        os << "eta = " << eta << " outside [0, " << top << "]";
        throw DomainError(os.str());
    }
    return g_unchecked(eta, p);
}

double first_integral_rhs_derivative(double eta, const SolitonParams& p) {
    const double top = peak_depth(p.c);
    if (!(eta >= 0.0 && eta <= top)) throw DomainError("eta outside the profile range");
    return g_prime_unchecked(eta, p);
}

double decay_rate(const SolitonParams& p) {
    return std::sqrt((2.0 - p.c * p.c) / (1.0 - 2.0 * p.kappa));
}

double core_width(const SolitonParams& p) {
    const double top = peak_depth(p.c);
    return p.c * std::sqrt(1.0 - p.kappa * p.c * p.c) / top;
}

double default_half_length(const SolitonParams& p) {
    return std::ceil(kDefaultDecayLengths / decay_rate(p));
}

Grid default_grid(const SolitonParams& p, std::size_t n) {
    validate(p);
    return {default_half_length(p), n};
}

Grid resolved_grid(const SolitonParams& p, std::size_t n_min) {
    validate(p);
    const double half = default_half_length(p);
    const double width = std::min(core_width(p), 1.0 / decay_rate(p));
    std::size_t n = n_min;
    while (2.0 * half / static_cast<double>(n) > width / 16.0) n *= 2;
    return {half, n};
}

double SolitonProfile::tail() const { return std::max(eta[0], eta[eta.size() - 1]); }

SolitonProfile make_profile(const SolitonParams& p, GridFunction eta, GridFunction theta) {
    const Grid grid = eta.grid();
    GridFunction v(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!(eta[j] < 1.0)) throw FrameError("profile reaches eta >= 1", grid.x(j));
        v[j] = velocity(eta[j], p.c);
    }
    GridFunction eta_x = derivative(eta, 1);
    GridFunction eta_xx = derivative(eta, 2);
    return SolitonProfile{p,
                          grid,
                          std::move(eta),
                          std::move(v),
                          std::move(theta),
                          std::move(eta_x),
                          std::move(eta_xx)};
}

SolitonProfile solve_profile(const SolitonParams& p, const Grid& grid) {
    validate(p);
    const double rate = decay_rate(p);
    if (grid.half_length() < kMinDecayLengths / rate) {
        std::ostringstream os;
        os << "half-length " << grid.half_length() << " shorter than " << kMinDecayLengths
           << " decay lengths; use L >= " << default_half_length(p);
        throw TruncationError(os.str(), default_half_length(p));
    }

    const double top = peak_depth(p.c);
    const double dx = grid.dx();
    const double h_max = std::min(core_width(p), 1.0 / rate) / 40.0;
    const int substeps = std::max(8, static_cast<int>(std::ceil(dx / h_max)));
    const double h = dx / substeps;

    // Nodes x_k = k dx for k = 0..n/2 on the positive half line.
    const std::size_t half_nodes = grid.size() / 2 + 1;
    std::vector<double> eta_pos(half_nodes);
    std::vector<double> theta_pos(half_nodes);

    // Near the turning point integrate eta'' = G'(eta)/2 (smooth at eta0);
    // once eta < eta0/2 switch to eta' = -sqrt(G), which is stable toward 0.
    enum class Stage { turning, descent, tail };
    Stage stage = Stage::turning;
    double eta = top;
    double slope = 0.0;
    double theta = 0.0;
    double x = 0.0;
    double tail_x = 0.0;
    double tail_eta = 0.0;
    double tail_theta = 0.0;

    auto advance = [&](double step) {
        if (stage == Stage::turning) {
            auto f = [&](const std::array<double, 3>& y) {
                return std::array<double, 3>{y[1], 0.5 * g_prime_unchecked(y[0], p),
                                             velocity(y[0], p.c)};
            };
            std::array<double, 3> y{eta, slope, theta};
            auto k1 = f(y);
            std::array<double, 3> t;
            for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * step * k1[i];
            auto k2 = f(t);
            for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * step * k2[i];
            auto k3 = f(t);
            for (int i = 0; i < 3; ++i) t[i] = y[i] + step * k3[i];
            auto k4 = f(t);
            for (int i = 0; i < 3; ++i) y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            eta = y[0];
            slope = y[1];
            theta = y[2];
            if (eta < 0.5 * top) stage = Stage::descent;
        } else {
            auto f = [&](const std::array<double, 2>& y) {
                return std::array<double, 2>{-std::sqrt(g_unchecked(std::max(y[0], 0.0), p)),
                                             velocity(y[0], p.c)};
            };
            std::array<double, 2> y{eta, theta};
            auto k1 = f(y);
            std::array<double, 2> t;
            for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * step * k1[i];
            auto k2 = f(t);
            for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * step * k2[i];
            auto k3 = f(t);
            for (int i = 0; i < 2; ++i) t[i] = y[i] + step * k3[i];
            auto k4 = f(t);
            for (int i = 0; i < 2; ++i) y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            eta = y[0];
            theta = y[1];
        }
        x += step;
        if (stage != Stage::turning && eta <= kTailSwitch) {
            stage = Stage::tail;
            tail_x = x;
            tail_eta = eta;
            tail_theta = theta;
        }
    };

    eta_pos[0] = top;
    theta_pos[0] = 0.0;
    for (std::size_t k = 1; k < half_nodes; ++k) {
        const double x_node = static_cast<double>(k) * dx;
        if (stage != Stage::tail) {
            for (int s = 0; s < substeps && stage != Stage::tail; ++s) advance(h);
        }
        if (stage == Stage::tail) {
            // eta' = -rate eta, theta' = -c eta / (2 (1 - eta)) ~ -c eta / 2.
            const double decay = std::exp(-rate * (x_node - tail_x));
            eta_pos[k] = tail_eta * decay;
            theta_pos[k] = tail_theta - 0.5 * p.c * tail_eta / rate * (1.0 - decay);
        } else {
            eta_pos[k] = eta;
            theta_pos[k] = theta;
        }
    }

    GridFunction eta_f(grid);
    GridFunction theta_f(grid);
    const std::size_t mid = grid.center();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const std::size_t k = j >= mid ? j - mid : mid - j;
        eta_f[j] = eta_pos[k];
        theta_f[j] = j >= mid ? theta_pos[k] : -theta_pos[k];
    }
    return make_profile(p, std::move(eta_f), std::move(theta_f));
}

SolitonProfile analytic_gp_profile(double c, const Grid& grid) {
    const SolitonParams p{c, 0.0};
    validate(p);
    const double root = std::sqrt(2.0 - c * c);
    const double top = peak_depth(c);
    auto eta = GridFunction::from(grid, [&](double x) {
        const double s = 1.0 / std::cosh(0.5 * root * x);
        return top * s * s;
    });
    auto theta = GridFunction::from(
        grid, [&](double x) { return -std::atan(root * std::tanh(0.5 * root * x) / c); });
    return make_profile(p, std::move(eta), std::move(theta));
}

double residual_ode(const GridFunction& eta, const SolitonParams& p) {
    const GridFunction e1 = derivative(eta, 1);
    const GridFunction e2 = derivative(eta, 2);
    const double c2 = p.c * p.c;
    double worst = 0.0;
    for (std::size_t j = 0; j < eta.size(); ++j) {
        const double n = eta[j];
        const double om = 1.0 - n;
        if (!(om > 0.0)) throw FrameError("eta >= 1 in residual", eta.grid().x(j));
        const double a = (1.0 - 2.0 * p.kappa + 2.0 * p.kappa * n) / (2.0 * om);
        const double r = -a * e2[j] - e1[j] * e1[j] / (4.0 * om * om) + n +
                         c2 * (n * n - 2.0 * n) / (4.0 * om * om);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double residual_ode(const SolitonProfile& profile) { return residual_ode(profile.eta, profile.params); }

double first_integral_defect(const SolitonProfile& profile) {
    double worst = 0.0;
    const double top = peak_depth(profile.params.c);
    for (std::size_t j = 0; j < profile.eta.size(); ++j) {
        const double n = std::clamp(profile.eta[j], 0.0, top);
        const double d = profile.eta_x[j] * profile.eta_x[j] - first_integral_rhs(n, profile.params);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

}  // namespace qgp
