#include "qgp/conserved.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "qgp/errors.hpp"
#include "qgp/parallel.hpp"
#include "qgp/profile.hpp"
#include "qgp/quadrature.hpp"

namespace qgp {

double energy(const GridFunction& eta, const GridFunction& v, double kappa) {
    if (!(eta.grid() == v.grid())) throw ValidationError("energy: grid mismatch");
    const GridFunction ex = derivative(eta, 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < eta.size(); ++j) {
        const double om = 1.0 - eta[j];
        if (!(om > 0.0)) throw FrameError("energy: eta >= 1", eta.grid().x(j));
        const double e2 = ex[j] * ex[j];
        sum += e2 / (4.0 * om) + v[j] * v[j] * om + 0.5 * (eta[j] * eta[j] - kappa * e2);
    }
    return sum * eta.grid().dx();
}

double momentum(const GridFunction& eta, const GridFunction& v) { return -dot(eta, v); }

double particles(const GridFunction& eta) { return -integrate(eta); }

double twist(const GridFunction& v) { return integrate(v); }

namespace {

constexpr double kQuadratureTolerance = 1e-10;

struct PhiPoint {
    double eta;
    double one_minus_eta;
    double d;  // 1 - 2 kappa (1 - eta)
    double s;
    double co;
};

// eta = eta0 sin^2 phi; 1 - eta is formed as c^2/2 + eta0 cos^2 phi to keep
// it accurate near the turning point when c is small.
PhiPoint at_phi(double phi, double c, double kappa) {
    const double top = peak_depth(c);
    const double s = std::sin(phi);
    const double co = std::cos(phi);
    PhiPoint q;
    q.eta = top * s * s;
    q.one_minus_eta = 0.5 * c * c + top * co * co;
    q.d = 1.0 - 2.0 * kappa * q.one_minus_eta;
    q.s = s;
    q.co = co;
    return q;
}

double checked(const QuadratureResult& r, const char* what, double c, double kappa) {
    if (r.error_estimate > kQuadratureTolerance * (1.0 + std::abs(r.value))) {
        std::ostringstream os;
        os << what << ": quadrature not converged at c = " << c << ", kappa = " << kappa
           << " (value " << r.value << ", error estimate " << r.error_estimate << ")";
        throw NumericalError(os.str());
    }
    return r.value;
}

double layer_scale(double c) { return std::max(0.5 * c, 1e-4); }

void validate_speed(double c, double kappa, bool allow_zero) {
    if (allow_zero && c == 0.0) {
        validate(SolitonParams{1.0, kappa});
        return;
    }
    validate(SolitonParams{c, kappa});
}

}  // namespace

double momentum_of_speed(double c, double kappa) {
    validate_speed(c, kappa, false);
    const double top = peak_depth(c);
    const double r = std::sqrt(2.0 * top);
    // P = c int_0^eta0 eta sqrt(D) / ((1 - eta) sqrt(2 - 2 eta - c^2)) d eta.
    auto f = [&](double phi) {
        const PhiPoint q = at_phi(phi, c, kappa);
        return c * q.eta * std::sqrt(q.d) * r * q.s / q.one_minus_eta;
    };
    return checked(graded_gauss(f, 0.0, 0.5 * std::numbers::pi, layer_scale(c)), "momentum_of_speed",
                   c, kappa);
}

double energy_of_speed(double c, double kappa) {
    validate_speed(c, kappa, true);
    const double top = peak_depth(c);
    const double r = std::sqrt(2.0 * top);
    // E = 2 int_0^eta0 [ sqrt(G) (1/(4(1-eta)) - kappa/2)
    //                   + (c^2 eta^2 / (4(1-eta)) + eta^2/2) / sqrt(G) ] d eta.
    auto f = [&](double phi) {
        const PhiPoint q = at_phi(phi, c, kappa);
        const double sd = std::sqrt(q.d);
        const double gradient = q.eta * r * q.co / sd * (0.25 / q.one_minus_eta - 0.5 * kappa) *
                                2.0 * top * q.s * q.co;
        const double potential =
            (c * c * q.eta / (4.0 * q.one_minus_eta) + 0.5 * q.eta) * sd * r * q.s;
        return 2.0 * (gradient + potential);
    };
    return checked(graded_gauss(f, 0.0, 0.5 * std::numbers::pi, layer_scale(c)), "energy_of_speed", c,
                   kappa);
}

double black_soliton_energy(double kappa) { return energy_of_speed(0.0, kappa); }

double black_soliton_momentum(double kappa) {
    const double c[3] = {0.05, 0.02, 0.01};
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        double weight = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j != i) weight *= c[j] / (c[j] - c[i]);
        }
        sum += weight * momentum_of_speed(c[i], kappa);
    }
    return sum;
}

namespace {

template <class F>
Slope richardson_slope(F&& f, double c, double kappa) {
    validate(SolitonParams{c, kappa});
    const double h = 1e-3 * std::min(c, std::numbers::sqrt2 - c);
    if (!(h > 1e-14) || !(c - h > 0.0)) {
        throw NumericalError("finite-difference step underflow at c = " + std::to_string(c));
    }
    const double coarse = (f(c + h, kappa) - f(c - h, kappa)) / (2.0 * h);
    const double fine = (f(c + 0.5 * h, kappa) - f(c - 0.5 * h, kappa)) / h;
    return {(4.0 * fine - coarse) / 3.0, std::abs(fine - coarse) / 3.0};
}

}  // namespace

Slope momentum_slope(double c, double kappa) {
    return richardson_slope([](double cc, double k) { return momentum_of_speed(cc, k); }, c, kappa);
}

Slope energy_slope(double c, double kappa) {
    return richardson_slope([](double cc, double k) { return energy_of_speed(cc, k); }, c, kappa);
}

namespace {

double slope_value(double c, double kappa) { return momentum_slope(c, kappa).value; }

// Root of dP/dc in [lo, hi] with dP/dc(lo) > 0 > dP/dc(hi): Newton with a
// finite-difference derivative, kept inside the bracket, then bisection.
double refine_slope_root(double kappa, double lo, double hi) {
    double f_lo = slope_value(lo, kappa);
    double f_hi = slope_value(hi, kappa);
    if (!(f_lo > 0.0 && f_hi < 0.0)) throw NumericalError("refine_slope_root: invalid bracket");
    double c = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double f = slope_value(c, kappa);
        if (std::abs(f) <= 1e-8) return c;
        if (f > 0.0) {
            lo = c;
        } else {
            hi = c;
        }
        const double d = 1e-4 * std::min(c, std::numbers::sqrt2 - c);
        const double fp = (slope_value(c + d, kappa) - slope_value(c - d, kappa)) / (2.0 * d);
        double next = c - f / fp;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        c = next;
    }
    for (int it = 0; it < 100; ++it) {
        c = 0.5 * (lo + hi);
        const double f = slope_value(c, kappa);
        if (std::abs(f) <= 1e-8 || hi - lo < 1e-13) return c;
        if (f > 0.0) {
            lo = c;
        } else {
            hi = c;
        }
    }
    throw NumericalError("refine_slope_root: no convergence for kappa = " + std::to_string(kappa));
}

// Geometric near 0 (where the sign change first appears), uniform above.
std::vector<double> scan_speeds() {
    std::vector<double> cs;
    for (int i = 0; i < 24; ++i) cs.push_back(1e-3 * std::pow(100.0, i / 24.0));
    for (int i = 0; i <= 26; ++i) cs.push_back(0.1 + 0.05 * i);
    return cs;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Degenerate: return "Degenerate";
    }
    return "?";
}

StabilityVerdict vk_classify(double c, double kappa, double tolerance) {
    const double s = momentum_slope(c, kappa).value;
    Verdict v = Verdict::Degenerate;
    if (s < -tolerance) {
        v = Verdict::Stable;
    } else if (s > tolerance) {
        v = Verdict::Unstable;
    }
    return {c, kappa, s, v, tolerance};
}

std::optional<double> find_c_tilde(double kappa) {
    validate(SolitonParams{1.0, kappa});
    const auto cs = scan_speeds();
    double prev_c = cs.front();
    double prev_f = slope_value(prev_c, kappa);
    for (std::size_t i = 1; i < cs.size(); ++i) {
        const double f = slope_value(cs[i], kappa);
        if (prev_f > 0.0 && f < 0.0) return refine_slope_root(kappa, prev_c, cs[i]);
        prev_c = cs[i];
        prev_f = f;
    }
    return std::nullopt;
}

bool has_unstable_band(double kappa) {
    for (double c : scan_speeds()) {
        if (slope_value(c, kappa) > 0.0) return true;
    }
    return false;
}

double find_kappa0() {
    double lo = -10.0;
    double hi = 0.0;
    while (!has_unstable_band(lo)) {
        lo *= 2.0;
        if (lo < -1e4) throw NumericalError("find_kappa0: no unstable band found down to kappa = -1e4");
    }
    if (has_unstable_band(hi)) throw NumericalError("find_kappa0: unstable band present at kappa = 0");
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (has_unstable_band(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<QStar> find_q_star(double kappa) {
    if (!(kappa <= 0.0)) throw ParameterError("find_q_star requires kappa <= 0");
    const double level = black_soliton_energy(kappa);
    const auto cusp = find_c_tilde(kappa);
    if (!cusp) return QStar{std::numbers::pi, 0.0, level, true};

    const double lo = *cusp;
    const double hi = std::numbers::sqrt2 * (1.0 - 1e-6);
    auto gap = [&](double c) { return energy_of_speed(c, kappa) - level; };
    if (!(gap(lo) > 0.0)) return std::nullopt;
    std::uintmax_t iterations = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) < 1e-13; };
    const auto [a, b] = boost::math::tools::toms748_solve(gap, lo, hi, tol, iterations);
    const double c_star = 0.5 * (a + b);
    return QStar{momentum_of_speed(c_star, kappa), c_star, level, false};
}

BranchCurve branch_curve(double kappa, double c_min, double c_max, int n_samples) {
    if (!(c_min > 0.0 && c_min < c_max && c_max < std::numbers::sqrt2)) {
        throw ParameterError("branch_curve requires 0 < c_min < c_max < sqrt(2)");
    }
    if (n_samples < 2) throw ParameterError("branch_curve needs at least two samples");
    validate(SolitonParams{c_min, kappa});

    BranchCurve curve{kappa, std::vector<BranchSample>(static_cast<std::size_t>(n_samples)), std::nullopt};
    parallel_for(curve.samples.size(), [&](std::size_t i) {
        const double c = c_min + (c_max - c_min) * static_cast<double>(i) / (n_samples - 1);
        curve.samples[i] = BranchSample{c, momentum_of_speed(c, kappa), energy_of_speed(c, kappa),
                                        momentum_slope(c, kappa).value, energy_slope(c, kappa).value};
    });
    for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
        if (curve.samples[i].dPdc > 0.0 && curve.samples[i + 1].dPdc < 0.0) {
            curve.cusp = refine_slope_root(kappa, curve.samples[i].c, curve.samples[i + 1].c);
            break;
        }
    }
    return curve;
}

std::string diagram_csv(const BranchCurve& curve, const io::Provenance& provenance) {
    using io::fmt17;
    std::ostringstream os;
    os << "# " << io::provenance_text(provenance) << "; *_half columns are E/2 and P/2\n";
    os << "# kappa=" << fmt17(curve.kappa)
       << " cusp=" << (curve.cusp ? fmt17(*curve.cusp) : std::string("none")) << '\n';
    os << "c,P,E,dPdc,dEdc,P_half,E_half\n";
    for (const auto& s : curve.samples) {
        os << fmt17(s.c) << ',' << fmt17(s.momentum) << ',' << fmt17(s.energy) << ',' << fmt17(s.dPdc)
           << ',' << fmt17(s.dEdc) << ',' << fmt17(0.5 * s.momentum) << ',' << fmt17(0.5 * s.energy)
           << '\n';
    }
    return os.str();
}

std::string diagram_svg(const BranchCurve& curve, const io::Provenance& provenance) {
    io::Plot plot;
    std::ostringstream title;
    title << "Energy-momentum diagram, kappa = " << curve.kappa;
    plot.title = title.str();
    plot.x_label = "P";
    plot.y_label = "E";
    io::Series s;
    for (const auto& b : curve.samples) {
        s.x.push_back(b.momentum);
        s.y.push_back(b.energy);
    }
    plot.series.push_back(std::move(s));
    if (curve.cusp) {
        char label[64];
        std::snprintf(label, sizeof label, "cusp c = %.4f", *curve.cusp);
        plot.markers.push_back({momentum_of_speed(*curve.cusp, curve.kappa),
                                energy_of_speed(*curve.cusp, curve.kappa), label});
    }
    const double level = black_soliton_energy(curve.kappa);
    char label[64];
    std::snprintf(label, sizeof label, "E(u0) = %.4f", level);
    plot.levels.push_back({level, label});
    return io::render_svg(plot, provenance);
}

void emit_diagram(const BranchCurve& curve, const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path, const io::Provenance& provenance) {
    if (curve.samples.empty()) throw ValidationError("emit_diagram: empty branch curve");
    const std::string csv = diagram_csv(curve, provenance);
    const std::string svg = diagram_svg(curve, provenance);
    io::write_text_file(csv_path, csv);
    io::write_text_file(svg_path, svg);
}

}  // namespace qgp
