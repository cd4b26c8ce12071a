#include "qgp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgp/conserved.hpp"
#include "qgp/errors.hpp"

namespace qgp {
namespace {

double coefficient_a(double eta, double kappa) {
    return (1.0 - 2.0 * kappa + 2.0 * kappa * eta) / (2.0 * (1.0 - eta));
}

double potential_w(double eta, double ex, double exx, double c2) {
    const double om = 1.0 - eta;
    const double om2 = om * om;
    const double om3 = om2 * om;
    return -exx / (2.0 * om2) - ex * ex / (2.0 * om3) + 1.0 - c2 / (2.0 * om3);
}

// Nodal a and w, plus a tridiagonal matrix that is the P1 finite-element
// stiffness matrix with element integrals of a and w done by 3-point Gauss
// (coefficients Fourier-interpolated), divided by dx (lumped mass). Element
// n-1 wraps periodically and also serves as the Dirichlet ghost element on
// both ends.
OperatorLc build(const SolitonParams& p, const GridFunction& eta, const GridFunction& ex,
                 const GridFunction& exx) {
    const Grid& g = eta.grid();
    const std::size_t n = g.size();
    const double c2 = p.c * p.c;
    GridFunction a(g);
    GridFunction w(g);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(eta[j] < 1.0)) throw FrameError("assemble_lc: eta >= 1", g.x(j));
        a[j] = coefficient_a(eta[j], p.kappa);
        if (!(a[j] > 0.0)) {
            std::ostringstream os;
            os << "assemble_lc: non-positive divergence coefficient at x = " << g.x(j)
               << " (requires kappa < 1/2)";
            throw ParameterError(os.str());
        }
        w[j] = potential_w(eta[j], ex[j], exx[j], c2);
    }

    const double dx = g.dx();
    const double r = std::sqrt(0.6) / 2.0;
    const double nodes[3] = {0.5 - r, 0.5, 0.5 + r};
    const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    std::vector<double> a_bar(n, 0.0), w00(n, 0.0), w11(n, 0.0), w01(n, 0.0);
    for (int q = 0; q < 3; ++q) {
        const double t = nodes[q];
        const double s = -t * dx;
        const GridFunction e_q = shift(eta, s);
        const GridFunction ex_q = shift(ex, s);
        const GridFunction exx_q = shift(exx, s);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(e_q[j] < 1.0)) throw FrameError("assemble_lc: eta >= 1", g.x(j) + t * dx);
            const double aq = coefficient_a(e_q[j], p.kappa);
            if (!(aq > 0.0)) throw ParameterError("assemble_lc: non-positive divergence coefficient");
            const double wq = potential_w(e_q[j], ex_q[j], exx_q[j], c2);
            a_bar[j] += weights[q] * aq;
            w00[j] += weights[q] * wq * (1.0 - t) * (1.0 - t);
            w11[j] += weights[q] * wq * t * t;
            w01[j] += weights[q] * wq * t * (1.0 - t);
        }
    }

    const double inv_dx2 = 1.0 / (dx * dx);
    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t left = j > 0 ? j - 1 : n - 1;
        diag[j] = (a_bar[left] + a_bar[j]) * inv_dx2 + w11[left] + w00[j];
        if (j + 1 < n) off[j] = -a_bar[j] * inv_dx2 + w01[j];
    }
    return OperatorLc{g, p.c, p.kappa, std::move(a), std::move(w),
                      SymTridiagonal(std::move(diag), std::move(off))};
}

GridFunction to_grid_function(const Grid& g, std::vector<double> v) { return {g, std::move(v)}; }

// Unit L2 norm and positive at the largest-magnitude node.
void normalise(GridFunction& f) {
    const double norm = norm_l2(f);
    if (!(norm > 0.0)) throw NumericalError("cannot normalise a zero vector");
    std::size_t arg = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (std::abs(f[j]) > std::abs(f[arg])) arg = j;
    }
    f *= (f[arg] < 0.0 ? -1.0 : 1.0) / norm;
}

}  // namespace

double OperatorLc::boundary_potential_defect() const {
    return std::max(std::abs(w[0] - essential_edge()), std::abs(w[w.size() - 1] - essential_edge()));
}

OperatorLc assemble_lc(const SolitonProfile& profile) {
    return build(profile.params, profile.eta, profile.eta_x, profile.eta_xx);
}

OperatorLc assemble_lc(const SolitonParams& params, const GridFunction& eta) {
    validate(params);
    return build(params, eta, derivative(eta, 1), derivative(eta, 2));
}

GridFunction apply_lc(const OperatorLc& op, const GridFunction& f) {
    return to_grid_function(op.grid, op.matrix.apply(f.values()));
}

GridFunction apply_lc_spectral(const OperatorLc& op, const GridFunction& f) {
    GridFunction flux = op.a * derivative(f, 1);
    GridFunction out = derivative(flux, 1);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = -out[j] + op.w[j] * f[j];
    return out;
}

double lc_form(const OperatorLc& op, const GridFunction& f) {
    const GridFunction d = derivative(f, 1);
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += op.a[j] * d[j] * d[j] + op.w[j] * f[j] * f[j];
    return s * op.grid.dx();
}

std::size_t count_negative_eigenvalues(const OperatorLc& op) { return op.matrix.count_below(0.0); }

std::vector<EigenPair> eigenpairs_below(const OperatorLc& op, double edge, double margin) {
    const std::size_t count = op.matrix.count_below(edge - margin);
    std::vector<EigenPair> pairs;
    std::vector<std::vector<double>> previous;
    for (std::size_t k = 0; k < count; ++k) {
        const double value = op.matrix.eigenvalue(k);
        auto vec = op.matrix.eigenvector(value, previous);
        previous.push_back(vec);
        GridFunction f = to_grid_function(op.grid, std::move(vec));
        normalise(f);
        pairs.push_back({value, std::move(f)});
    }
    return pairs;
}

EigenPair refine_ground_state(const OperatorLc& op, const EigenPair& start, double next_eigenvalue) {
    // Preconditioned steepest descent on the Rayleigh quotient of the spectral
    // operator, with (T - shift)^{-1} as preconditioner and a 2x2
    // Rayleigh-Ritz step on span{x, B^{-1} r}.
    const double gap = std::max(next_eigenvalue - start.value, 1e-3);
    const double shift = start.value - 0.25 * gap;
    GridFunction x = start.vector;
    normalise(x);
    GridFunction ax = apply_lc_spectral(op, x);
    double rho = dot(ax, x);
    double residual = 0.0;
    for (int it = 0; it < 500; ++it) {
        GridFunction r = ax - rho * x;
        residual = norm_l2(r);
        if (residual < 1e-11 * (1.0 + std::abs(rho))) break;
        GridFunction p = to_grid_function(op.grid, op.matrix.solve_shifted(shift, r.values()));
        p -= dot(p, x) * x;
        const double pn = norm_l2(p);
        if (!(pn > 0.0)) break;
        p *= 1.0 / pn;
        const GridFunction ap = apply_lc_spectral(op, p);
        const double a11 = rho;
        const double a12 = dot(ax, p);
        const double a22 = dot(ap, p);
        const double mean = 0.5 * (a11 + a22);
        const double half = 0.5 * (a11 - a22);
        const double lambda = mean - std::hypot(half, a12);
        double alpha = a12;
        double beta = lambda - a11;
        if (std::abs(lambda - a22) > std::abs(beta)) {
            alpha = lambda - a22;
            beta = a12;
        }
        const double nrm = std::hypot(alpha, beta);
        if (!(nrm > 0.0)) break;
        alpha /= nrm;
        beta /= nrm;
        x = alpha * x + beta * p;
        ax = alpha * ax + beta * ap;
        const double xn = norm_l2(x);
        x *= 1.0 / xn;
        ax *= 1.0 / xn;
        rho = dot(ax, x);
    }
    if (!(residual < 1e-7 * (1.0 + std::abs(rho)))) {
        throw NumericalError("refine_ground_state: no convergence (residual " + std::to_string(residual) + ")");
    }
    const double sign = [&] {
        std::size_t arg = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (std::abs(x[j]) > std::abs(x[arg])) arg = j;
        }
        return x[arg] < 0.0 ? -1.0 : 1.0;
    }();
    x *= sign;
    return {dot(apply_lc_spectral(op, x), x), std::move(x)};
}

SpectrumReport analyze_spectrum(const SolitonProfile& profile) {
    const OperatorLc op = assemble_lc(profile);
    const double edge = op.essential_edge();
    SpectrumReport rep{0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, edge, 0.0, {}, GridFunction(op.grid), {}};
    rep.negative_count = count_negative_eigenvalues(op);
    rep.eigenpairs = eigenpairs_below(op, edge);
    for (const auto& e : rep.eigenpairs) {
        rep.discrete_eigenvalues.push_back(e.value);
        if (e.value < 0.0) ++rep.negative_count_listed;
    }
    if (rep.negative_count == 0) throw NumericalError("analyze_spectrum: no negative eigenvalue found");

    // Eigenvalue nearest zero and the one above it.
    const std::size_t k_neg = rep.negative_count - 1;
    const std::size_t k_pos = rep.negative_count;
    const double below = op.matrix.eigenvalue(k_neg);
    const double above = op.matrix.eigenvalue(k_pos);
    const std::size_t k_zero = (rep.negative_count > 1 && std::abs(below) < std::abs(above)) ? k_neg : k_pos;
    rep.mu_zero = op.matrix.eigenvalue(k_zero);
    rep.spectral_gap = op.matrix.eigenvalue(k_zero + 1);

    std::vector<std::vector<double>> previous;
    for (std::size_t k = 0; k < k_zero; ++k) {
        if (k < rep.eigenpairs.size()) {
            std::vector<double> v(rep.eigenpairs[k].vector.values().begin(),
                                  rep.eigenpairs[k].vector.values().end());
            double nrm = 0.0;
            for (double t : v) nrm += t * t;
            for (double& t : v) t /= std::sqrt(nrm);
            previous.push_back(std::move(v));
        }
    }
    GridFunction e_zero = to_grid_function(op.grid, op.matrix.eigenvector(rep.mu_zero, previous));
    normalise(e_zero);

    GridFunction tangent = profile.eta_x;
    const double tn = norm_l2(tangent);
    rep.kernel_residual = norm_l2(apply_lc(op, tangent)) / tn;
    rep.kernel_overlap = std::abs(dot(e_zero, tangent)) / tn;

    const EigenPair ground{op.matrix.eigenvalue(0), rep.eigenpairs.empty() ? e_zero : rep.eigenpairs[0].vector};
    rep.mu_minus_matrix = ground.value;
    const double next = rep.negative_count > 1 ? op.matrix.eigenvalue(1) : rep.mu_zero;
    EigenPair refined = refine_ground_state(op, ground, next);
    rep.mu_minus = refined.value;
    rep.chi1 = std::move(refined.vector);
    return rep;
}

double hessian_full(const SolitonProfile& profile, const GridFunction& d_eta, const GridFunction& d_v) {
    const auto& eta = profile.eta;
    const auto& v = profile.v;
    const double c = profile.params.c;
    const double kappa = profile.params.kappa;
    GridFunction q(profile.grid);
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double om = 1.0 - eta[j];
        q[j] = profile.eta_x[j] / (2.0 * om * om);
    }
    const GridFunction dq = derivative(q, 1);
    const GridFunction dd = derivative(d_eta, 1);
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double om = 1.0 - eta[j];
        const double a = (1.0 - 2.0 * kappa + 2.0 * kappa * eta[j]) / (2.0 * om);
        const double de = d_eta[j];
        const double dv = d_v[j];
        const double ex = profile.eta_x[j];
        s += a * dd[j] * dd[j];
        s += -dq[j] * de * de;
        s += ex * ex / (2.0 * om * om * om) * de * de + de * de;
        s += -4.0 * v[j] * dv * de + 2.0 * om * dv * dv + 2.0 * c * dv * de;
    }
    return s * profile.grid.dx();
}

double hessian_reduced(const SolitonProfile& profile, const GridFunction& d_eta, const GridFunction& d_v) {
    const OperatorLc op = assemble_lc(profile);
    const double c = profile.params.c;
    double square = 0.0;
    for (std::size_t j = 0; j < d_eta.size(); ++j) {
        const double om = 1.0 - profile.eta[j];
        const double t = d_v[j] + c * d_eta[j] / (2.0 * om * om);
        square += 2.0 * om * t * t;
    }
    return lc_form(op, d_eta) + square * profile.grid.dx();
}

Direction negative_direction(const SolitonProfile& profile, const SpectrumReport& report) {
    GridFunction chi_eta = report.chi1;
    GridFunction chi_v(profile.grid);
    for (std::size_t j = 0; j < chi_v.size(); ++j) {
        const double om = 1.0 - profile.eta[j];
        chi_v[j] = -profile.params.c / (2.0 * om * om) * chi_eta[j];
    }
    return {std::move(chi_eta), std::move(chi_v)};
}

Direction negative_direction(const SolitonProfile& profile) {
    return negative_direction(profile, analyze_spectrum(profile));
}

Direction speed_tangent(const SolitonParams& params, const Grid& grid, double h) {
    const SolitonProfile plus = solve_profile({params.c + h, params.kappa}, grid);
    const SolitonProfile minus = solve_profile({params.c - h, params.kappa}, grid);
    GridFunction d_eta = (1.0 / (2.0 * h)) * (plus.eta - minus.eta);
    GridFunction d_v = (1.0 / (2.0 * h)) * (plus.v - minus.v);
    return {std::move(d_eta), std::move(d_v)};
}

CurvePoint unstable_curve(const SolitonProfile& profile, const Direction& chi_minus, double q) {
    const double c = profile.params.c;
    if (!(std::abs(q - c) < 0.05)) throw ParameterError("unstable_curve: q must lie within 0.05 of c");
    const SolitonProfile at_q = q == c ? profile : solve_profile({q, profile.params.kappa}, profile.grid);

    const double target = momentum(profile.eta, profile.v);
    // P(eta_q + l chi1, v_q + l chi2) = A l^2 + B l + P_q.
    const double quad_a = -dot(chi_minus.eta, chi_minus.v);
    const double quad_b = -(dot(at_q.eta, chi_minus.v) + dot(at_q.v, chi_minus.eta));
    const double quad_c = momentum(at_q.eta, at_q.v) - target;
    double l = 0.0;
    if (quad_c != 0.0) {
        const double disc = quad_b * quad_b - 4.0 * quad_a * quad_c;
        if (disc < 0.0) throw ParameterError("unstable_curve: momentum constraint has no real root at this q");
        const double root = std::sqrt(disc);
        l = -2.0 * quad_c / (quad_b + (quad_b >= 0.0 ? root : -root));
    }
    GridFunction eta = at_q.eta + l * chi_minus.eta;
    GridFunction v = at_q.v + l * chi_minus.v;
    const double kappa = profile.params.kappa;
    const double drop = energy(eta, v, kappa) - energy(profile.eta, profile.v, kappa);
    return {std::move(eta), std::move(v), l, drop};
}

double d_second(double c, double kappa) { return -momentum_slope(c, kappa).value; }

}  // namespace qgp
