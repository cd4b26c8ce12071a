#include <doctest.h>

#include <cmath>
#include <random>

#include "qgp/conserved.hpp"
#include "qgp/errors.hpp"
#include "qgp/profile.hpp"
#include "qgp/spectral.hpp"

using namespace qgp;

namespace {

GridFunction bump(const Grid& g, double x0, double width, double freq) {
    return GridFunction::from(g, [&](double x) {
        const double y = (x - x0) / width;
        return std::exp(-y * y) * std::cos(freq * x);
    });
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("vacuum operator") {
        const Grid g(20.0, 512);
        for (double kappa : {0.0, -3.0, 0.3}) {
            const SolitonParams p{0.6, kappa};
            const auto op = assemble_lc(p, GridFunction(g));
            const double edge = op.essential_edge();
            CHECK(edge == doctest::Approx(0.82));
            CHECK(op.boundary_potential_defect() <= 1e-12);
            CHECK(count_negative_eigenvalues(op) == 0);
            CHECK(op.matrix.count_below(edge) == 0);
            // Lowest Dirichlet mode on a box of length 2L.
            const double a = 0.5 - kappa;
            const double k = std::acos(-1.0) / (2.0 * g.half_length());
            CHECK(op.matrix.eigenvalue(0) - edge == doctest::Approx(a * k * k).epsilon(0.02));
        }
        CHECK(assemble_lc({1.0, 0.0}, GridFunction(g)).essential_edge() == 0.5);
    }

    TEST_CASE("matrix and spectral actions agree on smooth functions") {
        const SolitonParams p{0.8, -1.0};
        const auto prof = solve_profile(p, resolved_grid(p));
        const auto op = assemble_lc(prof);
        const auto f = bump(prof.grid, 0.3, 2.0, 0.7);
        const auto lm = apply_lc(op, f);
        const auto ls = apply_lc_spectral(op, f);
        CHECK(norm_l2(lm - ls) <= 1e-3 * norm_l2(ls));
        CHECK(lc_form(op, f) == doctest::Approx(integrate(ls * f)).epsilon(1e-8));
    }

    TEST_CASE("GP soliton spectrum") {
        const SolitonParams p{0.8, 0.0};
        const auto prof = solve_profile(p, Grid(25.0, 2048));
        const auto rep = analyze_spectrum(prof);
        CHECK(rep.negative_count == 1);
        CHECK(rep.mu_minus < 0.0);
        CHECK(rep.mu_minus <= rep.mu_minus_matrix + 1e-10);
        CHECK(rep.mu_zero >= 0.0);
        CHECK(rep.mu_zero <= 1e-3);
        CHECK(rep.kernel_overlap >= 0.999);
        CHECK(rep.spectral_gap > rep.mu_zero);
        CHECK(rep.essential_edge == doctest::Approx(0.68));
        CHECK(std::abs(norm_l2(rep.chi1) - 1.0) <= 1e-10);
        const auto l_chi = apply_lc_spectral(assemble_lc(prof), rep.chi1);
        CHECK(norm_l2(l_chi - rep.mu_minus * rep.chi1) <= 1e-6);
    }

    TEST_CASE("hessian forms agree") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (double kappa : {0.0, -3.0, -50.0}) {
            const SolitonParams p{0.5, kappa};
            const auto prof = solve_profile(p, resolved_grid(p));
            for (int trial = 0; trial < 4; ++trial) {
                const auto de = bump(prof.grid, 2.0 * u(gen), 1.5 + u(gen), 2.0 * u(gen));
                const auto dv = bump(prof.grid, 2.0 * u(gen), 1.5 + u(gen), 2.0 * u(gen));
                const double hf = hessian_full(prof, de, dv);
                const double hr = hessian_reduced(prof, de, dv);
                CHECK(std::abs(hf - hr) <= 1e-10 * (1.0 + std::abs(hf)));
            }
        }
    }

    TEST_CASE("translation is a null direction") {
        for (double kappa : {0.0, -3.0}) {
            const SolitonParams p{0.7, kappa};
            const auto prof = solve_profile(p, resolved_grid(p));
            const auto ex = derivative(prof.eta, 1);
            const auto vx = derivative(prof.v, 1);
            CHECK(std::abs(hessian_full(prof, ex, vx)) <= 1e-6);
        }
    }

    TEST_CASE("negative direction") {
        const SolitonParams p{0.8, 0.0};
        const auto prof = solve_profile(p, Grid(25.0, 2048));
        const auto rep = analyze_spectrum(prof);
        const auto chi = negative_direction(prof, rep);
        CHECK(hessian_full(prof, chi.eta, chi.v) == doctest::Approx(rep.mu_minus).epsilon(1e-6));
        for (std::size_t j = 0; j < prof.grid.size(); j += 61) {
            const double om = 1.0 - prof.eta[j];
            CHECK(chi.v[j] == doctest::Approx(-0.8 * chi.eta[j] / (2 * om * om)).epsilon(1e-12));
        }
    }

    TEST_CASE("speed tangent pairs with the momentum slope") {
        for (double kappa : {0.0, -3.0}) {
            const SolitonParams p{0.8, kappa};
            const Grid g = resolved_grid(p);
            const auto prof = solve_profile(p, g);
            const auto t = speed_tangent(p, g);
            const double pairing = hessian_full(prof, t.eta, t.v);
            CHECK(pairing == doctest::Approx(momentum_slope(0.8, kappa).value).epsilon(1e-5));
        }
    }

    TEST_CASE("d_second") {
        CHECK(d_second(1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-5));
        CHECK(d_second(0.2, -50.0) < 0.0);
    }

    TEST_CASE("unstable curve") {
        const SolitonParams p{0.2, -50.0};
        const auto prof = solve_profile(p, resolved_grid(p));
        const auto chi = negative_direction(prof);
        const double p0 = momentum(prof.eta, prof.v);
        const auto at_c = unstable_curve(prof, chi, 0.2);
        CHECK(std::abs(at_c.l) <= 1e-8);
        CHECK(std::abs(at_c.energy_drop) <= 1e-8);
        for (double q : {0.19, 0.21}) {
            const auto pt = unstable_curve(prof, chi, q);
            CHECK(std::abs(momentum(pt.eta, pt.v) - p0) <= 1e-9);
            CHECK(pt.energy_drop < 0.0);
        }
        CHECK_THROWS_AS(unstable_curve(prof, chi, 0.3), ParameterError);
    }
}
