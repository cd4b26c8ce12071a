#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgp/errors.hpp"
#include "qgp/profile.hpp"

using namespace qgp;

TEST_SUITE("profile") {
    TEST_CASE("first integral endpoints and a sample value") {
        for (double kappa : {0.0, -3.0, 0.3}) {
            for (double c : {0.3, 0.8, 1.3}) {
                const SolitonParams p{c, kappa};
                CHECK(first_integral_rhs(0.0, p) == 0.0);
                CHECK(first_integral_rhs(peak_depth(c), p) == doctest::Approx(0.0).epsilon(1e-15));
                CHECK(first_integral_rhs(0.5 * peak_depth(c), p) > 0.0);
            }
        }
        CHECK(first_integral_rhs(0.5, {0.8, 0.0}) == doctest::Approx(0.09).epsilon(1e-14));
        CHECK_THROWS_AS(first_integral_rhs(0.9, {0.8, 0.0}), DomainError);
        CHECK_THROWS_AS(first_integral_rhs(-0.1, {0.8, 0.0}), DomainError);
    }

    TEST_CASE("first integral solves the scalar profile equation") {
        // With eta' = -sqrt(G), eta'' = G'/2; substitute into the residual.
        for (double kappa : {0.0, -1.0, -50.0, 0.4}) {
            for (double c : {0.1, 0.7, 1.35}) {
                const SolitonParams p{c, kappa};
                for (double t : {0.05, 0.3, 0.6, 0.95}) {
                    const double eta = t * peak_depth(c);
                    const double g = first_integral_rhs(eta, p);
                    const double gp = first_integral_rhs_derivative(eta, p);
                    const double om = 1.0 - eta;
                    const double a = (1.0 - 2.0 * kappa + 2.0 * kappa * eta) / (2.0 * om);
                    const double res = -a * gp / 2.0 - g / (4 * om * om) + eta + c * c * (eta * eta - 2 * eta) / (4 * om * om);
                    CHECK(std::abs(res) <= 1e-12 * (1.0 + std::abs(a * gp)));
                }
            }
        }
    }

    TEST_CASE("decay rate") {
        CHECK(decay_rate({1.0, 0.0}) == doctest::Approx(1.0));
        CHECK(decay_rate({1.0, -49.5}) == doctest::Approx(0.1));
        CHECK(decay_rate({0.0, 0.0}) == doctest::Approx(std::numbers::sqrt2));
    }

    TEST_CASE("parameter validation") {
        CHECK_THROWS_AS(validate({0.0, 0.0}), ParameterError);
        CHECK_THROWS_AS(validate({1.5, 0.0}), ParameterError);
        CHECK_THROWS_AS(validate({1.0, 0.5}), ParameterError);
        CHECK_THROWS_AS(validate({NAN, 0.0}), ParameterError);
        CHECK_NOTHROW(validate({1.0, 0.49}));
    }

    TEST_CASE("kappa = 0 matches the closed form") {
        const Grid g(40.0, 4096);
        const auto num = solve_profile({0.8, 0.0}, g);
        const auto exact = analytic_gp_profile(0.8, g);
        CHECK(sup_distance(num.eta, exact.eta) <= 1e-8);
        CHECK(sup_distance(num.v, exact.v) <= 1e-8);
        CHECK(sup_distance(num.theta, exact.theta) <= 1e-8);
    }

    TEST_CASE("closed form checks") {
        const Grid g(30.0, 4096);
        CHECK(analytic_gp_profile(1.0, g).eta[g.center()] == doctest::Approx(0.5).epsilon(1e-15));
        const auto p = analytic_gp_profile(0.6, g);
        CHECK(residual_ode(p) <= 1e-10);
        CHECK(first_integral_defect(p) <= 1e-10);
        CHECK(residual_ode(GridFunction(g), {0.6, 0.0}) == 0.0);
    }

    TEST_CASE("solve_profile at (0.5, -3)") {
        const SolitonParams p{0.5, -3.0};
        const auto prof = solve_profile(p, default_grid(p));
        CHECK(prof.eta[prof.grid.center()] == 0.875);
        CHECK(residual_ode(prof) <= 1e-8);
        CHECK(first_integral_defect(prof) <= 1e-8);
    }

    TEST_CASE("near-sonic profile is shallow") {
        const SolitonParams p{1.41, -3.0};
        const auto prof = solve_profile(p, default_grid(p));
        CHECK(prof.eta.max() == doctest::Approx(1.0 - 1.41 * 1.41 / 2.0).epsilon(1e-14));
        CHECK(prof.eta.max() == doctest::Approx(0.00595).epsilon(1e-3));
    }

    TEST_CASE("short box is rejected with a suggested length") {
        const SolitonParams p{0.8, 0.0};
        try {
            solve_profile(p, Grid(5.0, 1024));
            FAIL("expected TruncationError");
        } catch (const TruncationError& e) {
            CHECK(e.suggested_half_length() >= 12.0 / decay_rate(p));
        }
        CHECK_THROWS_AS(solve_profile({1.5, 0.0}, Grid(40.0, 1024)), ParameterError);
    }

    TEST_CASE("profile invariants across the lattice") {
        for (double kappa : {0.0, -1.0, -10.0, 0.45}) {
            for (double c : {0.1, 0.5, 1.0, 1.4}) {
                const SolitonParams p{c, kappa};
                const auto prof = solve_profile(p, resolved_grid(p));
                const Grid& g = prof.grid;
                const std::size_t n = g.size();
                double asym = 0.0;
                for (std::size_t j = 1; j < n; ++j) asym = std::max(asym, std::abs(prof.eta[j] - prof.eta[n - j]));
                CHECK(asym <= 1e-10);
                CHECK(prof.tail() <= 1e-10);
                CHECK(prof.eta.min() > 0.0);
                bool decreasing = true;
                for (std::size_t j = g.center() + 1; j < n && prof.eta[j] > 1e-9; ++j) {
                    decreasing = decreasing && prof.eta[j] < prof.eta[j - 1];
                }
                CHECK(decreasing);
                for (std::size_t j = 0; j < n; j += 97) {
                    CHECK(prof.v[j] == doctest::Approx(-c * prof.eta[j] / (2 * (1 - prof.eta[j]))).epsilon(1e-13));
                }
                CHECK(residual_ode(prof) <= 1e-7);
                CHECK(first_integral_defect(prof) <= 1e-8);
            }
        }
    }

    TEST_CASE("profile depends continuously on c") {
        const Grid g(60.0, 4096);
        const auto base = solve_profile({0.7, -1.0}, g);
        const double d1 = sup_distance(solve_profile({0.7 + 1e-3, -1.0}, g).eta, base.eta);
        const double d2 = sup_distance(solve_profile({0.7 + 2e-3, -1.0}, g).eta, base.eta);
        CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.01));
    }
}
