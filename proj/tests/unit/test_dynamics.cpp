#include <doctest.h>

#include <cmath>

#include "qgp/conserved.hpp"
#include "qgp/dynamics.hpp"
#include "qgp/errors.hpp"
#include "qgp/profile.hpp"

using namespace qgp;

namespace {

HydroState soliton_state(const SolitonProfile& prof) { return {0.0, prof.eta, prof.v, prof.params.kappa}; }

}  // namespace

TEST_SUITE("dynamics") {
    TEST_CASE("frame check") {
        const Grid g(10.0, 64);
        HydroState s{0.0, GridFunction(g), GridFunction(g), 0.0};
        CHECK_NOTHROW(check_frame(s));
        s.eta[10] = 1.0;
        try {
            check_frame(s);
            FAIL("expected FrameError");
        } catch (const FrameError& e) {
            CHECK(e.position() == doctest::Approx(g.x(10)));
        }
        s.eta[10] = -0.5;
        s.kappa = 0.4;  // bound 1 - eta < 1.25
        CHECK_THROWS_AS(check_frame(s), FrameError);
        s.eta[10] = 0.0;
        s.v[3] = NAN;
        CHECK_THROWS_AS(check_frame(s), FrameError);
    }

    TEST_CASE("soliton is a traveling wave of the right-hand side") {
        for (double kappa : {0.0, -3.0}) {
            const SolitonParams p{0.6, kappa};
            const auto prof = solve_profile(p, resolved_grid(p));
            const auto r = rhs(soliton_state(prof));
            const auto ex = derivative(prof.eta, 1);
            const auto vx = derivative(prof.v, 1);
            CHECK(sup_distance(r.eta_t, -0.6 * ex) <= 1e-7);
            CHECK(sup_distance(r.v_t, -0.6 * vx) <= 1e-7);
        }
    }

    TEST_CASE("linear dispersion about the vacuum") {
        const double L = 10.0;
        const Grid g(L, 256);
        const double eps = 1e-6;
        for (double kappa : {0.0, -2.0}) {
            for (int m : {1, 5}) {
                const double k = m * std::acos(-1.0) / L;
                const auto cosk = GridFunction::from(g, [&](double x) { return std::cos(k * x); });
                const auto sink = GridFunction::from(g, [&](double x) { return std::sin(k * x); });
                const auto a = rhs({0.0, eps * cosk, GridFunction(g), kappa});
                const auto b = rhs({0.0, GridFunction(g), eps * cosk, kappa});
                // eta_t = -2 k eps sin, v_t = -k (1 + (1/2 - kappa) k^2) eps sin
                const double alpha = 2.0 * k;
                const double beta = k * (1.0 + (0.5 - kappa) * k * k);
                CHECK(sup_distance(b.eta_t, -alpha * eps * sink) <= 1e-6 * eps * alpha);
                CHECK(sup_distance(a.v_t, -beta * eps * sink) <= 1e-5 * eps * beta);
                const double omega2 = 2 * k * k + (1 - 2 * kappa) * k * k * k * k;
                CHECK(alpha * beta == doctest::Approx(omega2).epsilon(1e-13));
            }
        }
    }

    TEST_CASE("stable time step") {
        const Grid g(10.0, 256);
        const double kmax = std::acos(-1.0) / g.dx();
        const double omega = std::sqrt(2 * kmax * kmax + 7.0 * kmax * kmax * kmax * kmax);
        CHECK(stable_dt(g, -3.0) == doctest::Approx(1.4 / omega));
    }

    TEST_CASE("soliton advection") {
        const SolitonParams p{0.8, 0.0};
        const auto prof = solve_profile(p, Grid(25.0, 1024));
        EvolveOptions opt;
        opt.T = 2.0;
        const auto rep = evolve(soliton_state(prof), prof, opt);
        CHECK(rep.validity.ok);
        CHECK(rep.times.back() == doctest::Approx(2.0));
        CHECK(rep.best_shift.back() == doctest::Approx(1.6).epsilon(1e-6));
        CHECK(rep.orbital_distance.back() <= 1e-6);
        CHECK(std::abs(rep.energy_drift.back()) <= 1e-8);
        CHECK(std::abs(rep.momentum_drift.back()) <= 1e-8);
        CHECK(std::abs(rep.lyapunov.back()) <= 1e-8);
    }

    TEST_CASE("reversibility") {
        const SolitonParams p{0.6, -1.0};
        const auto prof = solve_profile(p, Grid(30.0, 512));
        HydroState s = perturbed_state(prof, {PerturbationMode::RandomSmooth, 0.02, 5});
        const HydroState s0 = s;
        Rk4Stepper stepper(prof.grid);
        const double dt = stable_dt(prof.grid, p.kappa);
        for (int i = 0; i < 200; ++i) stepper.step(s, dt);
        CHECK(sup_distance(s.eta, s0.eta) > 1e-4);
        for (int i = 0; i < 200; ++i) stepper.step(s, -dt);
        CHECK(sup_distance(s.eta, s0.eta) <= 1e-7);
        CHECK(sup_distance(s.v, s0.v) <= 1e-7);
        CHECK(std::abs(s.t) <= 1e-12);
    }

    TEST_CASE("orbital distance recovers a shift") {
        const SolitonParams p{0.7, 0.0};
        const auto prof = solve_profile(p, Grid(25.0, 1024));
        const HydroState s{0.0, shift(prof.eta, 0.37), shift(prof.v, 0.37), 0.0};
        const auto fit = orbital_distance(s, prof);
        CHECK(fit.best_shift == doctest::Approx(0.37).epsilon(1e-6));
        CHECK(fit.distance <= 1e-8);
        CHECK(lyapunov(soliton_state(prof), prof) == doctest::Approx(0.0));
    }

    TEST_CASE("perturbations") {
        CHECK(parse_perturbation_mode("psi_q") == PerturbationMode::PsiQ);
        CHECK(to_string(PerturbationMode::AlongChiMinus) == "along_chi_minus");
        CHECK_THROWS_AS(parse_perturbation_mode("kick"), ValidationError);
        const SolitonParams p{0.8, 0.0};
        const auto prof = solve_profile(p, Grid(25.0, 1024));
        const auto a = perturbed_state(prof, {PerturbationMode::RandomSmooth, 0.01, 9});
        const auto b = perturbed_state(prof, {PerturbationMode::RandomSmooth, 0.01, 9});
        const auto c = perturbed_state(prof, {PerturbationMode::RandomSmooth, 0.01, 10});
        CHECK(sup_distance(a.eta, b.eta) == 0.0);
        CHECK(sup_distance(a.eta, c.eta) > 0.0);
        const auto chi = perturbed_state(prof, {PerturbationMode::AlongChiMinus, 0.01, 1});
        CHECK(orbital_distance(chi, prof).distance == doctest::Approx(0.01).epsilon(0.05));
        CHECK_THROWS_AS(perturbed_state(prof, {PerturbationMode::RandomSmooth, NAN, 1}), ValidationError);
    }

    TEST_CASE("stable soliton stays bounded") {
        const SolitonParams p{0.8, 0.0};
        const auto res =
            stability_experiment(p, {PerturbationMode::RandomSmooth, 0.01, 1}, 2.0, Grid(25.0, 1024));
        CHECK(res.verdict == DynamicVerdict::Bounded);
        CHECK(res.initial_distance > 0.0);
        CHECK(to_string(res.verdict) == "bounded");
    }

    TEST_CASE("zero perturbation is inconclusive") {
        const SolitonParams p{0.8, 0.0};
        const auto res =
            stability_experiment(p, {PerturbationMode::RandomSmooth, 0.0, 1}, 0.5, Grid(25.0, 1024));
        CHECK(res.verdict == DynamicVerdict::Inconclusive);
    }

    TEST_CASE("experiment grid") {
        const Grid g = experiment_grid({0.2, -50.0});
        CHECK(g.dx() == doctest::Approx(0.1));
        CHECK(g.half_length() >= 128.0);
        CHECK(experiment_grid({0.8, 0.0}).size() == 4096);
    }
}
