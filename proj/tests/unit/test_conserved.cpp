#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qgp/conserved.hpp"
#include "qgp/errors.hpp"
#include "qgp/profile.hpp"

using namespace qgp;

namespace {

double p_gp(double c) { return 2.0 * std::atan(std::sqrt(2 - c * c) / c) - c * std::sqrt(2 - c * c); }
double e_gp(double c) { return 2.0 / 3.0 * std::pow(2 - c * c, 1.5); }

}  // namespace

TEST_SUITE("conserved") {
    TEST_CASE("grid functionals") {
        const Grid g(30.0, 2048);
        const GridFunction zero(g);
        CHECK(energy(zero, zero, -3.0) == 0.0);
        const auto prof = analytic_gp_profile(0.6, g);
        CHECK(std::abs(energy(prof.eta, prof.v, 0.0) - e_gp(0.6)) <= 1e-6);
        CHECK(momentum(prof.eta, zero) == 0.0);
        CHECK(twist(zero) == 0.0);
        CHECK(momentum(prof.eta, 2.0 * prof.v) == doctest::Approx(2.0 * momentum(prof.eta, prof.v)));
        const double ex2 = integrate(prof.eta_x * prof.eta_x);
        CHECK(energy(prof.eta, prof.v, -2.0) - energy(prof.eta, prof.v, 1.0) ==
              doctest::Approx(1.5 * ex2).epsilon(1e-10));
        GridFunction bad = prof.eta;
        bad[g.center()] = 1.0;
        CHECK_THROWS_AS(energy(bad, prof.v, 0.0), FrameError);
    }

    TEST_CASE("momentum of the GP soliton") {
        const Grid g(30.0, 4096);
        const auto prof = analytic_gp_profile(0.8, g);
        CHECK(std::abs(momentum(prof.eta, prof.v) - p_gp(0.8)) <= 1e-6);
        CHECK(p_gp(0.8) == doctest::Approx(1.006112).epsilon(1e-6));
        CHECK(std::abs(momentum_of_speed(0.8, 0.0) - p_gp(0.8)) <= 1e-10);
    }

    TEST_CASE("quadrature matches closed forms and grid integrals") {
        for (double c : {0.2, 0.8, 1.3}) {
            CHECK(std::abs(momentum_of_speed(c, 0.0) - p_gp(c)) <= 1e-6);
            CHECK(std::abs(energy_of_speed(c, 0.0) - e_gp(c)) <= 1e-6);
            CHECK(std::abs(momentum_slope(c, 0.0).value + 2.0 * std::sqrt(2 - c * c)) <= 1e-5);
        }
        for (double kappa : {-3.0, -50.0, 0.3}) {
            for (double c : {0.5, 1.0}) {
                const SolitonParams p{c, kappa};
                const auto prof = solve_profile(p, resolved_grid(p));
                CHECK(std::abs(momentum_of_speed(c, kappa) - momentum(prof.eta, prof.v)) <= 1e-7);
                CHECK(std::abs(energy_of_speed(c, kappa) - energy(prof.eta, prof.v, kappa)) <= 1e-7);
            }
        }
    }

    TEST_CASE("trivial-wave limit") {
        CHECK(momentum_of_speed(1.414, -3.0) < 1e-3);
        CHECK(energy_of_speed(1.414, -3.0) < 1e-3);
    }

    TEST_CASE("black soliton energy at kappa = -3 is twice the figure level") {
        CHECK(black_soliton_energy(-3.0) == doctest::Approx(2.694).epsilon(0.01 / 2.694));
        CHECK(black_soliton_energy(0.0) == doctest::Approx(4.0 * std::numbers::sqrt2 / 3.0).epsilon(1e-10));
    }

    TEST_CASE("momentum slope") {
        CHECK(std::abs(momentum_slope(1.0, 0.0).value + 2.0) <= 1e-5);
        for (double c = 0.05; c < 1.41; c += 0.15) CHECK(momentum_slope(c, 0.0).value < 0.0);
        CHECK(momentum_slope(0.2, -50.0).value > 0.0);
    }

    TEST_CASE("verdicts") {
        CHECK(vk_classify(1.0, 0.0).verdict == Verdict::Stable);
        CHECK(vk_classify(0.2, -50.0).verdict == Verdict::Unstable);
        CHECK(vk_classify(1.0, -50.0).verdict == Verdict::Stable);
        const auto wide = vk_classify(1.0, 0.0, 10.0);
        CHECK(wide.verdict == Verdict::Degenerate);
        CHECK(to_string(Verdict::Unstable) == "Unstable");
    }

    TEST_CASE("branch curve") {
        const BranchCurve flat = branch_curve(0.0, 0.05, 1.4, 30);
        CHECK_FALSE(flat.cusp.has_value());
        for (std::size_t i = 0; i < flat.samples.size(); ++i) {
            const auto& s = flat.samples[i];
            CHECK(s.momentum > 0.0);
            CHECK(s.energy > 0.0);
            CHECK(std::abs(s.dEdc - s.c * s.dPdc) <= 1e-6);
            if (i > 0) {
                CHECK(s.c > flat.samples[i - 1].c);
                CHECK(s.momentum < flat.samples[i - 1].momentum);
            }
        }
        const BranchCurve cusp = branch_curve(-50.0, 0.05, 1.4, 30);
        REQUIRE(cusp.cusp.has_value());
        CHECK(std::abs(*cusp.cusp - 0.473) <= 0.005);
        CHECK_THROWS_AS(branch_curve(0.0, 0.5, 0.4, 10), ParameterError);
    }

    TEST_CASE("critical speeds") {
        const auto ct = find_c_tilde(-50.0);
        REQUIRE(ct.has_value());
        CHECK(std::abs(*ct - 0.473) <= 0.005);
        CHECK(std::abs(momentum_slope(*ct, -50.0).value) <= 1e-8);
        CHECK_FALSE(find_c_tilde(-3.0).has_value());
        CHECK_FALSE(find_c_tilde(0.0).has_value());
        CHECK(has_unstable_band(-3.8));
        CHECK_FALSE(has_unstable_band(-3.5));
    }

    TEST_CASE("c_tilde decreases as kappa rises") {
        double previous = 2.0;
        for (double kappa : {-50.0, -20.0, -10.0, -5.0, -4.0}) {
            const auto ct = find_c_tilde(kappa);
            REQUIRE(ct.has_value());
            CHECK(*ct < previous);
            previous = *ct;
        }
    }

    TEST_CASE("q_star") {
        const auto q50 = find_q_star(-50.0);
        REQUIRE(q50.has_value());
        CHECK(std::abs(q50->level - 7.496) <= 0.02);
        CHECK(std::abs(energy_of_speed(q50->c_star, -50.0) - q50->level) <= 1e-9);
        CHECK(q50->c_star > 0.473);
        const auto q3 = find_q_star(-3.0);
        REQUIRE(q3.has_value());
        CHECK(q3->at_endpoint);
        CHECK(std::abs(q3->level - 2.694) <= 0.02);
        const auto q0 = find_q_star(0.0);
        REQUIRE(q0.has_value());
        CHECK(q0->at_endpoint);
        CHECK_THROWS_AS(find_q_star(0.1), ParameterError);
    }

    TEST_CASE("momentum endpoint tends to pi") {
        for (double kappa : {0.0, -3.0, -50.0}) {
            CHECK(std::abs(black_soliton_momentum(kappa) - std::numbers::pi) <= 2e-3);
        }
    }

    TEST_CASE("diagram output") {
        const auto dir = std::filesystem::temp_directory_path() / "qgp_unit_diagram";
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        const BranchCurve empty{0.0, {}, std::nullopt};
        CHECK_THROWS_AS(emit_diagram(empty, dir / "a.csv", dir / "a.svg"), ValidationError);
        CHECK_FALSE(std::filesystem::exists(dir / "a.csv"));
        CHECK_FALSE(std::filesystem::exists(dir / "a.svg"));

        const BranchCurve curve = branch_curve(-50.0, 0.1, 1.3, 12);
        emit_diagram(curve, dir / "b.csv", dir / "b.svg", {"abc", "full"});
        std::ifstream csv(dir / "b.csv");
        std::string first, second, header;
        std::getline(csv, first);
        std::getline(csv, second);
        std::getline(csv, header);
        CHECK(first.find("config=abc") != std::string::npos);
        CHECK(header == "c,P,E,dPdc,dEdc,P_half,E_half");
        std::ifstream svg(dir / "b.svg");
        const std::string text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
        CHECK(text.find("<svg") != std::string::npos);
        CHECK(text.find("cusp") != std::string::npos);
        CHECK(text.find("http://") == text.find("http://www.w3.org/2000/svg"));
        std::filesystem::remove_all(dir);
    }
}
