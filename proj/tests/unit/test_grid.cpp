#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qgp/errors.hpp"
#include "qgp/grid.hpp"

using namespace qgp;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

double max_error(const GridFunction& f, const std::function<double(double)>& exact) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - exact(f.grid().x(j))));
    return m;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("grid construction and validation") {
        const Grid g(10.0, 64);
        CHECK(g.dx() == doctest::Approx(20.0 / 64));
        CHECK(g.x(0) == -10.0);
        CHECK(g.x(g.center()) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK_THROWS_AS(Grid(10.0, 4), ValidationError);
        CHECK_THROWS_AS(Grid(10.0, 63), ValidationError);
        CHECK_THROWS_AS(Grid(-1.0, 64), ValidationError);
        CHECK_THROWS_AS(GridFunction(g, std::vector<double>(3)), ValidationError);
    }

    TEST_CASE("derivative of a pure mode and of a constant") {
        const double L = 7.0;
        const Grid g(L, 128);
        const double k = std::numbers::pi / L;
        const auto f = GridFunction::from(g, [&](double x) { return std::sin(k * x); });
        CHECK(max_error(derivative(f, 1), [&](double x) { return k * std::cos(k * x); }) <= 1e-12);
        const GridFunction one(g, 1.0);
        CHECK(derivative(one, 1).max_abs() <= 1e-14);
    }

    TEST_CASE("second derivative of a Gaussian") {
        const Grid g(20.0, 512);
        const auto f = GridFunction::from(g, [](double x) { return std::exp(-x * x); });
        CHECK(max_error(derivative(f, 2), [](double x) { return (4 * x * x - 2) * std::exp(-x * x); }) <= 1e-10);
        CHECK(max_error(derivative(f, 3),
                        [](double x) { return (12 * x - 8 * x * x * x) * std::exp(-x * x); }) <= 1e-9);
    }

    TEST_CASE("derivative rejects non-finite input") {
        const Grid g(5.0, 16);
        GridFunction f(g);
        f[3] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(derivative(f, 1), ValidationError);
        CHECK_THROWS_AS(derivative(GridFunction(g), 4), ValidationError);
    }

    TEST_CASE("fourth-order finite differences") {
        const Grid g(4.0, 256);
        const auto f = GridFunction::from(g, [](double x) { return std::sin(x); });
        CHECK(max_error(derivative_fd4(f, 1), [](double x) { return std::cos(x); }) <= 1e-6);
        CHECK(max_error(derivative_fd4(f, 2), [](double x) { return -std::sin(x); }) <= 1e-4);
    }

    TEST_CASE("integration") {
        CHECK(integrate(GridFunction(Grid(10.0, 64), 1.0)) == doctest::Approx(20.0).epsilon(1e-15));
        const Grid g(30.0, 1024);
        CHECK(std::abs(integrate(GridFunction::from(g, [](double x) { return sech(x) * sech(x); })) - 2.0) <= 1e-12);
        const auto odd = GridFunction::from(g, [&](double x) { return std::sin(2 * std::numbers::pi * x / 30.0); });
        CHECK(std::abs(integrate(odd)) <= 1e-13);
    }

    TEST_CASE("shift") {
        const Grid g(30.0, 1024);
        const auto f = GridFunction::from(g, [](double x) { return sech(x) * sech(x); });
        CHECK(sup_distance(shift(f, 0.0), f) <= 1e-14);
        CHECK(sup_distance(shift(shift(f, 0.77), -0.77), f) <= 1e-12);
        CHECK(max_error(shift(f, 1.5), [](double x) { return sech(x - 1.5) * sech(x - 1.5); }) <= 1e-10);
        CHECK(std::abs(norm_l2(shift(f, 2.3)) - norm_l2(f)) <= 1e-12);
    }

    TEST_CASE("norms") {
        const double L = 6.0;
        const Grid g(L, 256);
        CHECK(norm_l2(GridFunction(g)) == 0.0);
        const auto s = GridFunction::from(g, [&](double x) { return std::sin(std::numbers::pi * x / L); });
        CHECK(norm_l2(s) == doctest::Approx(std::sqrt(L)).epsilon(1e-13));
        const Grid h(30.0, 1024);
        const auto f = GridFunction::from(h, [](double x) { return sech(x); });
        CHECK(std::abs(norm_l2(f) * norm_l2(f) - 2.0) <= 1e-10);
        CHECK(std::abs(norm_h1(f) * norm_h1(f) - (2.0 + 2.0 / 3.0)) <= 1e-10);
    }

    TEST_CASE("properties on random smooth fields") {
        std::mt19937_64 gen(42);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const Grid g(25.0, 512);
        for (int trial = 0; trial < 20; ++trial) {
            const double a = u(gen), b = 2.0 + u(gen), c0 = 3.0 * u(gen), s = 5.0 * u(gen);
            const auto f = GridFunction::from(g, [&](double x) {
                return a * std::exp(-(x - c0) * (x - c0) / b) + sech(x + c0) * std::sin(x);
            });
            const GridFunction d2 = derivative(f, 2);
            const GridFunction dd = derivative(derivative(f, 1), 1);
            CHECK(sup_distance(d2, dd) <= 1e-10 * (1.0 + d2.max_abs()));
            CHECK(std::abs(integrate(derivative(f, 1))) <= 1e-12);
            CHECK(std::abs(norm_l2(shift(f, s)) - norm_l2(f)) <= 1e-12);
        }
    }

    TEST_CASE("quadrature converges spectrally") {
        auto err = [](std::size_t n) {
            const Grid g(12.0, n);
            return std::abs(integrate(GridFunction::from(g, [](double x) { return sech(x) * sech(x); })) - 2.0);
        };
        // Box truncation caps the attainable accuracy at about 4e-10; stay
        // above it.
        CHECK(err(32) / err(64) >= 1e2);
    }

    TEST_CASE("csv serialisation") {
        const Grid g(1.0, 8);
        const auto f = GridFunction::from(g, [](double x) { return x / 3.0; });
        std::ostringstream os;
        write_csv(os, f);
        std::istringstream in(os.str());
        std::string line;
        std::getline(in, line);
        CHECK(line == "x,value");
        int rows = 0;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            const double x = std::stod(line.substr(0, comma));
            CHECK(std::stod(line.substr(comma + 1)) == x / 3.0);
            ++rows;
        }
        CHECK(rows == 8);
    }
}
