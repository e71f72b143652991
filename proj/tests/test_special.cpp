#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hyp2f1.hpp"
#include "quadrature.hpp"
#include "rootopt.hpp"

using namespace stefanfront;

namespace {

// Extended-precision direct-series-after-Pfaff oracle (200 terms), independent
// of the double-precision kernel under test.
long double series_ld(long double a, long double b, long double c, long double z, int terms) {
    long double term = 1.0L, sum = 1.0L;
    for (int n = 0; n < terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
    }
    return sum;
}

long double hyp2f1_oracle(long double a, long double b, long double c, long double z) {
    if (z < 0.0L) {
        return powl(1.0L - z, -a) * series_ld(a, c - b, c, z / (z - 1.0L), 200);
    }
    return series_ld(a, b, c, z, 200);
}

}  // namespace

TEST_CASE("hyp2f1 trivial and analytic values") {
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.0) == 1.0);
    CHECK(hyp2f1(-0.3, 0.7, 1.1, 0.0) == 1.0);
    // 2F1(1,1;2;z) = -ln(1-z)/z
    CHECK(hyp2f1(1.0, 1.0, 2.0, -1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("hyp2f1 matches the extended-precision oracle") {
    const double v = hyp2f1(1.0, 0.5, 3.5, -5.0);
    CHECK(v == doctest::Approx(0.6889145626744736).epsilon(1e-12));
    CHECK(v == doctest::Approx(static_cast<double>(hyp2f1_oracle(1.0L, 0.5L, 3.5L, -5.0L)))
                   .epsilon(1e-13));
}

TEST_CASE("hyp2f1 Pfaff route agrees with the direct series on (-0.5, 0)") {
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> zdist(-0.5, -1e-3), pdist(0.2, 2.5);
    for (int i = 0; i < 50; ++i) {
        const double a = pdist(rng), b = pdist(rng), c = pdist(rng) + 1.0, z = zdist(rng);
        const double pfaff = hyp2f1(a, b, c, z);
        const double direct = static_cast<double>(
            series_ld(static_cast<long double>(a), static_cast<long double>(b),
                      static_cast<long double>(c), static_cast<long double>(z), 200));
        CHECK(pfaff == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("hyp2f1 symmetry in (a,b)") {
    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> par(-2.0, 2.0), cpar(0.5, 5.0), zpar(-3.0, 0.95);
    for (int i = 0; i < 100; ++i) {
        const double a = par(rng), b = par(rng), c = cpar(rng), z = zpar(rng);
        CHECK(hyp2f1(a, b, c, z) == doctest::Approx(hyp2f1(b, a, c, z)).epsilon(1e-12));
    }
}

TEST_CASE("hyp2f1 domain errors") {
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.5), std::invalid_argument);
}

TEST_CASE("integrate: catalog integrals") {
    const QuadResult a = integrate([](double u) { return u * (1.0 - u); }, 0.0, 1.0, 1e-12);
    CHECK(a.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(a.converged);
    CHECK(a.evaluations >= 15);
    CHECK(a.abs_error >= 0.0);

    // antiderivative of u(1-u)/(1+u): -u^2/2 + 2u - 2 ln(1+u)
    const QuadResult b =
        integrate([](double u) { return u * (1.0 - u) / (1.0 + u); }, 0.0, 1.0, 1e-12);
    CHECK(b.value == doctest::Approx(1.5 - 2.0 * std::log(2.0)).epsilon(1e-12));

    const QuadResult c = integrate([](double q) { return std::sqrt(1.0 - q); }, 0.0, 1.0, 1e-10);
    CHECK(c.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("integrate is exact on polynomials up to the embedded rule degree") {
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        double c[14];
        for (double& x : c) x = coeff(rng);
        auto poly = [&](double u) {
            double acc = 0.0;
            for (int k = 13; k >= 0; --k) acc = acc * u + c[k];
            return acc;
        };
        double exact = 0.0;
        for (int k = 0; k < 14; ++k) exact += c[k] / (k + 1);
        const QuadResult q = integrate(poly, 0.0, 1.0, 1e-10);
        CHECK(q.value == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("integrate splits at breakpoints and validates input") {
    const QuadResult q = integrate_split(
        [](double u) { return u < 0.3 ? 0.0 : (u - 0.3) * (1.0 - u); }, 0.0, 1.0, {0.3}, 1e-12);
    CHECK(q.value == doctest::Approx(0.343 / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double u) { return std::log(u - 0.5); }, 0.0, 1.0, 1e-10),
                    std::runtime_error);
}

TEST_CASE("bisect") {
    const double r =
        bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-9);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(bisect([](double x) { return x; }, 0.0, 1.0, 1e-9) == 0.0);
    CHECK_THROWS_AS(bisect([](double x) { return 1.0 + x * x; }, 0.0, 1.0, 1e-9),
                    std::invalid_argument);
}

TEST_CASE("maximize_scalar") {
    const ScalarOpt peak =
        maximize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-8);
    CHECK(peak.arg == doctest::Approx(0.3).epsilon(1e-6));

    const ScalarOpt edge = maximize_scalar([](double x) { return x; }, 0.0, 1.0, 1e-8);
    CHECK(edge.value == doctest::Approx(1.0).epsilon(1e-7));

    const ScalarOpt flat = maximize_scalar([](double) { return 4.25; }, 0.0, 1.0, 1e-8);
    CHECK(flat.value == 4.25);
}

TEST_CASE("nelder_mead") {
    const VectorOpt best = nelder_mead(
        [](const std::vector<double>& x) {
            const double dx = x[0] - 1.0, dy = x[1] - 2.0;
            return -(dx * dx + dy * dy);
        },
        {0.0, 0.0}, 1e-10);
    CHECK(best.arg[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(best.arg[1] == doctest::Approx(2.0).epsilon(1e-6));

    const VectorOpt one = nelder_mead(
        [](const std::vector<double>& x) { return -(x[0] - 0.25) * (x[0] - 0.25); }, {3.0},
        1e-10);
    CHECK(one.arg[0] == doctest::Approx(0.25).epsilon(1e-5));

    CHECK_THROWS_AS(nelder_mead([](const std::vector<double>&) { return std::nan(""); },
                                {0.0, 0.0}, 1e-8),
                    std::runtime_error);
    CHECK_THROWS_AS(nelder_mead([](const std::vector<double>&) { return 0.0; },
                                std::vector<double>(7, 0.0), 1e-8),
                    std::invalid_argument);
}
