#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "vlcsec/errors.hpp"
#include "vlcsec/maxent.hpp"

using namespace vlcsec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("shape solver hits the frozen reference value") {
    // alpha = 0.3, peak = 1
    const double c = solve_c(0.3, 1.0);
    CHECK(c == doctest::Approx(-2.6721038552733855).epsilon(1e-12));
    CHECK(c == doctest::Approx(-2.672).epsilon(1e-3));
}

TEST_CASE("shape solver residual stays below 1e-12 across alpha and peak") {
    for (int k = 5; k <= 95; k += 5) {
        if (k == 50) continue;
        const double alpha = k / 100.0;
        for (double peak : {0.5, 1.0, 5.0, 100.0}) {
            const double c = solve_c(alpha, peak);
            const double residual = std::fabs(detail::mean_fraction(c * peak) - alpha);
            CHECK(residual < 1e-12);
        }
    }
}

TEST_CASE("shape solver is antisymmetric about alpha = 1/2") {
    for (int k = 5; k <= 45; k += 5) {
        const double alpha = k / 100.0;
        const double c_low = solve_c(alpha, 1.0);
        const double c_high = solve_c(1.0 - alpha, 1.0);
        CHECK(std::fabs(c_low + c_high) <= 1e-10 * std::max(1.0, std::fabs(c_low)));
    }
}

TEST_CASE("shape solver scales inversely with the peak") {
    const double b = solve_c(0.7, 1.0);
    CHECK(solve_c(0.7, 8.0) == doctest::Approx(b / 8.0).epsilon(1e-12));
}

TEST_CASE("shape solver domain handling") {
    CHECK_THROWS_AS(solve_c(0.5, 1.0), DegenerateAlphaError);
    CHECK_THROWS_AS(solve_c(0.5 + 5e-10, 1.0), DegenerateAlphaError);
    CHECK_THROWS_AS(solve_c(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(solve_c(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(solve_c(1.1, 1.0), DomainError);
    CHECK_THROWS_AS(solve_c(1.0, 1.0), DomainError);  // no finite parameter
    CHECK_THROWS_AS(solve_c(0.3, 0.0), DomainError);
    CHECK_THROWS_AS(solve_c(0.3, kInf), DomainError);
    // Just outside the uniform window a parameter exists.
    CHECK(std::isfinite(solve_c(0.5 + 2e-9, 1.0)));
}

TEST_CASE("exponential input law") {
    const MaxentInput dist = exponential_input(2.5);
    CHECK(dist.kind == InputKind::Exponential);
    CHECK(entropy(dist) == doctest::Approx(1.0 + std::log(2.5)).epsilon(1e-15));
    CHECK(input_variance(dist) == doctest::Approx(2.5 * 2.5).epsilon(1e-15));
    CHECK(pdf(dist, 0.0) == doctest::Approx(1.0 / 2.5).epsilon(1e-15));
    CHECK(pdf(dist, -1.0) == 0.0);
    CHECK_THROWS_AS(exponential_input(0.0), DomainError);
}

TEST_CASE("uniform input law") {
    const MaxentInput dist = uniform_input(4.0);
    CHECK(dist.kind == InputKind::Uniform);
    CHECK(dist.mean == 2.0);
    CHECK(entropy(dist) == std::log(4.0));
    CHECK(input_variance(dist) == doctest::Approx(16.0 / 12.0).epsilon(1e-15));
    CHECK(pdf(dist, 2.0) == 0.25);
    CHECK(pdf(dist, 4.5) == 0.0);
    CHECK_THROWS_AS(uniform_input(-1.0), DomainError);
}

TEST_CASE("truncated exponential frozen case alpha = 0.3, peak = 2") {
    const MaxentInput dist = truncexp_input(0.6, 2.0);
    CHECK(dist.kind == InputKind::TruncExp);
    CHECK(dist.c == doctest::Approx(-1.3360519276366928).epsilon(1e-12));
    CHECK(entropy(dist) == doctest::Approx(0.44030161755575933).epsilon(1e-12));
    CHECK(input_variance(dist) == doctest::Approx(0.24122087813226015).epsilon(1e-12));
}

TEST_CASE("truncated exponential input validation") {
    CHECK_THROWS_AS(truncexp_input(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(truncexp_input(3.0, 2.0), DomainError);
    CHECK_THROWS_AS(truncexp_input(1.0, 2.0), DegenerateAlphaError);
}

TEST_CASE("constraint dispatch picks the right law") {
    OpticalConstraints oc;
    oc.nominal = 10.0;
    oc.xi = 0.4;
    oc.peak = kInf;
    CHECK(maxent_input(oc).kind == InputKind::Exponential);
    oc.peak = 8.0;  // mean 4, alpha exactly 1/2
    CHECK(maxent_input(oc).kind == InputKind::Uniform);
    oc.peak = 10.0;  // alpha 0.4
    CHECK(maxent_input(oc).kind == InputKind::TruncExp);
    oc.peak = 8.0 * (1.0 + 1e-10);  // inside the uniform window
    CHECK(maxent_input(oc).kind == InputKind::Uniform);
    oc.xi = 0.0;
    CHECK_THROWS_AS(maxent_input(oc), DomainError);
}

TEST_CASE("entropy and variance are continuous across alpha = 1/2") {
    const double peak = 1.0;
    const MaxentInput uniform = uniform_input(peak);
    for (double alpha : {0.5 - 1e-4, 0.5 + 1e-4}) {
        const MaxentInput dist = truncexp_input(alpha * peak, peak);
        CHECK(std::fabs(entropy(dist) - entropy(uniform)) < 1e-3);
        CHECK(std::fabs(input_variance(dist) - input_variance(uniform)) < 1e-3);
    }
}

TEST_CASE("truncated exponential entropy tends to log(peak) as c -> 0") {
    const double peak = 3.0;
    const MaxentInput dist = truncexp_input((0.5 + 1e-8) * peak, peak);
    CHECK(std::fabs(entropy(dist) - std::log(peak)) < 1e-9);
}

TEST_CASE("closed forms agree with quadrature on fixed cases") {
    const MaxentInput cases[] = {
        exponential_input(2.5),
        exponential_input(0.03),
        uniform_input(4.0),
        uniform_input(0.75),
        truncexp_input(0.6, 2.0),
        truncexp_input(1.8, 2.0),
    };
    for (const MaxentInput& dist : cases) {
        CHECK(std::fabs(norm_quadrature(dist) - 1.0) < 1e-9);
        CHECK(rel_diff(mean_quadrature(dist), dist.mean) < 1e-9);
        CHECK(rel_diff(entropy_quadrature(dist), entropy(dist)) < 1e-8);
        CHECK(rel_diff(variance_quadrature(dist), input_variance(dist)) < 1e-8);
    }
}

TEST_CASE("output variance composes gain and noise") {
    const MaxentInput dist = uniform_input(6.0);
    CHECK(output_variance(dist, 2.0, 3.0) == doctest::Approx(4.0 * 3.0 + 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(output_variance(dist, 1.0, 0.0), DomainError);
}

TEST_CASE("mean fraction helper") {
    CHECK(detail::mean_fraction(0.0) == 0.5);
    // Series and direct expression agree at the switchover.
    const double below = detail::mean_fraction(0.1 * (1.0 - 1e-12));
    const double above = detail::mean_fraction(0.1 * (1.0 + 1e-12));
    CHECK(std::fabs(below - above) < 1e-13);
    double previous = detail::mean_fraction(-30.0);
    for (double b : {-5.0, -1.0, -0.05, 0.0, 0.05, 1.0, 5.0, 30.0}) {
        const double f = detail::mean_fraction(b);
        CHECK(f > previous);
        previous = f;
    }
    CHECK(detail::mean_fraction(1e6) == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
}

TEST_CASE("second moment fraction helper") {
    CHECK(detail::second_moment_fraction(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const double below = detail::second_moment_fraction(0.1 * (1.0 - 1e-12));
    const double above = detail::second_moment_fraction(0.1 * (1.0 + 1e-12));
    CHECK(std::fabs(below - above) < 1e-13);
    // For b away from 0 the direct expression is the reference.
    const double b = 2.0;
    const double direct = (b - 2.0) / (b * (-std::expm1(-b))) + 2.0 / (b * b);
    CHECK(detail::second_moment_fraction(b) == direct);
}

TEST_CASE("log expm1-over-b helper across magnitudes") {
    CHECK(detail::log_expm1_over(0.0) == 0.0);
    CHECK(detail::log_expm1_over(1.0) == doctest::Approx(std::log(std::expm1(1.0))).epsilon(1e-15));
    CHECK(detail::log_expm1_over(800.0) ==
          doctest::Approx(800.0 - std::log(800.0)).epsilon(1e-15));
    CHECK(detail::log_expm1_over(-50.0) ==
          doctest::Approx(std::log((1.0 - std::exp(-50.0)) / 50.0)).epsilon(1e-12));
    CHECK(std::fabs(detail::log_expm1_over(1e-9) - 5e-10) < 1e-15);
}
