#include "vlcsec/maxent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vlcsec/errors.hpp"
#include "vlcsec/quadrature.hpp"

namespace vlcsec {

namespace detail {

double mean_fraction(double b) {
    if (std::fabs(b) <= 0.1) {
        // 1/2 + b/12 - b^3/720 + b^5/30240 - b^7/1209600 (next term ~ 2e-17 at 0.1)
        const double b2 = b * b;
        return 0.5 + b * (1.0 / 12.0 + b2 * (-1.0 / 720.0 + b2 * (1.0 / 30240.0 - b2 / 1209600.0)));
    }
    // -expm1(-b) = 1 - e^{-b}; for b << 0 it overflows to -inf and the first
    // term correctly collapses to -0, leaving f ~ -1/b.
    return 1.0 / (-std::expm1(-b)) - 1.0 / b;
}

double second_moment_fraction(double b) {
    if (std::fabs(b) <= 0.1) {
        // 1/3 + b/12 + b^2/360 - b^3/720 - b^4/15120 + b^5/30240 + b^6/604800
        //     - b^7/1209600 - b^8/23950080 + b^9/47900160
        const double b2 = b * b;
        const double even = 1.0 / 3.0 + b2 * (1.0 / 360.0 + b2 * (-1.0 / 15120.0 + b2 * (1.0 / 604800.0 - b2 / 23950080.0)));
        const double odd = 1.0 / 12.0 + b2 * (-1.0 / 720.0 + b2 * (1.0 / 30240.0 + b2 * (-1.0 / 1209600.0 + b2 / 47900160.0)));
        return even + b * odd;
    }
    return (b - 2.0) / (b * (-std::expm1(-b))) + 2.0 / (b * b);
}

double log_expm1_over(double b) {
    if (b == 0.0) return 0.0;
    if (b > 700.0) return b + std::log1p(-std::exp(-b)) - std::log(b);
    // expm1(b)/b is positive for either sign of b.
    return std::log(std::expm1(b) / b);
}

}  // namespace detail

double solve_c(double alpha, double peak) {
    if (!(peak > 0.0) || !std::isfinite(peak)) throw DomainError("peak intensity must be finite and > 0");
    if (!(alpha > 0.0) || alpha >= 1.0) {
        throw DomainError("mean-to-peak ratio must be in (0, 1), got " + std::to_string(alpha));
    }
    if (std::fabs(alpha - 0.5) < kUniformAlphaWindow) {
        throw DegenerateAlphaError("mean-to-peak ratio 1/2 is the uniform case; no shape parameter exists");
    }

    // Bracket the root of f(b) = alpha in b = c*peak; f is monotone increasing
    // with f(0) = 1/2.
    double lo;
    double hi;
    if (alpha > 0.5) {
        lo = 0.0;
        hi = 1.0;
        while (detail::mean_fraction(hi) < alpha) {
            hi *= 2.0;
            if (hi > 1e18) throw DomainError("no finite shape parameter for mean-to-peak ratio " + std::to_string(alpha));
        }
    } else {
        hi = 0.0;
        lo = -1.0;
        while (detail::mean_fraction(lo) > alpha) {
            lo *= 2.0;
            if (lo < -1e18) throw DomainError("no finite shape parameter for mean-to-peak ratio " + std::to_string(alpha));
        }
    }

    for (int i = 0; i < 300; ++i) {
        const double span = hi - lo;
        if (span <= 2.3e-16 * std::max({1.0, std::fabs(lo), std::fabs(hi)})) break;
        const double mid = lo + 0.5 * span;
        if (detail::mean_fraction(mid) < alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double b = lo + 0.5 * (hi - lo);
    if (std::fabs(detail::mean_fraction(b) - alpha) >= 1e-12) {
        throw DomainError("shape-parameter bisection failed to converge");
    }
    return b / peak;
}

MaxentInput exponential_input(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("mean intensity must be finite and > 0");
    return MaxentInput{InputKind::Exponential, mean, std::numeric_limits<double>::infinity(), 0.0};
}

MaxentInput uniform_input(double peak) {
    if (!(peak > 0.0) || !std::isfinite(peak)) throw DomainError("peak intensity must be finite and > 0");
    return MaxentInput{InputKind::Uniform, 0.5 * peak, peak, 0.0};
}

MaxentInput truncexp_input(double mean, double peak) {
    if (!(mean > 0.0)) throw DomainError("mean intensity must be > 0");
    if (!(peak > 0.0) || !std::isfinite(peak)) throw DomainError("peak intensity must be finite and > 0");
    if (mean > peak) throw DomainError("mean intensity exceeds the peak");
    return MaxentInput{InputKind::TruncExp, mean, peak, solve_c(mean / peak, peak)};
}

MaxentInput maxent_input(const OpticalConstraints& constraints) {
    if (!(constraints.nominal > 0.0)) throw DomainError("nominal intensity must be > 0");
    if (!(constraints.xi > 0.0) || !(constraints.xi < 1.0)) {
        throw DomainError("dimming target must be in (0, 1)");
    }
    const double mean = constraints.mean();
    if (constraints.peak == std::numeric_limits<double>::infinity()) {
        return exponential_input(mean);
    }
    if (!(constraints.peak > 0.0)) throw DomainError("peak intensity must be > 0");
    if (mean > constraints.peak) throw DomainError("mean intensity exceeds the peak");
    const double alpha = mean / constraints.peak;
    if (std::fabs(alpha - 0.5) < kUniformAlphaWindow) return uniform_input(constraints.peak);
    return truncexp_input(mean, constraints.peak);
}

double pdf(const MaxentInput& dist, double x) {
    switch (dist.kind) {
        case InputKind::Exponential:
            if (x < 0.0) return 0.0;
            return std::exp(-x / dist.mean) / dist.mean;
        case InputKind::Uniform:
            if (x < 0.0 || x > dist.peak) return 0.0;
            return 1.0 / dist.peak;
        case InputKind::TruncExp: {
            if (x < 0.0 || x > dist.peak) return 0.0;
            const double b = dist.c * dist.peak;
            if (b > 0.0) {
                // c e^{c(x-peak)} / (1 - e^{-b}): exponent <= 0, no overflow
                return dist.c * std::exp(dist.c * (x - dist.peak)) / (-std::expm1(-b));
            }
            return dist.c * std::exp(dist.c * x) / std::expm1(b);
        }
    }
    return 0.0;
}

double entropy(const MaxentInput& dist) {
    switch (dist.kind) {
        case InputKind::Exponential:
            return 1.0 + std::log(dist.mean);
        case InputKind::Uniform:
            return std::log(dist.peak);
        case InputKind::TruncExp:
            return -dist.c * dist.mean + std::log(dist.peak) +
                   detail::log_expm1_over(dist.c * dist.peak);
    }
    return 0.0;
}

double input_variance(const MaxentInput& dist) {
    switch (dist.kind) {
        case InputKind::Exponential:
            return dist.mean * dist.mean;
        case InputKind::Uniform:
            return dist.peak * dist.peak / 12.0;
        case InputKind::TruncExp: {
            const double b = dist.c * dist.peak;
            return dist.peak * dist.peak * detail::second_moment_fraction(b) - dist.mean * dist.mean;
        }
    }
    return 0.0;
}

double output_variance(const MaxentInput& dist, double h, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("noise standard deviation must be > 0");
    return h * h * input_variance(dist) + sigma * sigma;
}

namespace {

double support_end(const MaxentInput& dist) {
    // The exponential tail beyond 40 means carries ~4e-18 of the mass.
    return dist.kind == InputKind::Exponential ? 40.0 * dist.mean : dist.peak;
}

}  // namespace

double norm_quadrature(const MaxentInput& dist, double tol) {
    return integrate([&](double x) { return pdf(dist, x); }, 0.0, support_end(dist), tol);
}

double mean_quadrature(const MaxentInput& dist, double tol) {
    return integrate([&](double x) { return x * pdf(dist, x); }, 0.0, support_end(dist), tol);
}

double entropy_quadrature(const MaxentInput& dist, double tol) {
    return integrate(
        [&](double x) {
            const double f = pdf(dist, x);
            return f > 0.0 ? -f * std::log(f) : 0.0;
        },
        0.0, support_end(dist), tol);
}

double variance_quadrature(const MaxentInput& dist, double tol) {
    const double m1 = mean_quadrature(dist, tol);
    const double m2 = integrate([&](double x) { return x * x * pdf(dist, x); }, 0.0,
                                support_end(dist), tol);
    return m2 - m1 * m1;
}

}  // namespace vlcsec
