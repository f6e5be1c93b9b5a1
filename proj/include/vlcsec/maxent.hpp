#pragma once

#include "vlcsec/channel.hpp"

namespace vlcsec {

enum class InputKind { Exponential, Uniform, TruncExp };

// Entropy-maximizing input law under the intensity constraints:
//  - mean constraint only          -> Exponential on [0, inf)
//  - mean + peak, mean = peak/2    -> Uniform on [0, peak]
//  - mean + peak, mean != peak/2   -> truncated exponential c*e^{cx} on [0, peak]
struct MaxentInput {
    InputKind kind = InputKind::Exponential;
    double mean = 0.0;  // E[X]
    double peak = 0.0;  // support end (finite unless Exponential)
    double c = 0.0;     // TruncExp shape parameter, 0 otherwise
};

// Mean-to-peak ratios closer to 1/2 than this are treated as the uniform
// case; the shape equation is singular at c = 0.
inline constexpr double kUniformAlphaWindow = 1e-9;

// Solve alpha = 1/(1 - e^{-c*peak}) - 1/(c*peak) for c by bisection.
// Residual < 1e-12, sign(c) = sign(alpha - 1/2). Throws DegenerateAlphaError
// when alpha is inside the uniform window and DomainError outside (0, 1) or
// when no finite parameter exists (alpha = 1).
double solve_c(double alpha, double peak);

MaxentInput exponential_input(double mean);
MaxentInput uniform_input(double peak);
MaxentInput truncexp_input(double mean, double peak);
// Dispatch on the constraints (peak = inf -> Exponential, alpha within the
// uniform window -> Uniform, otherwise TruncExp).
MaxentInput maxent_input(const OpticalConstraints& constraints);

double pdf(const MaxentInput& dist, double x);
double entropy(const MaxentInput& dist);          // nats
double input_variance(const MaxentInput& dist);   // Var(X)
// Var(h*X + noise) = h^2 Var(X) + sigma^2.
double output_variance(const MaxentInput& dist, double h, double sigma);

// Quadrature counterparts used as the independent oracle.
double norm_quadrature(const MaxentInput& dist, double tol = 1e-10);
double mean_quadrature(const MaxentInput& dist, double tol = 1e-10);
double entropy_quadrature(const MaxentInput& dist, double tol = 1e-10);
double variance_quadrature(const MaxentInput& dist, double tol = 1e-10);

namespace detail {

// E[X]/peak for the truncated exponential, as a function of b = c*peak:
// f(b) = 1/(1 - e^{-b}) - 1/b. Monotone increasing, f(0) = 1/2.
double mean_fraction(double b);

// E[X^2]/peak^2 as a function of b = c*peak.
double second_moment_fraction(double b);

// ln((e^b - 1)/b), overflow-safe for all b.
double log_expm1_over(double b);

}  // namespace detail

}  // namespace vlcsec
