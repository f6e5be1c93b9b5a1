#pragma once

#include <functional>

namespace vlcsec {

// Adaptive Simpson integration of f over [a, b]. Serves as the independent
// numerical check for the closed-form entropies and variances; tolerance is
// an absolute error target.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

}  // namespace vlcsec
