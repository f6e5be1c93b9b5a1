#pragma once

#include <utility>
#include <vector>

#include "vlcsec/channel.hpp"
#include "vlcsec/maxent.hpp"

namespace vlcsec {

enum class ScenarioKind { AvgOnly, AvgAndPeak };

// Which constraint set the bounds are computed under. AvgAndPeak requires a
// finite peak intensity.
struct Scenario {
    ScenarioKind kind = ScenarioKind::AvgOnly;
    OpticalConstraints constraints;
};

Scenario avg_scenario(double nominal, double xi);
Scenario peak_scenario(double nominal, double peak, double xi);

// Per-LED record of which case of the upper bound fired.
//  LowIntensity ('A'): noise term dominates the mean intensity, finite value
//  Saturated    ('B'): intensity-independent value, +inf when h_e = 0
//  ZeroRated    ('0'): eavesdropper channel at least as good, rate pinned to 0
//  None         ('-'): no case applies (dark LED, or peak scenario)
enum class UpperBranch { None, ZeroRated, LowIntensity, Saturated };

char branch_char(UpperBranch b);

struct BoundResult {
    double lower = 0.0;      // clamped at 0
    double upper = 0.0;      // clamped at 0
    double raw_lower = 0.0;  // weighted sum before clamping
    double raw_upper = 0.0;
    std::vector<double> per_led_lower;  // raw per-LED terms (0 for zero-rated)
    std::vector<double> per_led_upper;
    std::vector<UpperBranch> upper_branch;
    bool clamped = false;
};

// Per-LED lower-bound term under the mean constraint alone (exponential
// maxent input). mean = xi * P. Callers apply the zero-rate rule.
double per_led_lower_avg(double h_b, double h_e, double sigma_b, double sigma_e,
                         double mean);

// Per-LED upper-bound term under the mean constraint alone, with the case
// dispatch evaluated per LED. Returns +inf (Saturated) if h_e = 0 ever
// reaches the saturated case; with h_e = 0 the condition's left side is +inf,
// so the finite low-intensity case fires instead.
std::pair<double, UpperBranch> per_led_upper_avg(double h_b, double h_e, double sigma_b,
                                                 double sigma_e, double mean);

// Per-LED lower-bound term under mean + peak constraints, assembled from the
// maxent input's entropy and variance (entropy-power form). dist must match
// the constraints (uniform exactly when alpha is in the uniform window).
double per_led_lower_peak(double h_b, double h_e, double sigma_b, double sigma_e,
                          const OpticalConstraints& constraints, const MaxentInput& dist);

// Per-LED upper-bound term under mean + peak constraints.
double per_led_upper_peak(double h_b, double h_e, double sigma_b, double sigma_e,
                          double peak, double mean);

// Weighted aggregate of the per-LED bounds under the given selection
// probabilities. Zero-rate rule applied per LED; aggregates clamped at 0
// with the `clamped` flag preserving the raw values.
BoundResult weighted_bounds(const LinkPair& link, const std::vector<double>& weights,
                            const Scenario& scenario);

// Limits of the weighted bounds as the intensity budget grows without bound
// (nominal -> inf, and peak -> inf with alpha fixed). Unclamped; +inf when a
// positively-weighted LED has h_e = 0.
std::pair<double, double> asymptotic_bounds(const LinkPair& link,
                                            const std::vector<double>& weights,
                                            const Scenario& scenario);

// Channel-independent high-intensity gap between upper and lower bounds.
double asymptotic_gap(const Scenario& scenario);

namespace detail {

// (1/2) ln[(e^{2H} h_b^2 + 2*pi*e*sigma_b^2) * sigma_e^2 /
//          (2*pi*e*sigma_b^2 * (h_e^2 var_x + sigma_e^2))]
// log-sum-exp assembly; exact for extreme intensity budgets.
double lower_term_epi(double h_b, double h_e, double sigma_b, double sigma_e,
                      double input_entropy, double input_var);

// Literal renderings of the bound expressions, kept as an independent second
// coding for the self-check suites.
double lower_avg_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                         double mean);
double lower_peak_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                          const OpticalConstraints& constraints, const MaxentInput& dist);
double upper_peak_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                          double peak, double mean);

}  // namespace detail

}  // namespace vlcsec
