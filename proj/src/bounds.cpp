#include "vlcsec/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

void check_noise(double sigma_b, double sigma_e) {
    if (!(sigma_b > 0.0) || !(sigma_e > 0.0)) {
        throw DomainError("noise standard deviations must be > 0");
    }
}

void check_weights(const LinkPair& link, const std::vector<double>& weights) {
    if (weights.size() != link.led_count()) {
        throw DomainError("weight vector length does not match the LED count");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("selection probabilities must be >= 0");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw DomainError("selection probabilities must sum to 1");
    }
}

void check_link(const LinkPair& link) {
    if (link.led_count() == 0 || link.h_e.size() != link.h_b.size()) {
        throw DomainError("link must carry equal-length, non-empty gain vectors");
    }
    check_noise(link.sigma_b, link.sigma_e);
    for (std::size_t m = 0; m < link.led_count(); ++m) {
        if (!(link.h_b[m] >= 0.0) || !(link.h_e[m] >= 0.0)) {
            throw DomainError("channel gains must be >= 0");
        }
    }
}

void check_scenario(const Scenario& scenario) {
    const OpticalConstraints& oc = scenario.constraints;
    if (!(oc.nominal > 0.0)) throw DomainError("nominal intensity must be > 0");
    if (!(oc.xi > 0.0) || !(oc.xi < 1.0)) throw DomainError("dimming target must be in (0, 1)");
    if (scenario.kind == ScenarioKind::AvgAndPeak) {
        if (!std::isfinite(oc.peak)) throw DomainError("peak-constrained scenario needs a finite peak");
        if (!(oc.peak > 0.0)) throw DomainError("peak intensity must be > 0");
        if (oc.mean() > oc.peak) throw DomainError("mean intensity exceeds the peak");
    }
}

void check_dist_matches(const OpticalConstraints& constraints, const MaxentInput& dist) {
    if (dist.kind == InputKind::Exponential) {
        throw DomainError("peak-constrained bound needs a peak-limited input law");
    }
    const double alpha = constraints.alpha();
    const bool uniform_alpha = std::fabs(alpha - 0.5) < kUniformAlphaWindow;
    if (uniform_alpha != (dist.kind == InputKind::Uniform)) {
        throw DomainError("input law does not match the mean-to-peak ratio");
    }
    const double rel = std::fabs(dist.peak - constraints.peak) / constraints.peak;
    if (rel > 1e-9) throw DomainError("input law peak does not match the constraints");
}

}  // namespace

char branch_char(UpperBranch b) {
    switch (b) {
        case UpperBranch::None: return '-';
        case UpperBranch::ZeroRated: return '0';
        case UpperBranch::LowIntensity: return 'A';
        case UpperBranch::Saturated: return 'B';
    }
    return '?';
}

Scenario avg_scenario(double nominal, double xi) {
    Scenario s;
    s.kind = ScenarioKind::AvgOnly;
    s.constraints.nominal = nominal;
    s.constraints.xi = xi;
    s.constraints.peak = kInf;
    check_scenario(s);
    return s;
}

Scenario peak_scenario(double nominal, double peak, double xi) {
    Scenario s;
    s.kind = ScenarioKind::AvgAndPeak;
    s.constraints.nominal = nominal;
    s.constraints.xi = xi;
    s.constraints.peak = peak;
    check_scenario(s);
    return s;
}

namespace detail {

double lower_term_epi(double h_b, double h_e, double sigma_b, double sigma_e,
                      double input_entropy, double input_var) {
    check_noise(sigma_b, sigma_e);
    const double log_noise_power = std::log(2.0 * M_PI * M_E) + 2.0 * std::log(sigma_b);
    const double log_signal_power =
        h_b > 0.0 ? 2.0 * input_entropy + 2.0 * std::log(h_b) : -kInf;
    const double eve_ratio = std::log1p(h_e * h_e * input_var / (sigma_e * sigma_e));
    return 0.5 * (logaddexp(log_signal_power, log_noise_power) - log_noise_power - eve_ratio);
}

double lower_avg_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                         double mean) {
    const double noise_b = 2.0 * M_PI * M_E * sigma_b * sigma_b;
    const double num = M_E * M_E * h_b * h_b * mean * mean + noise_b;
    const double den = h_e * h_e * mean * mean + sigma_e * sigma_e;
    return 0.5 * std::log(sigma_e * sigma_e / noise_b * num / den);
}

double lower_peak_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                          const OpticalConstraints& constraints, const MaxentInput& dist) {
    const double noise_b = 2.0 * M_PI * M_E * sigma_b * sigma_b;
    const double se2 = sigma_e * sigma_e;
    const double mean = constraints.mean();
    const double peak = constraints.peak;
    if (dist.kind == InputKind::Uniform) {
        return 0.5 * std::log(3.0 * se2 * (peak * peak * h_b * h_b + noise_b) /
                              (noise_b * (h_e * h_e * mean * mean + 3.0 * se2)));
    }
    const double c = dist.c;
    const double spread = std::expm1(c * peak) / c;  // (e^{cA} - 1)/c
    const double pow2h = std::exp(-2.0 * c * mean) * spread * spread;
    const double var_x = peak * (c * peak - 2.0) / (c * (-std::expm1(-c * peak))) +
                         2.0 / (c * c) - mean * mean;
    return 0.5 * std::log(se2 * (h_b * h_b * pow2h + noise_b) /
                          (noise_b * (h_e * h_e * var_x + se2)));
}

double upper_peak_literal(double h_b, double h_e, double sigma_b, double sigma_e,
                          double peak, double mean) {
    const double sb2 = sigma_b * sigma_b;
    const double se2 = sigma_e * sigma_e;
    const double rho = h_e * h_e / (h_b * h_b);
    const double num = (rho * sb2 + se2) * (h_b * h_b * peak * mean + sb2);
    const double den =
        sb2 * (h_e * h_e * peak * mean + 2.0 * rho * sb2 + se2) * (1.0 + h_e * h_e * sb2 / (h_b * h_b * se2));
    return 0.5 * std::log(num / den);
}

}  // namespace detail

double per_led_lower_avg(double h_b, double h_e, double sigma_b, double sigma_e,
                         double mean) {
    check_noise(sigma_b, sigma_e);
    if (!(mean >= 0.0)) throw DomainError("mean intensity must be >= 0");
    if (mean == 0.0) return 0.0;
    // Exponential maxent input: entropy 1 + ln(mean), variance mean^2.
    return detail::lower_term_epi(h_b, h_e, sigma_b, sigma_e, 1.0 + std::log(mean),
                                  mean * mean);
}

std::pair<double, UpperBranch> per_led_upper_avg(double h_b, double h_e, double sigma_b,
                                                 double sigma_e, double mean) {
    check_noise(sigma_b, sigma_e);
    if (!(h_b > 0.0)) throw DomainError("upper-bound case dispatch needs h_b > 0");
    if (!(mean >= 0.0)) throw DomainError("mean intensity must be >= 0");
    // With h_e = 0 the left side is +inf and the low-intensity case fires.
    const double lhs = std::sqrt((sigma_b * sigma_b / (h_b * h_b) + sigma_e * sigma_e / (h_e * h_e)) /
                                 (2.0 * M_PI));
    const double rhs = sigma_b / (std::sqrt(2.0 * M_PI) * h_b) + 0.5 * mean;
    if (lhs >= rhs) {
        const double value = std::log(4.0 * M_E) +
                             std::log(sigma_b / std::sqrt(2.0 * M_PI) + 0.5 * h_b * mean) -
                             0.5 * (std::log(2.0 * M_PI * M_E) + 2.0 * std::log(sigma_b) +
                                    std::log1p(sigma_b * sigma_b * h_e * h_e /
                                               (sigma_e * sigma_e * h_b * h_b)));
        return {value, UpperBranch::LowIntensity};
    }
    if (h_e == 0.0) return {kInf, UpperBranch::Saturated};
    const double value = std::log(2.0) + 0.5 - std::log(M_PI) +
                         std::log(h_b * sigma_e / (h_e * sigma_b));
    return {value, UpperBranch::Saturated};
}

double per_led_lower_peak(double h_b, double h_e, double sigma_b, double sigma_e,
                          const OpticalConstraints& constraints, const MaxentInput& dist) {
    check_noise(sigma_b, sigma_e);
    check_dist_matches(constraints, dist);
    return detail::lower_term_epi(h_b, h_e, sigma_b, sigma_e, entropy(dist),
                                  input_variance(dist));
}

double per_led_upper_peak(double h_b, double h_e, double sigma_b, double sigma_e,
                          double peak, double mean) {
    check_noise(sigma_b, sigma_e);
    if (!(h_b > 0.0)) throw DomainError("upper bound needs h_b > 0");
    if (!std::isfinite(peak) || !(peak > 0.0)) throw DomainError("peak intensity must be finite and > 0");
    if (!(mean >= 0.0)) throw DomainError("mean intensity must be >= 0");
    // The (1 + h_e^2 sb^2/(h_b^2 se^2)) factor cancels against the first
    // numerator factor, leaving a fraction that is safe to evaluate directly.
    const double sb2 = sigma_b * sigma_b;
    const double se2 = sigma_e * sigma_e;
    const double budget = peak * mean;
    const double num = se2 * (h_b * h_b * budget + sb2);
    const double den = sb2 * (h_e * h_e * budget + 2.0 * (h_e * h_e / (h_b * h_b)) * sb2 + se2);
    return 0.5 * std::log(num / den);
}

BoundResult weighted_bounds(const LinkPair& link, const std::vector<double>& weights,
                            const Scenario& scenario) {
    check_link(link);
    check_weights(link, weights);
    check_scenario(scenario);

    const std::size_t led_count = link.led_count();
    const double mean = scenario.constraints.mean();
    const bool with_peak = scenario.kind == ScenarioKind::AvgAndPeak;

    MaxentInput dist;
    if (with_peak) dist = maxent_input(scenario.constraints);

    BoundResult result;
    result.per_led_lower.assign(led_count, 0.0);
    result.per_led_upper.assign(led_count, 0.0);
    result.upper_branch.assign(led_count, UpperBranch::None);

    for (std::size_t m = 0; m < led_count; ++m) {
        const double h_b = link.h_b[m];
        const double h_e = link.h_e[m];
        const double margin = h_b / link.sigma_b - h_e / link.sigma_e;
        if (margin < 0.0) {
            result.upper_branch[m] = UpperBranch::ZeroRated;
            continue;  // eavesdropper at least as strong: this LED carries no secrecy
        }
        if (h_b == 0.0) continue;  // dark LED (then h_e = 0 too): nothing to carry

        if (with_peak) {
            result.per_led_lower[m] =
                per_led_lower_peak(h_b, h_e, link.sigma_b, link.sigma_e, scenario.constraints, dist);
            result.per_led_upper[m] =
                per_led_upper_peak(h_b, h_e, link.sigma_b, link.sigma_e, scenario.constraints.peak, mean);
        } else {
            result.per_led_lower[m] = per_led_lower_avg(h_b, h_e, link.sigma_b, link.sigma_e, mean);
            const auto [value, branch] = per_led_upper_avg(h_b, h_e, link.sigma_b, link.sigma_e, mean);
            result.per_led_upper[m] = value;
            result.upper_branch[m] = branch;
        }
    }

    double raw_lower = 0.0;
    double raw_upper = 0.0;
    for (std::size_t m = 0; m < led_count; ++m) {
        if (weights[m] == 0.0) continue;  // keep 0 * inf out of the sums
        raw_lower += weights[m] * result.per_led_lower[m];
        raw_upper += weights[m] * result.per_led_upper[m];
    }
    result.raw_lower = raw_lower;
    result.raw_upper = raw_upper;
    result.lower = std::max(0.0, raw_lower);
    result.upper = std::max(0.0, raw_upper);
    result.clamped = raw_lower < 0.0 || raw_upper < 0.0;
    return result;
}

std::pair<double, double> asymptotic_bounds(const LinkPair& link,
                                            const std::vector<double>& weights,
                                            const Scenario& scenario) {
    check_link(link);
    check_weights(link, weights);
    check_scenario(scenario);

    const bool with_peak = scenario.kind == ScenarioKind::AvgAndPeak;
    const double gap = asymptotic_gap(scenario);
    // Constant offsets of the mean-only limits around the weighted log-ratio.
    const double lower_const = 0.5 * std::log(M_E / (2.0 * M_PI));
    const double upper_const = 0.5 * std::log(4.0 * M_E / (M_PI * M_PI));

    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t m = 0; m < link.led_count(); ++m) {
        if (weights[m] == 0.0) continue;
        const double h_b = link.h_b[m];
        const double h_e = link.h_e[m];
        const double margin = h_b / link.sigma_b - h_e / link.sigma_e;
        if (margin < 0.0 || h_b == 0.0) continue;
        const double log_ratio = std::log(h_b * link.sigma_e / (h_e * link.sigma_b));
        if (with_peak) {
            lower += weights[m] * (log_ratio - gap);
            upper += weights[m] * log_ratio;
        } else {
            lower += weights[m] * (lower_const + log_ratio);
            upper += weights[m] * (upper_const + log_ratio);
        }
    }
    return {lower, upper};
}

double asymptotic_gap(const Scenario& scenario) {
    if (scenario.kind == ScenarioKind::AvgOnly) {
        return 0.5 * std::log(8.0 / M_PI);
    }
    const OpticalConstraints& oc = scenario.constraints;
    if (!std::isfinite(oc.peak) || !(oc.peak > 0.0)) {
        throw DomainError("peak-constrained gap needs a finite peak");
    }
    const double alpha = oc.alpha();
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("mean-to-peak ratio must be in (0, 1]");
    if (std::fabs(alpha - 0.5) < kUniformAlphaWindow) {
        return 0.5 * std::log(M_PI * M_E / 6.0);
    }
    const double b = solve_c(alpha, 1.0);
    const double var_frac = detail::second_moment_fraction(b) - alpha * alpha;
    return alpha * b - detail::log_expm1_over(b) +
           0.5 * std::log(2.0 * M_PI * M_E * var_frac);
}

}  // namespace vlcsec
