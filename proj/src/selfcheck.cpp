#include "vlcsec/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "vlcsec/bounds.hpp"
#include "vlcsec/errors.hpp"
#include "vlcsec/maxent.hpp"
#include "vlcsec/selection.hpp"

namespace vlcsec {

namespace {

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::string describe(const char* fmt, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

struct Worst {
    double value = 0.0;
    std::string detail;

    void offer(double candidate, std::string where) {
        if (candidate > value || detail.empty()) {
            value = candidate;
            detail = std::move(where);
        }
    }
};

CheckResult solver_residual_check() {
    Worst worst;
    for (double peak : {0.5, 1.0, 5.0, 20.0}) {
        for (int i = 1; i <= 19; ++i) {
            const double alpha = 0.05 * i;
            if (i == 10) continue;  // singular point, handled by the uniform case
            const double c = solve_c(alpha, peak);
            const double residual = std::abs(detail::mean_fraction(c * peak) - alpha);
            worst.offer(residual, describe("alpha=%.2f peak=%g", alpha, peak));
        }
    }
    return {"shape solver residual", worst.value < 1e-12, worst.value, 1e-12, worst.detail};
}

CheckResult solver_antisymmetry_check() {
    Worst worst;
    for (double peak : {0.5, 1.0, 5.0, 20.0}) {
        for (int i = 1; i <= 9; ++i) {
            const double alpha = 0.05 * i;
            const double c_lo = solve_c(alpha, peak);
            const double c_hi = solve_c(1.0 - alpha, peak);
            const double err = std::abs(c_lo + c_hi) / std::max(1.0, std::abs(c_lo));
            worst.offer(err, describe("alpha=%.2f peak=%g", alpha, peak));
        }
    }
    return {"shape solver antisymmetry", worst.value < 1e-10, worst.value, 1e-10, worst.detail};
}

CheckResult quadrature_check(std::uint64_t seed, std::size_t draws) {
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < draws; ++i) {
        MaxentInput dist;
        switch (i % 3) {
            case 0: dist = exponential_input(log_uniform(rng, 0.75, 20.0)); break;
            case 1: dist = uniform_input(log_uniform(rng, 1.5, 20.0)); break;
            default: {
                const double peak = log_uniform(rng, 1.5, 20.0);
                double alpha = uniform(rng, 0.05, 0.95);
                while (std::abs(alpha - 0.5) < 1e-3) alpha = uniform(rng, 0.05, 0.95);
                dist = truncexp_input(alpha * peak, peak);
                break;
            }
        }
        const double h = log_uniform(rng, 1e-4, 1.0);
        const double sigma = log_uniform(rng, 1e-7, 1e-3);
        // rel_err floors the denominator at 1: entropy crosses zero inside the
        // envelope, where a bare relative error is ill-defined.
        const std::string where = describe("kind=%g peak=%g", static_cast<double>(i % 3), dist.peak);
        worst.offer(std::abs(norm_quadrature(dist) - 1.0), "norm " + where);
        worst.offer(rel_err(mean_quadrature(dist), dist.mean), "mean " + where);
        worst.offer(rel_err(entropy_quadrature(dist), entropy(dist)), "entropy " + where);
        worst.offer(rel_err(variance_quadrature(dist), input_variance(dist)),
                    "variance " + where);
        const double ovar = output_variance(dist, h, sigma);
        worst.offer(rel_err(h * h * variance_quadrature(dist) + sigma * sigma, ovar),
                    "output variance " + where);
    }
    return {"closed forms vs quadrature", worst.value < 1e-6, worst.value, 1e-6, worst.detail};
}

CheckResult dual_coding_check(std::uint64_t seed, std::size_t draws) {
    Rng rng(seed + 1);
    Worst worst;
    for (std::size_t i = 0; i < draws; ++i) {
        const double h_b = log_uniform(rng, 1e-5, 1.0);
        const double h_e = log_uniform(rng, 1e-8, 2.0 * h_b);
        const double sigma_b = log_uniform(rng, 1e-8, 1e-2);
        const double sigma_e = log_uniform(rng, 1e-8, 1e-2);
        const double nominal = log_uniform(rng, 1e-2, 1e6);
        const double xi = uniform(rng, 0.05, 0.95);
        const double mean = xi * nominal;
        // The literal truncated-exponential rendering loses ~eps/b^2 digits as the
        // exponent parameter b -> 0, so keep the mean-to-peak ratio away from the
        // uniform limit; the exact 0.5 case below exercises that branch directly.
        double alpha = 0.5;
        if (i % 3 != 0) {
            do {
                alpha = uniform(rng, 0.05, 0.95);
            } while (std::abs(alpha - 0.5) < 0.01);
        }
        const double peak = mean / alpha;

        const std::string where = describe("h_b=%g nominal=%g", h_b, nominal);
        worst.offer(rel_err(per_led_lower_avg(h_b, h_e, sigma_b, sigma_e, mean),
                            detail::lower_avg_literal(h_b, h_e, sigma_b, sigma_e, mean)),
                    "avg lower " + where);

        OpticalConstraints constraints;
        constraints.nominal = nominal;
        constraints.peak = peak;
        constraints.xi = xi;
        const MaxentInput dist = maxent_input(constraints);
        worst.offer(
            rel_err(per_led_lower_peak(h_b, h_e, sigma_b, sigma_e, constraints, dist),
                    detail::lower_peak_literal(h_b, h_e, sigma_b, sigma_e, constraints, dist)),
            "peak lower " + where);
        worst.offer(rel_err(per_led_upper_peak(h_b, h_e, sigma_b, sigma_e, peak, mean),
                            detail::upper_peak_literal(h_b, h_e, sigma_b, sigma_e, peak, mean)),
                    "peak upper " + where);
    }
    return {"assembled vs literal bounds", worst.value < 1e-10, worst.value, 1e-10, worst.detail};
}

CheckResult constants_check() {
    Worst worst;
    worst.offer(rel_err(asymptotic_gap(avg_scenario(1.0, 0.5)), 0.46735582791521788),
                "avg gap");
    worst.offer(rel_err(asymptotic_gap(peak_scenario(1.0, 1.0, 0.5)), 0.17648520831067259),
                "peak gap alpha=0.5");
    worst.offer(rel_err(asymptotic_gap(peak_scenario(1.0, 1.0, 0.3)), 0.26761578642165853),
                "peak gap alpha=0.3");
    return {"high-intensity gap constants", worst.value < 1e-13, worst.value, 1e-13,
            worst.detail};
}

CheckResult ordering_check(std::uint64_t seed, std::size_t draws) {
    Rng rng(seed + 2);
    Worst worst;
    worst.offer(-std::numeric_limits<double>::infinity(), "none");
    const RoomLayout room = default_room();
    const double sigma = default_noise_std();
    const std::size_t total = std::max<std::size_t>(10, draws) * 10;
    for (std::size_t i = 0; i < total; ++i) {
        LinkPair link;
        if (i % 2 == 0) {
            const std::size_t m = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 8.0));
            link = make_ratio_link(std::pow(10.0, uniform(rng, 6.0, 40.0) / 10.0),
                                   std::min<std::size_t>(m, 8), sigma);
        } else {
            const Vec3 bob{uniform(rng, 0.25, 4.75), uniform(rng, 0.25, 3.75),
                           uniform(rng, 0.5, 1.5)};
            const Vec3 eve{uniform(rng, 0.25, 4.75), uniform(rng, 0.25, 3.75),
                           uniform(rng, 0.5, 1.5)};
            link = geometry_link(room.leds, bob, eve, sigma, sigma);
        }
        // The closed forms can genuinely cross when a margin-positive LED sees a
        // peak intensity within ~26 noise standard deviations (measured worst case:
        // h*A/sigma ~ 25.7 with the eavesdropper gain ratio near 1).  Room gains
        // are ~1e-6, so geometry draws need power >= 30 dB to clear that window;
        // ratio-mode links (h_b = 1) are already clear from 0 dB.
        const double p_db = uniform(rng, i % 2 == 0 ? 0.0 : 30.0, 80.0);
        const double nominal = std::pow(10.0, p_db / 10.0);
        const double xi = uniform(rng, 0.05, 0.95);
        const double peak = xi * nominal / uniform(rng, 0.05, 0.95);

        std::vector<double> weights;
        try {
            switch (i % 3) {
                case 0: weights = us_probs(link.led_count()).probs; break;
                case 1: weights = cas_probs(link).probs; break;
                default: weights = gs_probs(link).probs; break;
            }
        } catch (const NoSecureLedError&) {
            continue;  // nothing to transmit on; both bounds are vacuously 0
        }
        for (const Scenario& scenario :
             {avg_scenario(nominal, xi), peak_scenario(nominal, peak, xi)}) {
            const BoundResult bounds = weighted_bounds(link, weights, scenario);
            worst.offer(bounds.lower - bounds.upper,
                        describe("p_db=%g xi=%g", p_db, xi) +
                            (scenario.kind == ScenarioKind::AvgOnly ? " avg" : " peak"));
        }
    }
    return {"post-clamp bound ordering", worst.value <= 0.0, worst.value, 0.0, worst.detail};
}

}  // namespace

bool SelfcheckReport::all_passed() const {
    for (const CheckResult& check : checks) {
        if (!check.passed) return false;
    }
    return true;
}

SelfcheckReport run_selfcheck(std::uint64_t seed, std::size_t draws) {
    SelfcheckReport report;
    report.checks.push_back(solver_residual_check());
    report.checks.push_back(solver_antisymmetry_check());
    report.checks.push_back(quadrature_check(seed, draws));
    report.checks.push_back(dual_coding_check(seed, draws));
    report.checks.push_back(constants_check());
    report.checks.push_back(ordering_check(seed, draws));
    return report;
}

std::string format_report(const SelfcheckReport& report) {
    std::string out;
    for (const CheckResult& check : report.checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "%s %-30s worst=%.3e limit=%.3e (%s)\n",
                      check.passed ? "[ok]  " : "[FAIL]", check.name.c_str(), check.worst,
                      check.limit, check.detail.c_str());
        out += line;
    }
    out += report.all_passed() ? "all checks passed\n" : "SELF-CHECK FAILED\n";
    return out;
}

}  // namespace vlcsec
