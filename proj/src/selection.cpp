#include "vlcsec/selection.hpp"

#include <algorithm>
#include <cmath>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

std::vector<double> margins(const LinkPair& link) {
    if (link.led_count() == 0) throw DomainError("link has no LEDs");
    if (!(link.sigma_b > 0.0) || !(link.sigma_e > 0.0)) {
        throw DomainError("noise standard deviations must be > 0");
    }
    std::vector<double> result(link.led_count());
    for (std::size_t m = 0; m < link.led_count(); ++m) {
        result[m] = link.h_b[m] / link.sigma_b - link.h_e[m] / link.sigma_e;
    }
    return result;
}

}  // namespace

const char* selection_name(SelectionKind kind) {
    switch (kind) {
        case SelectionKind::US: return "us";
        case SelectionKind::CAS: return "cas";
        case SelectionKind::GS: return "gs";
    }
    return "?";
}

SelectionScheme us_probs(std::size_t led_count) {
    if (led_count == 0) throw DomainError("need at least one LED");
    SelectionScheme scheme;
    scheme.kind = SelectionKind::US;
    scheme.probs.assign(led_count, 1.0 / static_cast<double>(led_count));
    return scheme;
}

SelectionScheme cas_probs(const LinkPair& link) {
    SelectionScheme scheme;
    scheme.kind = SelectionKind::CAS;
    std::vector<double> weight = margins(link);
    double total = 0.0;
    for (double& w : weight) {
        if (w <= 0.0) {
            if (w < 0.0) scheme.negative_margins_clamped = true;
            w = 0.0;
        }
        total += w;
    }
    if (total <= 0.0) {
        throw NoSecureLedError("every LED margin is <= 0; channel-adaptive selection is undefined");
    }
    for (double& w : weight) w /= total;
    scheme.probs = std::move(weight);
    return scheme;
}

SelectionScheme gs_probs(const LinkPair& link) {
    SelectionScheme scheme;
    scheme.kind = SelectionKind::GS;
    const std::vector<double> margin = margins(link);
    // max_element keeps the first of equal maxima: lowest-index tie-break.
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(margin.begin(), margin.end()) - margin.begin());
    scheme.probs.assign(link.led_count(), 0.0);
    scheme.probs[best] = 1.0;
    return scheme;
}

std::size_t sample_active_led(const SelectionScheme& scheme, double r) {
    if (scheme.probs.empty()) throw DomainError("selection scheme has no probabilities");
    if (!(r >= 0.0) || r > 1.0) throw DomainError("uniform draw must lie in [0, 1]");
    double cumulative = 0.0;
    std::size_t last_positive = scheme.probs.size();
    for (std::size_t k = 0; k < scheme.probs.size(); ++k) {
        const double p = scheme.probs[k];
        if (!(p >= 0.0)) throw DomainError("selection probabilities must be >= 0");
        cumulative += p;
        if (p > 0.0) {
            last_positive = k;
            if (r <= cumulative) return k;
        }
    }
    // r slipped past the last cumulative value by rounding.
    if (last_positive == scheme.probs.size()) throw DomainError("selection scheme has no positive probability");
    return last_positive;
}

std::size_t sample_active_led(const SelectionScheme& scheme, Rng& rng) {
    return sample_active_led(scheme, rng.uniform01());
}

}  // namespace vlcsec
