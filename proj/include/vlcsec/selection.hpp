#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vlcsec/channel.hpp"

namespace vlcsec {

enum class SelectionKind { US, CAS, GS };

// Per-LED activation probabilities of a transmitter-selection scheme.
struct SelectionScheme {
    SelectionKind kind = SelectionKind::US;
    std::vector<double> probs;
    // CAS only: set when some margin h_b/sigma_b - h_e/sigma_e was negative
    // and clamped to probability 0.
    bool negative_margins_clamped = false;
};

const char* selection_name(SelectionKind kind);  // "us", "cas", "gs"

// Seedable source of uniform [0, 1) doubles. The library never owns global
// random state; every sampling call takes one of these.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform01() {
        // 53-bit mantissa draw
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    std::uint64_t next_raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Equi-probable selection: every LED with probability 1/M.
SelectionScheme us_probs(std::size_t led_count);

// Channel-adaptive selection: probability proportional to the positive part
// of the margin h_b/sigma_b - h_e/sigma_e. Throws NoSecureLedError when no
// margin is positive.
SelectionScheme cas_probs(const LinkPair& link);

// Greedy selection: probability one on the largest-margin LED, ties broken
// by the lowest index.
SelectionScheme gs_probs(const LinkPair& link);

// Cumulative-probability selection for a single uniform draw r: the smallest
// index k with r <= probs[0] + ... + probs[k] and probs[k] > 0. 0-based.
std::size_t sample_active_led(const SelectionScheme& scheme, double r);

// Same, drawing r from the caller's generator.
std::size_t sample_active_led(const SelectionScheme& scheme, Rng& rng);

}  // namespace vlcsec
