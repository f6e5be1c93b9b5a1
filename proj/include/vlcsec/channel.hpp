#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace vlcsec {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// One ceiling LED together with the receiver-side optics it is paired with.
// Orientation is fixed: LED normal straight down, photodiode normal straight up.
struct LedParams {
    Vec3 position;
    double lambertian_order = 1.0;       // > 0
    double pd_area = 1e-4;               // photodiode area, m^2, > 0
    double fov_half_angle = 1.0471975511965976;  // 60 degrees, radians in (0, pi/2]
    double optical_filter_gain = 1.0;    // >= 0
    double concentrator_gain = 1.0;      // >= 0
};

// Per-LED DC gains and noise standard deviations for the legitimate receiver
// (b) and the eavesdropper (e). Gains are >= 0, sigmas > 0, equal lengths.
struct LinkPair {
    std::vector<double> h_b;
    std::vector<double> h_e;
    double sigma_b = 0.0;
    double sigma_e = 0.0;

    std::size_t led_count() const { return h_b.size(); }
};

// Intensity constraints: mean E[X] = xi * nominal, optional peak X <= peak.
struct OpticalConstraints {
    double nominal = 0.0;  // nominal intensity P, > 0
    double peak = std::numeric_limits<double>::infinity();  // peak A, or +inf
    double xi = 0.0;       // dimming target, in (0, 1)

    // mean-to-peak ratio; 0 when no peak constraint
    double alpha() const {
        if (peak == std::numeric_limits<double>::infinity()) return 0.0;
        return xi * nominal / peak;
    }
    double mean() const { return xi * nominal; }
};

// Line-of-sight Lambertian gain for a downward LED and an upward receiver.
// Zero when the incidence angle exceeds the field-of-view half angle or the
// receiver is not below the LED. Throws DomainError for coincident positions.
double lambertian_gain(const LedParams& led, const Vec3& receiver);

// 10^((x - 30) / 10): dBm to watts.
double dbm_to_watts(double dbm);

// Noise standard deviation used throughout when a layout does not override
// it: sqrt(dbm_to_watts(-104)).
double default_noise_std();

// Abstract channel with h_b = 1, h_e = 1/ratio on every LED and equal noise
// standard deviations. ratio <= 0 throws DomainError.
LinkPair make_ratio_link(double ratio, std::size_t led_count, double sigma);

// Geometric channel: per-LED Lambertian gains for both receiver positions.
LinkPair geometry_link(const std::vector<LedParams>& leds, const Vec3& bob,
                       const Vec3& eve, double sigma_b, double sigma_e);

}  // namespace vlcsec
