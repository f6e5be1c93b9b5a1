#include "vlcsec/channel.hpp"

#include <cmath>

#include "vlcsec/errors.hpp"

namespace vlcsec {

double lambertian_gain(const LedParams& led, const Vec3& receiver) {
    if (led.lambertian_order <= 0.0) throw DomainError("lambertian order must be > 0");
    if (led.pd_area <= 0.0) throw DomainError("photodiode area must be > 0");

    const double dx = receiver.x - led.position.x;
    const double dy = receiver.y - led.position.y;
    const double dz = led.position.z - receiver.z;  // positive when receiver below
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 == 0.0) throw DomainError("LED and receiver positions coincide");
    if (dz <= 0.0) return 0.0;  // LED emits downward only

    const double d = std::sqrt(d2);
    // LED normal down, receiver normal up: emission and incidence cosines match.
    const double cos_angle = dz / d;
    if (cos_angle < std::cos(led.fov_half_angle)) return 0.0;

    const double radiation = std::pow(cos_angle, led.lambertian_order);
    return (led.lambertian_order + 1.0) * led.pd_area / (2.0 * M_PI * d2) * radiation *
           led.optical_filter_gain * led.concentrator_gain * cos_angle;
}

double dbm_to_watts(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double default_noise_std() {
    return std::sqrt(dbm_to_watts(-104.0));
}

LinkPair make_ratio_link(double ratio, std::size_t led_count, double sigma) {
    if (!(ratio > 0.0)) throw DomainError("gain ratio must be > 0");
    if (led_count == 0) throw DomainError("need at least one LED");
    if (!(sigma > 0.0)) throw DomainError("noise standard deviation must be > 0");
    LinkPair link;
    link.h_b.assign(led_count, 1.0);
    link.h_e.assign(led_count, 1.0 / ratio);
    link.sigma_b = sigma;
    link.sigma_e = sigma;
    return link;
}

LinkPair geometry_link(const std::vector<LedParams>& leds, const Vec3& bob,
                       const Vec3& eve, double sigma_b, double sigma_e) {
    if (leds.empty()) throw DomainError("need at least one LED");
    if (!(sigma_b > 0.0) || !(sigma_e > 0.0)) {
        throw DomainError("noise standard deviations must be > 0");
    }
    LinkPair link;
    link.h_b.reserve(leds.size());
    link.h_e.reserve(leds.size());
    for (const LedParams& led : leds) {
        link.h_b.push_back(lambertian_gain(led, bob));
        link.h_e.push_back(lambertian_gain(led, eve));
    }
    link.sigma_b = sigma_b;
    link.sigma_e = sigma_e;
    return link;
}

}  // namespace vlcsec
