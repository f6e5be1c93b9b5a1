#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vlcsec/channel.hpp"
#include "vlcsec/errors.hpp"

using namespace vlcsec;

namespace {

LedParams led_at(double x, double y, double z) {
    LedParams led;
    led.position = Vec3{x, y, z};
    return led;
}

}  // namespace

TEST_CASE("on-axis gain at 2.2 m matches the hand value") {
    const LedParams led = led_at(0.0, 0.0, 2.2);
    const double gain = lambertian_gain(led, Vec3{0.0, 0.0, 0.0});
    // (m+1) A / (2 pi d^2) * cos^m * cos = 2e-4 / (2 pi 2.2^2) = 1e-4/(pi 2.2^2)
    CHECK(gain == doctest::Approx(1e-4 / (M_PI * 2.2 * 2.2)).epsilon(1e-14));
    CHECK(std::fabs(gain - 6.577e-6) < 1e-9);
}

TEST_CASE("incidence outside the field of view gives zero") {
    const LedParams led = led_at(0.0, 0.0, 3.0);
    // cos(psi) = 3/sqrt(109) ~ 0.287 < cos(60 deg)
    CHECK(lambertian_gain(led, Vec3{10.0, 0.0, 0.0}) == 0.0);
    // Just inside the FOV cone the gain is positive.
    CHECK(lambertian_gain(led, Vec3{3.0 * std::tan(1.0), 0.0, 0.0}) > 0.0);
}

TEST_CASE("mirror-symmetric receivers see equal gains") {
    const LedParams led = led_at(2.0, 3.0, 3.0);
    const double left = lambertian_gain(led, Vec3{1.0, 3.0, 0.8});
    const double right = lambertian_gain(led, Vec3{3.0, 3.0, 0.8});
    CHECK(left == right);
    CHECK(left > 0.0);
}

TEST_CASE("coincident positions are a domain error") {
    const LedParams led = led_at(1.0, 1.0, 2.0);
    CHECK_THROWS_AS(lambertian_gain(led, Vec3{1.0, 1.0, 2.0}), DomainError);
}

TEST_CASE("receivers level with or above the LED see nothing") {
    const LedParams led = led_at(0.0, 0.0, 2.0);
    CHECK(lambertian_gain(led, Vec3{1.0, 0.0, 2.0}) == 0.0);
    CHECK(lambertian_gain(led, Vec3{0.0, 0.0, 3.0}) == 0.0);
}

TEST_CASE("on-axis gain scales as 1/d^2") {
    const LedParams led = led_at(0.0, 0.0, 5.0);
    const double g1 = lambertian_gain(led, Vec3{0.0, 0.0, 4.0});  // d = 1
    const double g2 = lambertian_gain(led, Vec3{0.0, 0.0, 3.0});  // d = 2
    const double g3 = lambertian_gain(led, Vec3{0.0, 0.0, 2.0});  // d = 3
    CHECK(g1 * 1.0 == doctest::Approx(g2 * 4.0).epsilon(1e-14));
    CHECK(g1 * 1.0 == doctest::Approx(g3 * 9.0).epsilon(1e-14));
}

TEST_CASE("gain decays with horizontal offset at fixed height") {
    const LedParams led = led_at(0.0, 0.0, 3.0);
    double previous = lambertian_gain(led, Vec3{0.0, 0.0, 0.0});
    for (int i = 1; i <= 20; ++i) {
        const double r = 0.2 * i;
        const double gain = lambertian_gain(led, Vec3{r, 0.0, 0.0});
        CHECK(gain <= previous);
        previous = gain;
    }
}

TEST_CASE("higher Lambertian order narrows the beam") {
    LedParams wide = led_at(0.0, 0.0, 3.0);
    LedParams narrow = wide;
    narrow.lambertian_order = 5.0;
    // Off axis, the narrow beam is relatively dimmer.
    const Vec3 off{1.5, 0.0, 0.0};
    const Vec3 on{0.0, 0.0, 0.0};
    const double wide_rel = lambertian_gain(wide, off) / lambertian_gain(wide, on);
    const double narrow_rel = lambertian_gain(narrow, off) / lambertian_gain(narrow, on);
    CHECK(narrow_rel < wide_rel);
}

TEST_CASE("invalid LED parameters are rejected") {
    LedParams led = led_at(0.0, 0.0, 3.0);
    led.lambertian_order = 0.0;
    CHECK_THROWS_AS(lambertian_gain(led, Vec3{0.0, 0.0, 0.0}), DomainError);
    led = led_at(0.0, 0.0, 3.0);
    led.pd_area = -1.0;
    CHECK_THROWS_AS(lambertian_gain(led, Vec3{0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("dBm conversion fixed points") {
    CHECK(std::fabs(dbm_to_watts(-104.0) - 3.9811e-14) < 1e-17);
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dBm conversion is increasing and decade-periodic") {
    double previous = dbm_to_watts(-120.0);
    for (int x = -119; x <= 40; ++x) {
        const double w = dbm_to_watts(x);
        CHECK(w > previous);
        previous = w;
    }
    for (double x : {-104.0, -30.0, 0.0, 17.0}) {
        CHECK(dbm_to_watts(x + 10.0) == doctest::Approx(10.0 * dbm_to_watts(x)).epsilon(1e-14));
    }
}

TEST_CASE("default noise standard deviation comes from -104 dBm") {
    CHECK(default_noise_std() == doctest::Approx(std::sqrt(dbm_to_watts(-104.0))).epsilon(1e-15));
    CHECK(default_noise_std() == doctest::Approx(1.9952623149688795e-7).epsilon(1e-12));
}

TEST_CASE("ratio link fills both gain vectors") {
    const LinkPair link = make_ratio_link(1000.0, 8, 1e-7);
    REQUIRE(link.led_count() == 8);
    for (std::size_t m = 0; m < 8; ++m) {
        CHECK(link.h_b[m] == 1.0);
        CHECK(link.h_e[m] == doctest::Approx(1e-3).epsilon(1e-15));
    }
    CHECK(link.sigma_b == 1e-7);
    CHECK(link.sigma_e == 1e-7);
}

TEST_CASE("ratio link reproduces the requested ratio exactly") {
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const LinkPair link = make_ratio_link(ratio, 3, 1.0);
        for (std::size_t m = 0; m < link.led_count(); ++m) {
            CHECK(link.h_b[m] / link.h_e[m] == ratio);
        }
    }
}

TEST_CASE("ratio link rejects bad arguments") {
    CHECK_THROWS_AS(make_ratio_link(0.0, 4, 1.0), DomainError);
    CHECK_THROWS_AS(make_ratio_link(-2.0, 4, 1.0), DomainError);
    CHECK_THROWS_AS(make_ratio_link(10.0, 0, 1.0), DomainError);
    CHECK_THROWS_AS(make_ratio_link(10.0, 4, 0.0), DomainError);
}

TEST_CASE("geometry link computes per-LED gains for both receivers") {
    std::vector<LedParams> leds{led_at(1.0, 2.0, 3.0), led_at(4.0, 3.0, 3.0)};
    const Vec3 bob{2.5, 1.5, 0.8};
    const Vec3 eve{1.0, 3.5, 0.8};
    const LinkPair link = geometry_link(leds, bob, eve, 1e-7, 2e-7);
    REQUIRE(link.led_count() == 2);
    CHECK(link.h_b[0] == lambertian_gain(leds[0], bob));
    CHECK(link.h_b[1] == lambertian_gain(leds[1], bob));
    CHECK(link.h_e[0] == lambertian_gain(leds[0], eve));
    CHECK(link.h_e[1] == lambertian_gain(leds[1], eve));
    CHECK(link.sigma_b == 1e-7);
    CHECK(link.sigma_e == 2e-7);
}

TEST_CASE("colocated receivers have identical gain vectors") {
    std::vector<LedParams> leds;
    for (double x : {1.0, 2.0, 3.0, 4.0}) leds.push_back(led_at(x, 2.0, 3.0));
    const Vec3 p{2.2, 1.8, 0.8};
    const LinkPair link = geometry_link(leds, p, p, 1e-7, 1e-7);
    for (std::size_t m = 0; m < link.led_count(); ++m) {
        CHECK(link.h_b[m] == link.h_e[m]);
    }
}

TEST_CASE("a receiver outside every field of view gets a zero vector") {
    std::vector<LedParams> leds{led_at(1.0, 2.0, 3.0), led_at(4.0, 3.0, 3.0)};
    // Just below the ceiling: every LED is seen at a grazing angle.
    const LinkPair link = geometry_link(leds, Vec3{2.5, 1.5, 0.8}, Vec3{2.5, 1.5, 2.9}, 1e-7, 1e-7);
    for (std::size_t m = 0; m < link.led_count(); ++m) {
        CHECK(link.h_e[m] == 0.0);
        CHECK(link.h_b[m] > 0.0);
    }
}

TEST_CASE("geometry link input validation") {
    CHECK_THROWS_AS(geometry_link({}, Vec3{}, Vec3{}, 1e-7, 1e-7), DomainError);
    std::vector<LedParams> leds{led_at(1.0, 2.0, 3.0)};
    CHECK_THROWS_AS(geometry_link(leds, Vec3{0, 0, 0}, Vec3{1, 1, 1}, 0.0, 1e-7), DomainError);
}
