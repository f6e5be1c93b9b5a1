#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vlcsec/channel.hpp"

namespace vlcsec {

// Plain-text key-value store: one `key = value` pair per line, `#` comments.
// Shared by room layout files and experiment spec files.
class KeyValueFile {
public:
    static KeyValueFile parse_text(const std::string& text, const std::string& origin);
    static KeyValueFile parse_file(const std::string& path);

    bool has(const std::string& key) const;
    // Typed getters throw ConfigError naming the offending key.
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int_or(const std::string& key, long long fallback) const;
    Vec3 get_vec3(const std::string& key) const;  // "x, y, z"

    const std::map<std::string, std::string>& entries() const { return entries_; }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> entries_;
    std::string origin_;
};

// Room geometry: LED positions plus receiver-side constants.
struct RoomLayout {
    Vec3 room{5.0, 4.0, 3.0};
    std::vector<LedParams> leds;
    Vec3 bob;
    std::optional<Vec3> eve;
    double sigma_dbm = -104.0;

    double noise_std() const;
};

// Parse keys: room, led[i].pos, bob.pos, eve.pos, sigma_dbm,
// lambertian_order, pd_area, fov_deg. led indices must be contiguous from 0.
RoomLayout parse_layout(const KeyValueFile& kv);
RoomLayout load_layout(const std::string& path);

// The 5 m x 4 m x 3 m room with 8 ceiling LEDs and the desk-height receiver
// used as the built-in default for geometry experiments.
RoomLayout default_room();

}  // namespace vlcsec
