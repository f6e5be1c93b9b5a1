#include "vlcsec/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x)) {
        throw ConfigError("key '" + key + "': expected a finite number, got '" + v + "'");
    }
    return x;
}

}  // namespace

KeyValueFile KeyValueFile::parse_text(const std::string& text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (kv.entries_.count(key)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        kv.entries_[key] = value;
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string KeyValueFile::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "' in " + origin_);
    return it->second;
}

std::string KeyValueFile::get_string_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& key) const {
    return parse_number(key, get_string(key));
}

double KeyValueFile::get_double_or(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return get_double(key);
}

long long KeyValueFile::get_int(const std::string& key) const {
    const double x = get_double(key);
    const long long n = static_cast<long long>(x);
    if (static_cast<double>(n) != x) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + get_string(key) + "'");
    }
    return n;
}

long long KeyValueFile::get_int_or(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    return get_int(key);
}

Vec3 KeyValueFile::get_vec3(const std::string& key) const {
    const std::string raw = get_string(key);
    std::string cleaned = raw;
    for (char& c : cleaned) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(cleaned);
    Vec3 v;
    std::string extra;
    if (!(in >> v.x >> v.y >> v.z) || (in >> extra)) {
        throw ConfigError("key '" + key + "': expected three coordinates, got '" + raw + "'");
    }
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
        throw ConfigError("key '" + key + "': coordinates must be finite");
    }
    return v;
}

double RoomLayout::noise_std() const { return std::sqrt(dbm_to_watts(sigma_dbm)); }

RoomLayout parse_layout(const KeyValueFile& kv) {
    RoomLayout layout;
    if (kv.has("room")) layout.room = kv.get_vec3("room");
    layout.sigma_dbm = kv.get_double_or("sigma_dbm", -104.0);

    LedParams proto;
    proto.lambertian_order = kv.get_double_or("lambertian_order", 1.0);
    proto.pd_area = kv.get_double_or("pd_area", 1e-4);
    proto.fov_half_angle = kv.get_double_or("fov_deg", 60.0) * M_PI / 180.0;
    if (proto.lambertian_order <= 0.0) throw ConfigError("key 'lambertian_order': must be > 0");
    if (proto.pd_area <= 0.0) throw ConfigError("key 'pd_area': must be > 0");
    if (proto.fov_half_angle <= 0.0 || proto.fov_half_angle > M_PI / 2.0) {
        throw ConfigError("key 'fov_deg': must be in (0, 90]");
    }

    for (std::size_t i = 0;; ++i) {
        const std::string key = "led[" + std::to_string(i) + "].pos";
        if (!kv.has(key)) break;
        LedParams led = proto;
        led.position = kv.get_vec3(key);
        layout.leds.push_back(led);
    }
    if (layout.leds.empty()) throw ConfigError("missing key 'led[0].pos' in " + kv.origin());
    for (const auto& [key, value] : kv.entries()) {
        (void)value;
        if (key.rfind("led[", 0) == 0) {
            // Reject gaps such as led[0] + led[2] with no led[1].
            const std::size_t close = key.find("].pos");
            bool ok = close != std::string::npos && close + 5 == key.size();
            if (ok) {
                const std::string idx = key.substr(4, close - 4);
                char* end = nullptr;
                const unsigned long n = std::strtoul(idx.c_str(), &end, 10);
                ok = end != idx.c_str() && *end == '\0' && n < layout.leds.size();
            }
            if (!ok) throw ConfigError("key '" + key + "': LED indices must be contiguous from 0");
            continue;
        }
        const bool known = key == "room" || key == "bob.pos" || key == "eve.pos" ||
                           key == "sigma_dbm" || key == "lambertian_order" ||
                           key == "pd_area" || key == "fov_deg";
        if (!known) throw ConfigError("unknown key '" + key + "' in " + kv.origin());
    }

    layout.bob = kv.get_vec3("bob.pos");
    if (kv.has("eve.pos")) layout.eve = kv.get_vec3("eve.pos");
    return layout;
}

RoomLayout load_layout(const std::string& path) { return parse_layout(KeyValueFile::parse_file(path)); }

RoomLayout default_room() {
    RoomLayout layout;
    layout.room = Vec3{5.0, 4.0, 3.0};
    layout.bob = Vec3{2.5, 1.5, 0.8};
    const double xs[] = {1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0};
    const double ys[] = {2.0, 3.0, 2.0, 3.0, 2.0, 3.0, 2.0, 3.0};
    for (int i = 0; i < 8; ++i) {
        LedParams led;
        led.position = Vec3{xs[i], ys[i], 3.0};
        layout.leds.push_back(led);
    }
    return layout;
}

}  // namespace vlcsec
