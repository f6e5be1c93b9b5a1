#pragma once

#include <stdexcept>
#include <string>

namespace vlcsec {

// Bad user-supplied configuration: unknown keys, malformed values, invalid
// sweep specs. Maps to exit code 1 in the CLI and VLCSEC_ERR_CONFIG in the
// C API.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerically invalid request: parameters outside the formulas' domain.
// Maps to exit code 2 / VLCSEC_ERR_DOMAIN.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// alpha = 0.5 has no finite transcendental parameter; the uniform branch
// must be used instead. Distinct type so callers can dispatch.
class DegenerateAlphaError : public DomainError {
public:
    explicit DegenerateAlphaError(const std::string& msg) : DomainError(msg) {}
};

// Every LED margin h_B/sigma_B - h_E/sigma_E is <= 0: channel-adaptive
// selection has no LED to give positive probability to.
class NoSecureLedError : public DomainError {
public:
    explicit NoSecureLedError(const std::string& msg) : DomainError(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vlcsec
