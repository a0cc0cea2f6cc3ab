#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fsothz {

// Raised when a scenario file or override contains an unknown, unparsable, or
// out-of-range entry. Carries the offending key so the CLI can point at it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message),
          key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// Raised on invalid arguments to samplers and budget math (non-positive
// shapes, distances below the model's validity range, and the like).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace fsothz
