// config.hpp: strict key/value experiment configuration.
//
//   # comment
//   [squeezer_i]
//   squeezing_db = 7.656
//   antisqueezing_db = 7.656
//
// Keys may also be written fully qualified outside any section
// (`run.shots = 1000`). Unknown and duplicate keys are errors.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvclone/errors.hpp"
#include "cvclone/opo.hpp"
#include "cvclone/protocol.hpp"

namespace cvclone::cli {

class ConfigError : public Error {
public:
    ConfigError(const std::string& source, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct AppConfig {
    ProtocolConfig protocol;
    std::optional<OpoParams> opo;

    friend bool operator==(const AppConfig&, const AppConfig&) = default;
};

// Every accepted key, in serialization order.
const std::vector<std::string>& config_keys();

// Syntax, unknown keys, missing required keys and out-of-range values raise
// ConfigError. Uncertainty-violating squeezer specs raise PhysicalityError.
AppConfig parse_config(std::string_view text, const std::string& source = "config");
AppConfig load_config(const std::filesystem::path& path);

std::string serialize_config(const AppConfig& config);

}  // namespace cvclone::cli
