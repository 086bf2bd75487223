#pragma once

#include <array>
#include <optional>
#include <string>

#include "json.hpp"

#include "cvclone/cli/config.hpp"
#include "cvclone/metrics.hpp"
#include "cvclone/protocol.hpp"

namespace cvclone::cli {

struct CriteriaValues {
    double a_b = 0.0;
    double a_c = 0.0;
    double b_c = 0.0;
    friend bool operator==(const CriteriaValues&, const CriteriaValues&) = default;
};

struct Provenance {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::string version;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One gain component; empty when undefined for the given input.
struct GainField {
    std::optional<double> value;
    std::optional<double> standard_error;
    friend bool operator==(const GainField&, const GainField&) = default;
};

struct RunOutput {
    std::string command;
    AppConfig config;
    CloneMoments moments;
    FidelityReport fidelity;
    CriteriaValues criteria;
    std::array<GainField, 4> gains{};  // g_x1, g_p1, g_x2, g_p2
    // Largest |analytic - circuit| over the eight clone moments, when both ran.
    std::optional<double> path_agreement;
    Provenance provenance;
};

bool operator==(const FidelityReport& a, const FidelityReport& b);
bool operator==(const RunOutput& a, const RunOutput& b);

nlohmann::json config_to_json(const AppConfig& config);
AppConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunOutput& out);
RunOutput run_output_from_json(const nlohmann::json& j);

}  // namespace cvclone::cli
