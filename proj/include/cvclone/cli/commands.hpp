#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cvclone/cli/run_output.hpp"

namespace cvclone::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitNumericError = 2,
};

// Largest tolerated |analytic - circuit| difference before `run` fails.
inline constexpr double kPathAgreementTol = 1e-9;

RunOutput cmd_run(const AppConfig& config);

struct SampleOptions {
    unsigned threads = 1;
    bool fully_sampled = false;
};

// Monte Carlo summary plus the per-shot records.
RunOutput cmd_sample(const AppConfig& config, const SampleOptions& options,
                     std::vector<ShotRecord>* shots);
void write_shots_csv(std::ostream& os, const std::vector<ShotRecord>& shots);

enum class SweepParam { SqueezingDb, PumpMw };

struct SweepRow {
    double param_value = 0.0;
    double squeezing_db = 0.0;
    double antisqueezing_db = 0.0;
    double var_x_clone = 0.0;
    double var_p_clone = 0.0;
    double fidelity = 0.0;
};

// Inclusive linear grid of `steps` points; throws ConfigError for from >= to or steps < 2.
std::vector<SweepRow> cmd_sweep(const AppConfig& config, SweepParam param, double from, double to,
                                int steps);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

nlohmann::json cmd_criteria(const AppConfig& config);

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvclone::cli
