#include "cvclone/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"

#include "cvclone/cli/format.hpp"
#include "cvclone/opo.hpp"
#include "cvclone/resource.hpp"

#ifndef CVCLONE_VERSION
#define CVCLONE_VERSION "unknown"
#endif

namespace cvclone::cli {

namespace {

CriteriaValues criteria_for(const ProtocolConfig& p) {
    const ResourceState r = build_telecloning_resource(p.spec_i, p.spec_ii, p.eta_resource);
    return {bipartite_criterion_lhs(r, Partner::B), bipartite_criterion_lhs(r, Partner::C),
            clone_pair_criterion_lhs(r)};
}

std::array<GainField, 4> gains_for(const CloneMoments& m, std::complex<double> alpha) {
    const std::array<std::pair<int, bool>, 4> comps{{{0, true}, {0, false}, {1, true}, {1, false}}};
    constexpr std::array<const char*, 4> names{"g_x1", "g_p1", "g_x2", "g_p2"};
    std::array<GainField, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto [clone, is_x] = comps[k];
        const QuadratureMoments& q = m.clone(clone);
        std::optional<double> se;
        if (m.standard_errors) {
            const auto& e = (*m.standard_errors)[static_cast<std::size_t>(clone)];
            se = is_x ? e.mean_x : e.mean_p;
        }
        try {
            const GainEstimate g = estimate_gain(is_x ? q.mean_x : q.mean_p, se,
                                                 is_x ? alpha.real() : alpha.imag(), names[k]);
            out[k] = {g.value, g.standard_error};
        } catch (const UndefinedGainError&) {
            out[k] = {};
        }
    }
    return out;
}

double max_moment_difference(const CloneMoments& a, const CloneMoments& b) {
    double d = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto& x = a.clone(k);
        const auto& y = b.clone(k);
        d = std::max({d, std::abs(x.mean_x - y.mean_x), std::abs(x.mean_p - y.mean_p),
                      std::abs(x.var_x - y.var_x), std::abs(x.var_p - y.var_p)});
    }
    return d;
}

Provenance provenance_for(const ProtocolConfig& p) { return {p.seed, p.shots, CVCLONE_VERSION}; }

void print_summary(std::ostream& err, const RunOutput& r) {
    const auto old = err.flags();
    err << std::fixed << std::setprecision(6);
    err << "clone  mean_x      mean_p      var_x     var_p     fidelity\n";
    for (int k = 0; k < 2; ++k) {
        const auto& q = r.moments.clone(k);
        err << "  " << k + 1 << "   " << std::setw(10) << q.mean_x << "  " << std::setw(10) << q.mean_p
            << "  " << q.var_x << "  " << q.var_p << "  "
            << (k == 0 ? r.fidelity.f_clone1 : r.fidelity.f_clone2) << '\n';
    }
    err << "criterion A-B " << r.criteria.a_b << "  A-C " << r.criteria.a_c << "  B-C "
        << r.criteria.b_c << '\n';
    err.flags(old);
}

}  // namespace

RunOutput cmd_run(const AppConfig& config) {
    const ProtocolConfig& p = config.protocol;
    RunOutput out;
    out.command = "run";
    out.config = config;
    out.moments = run_analytic(p);
    const CloneMoments circuit = run_circuit_analytic(p, [](std::string_view stage, const GaussianState& s) {
        require_physical(s, std::string(stage).c_str());
    });
    out.path_agreement = max_moment_difference(out.moments, circuit);
    if (!(*out.path_agreement <= kPathAgreementTol)) {
        throw Error("run: analytic and circuit paths disagree by " + format_number(*out.path_agreement));
    }
    out.fidelity = fidelity_report(out.moments, p.input_alpha);
    out.criteria = criteria_for(p);
    out.gains = gains_for(out.moments, p.input_alpha);
    out.provenance = provenance_for(p);
    return out;
}

RunOutput cmd_sample(const AppConfig& config, const SampleOptions& options,
                     std::vector<ShotRecord>* shots) {
    const ProtocolConfig& p = config.protocol;
    MonteCarloOptions mc;
    mc.threads = options.threads;
    mc.fully_sampled = options.fully_sampled;
    MonteCarloResult result = run_monte_carlo(p, mc);

    RunOutput out;
    out.command = "sample";
    out.config = config;
    out.moments = result.moments;
    out.fidelity = fidelity_report(out.moments, p.input_alpha);
    out.criteria = criteria_for(p);
    out.gains = gains_for(out.moments, p.input_alpha);
    out.provenance = provenance_for(p);
    if (shots) *shots = std::move(result.shots);
    return out;
}

void write_shots_csv(std::ostream& os, const std::vector<ShotRecord>& shots) {
    CsvWriter csv(os, {"shot", "x_u", "p_v", "x1", "p1", "x2", "p2"});
    for (std::size_t j = 0; j < shots.size(); ++j) {
        const ShotRecord& s = shots[j];
        csv.row(j, {s.x_u, s.p_v, s.clone_means[0], s.clone_means[1], s.clone_means[2], s.clone_means[3]});
    }
}

std::vector<SweepRow> cmd_sweep(const AppConfig& config, SweepParam param, double from, double to,
                                int steps) {
    if (!(from < to)) throw ConfigError("sweep", 0, "--from must be smaller than --to");
    if (steps < 2) throw ConfigError("sweep", 0, "--steps must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        grid[static_cast<std::size_t>(k)] = k == steps - 1 ? to : from + (to - from) * k / (steps - 1);
    }

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    ProtocolConfig p = config.protocol;
    if (param == SweepParam::SqueezingDb) {
        if (from < 0.0) throw ConfigError("sweep", 0, "squeezing_db sweep must start at >= 0 dB");
        for (double db : grid) {
            p.spec_i = SqueezerSpec::pure(db);
            p.spec_ii = SqueezerSpec::pure(db);
            const CloneMoments m = run_analytic(p);
            const FidelityReport f = fidelity_report(m, p.input_alpha);
            rows.push_back({db, db, db, m.clone(0).var_x, m.clone(0).var_p, f.f_clone1});
        }
        return rows;
    }

    if (!config.opo) throw ConfigError("sweep", 0, "pump_mw sweep needs an [opo] section in the config");
    if (from < 0.0 || to >= config.opo->p_threshold_mw) {
        throw ConfigError("sweep", 0, "pump range must lie in [0, opo.p_threshold_mw)");
    }
    for (const PumpFidelityPoint& pt : fidelity_vs_pump(*config.opo, grid, p)) {
        rows.push_back({pt.p_pump_mw, pt.spec.squeezing_db, pt.spec.antisqueezing_db,
                        pt.moments.clone(0).var_x, pt.moments.clone(0).var_p, pt.fidelity});
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    CsvWriter csv(os, {"param_value", "squeezing_db", "antisqueezing_db", "var_x_clone", "var_p_clone",
                       "fidelity"});
    for (const SweepRow& r : rows) {
        csv.row({r.param_value, r.squeezing_db, r.antisqueezing_db, r.var_x_clone, r.var_p_clone, r.fidelity});
    }
}

nlohmann::json cmd_criteria(const AppConfig& config) {
    const CriteriaValues c = criteria_for(config.protocol);
    const OptimalSqueezing o = optimal_squeezing();
    return {
        {"command", "criteria"},
        {"config", config_to_json(config)},
        {"criteria", {{"A_B", c.a_b}, {"A_C", c.a_c}, {"B_C", c.b_c}}},
        {"optimal_squeezing", {{"r_star", o.r_star}, {"e_minus_2r", o.e_minus_2r}, {"db", o.db},
                               {"criterion_minimum", bipartite_criterion_closed_form(
                                                         SqueezerSpec::pure(o.db), SqueezerSpec::pure(o.db))}}},
        {"provenance", {{"version", CVCLONE_VERSION}}},
    };
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian simulation of 1 -> 2 coherent-state telecloning", "cvclone"};
    app.require_subcommand(1);
    app.set_version_flag("--version", CVCLONE_VERSION);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Analytic clone moments, fidelities and criteria");
    run->add_option("config", config_path, "Configuration file")->required();

    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::string csv_path = "shots.csv";
    SampleOptions sample_opts;
    auto* sample = app.add_subcommand("sample", "Monte Carlo Bell measurement and feedforward");
    sample->add_option("config", config_path, "Configuration file")->required();
    sample->add_option("--shots", shots, "Shot count (overrides run.shots)")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Master seed (overrides run.seed)");
    sample->add_option("--csv", csv_path, "Per-shot CSV output path")->capture_default_str();
    sample->add_option("--threads", sample_opts.threads, "Worker threads")->check(CLI::PositiveNumber);
    sample->add_flag("--fully-sampled", sample_opts.fully_sampled,
                     "Sample one final quadrature per clone per shot");

    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    auto* sweep = app.add_subcommand("sweep", "Fidelity curve as CSV on standard output");
    sweep->add_option("config", config_path, "Configuration file")->required();
    sweep->add_option("--param", param, "squeezing_db or pump_mw")
        ->required()
        ->check(CLI::IsMember({"squeezing_db", "pump_mw"}));
    sweep->add_option("--from", from, "First grid value")->required();
    sweep->add_option("--to", to, "Last grid value")->required();
    sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->required();

    auto* criteria = app.add_subcommand("criteria", "Inseparability criterion values");
    criteria->add_option("config", config_path, "Configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        AppConfig config = load_config(config_path);
        if (*run) {
            const RunOutput r = cmd_run(config);
            write_json(out, to_json(r));
            print_summary(err, r);
        } else if (*sample) {
            if (shots) config.protocol.shots = *shots;
            if (seed) config.protocol.seed = *seed;
            std::vector<ShotRecord> records;
            const RunOutput r = cmd_sample(config, sample_opts, &records);
            std::ofstream csv(csv_path, std::ios::binary);
            if (!csv) throw ConfigError(csv_path, 0, "cannot open CSV output for writing");
            write_shots_csv(csv, records);
            write_json(out, to_json(r));
            print_summary(err, r);
        } else if (*sweep) {
            const auto rows = cmd_sweep(config, param == "pump_mw" ? SweepParam::PumpMw : SweepParam::SqueezingDb,
                                        from, to, steps);
            write_sweep_csv(out, rows);
        } else if (*criteria) {
            write_json(out, cmd_criteria(config));
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumericError;
    }
    return kExitOk;
}

}  // namespace cvclone::cli
