#include "cvclone/opo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cvclone/metrics.hpp"

namespace cvclone {

namespace {

struct NoiseRatios {
    double squeezed;
    double antisqueezed;
};

NoiseRatios noise_ratios(const OpoParams& p, double p_pump) {
    const double x = std::sqrt(p_pump / p.p_threshold_mw);
    const double w2 = p.omega * p.omega;
    return {1.0 - p.eta_det * 4.0 * x / ((1.0 + x) * (1.0 + x) + w2),
            1.0 + p.eta_det * 4.0 * x / ((1.0 - x) * (1.0 - x) + w2)};
}

double sum_sq_residual(const OpoParams& p, std::span<const SqueezingDatum> data) {
    double r = 0.0;
    for (const auto& d : data) {
        if (d.p_pump_mw >= p.p_threshold_mw) return std::numeric_limits<double>::infinity();
        const NoiseRatios v = noise_ratios(p, d.p_pump_mw);
        if (v.squeezed <= 0.0) return std::numeric_limits<double>::infinity();
        const double ds = -10.0 * std::log10(v.squeezed) - d.squeezing_db;
        const double da = 10.0 * std::log10(v.antisqueezed) - d.antisqueezing_db;
        r += ds * ds + da * da;
    }
    return r;
}

}  // namespace

void OpoParams::validate() const {
    if (!(p_threshold_mw > 0.0) || !std::isfinite(p_threshold_mw)) {
        throw InvalidArgument("OpoParams: p_threshold_mw must be positive");
    }
    if (!(eta_det >= 0.0 && eta_det <= 1.0)) {
        throw InvalidArgument("OpoParams: eta_det must lie in [0, 1]");
    }
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw InvalidArgument("OpoParams: omega must be non-negative");
    }
}

SqueezerSpec squeezing_spectra(const OpoParams& params, double p_pump_mw) {
    params.validate();
    if (!(p_pump_mw >= 0.0)) throw InvalidArgument("squeezing_spectra: negative pump power");
    if (p_pump_mw >= params.p_threshold_mw) {
        throw InvalidArgument("squeezing_spectra: pump " + std::to_string(p_pump_mw) +
                              " mW is at or above threshold " +
                              std::to_string(params.p_threshold_mw) + " mW");
    }
    const NoiseRatios v = noise_ratios(params, p_pump_mw);
    SqueezerSpec spec{0.0 - 10.0 * std::log10(v.squeezed), 10.0 * std::log10(v.antisqueezed)};
    // Pure case: the two magnitudes agree analytically; remove rounding skew.
    spec.antisqueezing_db = std::max(spec.antisqueezing_db, spec.squeezing_db);
    return spec;
}

std::vector<PumpFidelityPoint> fidelity_vs_pump(const OpoParams& params,
                                                std::span<const double> pump_grid_mw,
                                                const ProtocolConfig& base) {
    std::vector<PumpFidelityPoint> curve;
    curve.reserve(pump_grid_mw.size());
    ProtocolConfig cfg = base;
    cfg.gains = Gains{};
    for (double p : pump_grid_mw) {
        PumpFidelityPoint pt;
        pt.p_pump_mw = p;
        pt.spec = squeezing_spectra(params, p);
        cfg.spec_i = pt.spec;
        cfg.spec_ii = pt.spec;
        pt.moments = run_analytic(cfg);
        pt.fidelity = fidelity_unit_gain(pt.moments.clone(0).var_x, pt.moments.clone(0).var_p);
        curve.push_back(pt);
    }
    return curve;
}

OpoFit fit_params(std::span<const SqueezingDatum> data, double omega) {
    if (data.size() < 3) throw InvalidArgument("fit_params: at least 3 data points required");
    for (std::size_t a = 0; a < data.size(); ++a) {
        if (!(data[a].p_pump_mw >= 0.0)) throw InvalidArgument("fit_params: negative pump power");
        for (std::size_t b = a + 1; b < data.size(); ++b) {
            if (data[a].p_pump_mw == data[b].p_pump_mw) {
                throw InvalidArgument("fit_params: duplicate pump power " +
                                      std::to_string(data[a].p_pump_mw) + " mW");
            }
        }
    }
    const double p_max = std::max_element(data.begin(), data.end(), [](const auto& a, const auto& b) {
                             return a.p_pump_mw < b.p_pump_mw;
                         })->p_pump_mw;
    if (!(p_max > 0.0)) throw InvalidArgument("fit_params: all pump powers are zero");

    OpoFit fit;
    fit.params.omega = omega;
    double best = std::numeric_limits<double>::infinity();

    // Coarse grid: threshold log-spaced above the largest pump power.
    constexpr int kThresholdSteps = 80;
    constexpr int kEtaSteps = 50;
    const double lo = std::log(p_max * 1.001);
    const double hi = std::log(p_max * 50.0);
    for (int a = 0; a < kThresholdSteps; ++a) {
        const double pth = std::exp(lo + (hi - lo) * a / (kThresholdSteps - 1));
        for (int b = 1; b <= kEtaSteps; ++b) {
            const OpoParams trial{pth, static_cast<double>(b) / kEtaSteps, omega};
            const double r = sum_sq_residual(trial, data);
            if (r < best) {
                best = r;
                fit.params = trial;
            }
        }
    }

    // Coordinate descent with step halving.
    double step_p = 0.05 * fit.params.p_threshold_mw;
    double step_e = 0.02;
    constexpr std::size_t kMaxIterations = 200000;
    while ((step_p > 1e-13 * fit.params.p_threshold_mw || step_e > 1e-13) &&
           fit.iterations < kMaxIterations) {
        ++fit.iterations;
        bool improved = false;
        for (double dir : {1.0, -1.0}) {
            OpoParams trial = fit.params;
            trial.p_threshold_mw += dir * step_p;
            if (trial.p_threshold_mw > p_max) {
                const double r = sum_sq_residual(trial, data);
                if (r < best) {
                    best = r;
                    fit.params = trial;
                    improved = true;
                }
            }
            trial = fit.params;
            trial.eta_det = std::clamp(trial.eta_det + dir * step_e, 0.0, 1.0);
            const double r = sum_sq_residual(trial, data);
            if (r < best) {
                best = r;
                fit.params = trial;
                improved = true;
            }
        }
        if (!improved) {
            step_p *= 0.5;
            step_e *= 0.5;
        }
    }
    fit.rms_residual_db = std::sqrt(best / (2.0 * static_cast<double>(data.size())));
    return fit;
}

}  // namespace cvclone
