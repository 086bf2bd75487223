// opo.hpp: below-threshold OPO squeezing model.
//
// With x = sqrt(P / P_th) and analysis frequency omega in units of the cavity
// half-bandwidth, the quadrature noise relative to vacuum is
//   V-/+ = 1 -/+ eta_det * 4x / ((1 +/- x)^2 + omega^2).
// This is a phenomenological stand-in for measured pump-power curves.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cvclone/protocol.hpp"
#include "cvclone/resource.hpp"

namespace cvclone {

struct OpoParams {
    double p_threshold_mw = 1.0;
    double eta_det = 1.0;
    double omega = 0.0;

    void validate() const;
    friend bool operator==(const OpoParams&, const OpoParams&) = default;
};

// Throws InvalidArgument for p_pump outside [0, p_threshold).
SqueezerSpec squeezing_spectra(const OpoParams& params, double p_pump_mw);

struct PumpFidelityPoint {
    double p_pump_mw = 0.0;
    SqueezerSpec spec;
    CloneMoments moments;
    double fidelity = 0.0;  // clone 1; clones are symmetric here
};

// Both OPOs share `params`; everything except the squeezer specs and the
// gains (forced to 1) comes from `base`.
std::vector<PumpFidelityPoint> fidelity_vs_pump(const OpoParams& params,
                                                std::span<const double> pump_grid_mw,
                                                const ProtocolConfig& base = {});

struct SqueezingDatum {
    double p_pump_mw = 0.0;
    double squeezing_db = 0.0;
    double antisqueezing_db = 0.0;
};

struct OpoFit {
    OpoParams params;
    double rms_residual_db = 0.0;
    std::size_t iterations = 0;
};

// Least-squares fit of (p_threshold, eta_det) at fixed omega: coarse grid
// followed by coordinate descent. Needs >= 3 points with distinct pump powers.
OpoFit fit_params(std::span<const SqueezingDatum> data, double omega = 0.0);

}  // namespace cvclone
