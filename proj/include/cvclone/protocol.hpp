// protocol.hpp: 1 -> 2 coherent-state telecloning.
//
// Three independent evaluations of the same protocol:
//   run_analytic          Heisenberg expansion of each clone quadrature over
//                         independent noise sources.
//   run_circuit_analytic  full covariance-matrix circuit with exact Gaussian
//                         conditioning and outcome-averaged feedforward.
//   run_monte_carlo       sampled Bell outcomes, conditioning, displacement.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvclone/gaussian.hpp"
#include "cvclone/homodyne.hpp"
#include "cvclone/resource.hpp"

namespace cvclone {

struct Gains {
    double gx1 = 1.0;
    double gp1 = 1.0;
    double gx2 = 1.0;
    double gp2 = 1.0;

    double x(int clone) const { return clone == 0 ? gx1 : gx2; }
    double p(int clone) const { return clone == 0 ? gp1 : gp2; }
    friend bool operator==(const Gains&, const Gains&) = default;
};

struct ProtocolConfig {
    SqueezerSpec spec_i;
    SqueezerSpec spec_ii;
    std::complex<double> input_alpha{0.0, 0.0};
    Gains gains;
    // Pre-detection loss on both Bell-measurement outputs. Feedforward gains
    // are calibrated after this loss, so must be > 0.
    double eta_homodyne = 1.0;
    std::array<double, 3> eta_resource{1.0, 1.0, 1.0};  // A, B, C
    // Displacement coupler transmissivity seen by each clone mode.
    double coupler_t = 1.0;
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;

    // InvalidArgument for out-of-range values; PhysicalityError for
    // uncertainty-violating squeezer specs.
    void validate() const;
    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct QuadratureMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    friend bool operator==(const QuadratureMoments&, const QuadratureMoments&) = default;
};

struct CloneMoments {
    std::array<QuadratureMoments, 2> clones{};
    // Present for estimated moments; +inf when undefined (single shot).
    std::optional<std::array<QuadratureMoments, 2>> standard_errors;

    const QuadratureMoments& clone(int k) const { return clones[static_cast<std::size_t>(k)]; }
    friend bool operator==(const CloneMoments&, const CloneMoments&) = default;
};

struct ShotRecord {
    double x_u = 0.0;
    double p_v = 0.0;
    std::array<double, 4> clone_means{};  // x1, p1, x2, p2 after feedforward
    friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

using StateObserver = std::function<void(std::string_view stage, const GaussianState&)>;

// Layout of the state right before Alice's detectors.
inline constexpr ModeIndex kModeV{0};  // (in + A)/sqrt2, p measured
inline constexpr ModeIndex kModeU{1};  // (in - A)/sqrt2, x measured
inline constexpr ModeIndex kModeClone1{2};
inline constexpr ModeIndex kModeClone2{3};

// Input, resource, Bell splitter, detector and coupler losses; modes
// (v, u, B, C). Calls `observer` on every intermediate state.
GaussianState pre_measurement_state(const ProtocolConfig& config,
                                    const StateObserver& observer = {});

struct ExpansionTerm {
    std::string source;  // x_in, x_i, x_ii, x_iii, loss_A, ..., homodyne, coupler
    double coefficient = 0.0;
    double source_mean = 0.0;
    double source_variance = 0.0;
};

// Heisenberg expansion of quadrature `q` of clone `clone` (0 or 1) over
// mutually independent sources, averaged over Alice's outcomes.
std::vector<ExpansionTerm> clone_expansion(const ProtocolConfig& config, int clone, Quadrature q);

CloneMoments run_analytic(const ProtocolConfig& config);
CloneMoments run_circuit_analytic(const ProtocolConfig& config, const StateObserver& observer = {});

struct MonteCarloOptions {
    unsigned threads = 1;
    // Draw one final quadrature value per clone per shot instead of combining
    // conditional means with the conditional covariance.
    bool fully_sampled = false;
};

struct MonteCarloResult {
    CloneMoments moments;
    std::vector<ShotRecord> shots;
};

MonteCarloResult run_monte_carlo(const ProtocolConfig& config, const MonteCarloOptions& options = {},
                                 const StateObserver& observer = {});

struct AliceLevels {
    double var_pv_vacuum_input = 0.0;
    double amplitude_reduction_db = 0.0;
};

// Variance of Alice's p_v detector for a vacuum input, and the mean-power
// reduction her Bell splitter imposes on the measured state.
AliceLevels alice_trace_levels(const ProtocolConfig& config);

}  // namespace cvclone
