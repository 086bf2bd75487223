// homodyne.hpp: ideal single-quadrature homodyne measurement.
//
// Detector inefficiency is modelled upstream with loss_channel on the
// measured mode; everything here assumes a perfect detector.

#pragma once

#include <Eigen/Dense>

#include "cvclone/gaussian.hpp"
#include "cvclone/rng.hpp"

namespace cvclone {

enum class Quadrature { X, P };

struct QuadratureSelector {
    ModeIndex mode;
    Quadrature which = Quadrature::X;
};

struct HomodyneOutcome {
    double value = 0.0;
    QuadratureSelector selector;
};

struct Marginal {
    double mean = 0.0;
    double variance = 0.0;
};

// Rank-1 Schur complement of the measured quadrature. `gain` is the
// regression vector c / v_q over the coordinates of the remaining modes
// (measured mode removed, order preserved), so that
//   mean_K' = mean_K + gain * (value - marginal.mean).
struct ConditioningUpdate {
    Marginal marginal;
    Eigen::VectorXd gain;
    Eigen::MatrixXd conditioned_cov;
    Eigen::VectorXd kept_mean;
};

inline constexpr double kDegenerateVariance = 1e-12;

Marginal marginal(const GaussianState& state, QuadratureSelector sel);

// Outcome-independent part of conditioning. Throws SingularityError when the
// marginal variance is below kDegenerateVariance, InvalidArgument when the
// selector is out of range or the state has a single mode.
ConditioningUpdate conditioning_update(const GaussianState& state, QuadratureSelector sel);

// Post-measurement state of the remaining modes given outcome `value`.
GaussianState condition_on(const GaussianState& state, QuadratureSelector sel, double value);

struct HomodyneSample {
    HomodyneOutcome outcome;
    GaussianState state;
};

HomodyneSample sample_homodyne(const GaussianState& state, QuadratureSelector sel, RngStream& rng);

}  // namespace cvclone
