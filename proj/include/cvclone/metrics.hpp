#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>

#include "cvclone/protocol.hpp"

namespace cvclone {

inline constexpr double kClassicalLimit = 0.5;
inline constexpr double kOptimalGaussianFidelity = 2.0 / 3.0;

struct FidelityReport {
    double f_clone1 = 0.0;
    double f_clone2 = 0.0;
    double classical_limit = kClassicalLimit;
    double optimal_gaussian = kOptimalGaussianFidelity;
};

// Coherent-input fidelity at unit gain, 2 / sqrt((1 + 4 var_x)(1 + 4 var_p)).
double fidelity_unit_gain(double var_x, double var_p);

// Overlap <alpha| rho |alpha> of a single-mode Gaussian state with mean
// `clone_mean` and covariance `clone_cov`:
//   exp(-d^T (V + I/4)^{-1} d / 2) / (2 sqrt(det(V + I/4))),  d = mean - (Re a, Im a).
double fidelity_general(const Eigen::Vector2d& clone_mean, const Eigen::Matrix2d& clone_cov,
                        std::complex<double> alpha);

// Both clones against the input, through fidelity_general.
FidelityReport fidelity_report(const CloneMoments& moments, std::complex<double> alpha);

struct GainEstimate {
    double value = 0.0;
    std::optional<double> standard_error;
};

inline constexpr double kGainAbsoluteFloor = 1e-12;
inline constexpr double kGainSeFactor = 10.0;

// <clone> / <input> for one quadrature. The input mean must exceed
// max(kGainAbsoluteFloor, kGainSeFactor * clone_mean_se); otherwise
// UndefinedGainError.
GainEstimate estimate_gain(double clone_mean, std::optional<double> clone_mean_se, double input_mean,
                           const char* component);

// (g_x1, g_p1, g_x2, g_p2) from analytic or estimated moments.
std::array<GainEstimate, 4> estimate_gains(const CloneMoments& moments, std::complex<double> alpha);

// 10 log10(v / (1/4)) and its inverse.
double variance_to_db(double variance);
double db_to_variance(double db);

}  // namespace cvclone
