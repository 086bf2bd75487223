#include "cvclone/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvclone {

double fidelity_unit_gain(double var_x, double var_p) {
    if (!(var_x > 0.0) || !(var_p > 0.0)) {
        throw InvalidArgument("fidelity_unit_gain: variances must be positive");
    }
    return 2.0 / std::sqrt((1.0 + 4.0 * var_x) * (1.0 + 4.0 * var_p));
}

double fidelity_general(const Eigen::Vector2d& clone_mean, const Eigen::Matrix2d& clone_cov,
                        std::complex<double> alpha) {
    if (std::abs(clone_cov(0, 1) - clone_cov(1, 0)) > kStructuralTol * std::max(1.0, clone_cov.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("fidelity_general: covariance is not symmetric");
    }
    Eigen::LLT<Eigen::Matrix2d> llt(clone_cov);
    if (llt.info() != Eigen::Success || clone_cov.determinant() <= 0.0) {
        throw InvalidArgument("fidelity_general: covariance is not positive definite");
    }
    const Eigen::Matrix2d sigma = clone_cov + kVacuumVariance * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d delta = clone_mean - Eigen::Vector2d(alpha.real(), alpha.imag());
    const double quad = delta.dot(sigma.ldlt().solve(delta));
    return std::exp(-0.5 * quad) / (2.0 * std::sqrt(sigma.determinant()));
}

FidelityReport fidelity_report(const CloneMoments& moments, std::complex<double> alpha) {
    auto one = [&](const QuadratureMoments& q) {
        const Eigen::Matrix2d cov = Eigen::Vector2d(q.var_x, q.var_p).asDiagonal();
        return fidelity_general(Eigen::Vector2d(q.mean_x, q.mean_p), cov, alpha);
    };
    FidelityReport r;
    r.f_clone1 = one(moments.clone(0));
    r.f_clone2 = one(moments.clone(1));
    return r;
}

GainEstimate estimate_gain(double clone_mean, std::optional<double> clone_mean_se, double input_mean,
                           const char* component) {
    double floor = kGainAbsoluteFloor;
    if (clone_mean_se && std::isfinite(*clone_mean_se)) {
        floor = std::max(floor, kGainSeFactor * *clone_mean_se);
    } else if (clone_mean_se) {
        throw UndefinedGainError(std::string("gain ") + component +
                                 ": clone mean has no finite standard error");
    }
    if (!(std::abs(input_mean) > floor)) {
        throw UndefinedGainError(std::string("gain ") + component + ": input mean " +
                                 std::to_string(input_mean) + " is below the floor " +
                                 std::to_string(floor));
    }
    GainEstimate g;
    g.value = clone_mean / input_mean;
    if (clone_mean_se) g.standard_error = *clone_mean_se / std::abs(input_mean);
    return g;
}

std::array<GainEstimate, 4> estimate_gains(const CloneMoments& moments, std::complex<double> alpha) {
    auto se = [&](int clone, bool x) -> std::optional<double> {
        if (!moments.standard_errors) return std::nullopt;
        const auto& e = (*moments.standard_errors)[static_cast<std::size_t>(clone)];
        return x ? e.mean_x : e.mean_p;
    };
    return {
        estimate_gain(moments.clone(0).mean_x, se(0, true), alpha.real(), "g_x1"),
        estimate_gain(moments.clone(0).mean_p, se(0, false), alpha.imag(), "g_p1"),
        estimate_gain(moments.clone(1).mean_x, se(1, true), alpha.real(), "g_x2"),
        estimate_gain(moments.clone(1).mean_p, se(1, false), alpha.imag(), "g_p2"),
    };
}

double variance_to_db(double variance) {
    if (!(variance > 0.0)) throw InvalidArgument("variance_to_db: variance must be positive");
    return 10.0 * std::log10(variance / kVacuumVariance);
}

double db_to_variance(double db) {
    if (!std::isfinite(db)) throw InvalidArgument("db_to_variance: non-finite dB value");
    return kVacuumVariance * std::pow(10.0, db / 10.0);
}

}  // namespace cvclone
