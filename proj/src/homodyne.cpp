#include "cvclone/homodyne.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace cvclone {

namespace {

Eigen::Index coordinate(QuadratureSelector sel) {
    return static_cast<Eigen::Index>(2 * sel.mode.value + (sel.which == Quadrature::P ? 1 : 0));
}

void check_selector(const GaussianState& state, QuadratureSelector sel) {
    if (sel.mode.value >= state.n_modes()) {
        throw InvalidArgument("homodyne: mode " + std::to_string(sel.mode.value) +
                              " out of range for " + std::to_string(state.n_modes()) +
                              "-mode state");
    }
}

}  // namespace

Marginal marginal(const GaussianState& state, QuadratureSelector sel) {
    check_selector(state, sel);
    const auto i = coordinate(sel);
    return {state.mean()(i), state.cov()(i, i)};
}

ConditioningUpdate conditioning_update(const GaussianState& state, QuadratureSelector sel) {
    check_selector(state, sel);
    if (state.n_modes() < 2) {
        throw InvalidArgument("homodyne: conditioning needs at least one remaining mode");
    }
    const Marginal m = marginal(state, sel);
    if (m.variance < kDegenerateVariance) {
        throw SingularityError("homodyne: marginal variance " + std::to_string(m.variance) +
                               " too small to condition on");
    }

    std::vector<Eigen::Index> kept;
    kept.reserve(2 * (state.n_modes() - 1));
    for (std::size_t k = 0; k < state.n_modes(); ++k) {
        if (k == sel.mode.value) continue;
        kept.push_back(static_cast<Eigen::Index>(2 * k));
        kept.push_back(static_cast<Eigen::Index>(2 * k + 1));
    }
    const auto nk = static_cast<Eigen::Index>(kept.size());
    const auto iq = coordinate(sel);

    Eigen::VectorXd c(nk);
    Eigen::VectorXd mean_k(nk);
    Eigen::MatrixXd cov_k(nk, nk);
    for (Eigen::Index r = 0; r < nk; ++r) {
        c(r) = state.cov()(kept[r], iq);
        mean_k(r) = state.mean()(kept[r]);
        for (Eigen::Index s = 0; s < nk; ++s) cov_k(r, s) = state.cov()(kept[r], kept[s]);
    }

    ConditioningUpdate u;
    u.marginal = m;
    u.gain = c / m.variance;
    u.conditioned_cov = cov_k - c * c.transpose() / m.variance;
    u.conditioned_cov = 0.5 * (u.conditioned_cov + u.conditioned_cov.transpose()).eval();
    u.kept_mean = std::move(mean_k);
    return u;
}

GaussianState condition_on(const GaussianState& state, QuadratureSelector sel, double value) {
    if (!std::isfinite(value)) throw InvalidArgument("homodyne: non-finite outcome");
    ConditioningUpdate u = conditioning_update(state, sel);
    Eigen::VectorXd mean = u.kept_mean + u.gain * (value - u.marginal.mean);
    return GaussianState(std::move(mean), std::move(u.conditioned_cov));
}

HomodyneSample sample_homodyne(const GaussianState& state, QuadratureSelector sel, RngStream& rng) {
    const Marginal m = marginal(state, sel);
    const double value = rng.normal(m.mean, std::sqrt(m.variance));
    return {HomodyneOutcome{value, sel}, condition_on(state, sel, value)};
}

}  // namespace cvclone
