#include "cvclone/resource.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cvclone {

namespace {

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

// Var(a^T z) for a linear combination over coordinates of the state.
double combination_variance(const GaussianState& s, Eigen::Index i, Eigen::Index j, double sign) {
    const auto& v = s.cov();
    return v(i, i) + v(j, j) + 2.0 * sign * v(i, j);
}

double pair_lhs(const GaussianState& s, ModeIndex a, ModeIndex b) {
    const auto xa = static_cast<Eigen::Index>(2 * a.value);
    const auto xb = static_cast<Eigen::Index>(2 * b.value);
    return combination_variance(s, xa, xb, -1.0) + combination_variance(s, xa + 1, xb + 1, +1.0);
}

}  // namespace

double SqueezerSpec::squeezed_variance() const {
    return kVacuumVariance / db_to_ratio(squeezing_db);
}

double SqueezerSpec::antisqueezed_variance() const {
    return kVacuumVariance * db_to_ratio(antisqueezing_db);
}

void SqueezerSpec::validate() const {
    if (!std::isfinite(squeezing_db) || !std::isfinite(antisqueezing_db)) {
        throw InvalidArgument("SqueezerSpec: non-finite dB value");
    }
    if (squeezing_db < 0.0 || antisqueezing_db < 0.0) {
        throw InvalidArgument("SqueezerSpec: dB magnitudes must be non-negative");
    }
    if (squeezed_variance() * antisqueezed_variance() <
        kVacuumVariance * kVacuumVariance - kStructuralTol) {
        throw PhysicalityError("SqueezerSpec: antisqueezing " + std::to_string(antisqueezing_db) +
                               " dB below squeezing " + std::to_string(squeezing_db) +
                               " dB violates the uncertainty bound");
    }
}

GaussianState resource_inputs(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii) {
    spec_i.validate();
    spec_ii.validate();
    const GaussianState i = squeezed_vacuum(spec_i.antisqueezed_variance(), spec_i.squeezed_variance());
    const GaussianState ii =
        squeezed_vacuum(spec_ii.squeezed_variance(), spec_ii.antisqueezed_variance());
    return direct_sum(direct_sum(i, ii), vacuum(1));
}

SymplecticMatrix resource_network() {
    const std::array<ModeIndex, 2> first{ModeIndex{0}, ModeIndex{1}};
    const std::array<ModeIndex, 2> second{ModeIndex{1}, ModeIndex{2}};
    const SymplecticMatrix bs = beam_splitter_50_50();
    return embed(bs, second, 3) * embed(bs, first, 3);
}

ResourceState build_telecloning_resource(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii,
                                         const std::array<double, 3>& eta) {
    GaussianState s = resource_inputs(spec_i, spec_ii);
    const SymplecticMatrix bs = beam_splitter_50_50();
    // (i, ii) -> (A, E); (E, iii) -> (B, C)
    s = apply_symplectic(s, bs, {ModeIndex{0}, ModeIndex{1}});
    s = apply_symplectic(s, bs, {ModeIndex{1}, ModeIndex{2}});
    for (std::size_t k = 0; k < 3; ++k) {
        if (eta[k] != 1.0) s = loss_channel(s, ModeIndex{k}, eta[k]);
    }
    return ResourceState{std::move(s), spec_i, spec_ii};
}

double bipartite_criterion_lhs(const ResourceState& resource, Partner partner) {
    return pair_lhs(resource.state, kModeA, partner == Partner::B ? kModeB : kModeC);
}

double bipartite_criterion_closed_form(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii) {
    const double a = (1.0 - std::numbers::sqrt2) / 2.0;
    const double b = (1.0 + std::numbers::sqrt2) / 2.0;
    const double var_x_i = spec_i.antisqueezed_variance();
    const double var_p_i = spec_i.squeezed_variance();
    const double var_x_ii = spec_ii.squeezed_variance();
    const double var_p_ii = spec_ii.antisqueezed_variance();
    return a * a * (var_x_i + var_p_ii) + b * b * (var_x_ii + var_p_i) + kVacuumVariance;
}

double clone_pair_criterion_lhs(const ResourceState& resource) {
    return pair_lhs(resource.state, kModeB, kModeC);
}

OptimalSqueezing optimal_squeezing() {
    const double s = std::numbers::sqrt2;
    OptimalSqueezing o;
    o.e_minus_2r = (s - 1.0) / (s + 1.0);
    o.r_star = -0.5 * std::log(o.e_minus_2r);
    o.db = -10.0 * std::log10(o.e_minus_2r);
    return o;
}

double squeezing_db_from_r(double r) { return 20.0 * r / std::numbers::ln10; }

double r_from_squeezing_db(double db) { return db * std::numbers::ln10 / 20.0; }

}  // namespace cvclone
