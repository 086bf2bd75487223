// resource.hpp: tripartite telecloning resource and its inseparability
// diagnostics.
//
// Two squeezed vacua (i: x antisqueezed, p squeezed; ii: x squeezed, p
// antisqueezed) meet on a 50/50 splitter giving A = (i + ii)/sqrt2 and
// E = (i - ii)/sqrt2; E is split with a vacuum iii into B = (E + iii)/sqrt2
// and C = (E - iii)/sqrt2.

#pragma once

#include <array>

#include "cvclone/gaussian.hpp"

namespace cvclone {

struct SqueezerSpec {
    double squeezing_db = 0.0;      // noise reduction of the squeezed quadrature, >= 0
    double antisqueezing_db = 0.0;  // noise excess of the conjugate quadrature, >= squeezing_db

    double squeezed_variance() const;
    double antisqueezed_variance() const;

    // Throws PhysicalityError when the pair violates the uncertainty bound,
    // InvalidArgument for negative or non-finite values.
    void validate() const;

    static SqueezerSpec pure(double db) { return {db, db}; }
    friend bool operator==(const SqueezerSpec&, const SqueezerSpec&) = default;
};

inline constexpr ModeIndex kModeA{0};
inline constexpr ModeIndex kModeB{1};
inline constexpr ModeIndex kModeC{2};

struct ResourceState {
    GaussianState state;  // modes A, B, C
    SqueezerSpec spec_i;
    SqueezerSpec spec_ii;
};

// The two squeezed inputs i, ii followed by the vacuum iii, as one 3-mode state.
GaussianState resource_inputs(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii);

// Linear map (x_i, p_i, x_ii, p_ii, x_iii, p_iii) -> (x_A, p_A, x_B, p_B, x_C, p_C)
// of the lossless splitter network. Row k is the Heisenberg expansion of
// output coordinate k.
SymplecticMatrix resource_network();

ResourceState build_telecloning_resource(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii,
                                         const std::array<double, 3>& eta = {1.0, 1.0, 1.0});

enum class Partner { B, C };

// Var(x_A - x_partner) + Var(p_A + p_partner); below 1 certifies A-partner
// entanglement.
double bipartite_criterion_lhs(const ResourceState& resource, Partner partner);

// The same combination evaluated from the squeezer variances alone, valid
// for the lossless network.
double bipartite_criterion_closed_form(const SqueezerSpec& spec_i, const SqueezerSpec& spec_ii);

// Var(x_B - x_C) + Var(p_B + p_C). Reported only; no classification.
double clone_pair_criterion_lhs(const ResourceState& resource);

struct OptimalSqueezing {
    double r_star = 0.0;
    double e_minus_2r = 0.0;
    double db = 0.0;
};

// e^{-2r} = (sqrt2 - 1)/(sqrt2 + 1) = 3 - 2 sqrt2.
OptimalSqueezing optimal_squeezing();

// Squeezing parameter r <-> dB of a pure squeezer.
double squeezing_db_from_r(double r);
double r_from_squeezing_db(double db);

}  // namespace cvclone
