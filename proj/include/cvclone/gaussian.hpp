// gaussian.hpp: multimode Gaussian states in photon-number units.
//
// Quadratures are ordered (x1, p1, ..., xn, pn) with [x, p] = i/2, so the
// vacuum covariance is I/4. States are immutable values; every operation
// returns a new state.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cvclone/errors.hpp"

namespace cvclone {

inline constexpr double kVacuumVariance = 0.25;
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-9;

struct ModeIndex {
    std::size_t value = 0;
    friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
};

class GaussianState {
public:
    // Throws InvalidArgument on size mismatch, odd dimension or asymmetric cov.
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }

    // 2x2 block of a single mode.
    Eigen::Vector2d mode_mean(ModeIndex m) const;
    Eigen::Matrix2d mode_cov(ModeIndex m) const;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

// 2k x 2k matrix satisfying S^T Omega S = Omega, acting on k designated modes.
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(Eigen::MatrixXd entries);

    std::size_t n_modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
    const Eigen::MatrixXd& entries() const { return entries_; }

    // Composition: (a * b) applies b first.
    friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

private:
    Eigen::MatrixXd entries_;
};

// Block-diagonal standard symplectic form for n modes, ((0,1),(-1,0)) per mode.
Eigen::MatrixXd symplectic_form(std::size_t n);

GaussianState vacuum(std::size_t n);
GaussianState coherent(std::span<const std::complex<double>> alphas);
GaussianState coherent(std::initializer_list<std::complex<double>> alphas);

// Single-mode zero-mean state with cov diag(v_x, v_p). Rejects v_x * v_p < 1/16.
GaussianState squeezed_vacuum(double v_x, double v_p);

// Isotropic thermal mode, cov = v I with v >= 1/4.
GaussianState thermal(double v);

// Concatenate modes: (a's modes, then b's modes), no correlations between them.
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);

// out1 = (in1 + in2)/sqrt2, out2 = (in1 - in2)/sqrt2 on both quadratures.
SymplecticMatrix beam_splitter_50_50();

// Rotation of (x, p) by phi.
SymplecticMatrix phase_shift(double phi);

SymplecticMatrix identity_symplectic(std::size_t n_modes);

// Embeds a k-mode symplectic acting on `modes` into an n-mode identity.
SymplecticMatrix embed(const SymplecticMatrix& s, std::span<const ModeIndex> modes, std::size_t n);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s,
                               std::span<const ModeIndex> modes);
GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s,
                               std::initializer_list<ModeIndex> modes);

GaussianState displace(const GaussianState& state, ModeIndex mode, double dx, double dp);

// Pure-loss channel with transmissivity eta in [0, 1].
GaussianState loss_channel(const GaussianState& state, ModeIndex mode, double eta);

// Keeps the listed modes in the listed order.
GaussianState partial_trace(const GaussianState& state, std::span<const ModeIndex> keep);
GaussianState partial_trace(const GaussianState& state, std::initializer_list<ModeIndex> keep);

// Sorted ascending; n values for an n-mode covariance.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);
std::vector<double> symplectic_eigenvalues(const GaussianState& state);

bool is_physical(const GaussianState& state, double tol = kPhysicalityTol);

// Throws PhysicalityError naming `what` when the smallest symplectic
// eigenvalue is below 1/4 - tol.
void require_physical(const GaussianState& state, const char* what = "state");

}  // namespace cvclone
