#include "cvclone/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cvclone {

namespace {

double scale_of(const Eigen::MatrixXd& m) {
    return std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= kStructuralTol * scale_of(m);
}

void check_modes(std::span<const ModeIndex> modes, std::size_t n, const char* what) {
    for (std::size_t a = 0; a < modes.size(); ++a) {
        if (modes[a].value >= n) {
            throw InvalidArgument(std::string(what) + ": mode " + std::to_string(modes[a].value) +
                                  " out of range for " + std::to_string(n) + "-mode state");
        }
        for (std::size_t b = a + 1; b < modes.size(); ++b) {
            if (modes[a] == modes[b]) {
                throw InvalidArgument(std::string(what) + ": duplicate mode " +
                                      std::to_string(modes[a].value));
            }
        }
    }
}

Eigen::Index q(std::size_t mode, int quad) { return static_cast<Eigen::Index>(2 * mode + quad); }

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw InvalidArgument("GaussianState: mean must have positive even length");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw InvalidArgument("GaussianState: covariance shape does not match mean");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw InvalidArgument("GaussianState: non-finite moments");
    }
    if (!is_symmetric(cov_)) {
        throw InvalidArgument("GaussianState: covariance is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

Eigen::Vector2d GaussianState::mode_mean(ModeIndex m) const {
    if (m.value >= n_modes()) throw InvalidArgument("mode_mean: mode out of range");
    return mean_.segment<2>(q(m.value, 0));
}

Eigen::Matrix2d GaussianState::mode_cov(ModeIndex m) const {
    if (m.value >= n_modes()) throw InvalidArgument("mode_cov: mode out of range");
    return cov_.block<2, 2>(q(m.value, 0), q(m.value, 0));
}

SymplecticMatrix::SymplecticMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0) {
        throw InvalidArgument("SymplecticMatrix: must be square with positive even dimension");
    }
    const auto n = static_cast<std::size_t>(entries_.rows() / 2);
    const Eigen::MatrixXd omega = symplectic_form(n);
    const double err = (entries_.transpose() * omega * entries_ - omega).cwiseAbs().maxCoeff();
    if (err > kStructuralTol * scale_of(entries_) * scale_of(entries_)) {
        throw InvalidArgument("SymplecticMatrix: S^T Omega S != Omega (error " + std::to_string(err) +
                              ")");
    }
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    if (a.entries_.rows() != b.entries_.rows()) {
        throw InvalidArgument("SymplecticMatrix: composition of different dimensions");
    }
    return SymplecticMatrix(a.entries_ * b.entries_);
}

Eigen::MatrixXd symplectic_form(std::size_t n) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(q(n, 0), q(n, 0));
    for (std::size_t k = 0; k < n; ++k) {
        omega(q(k, 0), q(k, 1)) = 1.0;
        omega(q(k, 1), q(k, 0)) = -1.0;
    }
    return omega;
}

GaussianState vacuum(std::size_t n) {
    if (n == 0) throw InvalidArgument("vacuum: mode count must be at least 1");
    const auto dim = q(n, 0);
    return GaussianState(Eigen::VectorXd::Zero(dim),
                         kVacuumVariance * Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState coherent(std::span<const std::complex<double>> alphas) {
    if (alphas.empty()) throw InvalidArgument("coherent: at least one amplitude required");
    const auto dim = q(alphas.size(), 0);
    Eigen::VectorXd mean(dim);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        mean(q(k, 0)) = alphas[k].real();
        mean(q(k, 1)) = alphas[k].imag();
    }
    return GaussianState(std::move(mean), kVacuumVariance * Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState coherent(std::initializer_list<std::complex<double>> alphas) {
    return coherent(std::span<const std::complex<double>>(alphas.begin(), alphas.size()));
}

GaussianState squeezed_vacuum(double v_x, double v_p) {
    if (!(v_x > 0.0) || !(v_p > 0.0)) {
        throw PhysicalityError("squeezed_vacuum: variances must be positive");
    }
    if (v_x * v_p < kVacuumVariance * kVacuumVariance - kStructuralTol) {
        throw PhysicalityError("squeezed_vacuum: v_x * v_p = " + std::to_string(v_x * v_p) +
                               " violates the uncertainty bound 1/16");
    }
    Eigen::Matrix2d cov = Eigen::Vector2d(v_x, v_p).asDiagonal();
    return GaussianState(Eigen::Vector2d::Zero(), cov);
}

GaussianState thermal(double v) {
    if (v < kVacuumVariance - kStructuralTol) {
        throw PhysicalityError("thermal: variance below vacuum level");
    }
    return GaussianState(Eigen::Vector2d::Zero(), v * Eigen::Matrix2d::Identity());
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
    const auto na = a.mean().size();
    const auto nb = b.mean().size();
    Eigen::VectorXd mean(na + nb);
    mean << a.mean(), b.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(std::move(mean), std::move(cov));
}

SymplecticMatrix beam_splitter_50_50() {
    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::MatrixXd s(4, 4);
    // (x1, p1, x2, p2)
    s << h, 0, h, 0,
         0, h, 0, h,
         h, 0, -h, 0,
         0, h, 0, -h;
    return SymplecticMatrix(std::move(s));
}

SymplecticMatrix phase_shift(double phi) {
    Eigen::MatrixXd s(2, 2);
    s << std::cos(phi), -std::sin(phi),
         std::sin(phi), std::cos(phi);
    return SymplecticMatrix(std::move(s));
}

SymplecticMatrix identity_symplectic(std::size_t n_modes) {
    if (n_modes == 0) throw InvalidArgument("identity_symplectic: mode count must be positive");
    return SymplecticMatrix(Eigen::MatrixXd::Identity(q(n_modes, 0), q(n_modes, 0)));
}

SymplecticMatrix embed(const SymplecticMatrix& s, std::span<const ModeIndex> modes, std::size_t n) {
    if (s.n_modes() != modes.size()) {
        throw InvalidArgument("apply_symplectic: matrix acts on " + std::to_string(s.n_modes()) +
                              " modes but " + std::to_string(modes.size()) + " were given");
    }
    check_modes(modes, n, "apply_symplectic");
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(q(n, 0), q(n, 0));
    for (std::size_t r = 0; r < modes.size(); ++r) {
        for (std::size_t c = 0; c < modes.size(); ++c) {
            full.block<2, 2>(q(modes[r].value, 0), q(modes[c].value, 0)) =
                s.entries().block<2, 2>(q(r, 0), q(c, 0));
        }
    }
    return SymplecticMatrix(std::move(full));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s,
                               std::span<const ModeIndex> modes) {
    const Eigen::MatrixXd full = embed(s, modes, state.n_modes()).entries();
    Eigen::MatrixXd cov = full * state.cov() * full.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(full * state.mean(), std::move(cov));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s,
                               std::initializer_list<ModeIndex> modes) {
    return apply_symplectic(state, s, std::span<const ModeIndex>(modes.begin(), modes.size()));
}

GaussianState displace(const GaussianState& state, ModeIndex mode, double dx, double dp) {
    if (mode.value >= state.n_modes()) throw InvalidArgument("displace: mode out of range");
    Eigen::VectorXd mean = state.mean();
    mean(q(mode.value, 0)) += dx;
    mean(q(mode.value, 1)) += dp;
    return GaussianState(std::move(mean), state.cov());
}

GaussianState loss_channel(const GaussianState& state, ModeIndex mode, double eta) {
    if (mode.value >= state.n_modes()) throw InvalidArgument("loss_channel: mode out of range");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidArgument("loss_channel: transmissivity " + std::to_string(eta) +
                              " outside [0, 1]");
    }
    const double t = std::sqrt(eta);
    const Eigen::Index i = q(mode.value, 0);
    Eigen::VectorXd mean = state.mean();
    mean.segment<2>(i) *= t;
    Eigen::MatrixXd cov = state.cov();
    cov.middleRows<2>(i) *= t;
    cov.middleCols<2>(i) *= t;
    cov.block<2, 2>(i, i) += (1.0 - eta) * kVacuumVariance * Eigen::Matrix2d::Identity();
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState partial_trace(const GaussianState& state, std::span<const ModeIndex> keep) {
    if (keep.empty()) throw InvalidArgument("partial_trace: keep list is empty");
    check_modes(keep, state.n_modes(), "partial_trace");
    const auto dim = q(keep.size(), 0);
    Eigen::VectorXd mean(dim);
    Eigen::MatrixXd cov(dim, dim);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        mean.segment<2>(q(r, 0)) = state.mean().segment<2>(q(keep[r].value, 0));
        for (std::size_t c = 0; c < keep.size(); ++c) {
            cov.block<2, 2>(q(r, 0), q(c, 0)) =
                state.cov().block<2, 2>(q(keep[r].value, 0), q(keep[c].value, 0));
        }
    }
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState partial_trace(const GaussianState& state, std::initializer_list<ModeIndex> keep) {
    return partial_trace(state, std::span<const ModeIndex>(keep.begin(), keep.size()));
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
    if (cov.rows() == 0 || cov.rows() % 2 != 0 || !is_symmetric(cov)) {
        throw InvalidArgument("symplectic_eigenvalues: covariance must be symmetric, even-dimensional");
    }
    const auto n = static_cast<std::size_t>(cov.rows() / 2);
    // i*Omega*V is similar to the Hermitian i*V^{1/2} Omega V^{1/2}; its
    // spectrum is {+-nu_k}.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw PhysicalityError("symplectic_eigenvalues: covariance is not positive definite");
    }
    const Eigen::MatrixXd root = es.operatorSqrt();
    const Eigen::MatrixXcd h =
        std::complex<double>(0.0, 1.0) * (root * symplectic_form(n) * root).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h, Eigen::EigenvaluesOnly);
    std::vector<double> all(hs.eigenvalues().data(), hs.eigenvalues().data() + hs.eigenvalues().size());
    std::sort(all.begin(), all.end());
    return {all.begin() + static_cast<std::ptrdiff_t>(n), all.end()};
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
    return symplectic_eigenvalues(state.cov());
}

bool is_physical(const GaussianState& state, double tol) {
    try {
        return symplectic_eigenvalues(state).front() >= kVacuumVariance - tol;
    } catch (const PhysicalityError&) {
        return false;
    }
}

void require_physical(const GaussianState& state, const char* what) {
    double nu = 0.0;
    try {
        nu = symplectic_eigenvalues(state).front();
    } catch (const PhysicalityError&) {
        throw PhysicalityError(std::string(what) + ": covariance is not positive definite");
    }
    if (nu < kVacuumVariance - kPhysicalityTol) {
        throw PhysicalityError(std::string(what) + ": smallest symplectic eigenvalue " +
                               std::to_string(nu) + " below vacuum level 1/4");
    }
}

}  // namespace cvclone
