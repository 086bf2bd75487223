#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "cvclone/gaussian.hpp"
#include "support/oracles.hpp"

using namespace cvclone;

namespace {

SymplecticMatrix single_squeezer(double r) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    m(0, 0) = std::exp(r);
    m(1, 1) = std::exp(-r);
    return SymplecticMatrix(m);
}

// random n-mode symplectic built from splitters, phases and squeezers
SymplecticMatrix random_symplectic(oracle::Gen& g, std::size_t n) {
    SymplecticMatrix s = identity_symplectic(n);
    for (int k = 0; k < 6; ++k) {
        const std::size_t m = static_cast<std::size_t>(g.integer(0, static_cast<int>(n) - 1));
        const std::array<ModeIndex, 1> one{ModeIndex{m}};
        s = embed(phase_shift(g.uniform(0.0, 2.0 * std::numbers::pi)), one, n) * s;
        s = embed(single_squeezer(g.uniform(-0.8, 0.8)), one, n) * s;
        if (n > 1) {
            std::size_t m2 = static_cast<std::size_t>(g.integer(0, static_cast<int>(n) - 2));
            if (m2 >= m) ++m2;
            const std::array<ModeIndex, 2> two{ModeIndex{m}, ModeIndex{m2}};
            s = embed(beam_splitter_50_50(), two, n) * s;
        }
    }
    return s;
}

GaussianState random_physical(oracle::Gen& g, std::size_t n) {
    GaussianState s = thermal(g.uniform(0.25, 1.0));
    for (std::size_t k = 1; k < n; ++k) s = direct_sum(s, thermal(g.uniform(0.25, 1.0)));
    std::vector<ModeIndex> all;
    for (std::size_t k = 0; k < n; ++k) all.push_back(ModeIndex{k});
    s = apply_symplectic(s, random_symplectic(g, n), all);
    for (std::size_t k = 0; k < n; ++k) s = displace(s, ModeIndex{k}, g.normal(), g.normal());
    return s;
}

}  // namespace

TEST(Gaussian, VacuumHasQuarterVariance) {
    const GaussianState v = vacuum(2);
    EXPECT_EQ(v.n_modes(), 2u);
    EXPECT_TRUE(v.mean().isZero());
    EXPECT_TRUE(v.cov().isApprox(0.25 * Eigen::MatrixXd::Identity(4, 4)));
    for (double nu : symplectic_eigenvalues(v)) EXPECT_NEAR(nu, 0.25, 1e-14);
}

TEST(Gaussian, CoherentMeanIsRealAndImaginaryPart) {
    const GaussianState c = coherent({{5.0, 3.0}, {-1.0, 0.5}});
    EXPECT_DOUBLE_EQ(c.mean()(0), 5.0);
    EXPECT_DOUBLE_EQ(c.mean()(1), 3.0);
    EXPECT_DOUBLE_EQ(c.mean()(2), -1.0);
    EXPECT_DOUBLE_EQ(c.mean()(3), 0.5);
    EXPECT_TRUE(c.cov().isApprox(vacuum(2).cov()));
}

TEST(Gaussian, SqueezedVacuumAtOptimumIsPure) {
    // e^{-2r} = 3 - 2 sqrt2
    const GaussianState s = squeezed_vacuum(1.4571067811865475, 0.04289321881345243);
    const auto nu = symplectic_eigenvalues(s);
    ASSERT_EQ(nu.size(), 1u);
    EXPECT_NEAR(nu[0], 0.25, 1e-12);
    EXPECT_NEAR(-10.0 * std::log10(0.04289321881345243 / 0.25), 7.655513706757267, 1e-12);
}

TEST(Gaussian, SqueezedVacuumRejectsUncertaintyViolation) {
    EXPECT_THROW(squeezed_vacuum(0.1, 0.1), PhysicalityError);
    EXPECT_NO_THROW(squeezed_vacuum(0.5, 0.125));
}

TEST(Gaussian, ConstructorRejectsBadShapes) {
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)),
                 InvalidArgument);
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(4, 4)),
                 InvalidArgument);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
    asym(0, 1) = 0.1;
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(2), asym), InvalidArgument);
}

TEST(Gaussian, BeamSplitterOnCoherentPair) {
    const GaussianState in = coherent({{1.0, 0.0}, {0.0, 0.0}});
    const GaussianState out = apply_symplectic(in, beam_splitter_50_50(), {ModeIndex{0}, ModeIndex{1}});
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(out.mean()(0), h, 1e-15);
    EXPECT_NEAR(out.mean()(2), h, 1e-15);
    EXPECT_TRUE(out.cov().isApprox(vacuum(2).cov(), 1e-14));
}

TEST(Gaussian, BeamSplitterOnSqueezedAndVacuum) {
    // x: (1 + 1/4)/2 on both outputs, covariance (1 - 1/4)/2
    const GaussianState in = direct_sum(squeezed_vacuum(1.0, 1.0 / 16.0), vacuum(1));
    const GaussianState out = apply_symplectic(in, beam_splitter_50_50(), {ModeIndex{0}, ModeIndex{1}});
    EXPECT_NEAR(out.cov()(0, 0), 0.625, 1e-14);
    EXPECT_NEAR(out.cov()(2, 2), 0.625, 1e-14);
    EXPECT_NEAR(out.cov()(0, 2), 0.375, 1e-14);
    EXPECT_NEAR(out.cov()(1, 1), (1.0 / 16.0 + 0.25) / 2.0, 1e-14);
}

TEST(Gaussian, TwoSplittersComposeToIdentity) {
    const SymplecticMatrix bs = beam_splitter_50_50();
    EXPECT_TRUE((bs * bs).entries().isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-15));
}

TEST(Gaussian, PhaseShiftRotatesMean) {
    const GaussianState c = coherent({{1.0, 0.0}});
    const GaussianState r = apply_symplectic(c, phase_shift(std::numbers::pi / 2), {ModeIndex{0}});
    EXPECT_NEAR(std::abs(r.mean()(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.mean()(1)), 1.0, 1e-15);
}

TEST(Gaussian, SymplecticMatrixRejectsNonSymplectic) {
    EXPECT_THROW(SymplecticMatrix(2.0 * Eigen::MatrixXd::Identity(2, 2)), InvalidArgument);
}

TEST(Gaussian, DisplaceShiftsOnlyTargetMode) {
    const GaussianState d = displace(vacuum(2), ModeIndex{1}, 0.3, -0.7);
    EXPECT_DOUBLE_EQ(d.mean()(0), 0.0);
    EXPECT_DOUBLE_EQ(d.mean()(2), 0.3);
    EXPECT_DOUBLE_EQ(d.mean()(3), -0.7);
}

TEST(Gaussian, LossChannelMixesInVacuum) {
    const GaussianState s = loss_channel(squeezed_vacuum(0.5, 0.5), ModeIndex{0}, 0.5);
    EXPECT_NEAR(s.cov()(0, 0), 0.375, 1e-15);
    EXPECT_NEAR(s.cov()(1, 1), 0.375, 1e-15);
    const GaussianState c = loss_channel(coherent({{2.0, 0.0}}), ModeIndex{0}, 0.25);
    EXPECT_NEAR(c.mean()(0), 1.0, 1e-15);
    const GaussianState gone = loss_channel(squeezed_vacuum(2.0, 1.0 / 32.0), ModeIndex{0}, 0.0);
    EXPECT_TRUE(gone.cov().isApprox(vacuum(1).cov()));
    EXPECT_THROW(loss_channel(vacuum(1), ModeIndex{0}, 1.5), InvalidArgument);
    EXPECT_THROW(loss_channel(vacuum(1), ModeIndex{0}, -0.1), InvalidArgument);
}

TEST(Gaussian, PartialTraceKeepsOrder) {
    const GaussianState s = direct_sum(coherent({{1.0, 2.0}}), coherent({{3.0, 4.0}}));
    const GaussianState t = partial_trace(s, {ModeIndex{1}, ModeIndex{0}});
    EXPECT_DOUBLE_EQ(t.mean()(0), 3.0);
    EXPECT_DOUBLE_EQ(t.mean()(2), 1.0);
    const GaussianState one = partial_trace(s, {ModeIndex{1}});
    EXPECT_EQ(one.n_modes(), 1u);
}

TEST(Gaussian, ThermalEigenvalueIsVariance) {
    const auto nu = symplectic_eigenvalues(thermal(0.8));
    EXPECT_NEAR(nu[0], 0.8, 1e-14);
    EXPECT_THROW(thermal(0.1), PhysicalityError);
}

TEST(Gaussian, SymplecticEigenvaluesRejectNonPositive) {
    EXPECT_THROW(symplectic_eigenvalues(Eigen::MatrixXd::Zero(2, 2)), PhysicalityError);
}

TEST(Gaussian, IsPhysicalDetectsViolation) {
    Eigen::MatrixXd cov = 0.1 * Eigen::MatrixXd::Identity(2, 2);
    const GaussianState bad(Eigen::VectorXd::Zero(2), cov);
    EXPECT_FALSE(is_physical(bad));
    EXPECT_THROW(require_physical(bad, "bad"), PhysicalityError);
    EXPECT_TRUE(is_physical(vacuum(3)));
}

// properties

TEST(GaussianProperty, RandomSymplecticsAreSymplectic) {
    oracle::Gen g(11);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
        const Eigen::MatrixXd s = random_symplectic(g, n).entries();
        const Eigen::MatrixXd om = symplectic_form(n);
        EXPECT_LT((s.transpose() * om * s - om).norm(), 1e-10);
    }
}

TEST(GaussianProperty, SymplecticEigenvaluesInvariantUnderSymplectics) {
    oracle::Gen g(12);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
        const GaussianState s = random_physical(g, n);
        std::vector<ModeIndex> all;
        for (std::size_t k = 0; k < n; ++k) all.push_back(ModeIndex{k});
        const GaussianState t2 = apply_symplectic(s, random_symplectic(g, n), all);
        const auto a = symplectic_eigenvalues(s);
        const auto b = symplectic_eigenvalues(t2);
        // rounding grows with the conditioning of the transformed covariance
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t2.cov());
        const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], std::max(1e-9, 1e-13 * cond) * a[k]);
        EXPECT_LT((t2.cov() - t2.cov().transpose()).norm(), 1e-12 * t2.cov().norm());
    }
}

TEST(GaussianProperty, LossAndTracePreservePhysicality) {
    oracle::Gen g(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(2, 4));
        GaussianState s = random_physical(g, n);
        const ModeIndex m{static_cast<std::size_t>(g.integer(0, static_cast<int>(n) - 1))};
        s = loss_channel(s, m, g.uniform(0.0, 1.0));
        EXPECT_TRUE(is_physical(s));
        EXPECT_TRUE(is_physical(partial_trace(s, {m})));
    }
}

TEST(GaussianProperty, DisplacementLeavesCovarianceUnchanged) {
    oracle::Gen g(14);
    for (int t = 0; t < 50; ++t) {
        const GaussianState s = random_physical(g, 2);
        const GaussianState d = displace(s, ModeIndex{1}, g.normal(), g.normal());
        EXPECT_EQ(d.cov(), s.cov());
    }
}
