#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cvclone/metrics.hpp"
#include "cvclone/opo.hpp"
#include "support/oracles.hpp"

using namespace cvclone;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
    return v;
}

}  // namespace

TEST(Opo, ZeroPumpGivesNoSqueezing) {
    const SqueezerSpec s = squeezing_spectra({200.0, 0.8, 0.3}, 0.0);
    EXPECT_NEAR(s.squeezing_db, 0.0, 1e-15);
    EXPECT_NEAR(s.antisqueezing_db, 0.0, 1e-15);
}

TEST(Opo, PerfectDetectionIsPure) {
    // V- V+ = 1 at eta = 1, omega = 0
    for (double p : {10.0, 50.0, 100.0, 150.0}) {
        const SqueezerSpec s = squeezing_spectra({200.0, 1.0, 0.0}, p);
        EXPECT_NEAR(s.squeezing_db, s.antisqueezing_db, 1e-10);
        const double x = std::sqrt(p / 200.0);
        EXPECT_NEAR(s.squeezing_db, -10.0 * std::log10(1.0 - 4.0 * x / ((1.0 + x) * (1.0 + x))), 1e-12);
    }
}

TEST(Opo, LossyDetectionIsMixed) {
    const SqueezerSpec s = squeezing_spectra({200.0, 0.7, 0.0}, 60.0);
    EXPECT_GT(s.antisqueezing_db, s.squeezing_db);
    EXPECT_NO_THROW(s.validate());
}

TEST(Opo, RejectsOutOfRangePump) {
    EXPECT_THROW(squeezing_spectra({200.0, 1.0, 0.0}, 200.0), InvalidArgument);
    EXPECT_THROW(squeezing_spectra({200.0, 1.0, 0.0}, -1.0), InvalidArgument);
    EXPECT_THROW(squeezing_spectra({0.0, 1.0, 0.0}, 1.0), InvalidArgument);
    EXPECT_THROW(squeezing_spectra({200.0, 1.1, 0.0}, 1.0), InvalidArgument);
}

TEST(Opo, FidelityCurveStartsClassicalAndStaysBelowOptimum) {
    const OpoParams p{200.0, 1.0, 0.0};
    const auto grid = linspace(0.0, 199.0, 200);
    const auto curve = fidelity_vs_pump(p, grid);
    EXPECT_NEAR(curve.front().fidelity, 0.5, 1e-12);
    for (const auto& pt : curve) EXPECT_LE(pt.fidelity, 2.0 / 3.0 + 1e-12);
}

TEST(Opo, FidelityCurveIsUnimodal) {
    const auto grid = linspace(0.0, 199.9, 400);
    const auto curve = fidelity_vs_pump({200.0, 1.0, 0.0}, grid);
    std::size_t peak = 0;
    for (std::size_t k = 1; k < curve.size(); ++k)
        if (curve[k].fidelity > curve[peak].fidelity) peak = k;
    for (std::size_t k = 1; k <= peak; ++k) EXPECT_GE(curve[k].fidelity, curve[k - 1].fidelity - 1e-12);
    for (std::size_t k = peak + 1; k < curve.size(); ++k)
        EXPECT_LE(curve[k].fidelity, curve[k - 1].fidelity + 1e-12);
    EXPECT_GT(peak, 0u);
    EXPECT_LT(peak, curve.size() - 1);
}

TEST(Opo, IllustrativeOperatingPoint) {
    const auto curve = fidelity_vs_pump({200.0, 0.75, 0.0}, std::vector<double>{60.0});
    EXPECT_NEAR(curve[0].fidelity, 0.6, 0.01);
}

TEST(Opo, FitRecoversParameters) {
    const OpoParams truth{180.0, 0.72, 0.0};
    std::vector<SqueezingDatum> data;
    for (double p : {10.0, 25.0, 40.0, 60.0, 80.0, 100.0}) {
        const SqueezerSpec s = squeezing_spectra(truth, p);
        data.push_back({p, s.squeezing_db, s.antisqueezing_db});
    }
    const OpoFit fit = fit_params(data);
    EXPECT_NEAR(fit.params.p_threshold_mw, truth.p_threshold_mw, 0.01 * truth.p_threshold_mw);
    EXPECT_NEAR(fit.params.eta_det, truth.eta_det, 0.01 * truth.eta_det);
    EXPECT_LT(fit.rms_residual_db, 1e-4);
}

TEST(Opo, FitRejectsBadData) {
    std::vector<SqueezingDatum> two{{10.0, 1.0, 1.0}, {20.0, 2.0, 2.0}};
    EXPECT_THROW(fit_params(two), InvalidArgument);
    std::vector<SqueezingDatum> dup{{10.0, 1.0, 1.0}, {10.0, 1.0, 1.0}, {20.0, 2.0, 2.0}};
    EXPECT_THROW(fit_params(dup), InvalidArgument);
}

// properties

TEST(OpoProperty, SpectraPhysicalOnRandomGrid) {
    oracle::Gen g(61);
    for (int t = 0; t < 500; ++t) {
        const OpoParams p{g.uniform(10.0, 500.0), g.uniform(0.0, 1.0), g.uniform(0.0, 3.0)};
        const SqueezerSpec s = squeezing_spectra(p, g.uniform(0.0, 0.999) * p.p_threshold_mw);
        EXPECT_NO_THROW(s.validate());
        EXPECT_GE(s.squeezing_db, 0.0);
        EXPECT_GE(s.squeezed_variance() * s.antisqueezed_variance(), 1.0 / 16.0 - 1e-15);
    }
}

TEST(OpoProperty, SqueezingGrowsWithPump) {
    oracle::Gen g(62);
    for (int t = 0; t < 100; ++t) {
        const OpoParams p{g.uniform(10.0, 500.0), g.uniform(0.05, 1.0), g.uniform(0.0, 3.0)};
        double prev_s = -1.0, prev_a = -1.0;
        for (double f : linspace(0.0, 0.99, 40)) {
            const SqueezerSpec s = squeezing_spectra(p, f * p.p_threshold_mw);
            EXPECT_GT(s.squeezing_db, prev_s - 1e-15);
            EXPECT_GT(s.antisqueezing_db, prev_a - 1e-15);
            prev_s = s.squeezing_db;
            prev_a = s.antisqueezing_db;
        }
    }
}

TEST(OpoProperty, PumpFidelityBounded) {
    oracle::Gen g(63);
    for (int t = 0; t < 30; ++t) {
        const OpoParams p{g.uniform(10.0, 500.0), g.uniform(0.0, 1.0), g.uniform(0.0, 2.0)};
        const auto curve = fidelity_vs_pump(p, linspace(0.0, 0.995 * p.p_threshold_mw, 60));
        EXPECT_NEAR(curve.front().fidelity, 0.5, 1e-12);
        for (const auto& pt : curve) {
            EXPECT_LE(pt.fidelity, 2.0 / 3.0 + 1e-12);
            EXPECT_GE(pt.fidelity, 0.0);
        }
    }
}
