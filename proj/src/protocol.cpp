#include "cvclone/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace cvclone {

namespace {

void notify(const StateObserver& observer, std::string_view stage, const GaussianState& s) {
    if (observer) observer(stage, s);
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

// Displacement per unit outcome; the 1/sqrt(eta) restores unit gain on the
// attenuated detector signal.
double feedforward_scale(double gain, double eta_homodyne) {
    return std::numbers::sqrt2 * gain / std::sqrt(eta_homodyne);
}

// 4x2 map from (x_u, p_v) to displacements of (x_B, p_B, x_C, p_C).
Eigen::Matrix<double, 4, 2> feedforward_matrix(const ProtocolConfig& c) {
    Eigen::Matrix<double, 4, 2> d = Eigen::Matrix<double, 4, 2>::Zero();
    d(0, 0) = feedforward_scale(c.gains.gx1, c.eta_homodyne);
    d(1, 1) = feedforward_scale(c.gains.gp1, c.eta_homodyne);
    d(2, 0) = feedforward_scale(c.gains.gx2, c.eta_homodyne);
    d(3, 1) = feedforward_scale(c.gains.gp2, c.eta_homodyne);
    return d;
}

CloneMoments moments_from_state(const Eigen::Vector4d& mean, const Eigen::Matrix4d& cov) {
    CloneMoments m;
    for (int k = 0; k < 2; ++k) {
        auto& q = m.clones[static_cast<std::size_t>(k)];
        q.mean_x = mean(2 * k);
        q.mean_p = mean(2 * k + 1);
        q.var_x = cov(2 * k, 2 * k);
        q.var_p = cov(2 * k + 1, 2 * k + 1);
    }
    return m;
}

// Outcome-independent pieces of the two sequential conditionings.
struct ConditionalModel {
    Marginal xu;                   // x_u marginal
    Marginal pv;                   // p_v marginal after conditioning on x_u (at e1 = 0)
    double pv_slope = 0.0;         // d<p_v | x_u>/d x_u
    Eigen::Vector4d base_mean;     // <B, C> given e1 = e2 = 0
    Eigen::Vector4d slope_xu;      // d<B, C>/d e1 before feedforward
    Eigen::Vector4d slope_pv;      // d<B, C>/d e2 before feedforward
    Eigen::Matrix4d conditional_cov;
};

ConditionalModel conditional_model(const GaussianState& s0, const StateObserver& observer) {
    ConditionalModel m;
    const ConditioningUpdate u1 = conditioning_update(s0, {kModeU, Quadrature::X});
    m.xu = u1.marginal;
    // remaining coordinates: (x_v, p_v, x_B, p_B, x_C, p_C)
    const GaussianState s1(u1.kept_mean, u1.conditioned_cov);
    notify(observer, "conditioned_on_x_u", s1);
    m.pv_slope = u1.gain(1);

    const ConditioningUpdate u2 = conditioning_update(s1, {ModeIndex{0}, Quadrature::P});
    m.pv = u2.marginal;
    m.base_mean = u2.kept_mean;
    m.slope_xu = u1.gain.tail<4>();
    m.slope_pv = u2.gain;
    m.conditional_cov = u2.conditioned_cov;
    notify(observer, "conditioned_on_p_v", GaussianState(m.base_mean, m.conditional_cov));
    return m;
}

}  // namespace

void ProtocolConfig::validate() const {
    spec_i.validate();
    spec_ii.validate();
    if (!std::isfinite(input_alpha.real()) || !std::isfinite(input_alpha.imag())) {
        throw InvalidArgument("ProtocolConfig: non-finite input amplitude");
    }
    for (double g : {gains.gx1, gains.gp1, gains.gx2, gains.gp2}) {
        if (!std::isfinite(g)) throw InvalidArgument("ProtocolConfig: non-finite gain");
    }
    if (!(eta_homodyne > 0.0 && eta_homodyne <= 1.0)) {
        throw InvalidArgument("ProtocolConfig: eta_homodyne must lie in (0, 1]");
    }
    for (double e : eta_resource) {
        if (!in_unit_interval(e)) throw InvalidArgument("ProtocolConfig: eta_resource must lie in [0, 1]");
    }
    if (!(coupler_t > 0.0 && coupler_t <= 1.0)) {
        throw InvalidArgument("ProtocolConfig: coupler_t must lie in (0, 1]");
    }
    if (shots < 1) throw InvalidArgument("ProtocolConfig: shots must be at least 1");
}

GaussianState pre_measurement_state(const ProtocolConfig& config, const StateObserver& observer) {
    config.validate();
    const GaussianState input = coherent({config.input_alpha});
    notify(observer, "input", input);
    const ResourceState resource =
        build_telecloning_resource(config.spec_i, config.spec_ii, config.eta_resource);
    notify(observer, "resource", resource.state);

    // (in, A, B, C) -> (v, u, B, C)
    GaussianState s = direct_sum(input, resource.state);
    s = apply_symplectic(s, beam_splitter_50_50(), {ModeIndex{0}, ModeIndex{1}});
    notify(observer, "bell_splitter", s);
    if (config.eta_homodyne != 1.0) {
        s = loss_channel(s, kModeV, config.eta_homodyne);
        s = loss_channel(s, kModeU, config.eta_homodyne);
        notify(observer, "detector_loss", s);
    }
    if (config.coupler_t != 1.0) {
        s = loss_channel(s, kModeClone1, config.coupler_t);
        s = loss_channel(s, kModeClone2, config.coupler_t);
        notify(observer, "coupler_loss", s);
    }
    return s;
}

std::vector<ExpansionTerm> clone_expansion(const ProtocolConfig& config, int clone, Quadrature q) {
    config.validate();
    if (clone != 0 && clone != 1) throw InvalidArgument("clone_expansion: clone must be 0 or 1");
    const bool is_x = q == Quadrature::X;
    const std::string tag = is_x ? "x_" : "p_";
    const double r2 = std::numbers::sqrt2;
    const double g = is_x ? config.gains.x(clone) : config.gains.p(clone);
    // x_k = x_rk + g (x_in - x_A);  p_k = p_rk + g (p_in + p_A)
    const double a_sign = is_x ? -1.0 : 1.0;
    const double iii_sign = clone == 0 ? 1.0 : -1.0;
    const double eta_a = config.eta_resource[0];
    const double eta_r = config.eta_resource[static_cast<std::size_t>(clone + 1)];
    const double t = config.coupler_t;
    const double eh = config.eta_homodyne;

    const double in_mean = is_x ? config.input_alpha.real() : config.input_alpha.imag();
    const double v_i = is_x ? config.spec_i.antisqueezed_variance() : config.spec_i.squeezed_variance();
    const double v_ii =
        is_x ? config.spec_ii.squeezed_variance() : config.spec_ii.antisqueezed_variance();

    // A = (i + ii)/sqrt2;  B,C = (i - ii)/2 +- iii/sqrt2
    const double ca = a_sign * g * std::sqrt(eta_a);
    const double cr = std::sqrt(t * eta_r);
    const std::string receiver = clone == 0 ? "B" : "C";
    return {
        {tag + "in", g, in_mean, kVacuumVariance},
        {tag + "i", ca / r2 + cr / 2.0, 0.0, v_i},
        {tag + "ii", ca / r2 - cr / 2.0, 0.0, v_ii},
        {tag + "iii", iii_sign * cr / r2, 0.0, kVacuumVariance},
        {tag + "loss_A", a_sign * g * std::sqrt(1.0 - eta_a), 0.0, kVacuumVariance},
        {tag + "loss_" + receiver, std::sqrt(t) * std::sqrt(1.0 - eta_r), 0.0, kVacuumVariance},
        {tag + "coupler_" + receiver, std::sqrt(1.0 - t), 0.0, kVacuumVariance},
        {tag + "homodyne", r2 * g * std::sqrt((1.0 - eh) / eh), 0.0, kVacuumVariance},
    };
}

CloneMoments run_analytic(const ProtocolConfig& config) {
    CloneMoments m;
    for (int k = 0; k < 2; ++k) {
        auto& out = m.clones[static_cast<std::size_t>(k)];
        for (Quadrature q : {Quadrature::X, Quadrature::P}) {
            double mean = 0.0;
            double var = 0.0;
            for (const ExpansionTerm& t : clone_expansion(config, k, q)) {
                mean += t.coefficient * t.source_mean;
                var += t.coefficient * t.coefficient * t.source_variance;
            }
            (q == Quadrature::X ? out.mean_x : out.mean_p) = mean;
            (q == Quadrature::X ? out.var_x : out.var_p) = var;
        }
    }
    return m;
}

CloneMoments run_circuit_analytic(const ProtocolConfig& config, const StateObserver& observer) {
    const GaussianState s0 = pre_measurement_state(config, observer);
    const ConditionalModel cm = conditional_model(s0, observer);
    const Eigen::Matrix<double, 4, 2> d = feedforward_matrix(config);

    // Final clone quadratures, as functions of independent innovations
    //   e1 = x_u - <x_u>,  e2 = p_v - <p_v | x_u>:
    //   z = base + D (<x_u>, <p_v>) + a e1 + b e2 + conditional noise
    const Eigen::Vector4d a = cm.slope_xu + d * Eigen::Vector2d(1.0, cm.pv_slope);
    const Eigen::Vector4d b = cm.slope_pv + d * Eigen::Vector2d(0.0, 1.0);
    const Eigen::Vector4d mean = cm.base_mean + d * Eigen::Vector2d(cm.xu.mean, cm.pv.mean);
    Eigen::Matrix4d cov = cm.conditional_cov + cm.xu.variance * a * a.transpose() +
                          cm.pv.variance * b * b.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    notify(observer, "clones", GaussianState(mean, cov));
    return moments_from_state(mean, cov);
}

MonteCarloResult run_monte_carlo(const ProtocolConfig& config, const MonteCarloOptions& options,
                                 const StateObserver& observer) {
    const GaussianState s0 = pre_measurement_state(config, observer);
    const ConditionalModel cm = conditional_model(s0, observer);
    const Eigen::Matrix<double, 4, 2> d = feedforward_matrix(config);
    const Eigen::Matrix4d cond_chol = Eigen::LLT<Eigen::Matrix4d>(cm.conditional_cov).matrixL();

    const std::size_t n = config.shots;
    std::vector<ShotRecord> shots(n);
    std::vector<Eigen::Vector4d> finals(options.fully_sampled ? n : 0);

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            RngStream rx(config.seed, j, 0);
            const HomodyneSample hx = sample_homodyne(s0, {kModeU, Quadrature::X}, rx);
            RngStream rp(config.seed, j, 1);
            const HomodyneSample hp = sample_homodyne(hx.state, {ModeIndex{0}, Quadrature::P}, rp);

            GaussianState clones = hp.state;
            const Eigen::Vector2d outcome(hx.outcome.value, hp.outcome.value);
            const Eigen::Vector4d shift = d * outcome;
            clones = displace(clones, ModeIndex{0}, shift(0), shift(1));
            clones = displace(clones, ModeIndex{1}, shift(2), shift(3));
            if (observer && j < 4) observer("shot_clones", clones);

            ShotRecord& rec = shots[j];
            rec.x_u = hx.outcome.value;
            rec.p_v = hp.outcome.value;
            for (int k = 0; k < 4; ++k) rec.clone_means[static_cast<std::size_t>(k)] = clones.mean()(k);

            if (options.fully_sampled) {
                RngStream rf(config.seed, j, 2);
                Eigen::Vector4d z;
                for (int k = 0; k < 4; ++k) z(k) = rf.standard_normal();
                finals[j] = clones.mean().head<4>() + cond_chol * z;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        run_range(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
    }

    // Aggregation in shot order, independent of the thread layout.
    MonteCarloResult result;
    std::array<QuadratureMoments, 2> se{};
    const double nd = static_cast<double>(n);
    for (int k = 0; k < 4; ++k) {
        auto value = [&](std::size_t j) {
            return options.fully_sampled ? finals[j](k) : shots[j].clone_means[static_cast<std::size_t>(k)];
        };
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += value(j);
        const double mean = sum / nd;
        double ss = 0.0;
        for (std::size_t j = 0; j < n; ++j) ss += (value(j) - mean) * (value(j) - mean);
        const double spread = n > 1 ? ss / (nd - 1.0) : 0.0;
        const double var = options.fully_sampled ? spread : spread + cm.conditional_cov(k, k);
        const double inf = std::numeric_limits<double>::infinity();
        const double se_mean = n > 1 ? std::sqrt(spread / nd) : inf;
        const double se_var = n > 1 ? spread * std::sqrt(2.0 / (nd - 1.0)) : inf;

        auto& out = result.moments.clones[static_cast<std::size_t>(k / 2)];
        auto& err = se[static_cast<std::size_t>(k / 2)];
        if (k % 2 == 0) {
            out.mean_x = mean;
            out.var_x = var;
            err.mean_x = se_mean;
            err.var_x = se_var;
        } else {
            out.mean_p = mean;
            out.var_p = var;
            err.mean_p = se_mean;
            err.var_p = se_var;
        }
    }
    result.moments.standard_errors = se;
    result.shots = std::move(shots);
    return result;
}

AliceLevels alice_trace_levels(const ProtocolConfig& config) {
    ProtocolConfig vac = config;
    vac.input_alpha = {0.0, 0.0};
    const GaussianState s = pre_measurement_state(vac);

    // Mean amplitude on Alice's p detector relative to the input, taken at the
    // splitter output before any detector loss.
    ProtocolConfig probe = config;
    probe.input_alpha = {1.0, 1.0};
    probe.eta_homodyne = 1.0;
    const Eigen::Vector2d measured = pre_measurement_state(probe).mode_mean(kModeV);
    const double power_in = std::norm(probe.input_alpha);

    AliceLevels levels;
    levels.var_pv_vacuum_input = marginal(s, {kModeV, Quadrature::P}).variance;
    levels.amplitude_reduction_db = 10.0 * std::log10(power_in / measured.squaredNorm());
    return levels;
}

}  // namespace cvclone
