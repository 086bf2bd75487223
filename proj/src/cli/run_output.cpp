#include "cvclone/cli/run_output.hpp"

#include <cmath>
#include <limits>

namespace cvclone::cli {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 4> kGainNames{"g_x1", "g_p1", "g_x2", "g_p2"};

// Non-finite values travel as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json quad_to_json(const QuadratureMoments& q) {
    return json{{"mean_x", number_or_null(q.mean_x)},
                {"mean_p", number_or_null(q.mean_p)},
                {"var_x", number_or_null(q.var_x)},
                {"var_p", number_or_null(q.var_p)}};
}

QuadratureMoments quad_from_json(const json& j) {
    return {number_or_inf(j.at("mean_x")), number_or_inf(j.at("mean_p")),
            number_or_inf(j.at("var_x")), number_or_inf(j.at("var_p"))};
}

}  // namespace

bool operator==(const FidelityReport& a, const FidelityReport& b) {
    return a.f_clone1 == b.f_clone1 && a.f_clone2 == b.f_clone2 &&
           a.classical_limit == b.classical_limit && a.optimal_gaussian == b.optimal_gaussian;
}

bool operator==(const RunOutput& a, const RunOutput& b) {
    return a.command == b.command && a.config == b.config && a.moments == b.moments &&
           a.fidelity == b.fidelity && a.criteria == b.criteria && a.gains == b.gains &&
           a.path_agreement == b.path_agreement && a.provenance == b.provenance;
}

json config_to_json(const AppConfig& config) {
    const ProtocolConfig& p = config.protocol;
    json j{
        {"squeezer_i", {{"squeezing_db", p.spec_i.squeezing_db}, {"antisqueezing_db", p.spec_i.antisqueezing_db}}},
        {"squeezer_ii", {{"squeezing_db", p.spec_ii.squeezing_db}, {"antisqueezing_db", p.spec_ii.antisqueezing_db}}},
        {"input", {{"alpha_re", p.input_alpha.real()}, {"alpha_im", p.input_alpha.imag()}}},
        {"gains", {{"gx1", p.gains.gx1}, {"gp1", p.gains.gp1}, {"gx2", p.gains.gx2}, {"gp2", p.gains.gp2}}},
        {"loss",
         {{"eta_homodyne", p.eta_homodyne},
          {"eta_resource_a", p.eta_resource[0]},
          {"eta_resource_b", p.eta_resource[1]},
          {"eta_resource_c", p.eta_resource[2]},
          {"coupler_t", p.coupler_t}}},
        {"run", {{"shots", p.shots}, {"seed", p.seed}}},
    };
    if (config.opo) {
        j["opo"] = {{"p_threshold_mw", config.opo->p_threshold_mw},
                    {"eta_det", config.opo->eta_det},
                    {"omega", config.opo->omega}};
    }
    return j;
}

AppConfig config_from_json(const json& j) {
    AppConfig c;
    ProtocolConfig& p = c.protocol;
    p.spec_i = {j.at("squeezer_i").at("squeezing_db"), j.at("squeezer_i").at("antisqueezing_db")};
    p.spec_ii = {j.at("squeezer_ii").at("squeezing_db"), j.at("squeezer_ii").at("antisqueezing_db")};
    p.input_alpha = {j.at("input").at("alpha_re").get<double>(), j.at("input").at("alpha_im").get<double>()};
    const json& g = j.at("gains");
    p.gains = {g.at("gx1"), g.at("gp1"), g.at("gx2"), g.at("gp2")};
    const json& l = j.at("loss");
    p.eta_homodyne = l.at("eta_homodyne");
    p.eta_resource = {l.at("eta_resource_a"), l.at("eta_resource_b"), l.at("eta_resource_c")};
    p.coupler_t = l.at("coupler_t");
    p.shots = j.at("run").at("shots");
    p.seed = j.at("run").at("seed");
    if (j.contains("opo")) {
        const json& o = j.at("opo");
        c.opo = OpoParams{o.at("p_threshold_mw"), o.at("eta_det"), o.at("omega")};
    }
    return c;
}

json to_json(const RunOutput& out) {
    json moments{{"clone1", quad_to_json(out.moments.clone(0))}, {"clone2", quad_to_json(out.moments.clone(1))}};
    if (out.moments.standard_errors) {
        moments["standard_errors"] = {{"clone1", quad_to_json((*out.moments.standard_errors)[0])},
                                      {"clone2", quad_to_json((*out.moments.standard_errors)[1])}};
    }
    json gains = json::object();
    for (std::size_t k = 0; k < 4; ++k) {
        const GainField& g = out.gains[k];
        gains[kGainNames[k]] = {{"value", g.value ? json(*g.value) : json(nullptr)},
                                {"standard_error", g.standard_error ? json(*g.standard_error) : json(nullptr)}};
    }
    json j{
        {"command", out.command},
        {"config", config_to_json(out.config)},
        {"moments", moments},
        {"fidelity",
         {{"clone1", out.fidelity.f_clone1},
          {"clone2", out.fidelity.f_clone2},
          {"classical_limit", out.fidelity.classical_limit},
          {"optimal_gaussian", out.fidelity.optimal_gaussian}}},
        {"criteria", {{"A_B", out.criteria.a_b}, {"A_C", out.criteria.a_c}, {"B_C", out.criteria.b_c}}},
        {"gains", gains},
        {"provenance",
         {{"seed", out.provenance.seed}, {"shots", out.provenance.shots}, {"version", out.provenance.version}}},
    };
    j["path_agreement"] = out.path_agreement ? json(*out.path_agreement) : json(nullptr);
    return j;
}

RunOutput run_output_from_json(const json& j) {
    RunOutput out;
    out.command = j.at("command").get<std::string>();
    out.config = config_from_json(j.at("config"));
    const json& m = j.at("moments");
    out.moments.clones = {quad_from_json(m.at("clone1")), quad_from_json(m.at("clone2"))};
    if (m.contains("standard_errors")) {
        const json& se = m.at("standard_errors");
        out.moments.standard_errors =
            std::array<QuadratureMoments, 2>{quad_from_json(se.at("clone1")), quad_from_json(se.at("clone2"))};
    }
    const json& f = j.at("fidelity");
    out.fidelity = {f.at("clone1"), f.at("clone2"), f.at("classical_limit"), f.at("optimal_gaussian")};
    const json& c = j.at("criteria");
    out.criteria = {c.at("A_B"), c.at("A_C"), c.at("B_C")};
    for (std::size_t k = 0; k < 4; ++k) {
        const json& g = j.at("gains").at(kGainNames[k]);
        if (!g.at("value").is_null()) out.gains[k].value = g.at("value").get<double>();
        if (!g.at("standard_error").is_null()) out.gains[k].standard_error = g.at("standard_error").get<double>();
    }
    if (!j.at("path_agreement").is_null()) out.path_agreement = j.at("path_agreement").get<double>();
    const json& p = j.at("provenance");
    out.provenance = {p.at("seed"), p.at("shots"), p.at("version")};
    return out;
}

}  // namespace cvclone::cli
