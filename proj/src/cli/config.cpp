#include "cvclone/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cvclone/cli/format.hpp"

namespace cvclone::cli {

namespace {

using Setter = std::function<void(AppConfig&, std::string_view)>;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw std::invalid_argument("expected a real number, got '" + std::string(v) + "'");
    }
    return out;
}

std::uint64_t parse_u64(std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

OpoParams& opo(AppConfig& c) {
    if (!c.opo) c.opo = OpoParams{};
    return *c.opo;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto real = [&t](const std::string& key, auto field) {
            t[key] = [field](AppConfig& c, std::string_view v) { field(c) = parse_double(v); };
        };
        real("squeezer_i.squeezing_db", [](AppConfig& c) -> double& { return c.protocol.spec_i.squeezing_db; });
        real("squeezer_i.antisqueezing_db", [](AppConfig& c) -> double& { return c.protocol.spec_i.antisqueezing_db; });
        real("squeezer_ii.squeezing_db", [](AppConfig& c) -> double& { return c.protocol.spec_ii.squeezing_db; });
        real("squeezer_ii.antisqueezing_db", [](AppConfig& c) -> double& { return c.protocol.spec_ii.antisqueezing_db; });
        t["input.alpha_re"] = [](AppConfig& c, std::string_view v) {
            c.protocol.input_alpha.real(parse_double(v));
        };
        t["input.alpha_im"] = [](AppConfig& c, std::string_view v) {
            c.protocol.input_alpha.imag(parse_double(v));
        };
        real("gains.gx1", [](AppConfig& c) -> double& { return c.protocol.gains.gx1; });
        real("gains.gp1", [](AppConfig& c) -> double& { return c.protocol.gains.gp1; });
        real("gains.gx2", [](AppConfig& c) -> double& { return c.protocol.gains.gx2; });
        real("gains.gp2", [](AppConfig& c) -> double& { return c.protocol.gains.gp2; });
        real("loss.eta_homodyne", [](AppConfig& c) -> double& { return c.protocol.eta_homodyne; });
        real("loss.eta_resource_a", [](AppConfig& c) -> double& { return c.protocol.eta_resource[0]; });
        real("loss.eta_resource_b", [](AppConfig& c) -> double& { return c.protocol.eta_resource[1]; });
        real("loss.eta_resource_c", [](AppConfig& c) -> double& { return c.protocol.eta_resource[2]; });
        real("loss.coupler_t", [](AppConfig& c) -> double& { return c.protocol.coupler_t; });
        t["run.shots"] = [](AppConfig& c, std::string_view v) { c.protocol.shots = parse_u64(v); };
        t["run.seed"] = [](AppConfig& c, std::string_view v) { c.protocol.seed = parse_u64(v); };
        real("opo.p_threshold_mw", [](AppConfig& c) -> double& { return opo(c).p_threshold_mw; });
        real("opo.eta_det", [](AppConfig& c) -> double& { return opo(c).eta_det; });
        real("opo.omega", [](AppConfig& c) -> double& { return opo(c).omega; });
        return t;
    }();
    return table;
}

const std::vector<std::string> kRequired = {
    "squeezer_i.squeezing_db",
    "squeezer_i.antisqueezing_db",
    "squeezer_ii.squeezing_db",
    "squeezer_ii.antisqueezing_db",
};

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : Error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line) {}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "squeezer_i.squeezing_db", "squeezer_i.antisqueezing_db",
        "squeezer_ii.squeezing_db", "squeezer_ii.antisqueezing_db",
        "input.alpha_re", "input.alpha_im",
        "gains.gx1", "gains.gp1", "gains.gx2", "gains.gp2",
        "loss.eta_homodyne", "loss.eta_resource_a", "loss.eta_resource_b", "loss.eta_resource_c",
        "loss.coupler_t",
        "run.shots", "run.seed",
        "opo.p_threshold_mw", "opo.eta_det", "opo.omega",
    };
    return keys;
}

AppConfig parse_config(std::string_view text, const std::string& source) {
    AppConfig cfg;
    cfg.protocol.shots = 100000;
    std::string section;
    std::map<std::string, int> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(source, line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty() || section.find('.') != std::string::npos) {
                throw ConfigError(source, line_no, "invalid section name '" + section + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(source, line_no, "empty key");
        if (!section.empty() && key.find('.') != std::string::npos) {
            throw ConfigError(source, line_no, "qualified key '" + key + "' inside section [" + section + "]");
        }
        const std::string full = section.empty() ? key : section + "." + key;

        const auto it = setters().find(full);
        if (it == setters().end()) throw ConfigError(source, line_no, "unknown key '" + full + "'");
        if (const auto prev = seen.find(full); prev != seen.end()) {
            throw ConfigError(source, line_no,
                              "duplicate key '" + full + "' (first set on line " +
                                  std::to_string(prev->second) + ")");
        }
        seen[full] = line_no;
        try {
            it->second(cfg, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(source, line_no, "key '" + full + "': " + e.what());
        }
    }

    for (const auto& key : kRequired) {
        if (!seen.count(key)) throw ConfigError(source, 0, "missing required key '" + key + "'");
    }
    if (cfg.opo && !seen.count("opo.p_threshold_mw")) {
        throw ConfigError(source, 0, "missing required key 'opo.p_threshold_mw' for the [opo] section");
    }

    // Best-effort line attribution: the first key whose field name appears in
    // the validation message.
    auto line_for = [&](const std::string& message) {
        for (const auto& [key, line] : seen) {
            std::string field = key.substr(key.find('.') + 1);
            if (field.size() > 2 && field[field.size() - 2] == '_' && field.rfind("eta_resource", 0) == 0) {
                field.resize(field.size() - 2);
            }
            if (message.find(field) != std::string::npos) return line;
        }
        return 0;
    };
    try {
        cfg.protocol.validate();
        if (cfg.opo) cfg.opo->validate();
    } catch (const PhysicalityError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(source, line_for(e.what()), e.what());
    }
    return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string serialize_config(const AppConfig& config) {
    const ProtocolConfig& p = config.protocol;
    std::ostringstream os;
    auto kv = [&os](const char* key, double v) { os << key << " = " << format_number(v) << '\n'; };

    os << "[squeezer_i]\n";
    kv("squeezing_db", p.spec_i.squeezing_db);
    kv("antisqueezing_db", p.spec_i.antisqueezing_db);
    os << "\n[squeezer_ii]\n";
    kv("squeezing_db", p.spec_ii.squeezing_db);
    kv("antisqueezing_db", p.spec_ii.antisqueezing_db);
    os << "\n[input]\n";
    kv("alpha_re", p.input_alpha.real());
    kv("alpha_im", p.input_alpha.imag());
    os << "\n[gains]\n";
    kv("gx1", p.gains.gx1);
    kv("gp1", p.gains.gp1);
    kv("gx2", p.gains.gx2);
    kv("gp2", p.gains.gp2);
    os << "\n[loss]\n";
    kv("eta_homodyne", p.eta_homodyne);
    kv("eta_resource_a", p.eta_resource[0]);
    kv("eta_resource_b", p.eta_resource[1]);
    kv("eta_resource_c", p.eta_resource[2]);
    kv("coupler_t", p.coupler_t);
    os << "\n[run]\n";
    os << "shots = " << p.shots << '\n';
    os << "seed = " << p.seed << '\n';
    if (config.opo) {
        os << "\n[opo]\n";
        kv("p_threshold_mw", config.opo->p_threshold_mw);
        kv("eta_det", config.opo->eta_det);
        kv("omega", config.opo->omega);
    }
    return os.str();
}

}  // namespace cvclone::cli
