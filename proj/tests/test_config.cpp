#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cvclone/cli/commands.hpp"
#include "cvclone/cli/config.hpp"
#include "cvclone/cli/format.hpp"
#include "cvclone/cli/run_output.hpp"
#include "support/configs.hpp"
#include "support/oracles.hpp"

using namespace cvclone;
using namespace cvclone::cli;

namespace {

const char* kMinimal = R"(
# two squeezers
[squeezer_i]
squeezing_db = 3
antisqueezing_db = 5
[squeezer_ii]
squeezing_db = 2.5
antisqueezing_db = 4   ; trailing comment
)";

AppConfig random_app_config(oracle::Gen& g) {
    AppConfig c;
    c.protocol = testcfg::random_config(g);
    c.protocol.shots = static_cast<std::uint64_t>(g.integer(1, 1000000));
    c.protocol.seed = (static_cast<std::uint64_t>(g.integer(0, 1 << 30)) << 33) + 12345;
    if (g.coin()) c.opo = OpoParams{g.uniform(50.0, 400.0), g.uniform(0.0, 1.0), g.uniform(0.0, 2.0)};
    return c;
}

}  // namespace

TEST(Config, ParsesMinimalWithDefaults) {
    const AppConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.protocol.spec_i, (SqueezerSpec{3.0, 5.0}));
    EXPECT_EQ(c.protocol.spec_ii, (SqueezerSpec{2.5, 4.0}));
    EXPECT_EQ(c.protocol.gains, Gains{});
    EXPECT_EQ(c.protocol.shots, 100000u);
    EXPECT_EQ(c.protocol.seed, 0u);
    EXPECT_FALSE(c.opo.has_value());
}

TEST(Config, QualifiedKeysOutsideSections) {
    const AppConfig c = parse_config(std::string(kMinimal).insert(0, "run.seed = 42\n"));
    EXPECT_EQ(c.protocol.seed, 42u);
}

TEST(Config, BundledConfigsLoad) {
    const AppConfig opt = load_config(std::string(CVCLONE_CONFIG_DIR) + "/optimal.cfg");
    EXPECT_NEAR(opt.protocol.spec_i.squeezing_db, optimal_squeezing().db, 1e-12);
    const AppConfig cl = load_config(std::string(CVCLONE_CONFIG_DIR) + "/classical.cfg");
    EXPECT_EQ(cl.protocol.spec_i, SqueezerSpec{});
    const AppConfig realistic = load_config(std::string(CVCLONE_CONFIG_DIR) + "/realistic.cfg");
    EXPECT_TRUE(realistic.opo.has_value());
}

TEST(Config, UnknownKeyNamesKey) {
    try {
        parse_config(std::string(kMinimal) + "[gains]\ngx3 = 1\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("gx3"), std::string::npos) << e.what();
        EXPECT_EQ(e.line(), 10);
    }
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[squeezer_i]\nsqueezing_db = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[squeezer_i]\nsqueezing_db = 3\nantisqueezing_db = 3\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[run]\nshots = -5\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[run]\nshots = 0\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[loss]\neta_homodyne = abc\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[loss\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "novalue\n"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[opo]\neta_det = 0.5\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, UncertaintyViolationIsPhysicalityError) {
    EXPECT_THROW(parse_config("[squeezer_i]\nsqueezing_db = 6\nantisqueezing_db = 2\n"
                              "[squeezer_ii]\nsqueezing_db = 0\nantisqueezing_db = 0\n"),
                 PhysicalityError);
}

TEST(Format, NumbersRoundTrip) {
    EXPECT_EQ(format_number(0.5), "0.500000000");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    oracle::Gen g(71);
    for (int t = 0; t < 1000; ++t) {
        const double v = g.normal() * std::pow(10.0, g.integer(-20, 20));
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Format, CsvWriterRejectsWrongWidth) {
    std::ostringstream os;
    CsvWriter w(os, {"a", "b"});
    w.row({1.0, 2.0});
    EXPECT_ANY_THROW(w.row({1.0}));
    EXPECT_EQ(os.str().substr(0, 4), "a,b\n");
}

// properties

TEST(ConfigProperty, SerializeParseRoundTrip) {
    oracle::Gen g(72);
    for (int t = 0; t < 200; ++t) {
        const AppConfig c = random_app_config(g);
        EXPECT_EQ(parse_config(serialize_config(c)), c) << serialize_config(c);
        EXPECT_EQ(config_from_json(nlohmann::json::parse(dump_json(config_to_json(c)))), c);
    }
}

TEST(ConfigProperty, RunOutputJsonRoundTrip) {
    oracle::Gen g(73);
    for (int t = 0; t < 20; ++t) {
        AppConfig c = random_app_config(g);
        c.protocol.shots = static_cast<std::uint64_t>(g.integer(1, 50));
        const RunOutput out = g.coin() ? cmd_run(c) : cmd_sample(c, {}, nullptr);
        const RunOutput back = run_output_from_json(nlohmann::json::parse(dump_json(to_json(out))));
        EXPECT_EQ(back, out) << dump_json(to_json(out));
    }
}
