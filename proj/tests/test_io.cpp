#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "test_util.hpp"

using namespace hewalk;

namespace {

constexpr double pi = std::numbers::pi;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("hewalk_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(Angle, Parsing) {
    EXPECT_DOUBLE_EQ(parse_angle("1.5"), 1.5);
    EXPECT_DOUBLE_EQ(parse_angle("pi"), pi);
    EXPECT_DOUBLE_EQ(parse_angle("-pi"), -pi);
    EXPECT_DOUBLE_EQ(parse_angle("-0.5pi"), -pi / 2);
    EXPECT_DOUBLE_EQ(parse_angle(" 0.25 pi "), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-1e-3"), -1e-3);
    for (const char* bad : {"", "pie", "1.5x", "--pi", "nan"}) EXPECT_THROW(parse_angle(bad), ConfigError) << bad;
}

TEST(Config, JsonRoundTrip) {
    WalkConfig c;
    c.n_sites = 321;
    c.alpha0 = 8.25;
    c.delta = pi / 2;
    c.theta1 = pi;
    c.axis = Axis::x;
    c.boundary = Boundary::hard_wall;
    c.leakage_tol = 1e-6;
    EXPECT_EQ(config_from_json(to_json(c)), c);
}

TEST(Config, PartialAndStringAngles) {
    const auto c = config_from_json(Json::parse(R"({"steps": 60, "theta1": "pi", "theta2": "-0.5pi"})"));
    EXPECT_EQ(c.steps, 60u);
    EXPECT_DOUBLE_EQ(c.theta1, pi);
    EXPECT_DOUBLE_EQ(c.theta2, -pi / 2);
    EXPECT_EQ(c.n_sites, 200u);
}

TEST(Config, UnknownFieldRejected) {
    EXPECT_THROW(config_from_json(Json::parse(R"({"stepz": 3})")), ConfigError);
}

TEST(Config, LoadFromFile) {
    const auto dir = scratch("cfg");
    std::filesystem::create_directories(dir);
    write_text(dir / "c.json", R"({"alpha0": 9.5})");
    EXPECT_DOUBLE_EQ(load_config(dir / "c.json").alpha0, 9.5);
    EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
}

TEST(Record, SerializationRoundTripIsByteIdentical) {
    WalkConfig c;
    c.delta = pi / 2;
    c.steps = 12;
    for (GenerateOptions opt : {GenerateOptions{}, GenerateOptions{true, true}}) {
        const RunRecord r = cmd_generate(c, opt);
        const std::string text = serialize(r);
        const RunRecord back = parse_record(text);
        EXPECT_EQ(back, r);
        EXPECT_EQ(serialize(back), text);
    }
}

TEST(Record, ErrorRowRoundTrips) {
    RunRecord r;
    r.error = "boundary leakage";
    EXPECT_EQ(parse_record(serialize(r)), r);
}

TEST(Record, Deterministic) {
    WalkConfig c;
    EXPECT_EQ(serialize(cmd_generate(c)), serialize(cmd_generate(c)));
}

TEST(Record, ReportsOneBasedSites) {
    WalkConfig c;
    c.steps = 0;
    const RunRecord r = cmd_generate(c, {false, true});
    EXPECT_EQ(r.peak_sites.first, 100u);
    EXPECT_EQ(r.distributions->front().site, 1u);
}

TEST(Generate, ErrorsCarryConfig) {
    WalkConfig c;
    c.alpha0 = 2.0;
    try {
        cmd_generate(c);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("alpha0=2"), std::string::npos) << e.what();
    }
}

TEST(Sweep, OrderedAndIsolated) {
    WalkConfig base;
    base.steps = 8;
    const std::vector<double> values{10.0, 2.0, 9.0, 8.5};
    const auto seq = cmd_sweep(base, SweepAxis::alpha0, values, 1);
    const auto par = cmd_sweep(base, SweepAxis::alpha0, values, 3);
    ASSERT_EQ(seq.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        EXPECT_EQ(seq[i].config.alpha0, values[i]);
        EXPECT_EQ(serialize(seq[i]), serialize(par[i]));
    }
    EXPECT_TRUE(seq[1].error.has_value());
    EXPECT_FALSE(seq[0].error.has_value());
    WalkConfig single = base;
    single.alpha0 = 9.0;
    EXPECT_EQ(serialize(seq[2]), serialize(cmd_generate(single)));
}

TEST(Sweep, StepsAxisAndValidation) {
    const auto recs = cmd_sweep(WalkConfig{}, SweepAxis::steps, {4, 8}, 2);
    EXPECT_EQ(recs[1].config.steps, 8u);
    EXPECT_TRUE(cmd_sweep(WalkConfig{}, SweepAxis::steps, {2.5}, 1)[0].error.has_value());
    EXPECT_THROW(cmd_sweep(WalkConfig{}, SweepAxis::steps, {}, 1), ConfigError);
    EXPECT_THROW(parse_sweep_axis("delta"), ConfigError);
}

TEST(Sweep, WorkerEnvOverride) {
    ::setenv("HEWALK_WORKERS", "3", 1);
    EXPECT_EQ(default_workers(), 3u);
    ::setenv("HEWALK_WORKERS", "junk", 1);
    EXPECT_GE(default_workers(), 1u);
    ::unsetenv("HEWALK_WORKERS");
}

TEST(Csv, HeaderAndRows) {
    CsvTable t{{"a", "b"}, {}};
    t.add({1.0, 0.1});
    t.add({-2.5, 1e-300});
    EXPECT_EQ(t.str(), "a,b\r\n1,0.1\r\n-2.5,1e-300\r\n");
    EXPECT_THROW(t.add({1.0}), DimensionError);
}

TEST(Csv, DoublesRoundTrip) {
    for (double v : {pi, 1.0 / 3.0, 9.4948, 1e-17, -0.0}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
}

TEST(Csv, StateTable) {
    const auto s = CoinLatticeState::localized(4, 1, 0.6, Complex{0.0, 0.8});
    const auto t = state_table(s);
    EXPECT_EQ(t.columns, state_columns());
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[1][0], 2.0);
    EXPECT_NEAR(t.rows[1][5], 1.0, 1e-15);
    EXPECT_EQ(t.rows[1][4], 0.8);
}

TEST(Figure, UnknownIdRejected) {
    EXPECT_THROW(build_figure("fig9", WalkConfig{}), ConfigError);
}

TEST(Figure, VariancePanelWritesManifest) {
    const auto dir = scratch("fig5d");
    const Json m = cmd_figure("fig5d", dir);
    ASSERT_EQ(m["panels"].size(), 1u);
    EXPECT_EQ(m["panels"][0]["file"], "fig5dd.csv");
    const std::string csv = slurp(dir / "fig5dd.csv");
    EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "t,sigma2_quantum,sigma2_classical");
    EXPECT_TRUE(std::filesystem::exists(dir / "fig5d_manifest.json"));
}

TEST(Figure, SmallStepPanelsRecordPhaseClass) {
    const auto panels = build_figure("fig6", WalkConfig{});
    ASSERT_EQ(panels.size(), 6u);
    for (const auto& p : panels) EXPECT_TRUE(p.meta["run"].contains("phase_class"));
}
