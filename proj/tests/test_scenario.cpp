#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "irsplan/errors.hpp"
#include "irsplan/runner.hpp"
#include "irsplan/scenario.hpp"

using namespace irsplan;

namespace {

Scenario small_scenario()
{
    Scenario sc;
    sc.channel.n = 16;
    sc.channel.m = 2;
    sc.geometry.num_aps = 2;
    sc.experiment.j_values = {1, 2};
    sc.experiment.n_values = {16};
    sc.experiment.rician_db_values = {0.0, 10.0};
    sc.experiment.validate_n_values = {4};
    sc.experiment.validate_m_values = {1};
    sc.experiment.validate_rician_values = {0.0, 1.0};
    sc.experiment.trials = 200;
    return sc;
}

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

} // namespace

TEST_CASE("scenario round-trips through serialization")
{
    const Scenario sc = small_scenario();
    const std::string text = serialize_scenario(sc);
    const Scenario back = parse_scenario_text(text);
    CHECK(serialize_scenario(back) == text);
    CHECK(scenario_hash(back) == scenario_hash(sc));
}

TEST_CASE("defaults follow the reference setup")
{
    const Scenario sc = parse_scenario_text("{}");
    CHECK(sc.channel.m == 4);
    CHECK(sc.system.p_max_dbm == 23.0);
    CHECK(sc.channel.dbar == 0.5);
    CHECK(sc.system.noise_dbm == -90.0);
    CHECK(sc.channel.c0_db == -40.0);
    CHECK(sc.geometry.irs.z == 10.0);
    CHECK(sc.geometry.area_length_x == 100.0);
    CHECK(sc.geometry.area_width_y == 40.0);
    CHECK(validate_scenario(sc).empty());
}

TEST_CASE("malformed scenarios raise parse errors")
{
    CHECK_THROWS_AS(parse_scenario_text(""), parse_error);
    CHECK_THROWS_AS(parse_scenario_text("[1,2]"), parse_error);
    CHECK_THROWS_AS(parse_scenario_text(R"({"channel": {"n": "many"}})"), parse_error);
    CHECK_THROWS_AS(parse_scenario_text(R"({"geometry": {"irs": [1, 2]}})"), parse_error);
}

TEST_CASE("validate_scenario flags bad fields with context")
{
    Scenario sc = small_scenario();
    sc.channel.c0_db = 10.0;
    sc.channel.n = 0;
    const auto diags = validate_scenario(sc);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].field == "channel.c0_db");
    CHECK(diags[1].field == "channel.n");
}

TEST_CASE("dB conversions")
{
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(-40.0) == doctest::Approx(1e-4));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(23.0) == doctest::Approx(0.19952623149688797));
}

TEST_CASE("to_system_config places the requested APs")
{
    const Scenario sc = small_scenario();
    const SystemConfig cfg = to_system_config(sc);
    CHECK(cfg.geometry.aps.size() == 2);
    CHECK(cfg.channel.c0 == doctest::Approx(1e-4));
    CHECK(cfg.p_max_w == doctest::Approx(0.19952623149688797));
}

TEST_CASE("csv formatting is stable and full precision")
{
    CHECK(format_double(0.1) == "0.10000000000000001"); // 17 significant digits
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_int(42) == "42");

    ResultTable t;
    t.metadata.emplace_back("key", "value");
    t.columns = {"a", "b"};
    t.add_row({"1", "2"});
    CHECK(to_csv(t) == "# key=value\na,b\n1,2\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), contract_error);
}

TEST_CASE("run_subcommand error paths")
{
    const std::string empty = write_temp("scenario_empty.json", "");
    CHECK(run_subcommand("theorems", empty, "out_unused.csv") == exit_parse_error);

    const std::string bad = write_temp("scenario_bad.json", R"({"channel": {"n": 0}})");
    CHECK(run_subcommand("theorems", bad, "out_unused.csv") == exit_invalid_scenario);

    const std::string ok = write_temp("scenario_ok.json", "{}");
    CHECK(run_subcommand("no-such-command", ok, "out_unused.csv") == exit_usage);
    CHECK(run_subcommand("theorems", "missing_file.json", "out_unused.csv") == exit_parse_error);

    std::remove(empty.c_str());
    std::remove(bad.c_str());
    std::remove(ok.c_str());
}

TEST_CASE("build_result_table is deterministic per subcommand")
{
    const Scenario sc = small_scenario();
    for (const char* sub : {"synth", "associate", "evaluate", "theorems", "validate"}) {
        const ResultTable a = build_result_table(sub, sc);
        const ResultTable b = build_result_table(sub, sc);
        CHECK(to_csv(a) == to_csv(b));
        CHECK_FALSE(to_csv(a).empty());
    }
}

TEST_CASE("seed and trial overrides flow into the table metadata")
{
    const Scenario sc = small_scenario();
    RunOptions opts;
    opts.seed = 99;
    const ResultTable t = build_result_table("validate", sc, opts);
    bool found = false;
    for (const auto& [k, v] : t.metadata)
        if (k == "seed" && v == "99")
            found = true;
    CHECK(found);
}

TEST_CASE("theorems table reports every check as passing")
{
    Scenario sc = small_scenario();
    const ResultTable t = build_result_table("theorems", sc);
    REQUIRE_FALSE(t.rows.empty());
    for (const auto& row : t.rows)
        CHECK(row.back() == "1");
}
