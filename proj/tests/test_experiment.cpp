#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qnc/experiment.hpp"
#include "qnc/operator_io.hpp"

using namespace qnc;
using nlohmann::json;

TEST_CASE("default config carries the documented bundle") {
    const ExperimentConfig cfg = default_config();
    CHECK(cfg.potential.type == "ising");
    CHECK(cfg.betas == std::vector<double>{0.1, 0.3, 0.5});
    CHECK(cfg.volumes.size() == 5);
    CHECK(cfg.volumes.front() == Region::chain(2));
    CHECK(cfg.volumes.back() == Region::chain(6));
    CHECK(cfg.p_grid == std::vector<double>{1.0, 1.5, 2.0, 3.0, 4.0});
    CHECK(cfg.s_grid == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("config round trip is idempotent") {
    json j = {{"lattice", {{"d", 1}, {"n", 2}}},
              {"potential", {{"type", "heisenberg"}, {"Jx", 0.4}, {"Jy", 0.7}, {"Jz", 1.0}, {"h", 0.1}}},
              {"beta", {0.2, 0.4}},
              {"volumes", {2, 3, 4}},
              {"observable", {{"type", "sigma_x"}, {"site", {0}}}},
              {"norms", {{"p", {2.0, 3.0}}, {"s", {0.5}}}},
              {"orlicz", {{"kind", "exp_minus_one"}}},
              {"seed", 77}};
    const ExperimentConfig a = config_from_json(j);
    CHECK(a.seed == 77u);
    CHECK(a.potential.jy == 0.7);
    CHECK(a.volumes.size() == 3);

    const json dumped = config_to_json(a);
    const ExperimentConfig b = config_from_json(dumped);
    CHECK(config_to_json(b) == dumped);

    const std::string path = "test_config_roundtrip.json";
    save_config(a, path);
    const ExperimentConfig c = load_config(path);
    CHECK(config_to_json(c) == dumped);
    std::remove(path.c_str());
}

TEST_CASE("unknown fields are rejected by name") {
    json j = {{"pp", 3}};
    try {
        config_from_json(j);
        FAIL("expected a schema error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("\"pp\"") != std::string::npos);
    }
    json nested = {{"norms", {{"p", {2.0}}, {"weird", 1}}}};
    CHECK_THROWS_AS(config_from_json(nested), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"potential", {{"type", "ising"}, {"Jx", 0.2}}}}),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json({{"output", {{"format", "yaml"}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"norms", {{"p", {0.5}}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"volumes", json::array()}}), ConfigError);
}

TEST_CASE("volumes parse both site counts and explicit regions") {
    const ExperimentConfig a = config_from_json({{"volumes", {2, 4}}});
    CHECK(a.volumes == std::vector<Region>{Region::chain(2), Region::chain(4)});
    const ExperimentConfig b =
        config_from_json({{"volumes", json::parse("[[[0],[1]],[[0],[1],[5]]]")}});
    CHECK(b.volumes[1] == Region({{0}, {1}, {5}}));
}

TEST_CASE("custom potential terms use the operator document format") {
    json term = {{"support", {{0}, {1}}},
                 {"matrix", json::array()}};
    // -0.5 sigma_z (x) sigma_z as an explicit 4x4 document
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) {
            double v = 0.0;
            if (r == c) v = (r == 0 || r == 3) ? -0.5 : 0.5;
            row.push_back({v, 0.0});
        }
        term["matrix"].push_back(row);
    }
    const ExperimentConfig cfg = config_from_json(
        {{"potential", {{"type", "custom"}, {"range", 1}, {"terms", json::array({term})}}}});
    const Potential phi = build_potential(cfg);
    CHECK(phi.terms().size() == 1);
    CHECK_FALSE(phi.translation_covariant());
    const LocalOperator h = hamiltonian(phi, Region::chain(3));
    CHECK(is_hermitian(h, 1e-13));
    CHECK(operator_norm(h) > 0.0);
}

TEST_CASE("norms run: unit observable gives a table of ones") {
    ExperimentConfig cfg = default_config();
    cfg.observable.type = "identity";
    cfg.betas = {0.2};
    cfg.volumes = {Region::chain(2), Region::chain(3)};
    cfg.p_grid = {2.0};
    cfg.s_grid = {0.5};
    const RunResult res = run("norms", cfg);
    CHECK(res.pass);
    CHECK(res.table.columns == std::vector<std::string>{"beta", "volume", "p", "s", "norm"});
    CHECK(res.table.rows.size() == 2);
    for (const auto& row : res.table.rows)
        CHECK(row[4] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("monotonicity run passes on the zero potential") {
    ExperimentConfig cfg = default_config();
    cfg.potential.type = "zero";
    cfg.potential.jz = 0.0;
    cfg.potential.h = 0.0;
    cfg.betas = {0.4};
    cfg.p_grid = {2.0, 3.0};
    cfg.s_grid = {0.5};
    const RunResult res = run("monotonicity", cfg);
    CHECK(res.pass);
    // all entries equal per (p, s)
    CHECK(res.table.rows.size() == 2 * 5);
}

TEST_CASE("semigroup run relaxes toward equilibrium") {
    ExperimentConfig cfg = default_config();
    cfg.betas = {0.3};
    cfg.volumes = {Region::chain(3)};
    cfg.observable.type = "sigma_x";
    cfg.blocks = {Region::single({0}), Region::single({2})};
    cfg.times = {0.0, 0.5, 1.0, 2.0};
    const RunResult res = run("semigroup", cfg);
    CHECK(res.pass);
    REQUIRE(res.table.rows.size() == 4);
    // distance to equilibrium decreases along the run
    CHECK(res.table.rows.front()[2] >= res.table.rows.back()[2]);
    for (std::size_t i = 1; i < res.table.rows.size(); ++i)
        CHECK(res.table.rows[i][2] <= res.table.rows[i - 1][2] + 1e-12);
}

TEST_CASE("equivalence and orlicz runs") {
    ExperimentConfig cfg = default_config();
    cfg.betas = {0.1};
    const RunResult eq = run("equivalence", cfg);
    CHECK(eq.pass);
    CHECK(eq.table.rows.size() == cfg.volumes.size());

    cfg.orlicz.kind = "exp_minus_one";
    cfg.observable.type = "identity";
    const RunResult orl = run("orlicz", cfg);
    CHECK(orl.pass);
    for (const auto& row : orl.table.rows)
        CHECK(row[1] == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("contraction requires a seed and certifies its bounds") {
    ExperimentConfig cfg = default_config();
    CHECK_THROWS_AS(run("contraction", cfg), ConfigError);
    cfg.seed = 12345;
    const RunResult res = run("contraction", cfg);
    CHECK(res.pass);
    REQUIRE(res.table.rows.size() == 4);
    for (const auto& row : res.table.rows) {
        CHECK(row[5] == 1.0);                 // per-class pass flag
        CHECK(row[2] <= row[3] + 1e-9);       // max ratio within the certified bound
    }
}

TEST_CASE("CSV output is deterministic modulo the wall-time field") {
    ExperimentConfig cfg = default_config();
    cfg.observable.type = "sigma_x";
    cfg.betas = {0.2};
    cfg.volumes = {Region::chain(2), Region::chain(3)};
    cfg.p_grid = {2.0};
    cfg.s_grid = {0.0, 0.5};
    const std::string a = table_to_csv(run("norms", cfg).table);
    const std::string b = table_to_csv(run("norms", cfg).table);
    auto strip_wall = [](std::string text) {
        const auto from = text.find("# wall_time_ms");
        const auto to = text.find('\n', from);
        return text.erase(from, to - from);
    };
    CHECK(strip_wall(a) == strip_wall(b));
    CHECK(a.find("# config_hash=") != std::string::npos);
    CHECK(a.find("beta,volume,p,s,norm") != std::string::npos);

    // 17 significant digits survive a parse round trip
    const RunResult res = run("norms", cfg);
    const json j = table_to_json(res.table);
    CHECK(j["rows"][0][4].get<double>() == res.table.rows[0][4]);

    const std::string path = "test_table_out.csv";
    write_table(res.table, path, "csv");
    std::ifstream in(path);
    CHECK(in.good());
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_table(res.table, path, "yaml"), ConfigError);
}

TEST_CASE("observable loaded from an operator file") {
    const Lattice lat(1, 2);
    const LocalOperator f = random_hermitian(lat, Region::single({0}), 99);
    const std::string path = "test_observable.json";
    save_operator(f, path);

    ExperimentConfig cfg = default_config();
    cfg.observable.type = "file";
    cfg.observable.path = path;
    cfg.betas = {0.2};
    cfg.volumes = {Region::chain(2)};
    cfg.p_grid = {2.0};
    cfg.s_grid = {0.5};
    const RunResult res = run("norms", cfg);
    CHECK(res.pass);
    CHECK(res.table.rows.size() == 1);
    CHECK(res.table.rows[0][4] > 0.0);
    std::remove(path.c_str());
}

TEST_CASE("unknown subcommands are config errors") {
    CHECK_THROWS_AS(run("plot", default_config()), ConfigError);
}
