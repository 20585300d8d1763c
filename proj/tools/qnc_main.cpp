// qnc: finite-volume quantum Lp / Orlicz space experiments.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage/config error.

#include <CLI11.hpp>
#include <iostream>

#include "qnc/experiment.hpp"
#include "qnc/selftest.hpp"

int main(int argc, char** argv) {
    CLI::App app{"finite-volume quantum Lp and Orlicz space experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;

    const std::vector<std::string> names = {"norms",  "monotonicity", "semigroup", "equivalence",
                                            "orlicz", "contraction",  "selftest"};
    const std::vector<std::string> descriptions = {
        "L_{p,s} norm grid over (beta, volume, p, s)",
        "volume sweep of the norms with the p >= 2 monotonicity assertion",
        "block-spin flip semigroup time series (expectation, L_2 distance)",
        "state-equivalence constant c versus volume",
        "Luxemburg/DDdP norms and trace-integral residuals",
        "Orlicz-norm contraction certificates for the four map classes",
        "the full acceptance property suite",
    };
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment config (JSON); defaults when omitted");
        sub->add_option("--out", out_path, "output path (default: config output.path or stdout)");
        sub->add_option("--seed", seed, "seed override for randomized runs")
            ->each([&](const std::string&) { seed_set = true; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        qnc::ExperimentConfig cfg =
            config_path.empty() ? qnc::default_config() : qnc::load_config(config_path);
        if (seed_set) cfg.seed = seed;
        if (!out_path.empty()) cfg.output.path = out_path;

        const qnc::RunResult res = qnc::run(sub, cfg);
        if (sub == "selftest") {
            // one line per criterion on stderr, table on the configured sink
            for (const auto& row : res.table.rows)
                std::cerr << (row[1] > 0.5 ? "PASS" : "FAIL") << " criterion " << row[0]
                          << " (" << row[2] << " s)\n";
        }
        qnc::write_table(res.table, cfg.output.path, cfg.output.format);
        if (!res.pass) {
            std::cerr << "FAIL: " << res.message << "\n";
            return 1;
        }
        return 0;
    } catch (const qnc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qnc::DimensionCapError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
