#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnc/gibbs.hpp"
#include "qnc/orlicz.hpp"

namespace qnc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pass/fail thresholds; defaults are the module-level tolerances.
struct Tolerances {
    double monotonicity_slack = 1e-8;
    double invariance = 1e-9;
    double trace_integral_rel = 1e-10;
    double ddp_consistency = 1e-12;
    double contraction_slack = 1e-9;
    double equivalence_growth = 10.0;
};

struct PotentialConfig {
    std::string type = "ising";  // ising | heisenberg | custom | zero
    double jx = 0.0, jy = 0.0, jz = 1.0, h = 0.2;
    int range = 1;
    std::vector<nlohmann::json> terms;  // custom: operator documents (support + matrix)
};

struct ObservableConfig {
    std::string type = "sigma_z";  // sigma_x | sigma_y | sigma_z | identity | file
    Site site{0};
    std::string path;
};

struct OrliczConfig {
    std::string kind = "power";  // power | exp_minus_one | cosh_minus_one | llogl | custom
    double p = 2.0;
    std::vector<std::array<double, 2>> knots;
};

struct OutputConfig {
    std::string path;            // empty = stdout
    std::string format = "csv";  // csv | structured-text
};

struct ExperimentConfig {
    Lattice lattice;
    PotentialConfig potential;
    std::vector<double> betas{0.1, 0.3, 0.5};
    std::vector<Region> volumes;  // default: chains of 2..6 sites
    ObservableConfig observable;
    std::vector<double> p_grid{1.0, 1.5, 2.0, 3.0, 4.0};
    std::vector<double> s_grid{0.0, 0.25, 0.5, 0.75, 1.0};
    OrliczConfig orlicz;
    std::vector<Region> blocks;  // default: the single site at the origin
    std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
    OutputConfig output;
};

/// The documented default bundle: Ising chain, beta in {0.1,0.3,0.5},
/// volumes 2..6, p in {1,1.5,2,3,4}, s in {0,1/4,1/2,3/4,1}.
ExperimentConfig default_config();

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& cfg, const std::string& path);

Potential build_potential(const ExperimentConfig& cfg);
LocalOperator build_observable(const ExperimentConfig& cfg);
OrliczFunction build_orlicz(const OrliczConfig& cfg);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string config_hash;
    std::string tool_version;
    double wall_ms = 0.0;
};

struct RunResult {
    ResultTable table;
    bool pass = true;
    std::string message;
};

/// Subcommands: norms, monotonicity, semigroup, equivalence, orlicz,
/// contraction, selftest.
RunResult run(const std::string& subcommand, const ExperimentConfig& cfg);

std::string table_to_csv(const ResultTable& table);
nlohmann::json table_to_json(const ResultTable& table);
/// Empty path writes to stdout.
void write_table(const ResultTable& table, const std::string& path, const std::string& format);

} // namespace qnc
