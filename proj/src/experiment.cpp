#include "qnc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qnc/lp_norms.hpp"
#include "qnc/operator_io.hpp"
#include "qnc/selftest.hpp"

namespace qnc {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
}

std::vector<double> number_list(const json& j, const std::string& where) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
        return out;
    }
    if (!j.is_array() || j.empty()) throw ConfigError(where + " must be a non-empty number list");
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

Region region_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of sites");
    std::vector<Site> sites;
    for (const auto& s : j) {
        if (!s.is_array()) throw ConfigError(where + " sites must be coordinate arrays");
        sites.push_back(s.get<Site>());
    }
    try {
        return Region(std::move(sites));
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

std::vector<Region> volumes_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError(where + " must be a non-empty array");
    std::vector<Region> out;
    if (j.front().is_number_integer() || j.front().is_number()) {
        for (const auto& v : j) {
            if (!v.is_number_integer() || v.get<long>() < 1)
                throw ConfigError(where + " site counts must be positive integers");
            out.push_back(Region::chain(v.get<long>()));
        }
        return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(region_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json region_to_json(const Region& r) {
    json out = json::array();
    for (const auto& s : r.sites()) out.push_back(s);
    return out;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    for (long k = 2; k <= 6; ++k) cfg.volumes.push_back(Region::chain(k));
    cfg.blocks.push_back(Region::single({0}));
    cfg.observable.site = Site(static_cast<std::size_t>(cfg.lattice.dimension), 0);
    return cfg;
}

ExperimentConfig config_from_json(const json& j) {
    check_keys(j, "config",
               {"lattice", "potential", "beta", "volumes", "observable", "norms", "orlicz",
                "blocks", "times", "seed", "tolerances", "output"});
    ExperimentConfig cfg = default_config();

    if (j.contains("lattice")) {
        const auto& l = j["lattice"];
        check_keys(l, "lattice", {"d", "n"});
        const int d = l.value("d", 1), n = l.value("n", 2);
        try {
            cfg.lattice = Lattice(d, n);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("lattice: ") + e.what());
        }
        cfg.observable.site = Site(static_cast<std::size_t>(d), 0);
    }
    if (j.contains("potential")) {
        const auto& p = j["potential"];
        check_keys(p, "potential", {"type", "Jx", "Jy", "Jz", "h", "range", "terms"});
        cfg.potential.type = p.value("type", "ising");
        cfg.potential.jx = p.value("Jx", 0.0);
        cfg.potential.jy = p.value("Jy", 0.0);
        cfg.potential.jz = p.value("Jz", cfg.potential.type == "zero" ? 0.0 : 1.0);
        cfg.potential.h = p.value("h", 0.2);
        cfg.potential.range = p.value("range", 1);
        if (cfg.potential.type == "ising" && (cfg.potential.jx != 0.0 || cfg.potential.jy != 0.0))
            throw ConfigError("potential: the ising type requires Jx = Jy = 0");
        if (p.contains("terms")) {
            if (!p["terms"].is_array()) throw ConfigError("potential.terms must be an array");
            for (const auto& t : p["terms"]) cfg.potential.terms.push_back(t);
        }
        if (cfg.potential.type == "custom" && cfg.potential.terms.empty())
            throw ConfigError("potential: custom type needs a terms array");
        if (cfg.potential.type != "ising" && cfg.potential.type != "heisenberg" &&
            cfg.potential.type != "custom" && cfg.potential.type != "zero")
            throw ConfigError("potential.type must be ising, heisenberg, custom, or zero");
    }
    if (j.contains("beta")) {
        cfg.betas = number_list(j["beta"], "beta");
        for (double b : cfg.betas)
            if (!(b >= 0.0)) throw ConfigError("beta values must be >= 0");
    }
    if (j.contains("volumes")) cfg.volumes = volumes_from_json(j["volumes"], "volumes");
    if (j.contains("observable")) {
        const auto& o = j["observable"];
        check_keys(o, "observable", {"type", "site", "path"});
        cfg.observable.type = o.value("type", "sigma_z");
        if (o.contains("site")) cfg.observable.site = o["site"].get<Site>();
        cfg.observable.path = o.value("path", "");
        const auto& t = cfg.observable.type;
        if (t != "sigma_x" && t != "sigma_y" && t != "sigma_z" && t != "identity" && t != "file")
            throw ConfigError("observable.type must be sigma_x, sigma_y, sigma_z, identity, or file");
        if (t == "file" && cfg.observable.path.empty())
            throw ConfigError("observable: the file type needs a path");
    }
    if (j.contains("norms")) {
        const auto& n = j["norms"];
        check_keys(n, "norms", {"p", "s"});
        if (n.contains("p")) cfg.p_grid = number_list(n["p"], "norms.p");
        if (n.contains("s")) cfg.s_grid = number_list(n["s"], "norms.s");
        for (double p : cfg.p_grid)
            if (!(p >= 1.0)) throw ConfigError("norms.p values must be >= 1");
        for (double s : cfg.s_grid)
            if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("norms.s values must lie in [0, 1]");
    }
    if (j.contains("orlicz")) {
        const auto& o = j["orlicz"];
        check_keys(o, "orlicz", {"kind", "p", "knots"});
        cfg.orlicz.kind = o.value("kind", "power");
        cfg.orlicz.p = o.value("p", 2.0);
        if (o.contains("knots"))
            for (const auto& k : o["knots"]) {
                if (!k.is_array() || k.size() != 2)
                    throw ConfigError("orlicz.knots must be [u, phi(u)] pairs");
                cfg.orlicz.knots.push_back({k[0].get<double>(), k[1].get<double>()});
            }
    }
    if (j.contains("blocks")) {
        cfg.blocks.clear();
        if (!j["blocks"].is_array() || j["blocks"].empty())
            throw ConfigError("blocks must be a non-empty array of regions");
        for (std::size_t i = 0; i < j["blocks"].size(); ++i)
            cfg.blocks.push_back(
                region_from_json(j["blocks"][i], "blocks[" + std::to_string(i) + "]"));
    }
    if (j.contains("times")) {
        cfg.times = number_list(j["times"], "times");
        for (double t : cfg.times)
            if (!(t >= 0.0)) throw ConfigError("times must be >= 0");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() ||
            (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
            throw ConfigError("seed must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        check_keys(t, "tolerances",
                   {"monotonicity_slack", "invariance", "trace_integral_rel",
                    "ddp_consistency", "contraction_slack", "equivalence_growth"});
        cfg.tolerances.monotonicity_slack =
            t.value("monotonicity_slack", cfg.tolerances.monotonicity_slack);
        cfg.tolerances.invariance = t.value("invariance", cfg.tolerances.invariance);
        cfg.tolerances.trace_integral_rel = t.value("trace_integral_rel", cfg.tolerances.trace_integral_rel);
        cfg.tolerances.ddp_consistency =
            t.value("ddp_consistency", cfg.tolerances.ddp_consistency);
        cfg.tolerances.contraction_slack =
            t.value("contraction_slack", cfg.tolerances.contraction_slack);
        cfg.tolerances.equivalence_growth =
            t.value("equivalence_growth", cfg.tolerances.equivalence_growth);
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        check_keys(o, "output", {"path", "format"});
        cfg.output.path = o.value("path", "");
        cfg.output.format = o.value("format", "csv");
        if (cfg.output.format != "csv" && cfg.output.format != "structured-text")
            throw ConfigError("output.format must be csv or structured-text");
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["lattice"] = {{"d", cfg.lattice.dimension}, {"n", cfg.lattice.site_dim}};
    json pot{{"type", cfg.potential.type}, {"Jx", cfg.potential.jx}, {"Jy", cfg.potential.jy},
             {"Jz", cfg.potential.jz},     {"h", cfg.potential.h},   {"range", cfg.potential.range}};
    if (!cfg.potential.terms.empty()) pot["terms"] = cfg.potential.terms;
    j["potential"] = pot;
    j["beta"] = cfg.betas;
    json vols = json::array();
    for (const auto& v : cfg.volumes) vols.push_back(region_to_json(v));
    j["volumes"] = vols;
    json obs{{"type", cfg.observable.type}, {"site", cfg.observable.site}};
    if (!cfg.observable.path.empty()) obs["path"] = cfg.observable.path;
    j["observable"] = obs;
    j["norms"] = {{"p", cfg.p_grid}, {"s", cfg.s_grid}};
    json orl{{"kind", cfg.orlicz.kind}, {"p", cfg.orlicz.p}};
    if (!cfg.orlicz.knots.empty()) {
        json knots = json::array();
        for (const auto& k : cfg.orlicz.knots) knots.push_back({k[0], k[1]});
        orl["knots"] = knots;
    }
    j["orlicz"] = orl;
    json blocks = json::array();
    for (const auto& b : cfg.blocks) blocks.push_back(region_to_json(b));
    j["blocks"] = blocks;
    j["times"] = cfg.times;
    if (cfg.seed) j["seed"] = *cfg.seed;
    j["tolerances"] = {{"monotonicity_slack", cfg.tolerances.monotonicity_slack},
                       {"invariance", cfg.tolerances.invariance},
                       {"trace_integral_rel", cfg.tolerances.trace_integral_rel},
                       {"ddp_consistency", cfg.tolerances.ddp_consistency},
                       {"contraction_slack", cfg.tolerances.contraction_slack},
                       {"equivalence_growth", cfg.tolerances.equivalence_growth}};
    j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
    return j;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << config_to_json(cfg).dump(2) << "\n";
}

Potential build_potential(const ExperimentConfig& cfg) {
    const auto& p = cfg.potential;
    if (p.type == "ising") return ising_potential(cfg.lattice, p.jz, p.h);
    if (p.type == "heisenberg") return heisenberg_potential(cfg.lattice, p.jx, p.jy, p.jz, p.h);
    if (p.type == "zero") return zero_potential(cfg.lattice);
    std::vector<PotentialTerm> terms;
    for (const auto& doc : p.terms) {
        json full = doc;
        if (!full.contains("lattice"))
            full["lattice"] = {{"d", cfg.lattice.dimension}, {"n", cfg.lattice.site_dim}};
        LocalOperator op = operator_from_json(full);
        if (!(op.lattice() == cfg.lattice))
            throw ConfigError("custom potential term lattice mismatch");
        terms.push_back({op.support(), op.matrix()});
    }
    return Potential(cfg.lattice, std::move(terms), p.range, false);
}

LocalOperator build_observable(const ExperimentConfig& cfg) {
    const auto& o = cfg.observable;
    if (o.type == "file") {
        LocalOperator op = load_operator(o.path);
        if (!(op.lattice() == cfg.lattice)) throw ConfigError("observable file lattice mismatch");
        return op;
    }
    if (o.type == "identity")
        return LocalOperator::identity(cfg.lattice, Region::single(o.site));
    return pauli_site(cfg.lattice, o.type.back(), o.site);
}

OrliczFunction build_orlicz(const OrliczConfig& cfg) {
    if (cfg.kind == "power") return OrliczFunction::power(cfg.p);
    if (cfg.kind == "exp_minus_one") return OrliczFunction::exp_minus_one();
    if (cfg.kind == "cosh_minus_one") return OrliczFunction::cosh_minus_one();
    if (cfg.kind == "llogl") return OrliczFunction::llogl();
    if (cfg.kind == "custom") {
        try {
            return OrliczFunction::custom(cfg.knots, true);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("orlicz.knots: ") + e.what());
        }
    }
    throw ConfigError("orlicz.kind must be power, exp_minus_one, cosh_minus_one, llogl, or custom");
}

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

namespace {

RunResult run_norms(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"beta", "volume", "p", "s", "norm"};
    const Potential phi = build_potential(cfg);
    const LocalOperator f = build_observable(cfg);
    for (double beta : cfg.betas)
        for (const Region& vol : cfg.volumes) {
            const DensityOperator rho = gibbs_density(phi, vol, beta);
            for (double p : cfg.p_grid)
                for (double s : cfg.s_grid)
                    res.table.rows.push_back({beta, static_cast<double>(vol.size()), p, s,
                                              lps_norm(f, rho, p, s)});
        }
    return res;
}

RunResult run_monotonicity(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"beta", "volume", "p", "s", "norm"};
    const Potential phi = build_potential(cfg);
    const LocalOperator f = build_observable(cfg);
    for (std::size_t i = 0; i < cfg.volumes.size(); ++i) {
        if (!cfg.volumes[i].contains(f.support()))
            throw ConfigError("volumes must contain the observable's support");
        if (i > 0 && !cfg.volumes[i].contains(cfg.volumes[i - 1]))
            throw ConfigError("monotonicity needs nested increasing volumes");
    }
    int violations = 0;
    for (double beta : cfg.betas)
        for (double p : cfg.p_grid)
            for (double s : cfg.s_grid) {
                const auto norms = monotonicity_sweep(phi, beta, f, cfg.volumes, p, s);
                for (std::size_t i = 0; i < norms.size(); ++i) {
                    res.table.rows.push_back({beta, static_cast<double>(cfg.volumes[i].size()), p,
                                              s, norms[i]});
                    // the monotonicity assertion applies only for p >= 2
                    if (p >= 2.0 && i > 0 &&
                        norms[i] > norms[i - 1] + cfg.tolerances.monotonicity_slack)
                        ++violations;
                }
            }
    if (violations > 0) {
        res.pass = false;
        res.message = std::to_string(violations) + " monotonicity violations (p >= 2)";
    }
    return res;
}

RunResult run_semigroup(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"t", "expectation", "distance"};
    const Potential phi = build_potential(cfg);
    const Region vol = cfg.volumes.back();
    const double beta = cfg.betas.front();
    const DensityOperator rho = gibbs_density(phi, vol, beta);
    if (!vol.contains(build_observable(cfg).support()))
        throw ConfigError("the largest volume must contain the observable's support");
    const LocalOperator f = embed(build_observable(cfg), vol);

    std::vector<Superoperator> blocks;
    for (const Region& x : cfg.blocks) {
        if (!vol.contains(x)) throw ConfigError("semigroup blocks must lie inside the largest volume");
        blocks.push_back(block_spin_gce(rho, x));
    }
    const double m = static_cast<double>(blocks.size());
    const Superoperator l = markov_generator(average_map(std::move(blocks)));

    const double omega = gibbs_expectation(rho, f).real();
    const LocalOperator one = LocalOperator::identity(cfg.lattice, vol);
    double worst_inv = 0.0;
    for (double t : cfg.times) {
        const LocalOperator ft = semigroup_apply(l, f, m * t);
        const double expect = gibbs_expectation(rho, ft).real();
        const LocalOperator dev = ft - omega * one;
        const double dist = std::sqrt(std::abs(kms_inner(dev, dev, rho, 0.5).real()));
        res.table.rows.push_back({t, expect, dist});
        worst_inv = std::max(worst_inv, std::abs(expect - omega));
    }
    if (worst_inv > cfg.tolerances.invariance) {
        res.pass = false;
        res.message = "semigroup breaks phi1-invariance by " + format_double(worst_inv);
    }
    return res;
}

RunResult run_equivalence(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"beta", "volume", "c"};
    const Potential phi = build_potential(cfg);
    const Region x = cfg.blocks.front();
    for (const Region& vol : cfg.volumes)
        if (!vol.contains(x))
            throw ConfigError("the equivalence block must lie inside every volume");
    for (double beta : cfg.betas) {
        std::vector<double> cs;
        for (const Region& vol : cfg.volumes) {
            const DensityOperator rho = gibbs_density(phi, vol, beta);
            const DensityOperator marginal(partial_trace(rho.op(), x));
            cs.push_back(equivalence_constant(rho, marginal));
            res.table.rows.push_back({beta, static_cast<double>(vol.size()), cs.back()});
        }
        if (cs.size() > 1 && cs.back() >= cfg.tolerances.equivalence_growth * cs.front()) {
            res.pass = false;
            res.message = "equivalence constant grew beyond the regression bound at beta " +
                          format_double(beta);
        }
    }
    return res;
}

RunResult run_orlicz(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"volume", "luxemburg", "ddp", "trace_integral", "trace_integral_residual"};
    const OrliczFunction phi = build_orlicz(cfg.orlicz);
    const TraceSpec trace = TraceSpec::normalized();
    const LocalOperator f = build_observable(cfg);
    for (const Region& vol : cfg.volumes) {
        const LocalOperator fe = embed(f, vol);
        const double lux = luxemburg_norm(fe, phi, trace);
        const double ddp = ddp_norm(fe, phi, trace);
        // both routes of the trace-integral identity, reported as a residual
        const auto eig = herm_eig((adjoint(fe) * fe).matrix());
        double spectral = 0.0;
        for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
            const double v = phi(std::sqrt(std::max(0.0, eig.values(k))));
            spectral = std::isinf(v) ? v : spectral + v / static_cast<double>(eig.values.size());
            if (std::isinf(spectral)) break;
        }
        const double value = trace_phi(fe, phi, trace);
        const double residual = (std::isinf(spectral) && std::isinf(value))
                                    ? 0.0
                                    : std::abs(spectral - value) / std::max(1.0, std::abs(value));
        res.table.rows.push_back({static_cast<double>(vol.size()), lux, ddp, value, residual});
        if (std::abs(ddp - lux) > cfg.tolerances.ddp_consistency * std::max(1.0, lux) ||
            residual > cfg.tolerances.trace_integral_rel) {
            res.pass = false;
            res.message = "Orlicz norm consistency failed on volume of size " +
                          std::to_string(vol.size());
        }
    }
    return res;
}

RunResult run_contraction(const ExperimentConfig& cfg) {
    if (!cfg.seed) throw ConfigError("contraction is a randomized run: the seed field is mandatory");
    RunResult res;
    res.table.columns = {"class", "samples", "max_ratio", "certified_bound", "stepwise_excess",
                         "pass"};
    const OrliczFunction phi = build_orlicz(cfg.orlicz);
    const TraceSpec trace = TraceSpec::normalized();
    Region ambient = Region::chain(2);
    const std::uint64_t seed = *cfg.seed;

    const auto h = herm_eig(random_hermitian(cfg.lattice, ambient, seed).matrix());
    Eigen::VectorXcd phase(h.values.size());
    for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::exp(Complex(0.0, h.values(i)));
    const LocalOperator u(cfg.lattice, ambient, h.vectors * phase.asDiagonal() * h.vectors.adjoint());

    const std::vector<Superoperator> maps = {
        Superoperator::inner_automorphism(u),
        Superoperator::kraus({random_operator(cfg.lattice, ambient, seed + 1),
                              random_operator(cfg.lattice, ambient, seed + 2)}),
        Superoperator::kraus({u}),
        Superoperator::jordan(u, true),
    };
    for (const auto& map : maps) {
        const auto rep =
            contraction_report(map, phi, trace, 200, seed + 10, cfg.tolerances.contraction_slack);
        res.table.rows.push_back({static_cast<double>(rep.map_class),
                                  static_cast<double>(rep.samples), rep.max_ratio,
                                  rep.certified_bound, rep.stepwise_excess,
                                  rep.pass ? 1.0 : 0.0});
        if (!rep.pass) {
            res.pass = false;
            res.message = "contraction class " + std::to_string(rep.map_class) +
                          " violated its certified bound";
        }
    }
    return res;
}

RunResult run_selftest() {
    RunResult res;
    res.table.columns = {"criterion", "pass", "seconds"};
    const auto results = selftest::run_acceptance();
    std::ostringstream msg;
    for (const auto& r : results) {
        res.table.rows.push_back({static_cast<double>(r.id), r.pass ? 1.0 : 0.0, r.seconds});
        if (!r.pass) msg << "criterion " << r.id << " failed: " << r.detail << "; ";
    }
    res.pass = selftest::all_pass(results);
    res.message = msg.str();
    return res;
}

} // namespace

RunResult run(const std::string& subcommand, const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunResult res;
    if (subcommand == "norms") res = run_norms(cfg);
    else if (subcommand == "monotonicity") res = run_monotonicity(cfg);
    else if (subcommand == "semigroup") res = run_semigroup(cfg);
    else if (subcommand == "equivalence") res = run_equivalence(cfg);
    else if (subcommand == "orlicz") res = run_orlicz(cfg);
    else if (subcommand == "contraction") res = run_contraction(cfg);
    else if (subcommand == "selftest") res = run_selftest();
    else throw ConfigError("unknown subcommand " + subcommand);
    res.table.config_hash = [&] {
        std::ostringstream os;
        os << std::hex << fnv1a(config_to_json(cfg).dump());
        return os.str();
    }();
    res.table.tool_version = kToolVersion;
    res.table.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::string table_to_csv(const ResultTable& table) {
    std::ostringstream os;
    os << "# config_hash=" << table.config_hash << "\n";
    os << "# tool_version=" << table.tool_version << "\n";
    os << "# wall_time_ms=" << format_double(table.wall_ms) << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
    return os.str();
}

json table_to_json(const ResultTable& table) {
    json j;
    j["metadata"] = {{"config_hash", table.config_hash},
                     {"tool_version", table.tool_version},
                     {"wall_time_ms", table.wall_ms}};
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j;
}

void write_table(const ResultTable& table, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "csv") text = table_to_csv(table);
    else if (format == "structured-text") text = table_to_json(table).dump(2) + "\n";
    else throw ConfigError("output format must be csv or structured-text");
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

} // namespace qnc
