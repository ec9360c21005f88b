// Batch front-end: config files plus flag overrides (flags win), subcommand
// dispatch into the library entry points, exact-value reports on stdout or
// --out. Exit codes: 0 success, 2 config errors, 3 precision/budget errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <string>

#include "ffl/config.hpp"
#include "ffl/counting.hpp"
#include "ffl/dynamics.hpp"
#include "ffl/errors.hpp"
#include "ffl/experiments.hpp"
#include "ffl/goodcheck.hpp"
#include "ffl/measures.hpp"
#include "ffl/oracles.hpp"
#include "ffl/report.hpp"
#include "ffl/sampling.hpp"

namespace {

using namespace ffl;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + out_path + "'");
    out << text;
}

// Smallest digit depth at which the grid oracle resolves the region.
int oracle_auto_depth(const RegionSpec& region, const Weights& w) {
    int need = 1;
    switch (region.kind) {
        case RegionSpec::Kind::E:
        case RegionSpec::Kind::EDir:
            for (int i = 0; i < w.m; ++i) need = std::max(need, region.T * w.alpha(i));
            for (int j = 0; j < w.n; ++j) need = std::max(need, region.T * w.beta(j) + 1);
            if (region.kind == RegionSpec::Kind::EDir)
                need = std::max({need, region.c1.depth, region.c2.depth});
            break;
        case RegionSpec::Kind::F:
            for (int i = 0; i < w.m; ++i) need = std::max(need, region.S * w.alpha(i) + 1);
            for (int j = 0; j < w.n; ++j) need = std::max(need, region.S * w.beta(j));
            break;
        case RegionSpec::Kind::Ball:
            break;
    }
    return need;
}

RegionSpec resolve_region(const ExperimentConfig& cfg) {
    if (cfg.has_region) {
        if (cfg.region.kind == RegionSpec::Kind::E && (!cfg.c1.is_full || !cfg.c2.is_full))
            return RegionSpec::EDir(cfg.region.T, cfg.region.R, cfg.c1, cfg.c2);
        return cfg.region;
    }
    if (cfg.sweep.empty()) throw ConfigError("this subcommand needs a region or a T value");
    int T = static_cast<int>(cfg.sweep.back());
    if (!cfg.c1.is_full || !cfg.c2.is_full) return RegionSpec::EDir(T, cfg.R, cfg.c1, cfg.c2);
    return RegionSpec::E(T, cfg.R);
}

int run_volume(const ExperimentConfig& cfg) {
    RegionSpec region = resolve_region(cfg);
    Rat measure = region_measure(cfg.q, cfg.w, region);
    int depth = cfg.depth > 0 ? cfg.depth : oracle_auto_depth(region, cfg.w);
    Rat oracle = grid_measure_oracle(cfg.q, cfg.w, region, depth, cfg.budget);
    nlohmann::json j;
    j["region"] = region.str();
    j["depth"] = depth;
    j["measure"] = rat_str(measure);
    j["oracle"] = rat_str(oracle);
    j["match"] = measure == oracle;
    write_output(cfg.out, j.dump(2) + "\n");
    return 0;
}

int run_oracle(const ExperimentConfig& cfg, bool has_T) {
    RegionSpec region = resolve_region(cfg);
    int depth = cfg.depth > 0 ? cfg.depth : oracle_auto_depth(region, cfg.w);
    Rat oracle = grid_measure_oracle(cfg.q, cfg.w, region, depth, cfg.budget);
    Rat measure = region_measure(cfg.q, cfg.w, region);
    nlohmann::json j;
    j["region"] = region.str();
    j["depth"] = depth;
    j["oracle"] = rat_str(oracle);
    j["measure"] = rat_str(measure);
    j["match"] = oracle == measure;
    if (has_T && region.kind == RegionSpec::Kind::E) {
        Rat avg = exhaustive_average_count(cfg.q, cfg.w, region.R, region.T, cfg.budget);
        Rat expect = expected_count(cfg.q, cfg.w, region.R, region.T);
        j["exhaustive_average"] = rat_str(avg);
        j["expected_count"] = rat_str(expect);
        j["exhaustive_match"] = avg == expect;
    }
    write_output(cfg.out, j.dump(2) + "\n");
    return 0;
}

int run_counts(const ExperimentConfig& cfg) {
    auto records = run_count_experiment(cfg);
    Aggregate agg = aggregate_count(cfg, records);
    write_output(cfg.out, emit_report(records, agg, cfg.format));
    return 0;
}

int run_orbits(const ExperimentConfig& cfg) {
    auto records = run_orbit_experiment(cfg);
    Aggregate agg = aggregate_orbit(cfg, records);
    write_output(cfg.out, emit_report(records, agg, cfg.format));
    return 0;
}

MultiPoly random_poly(const Fq& f, int vars, int degree, uint64_t seed) {
    CounterRng rng(seed);
    MultiPoly poly(vars);
    std::vector<int> exps(static_cast<size_t>(vars), 0);
    // walk all exponent tuples with total degree <= degree
    for (;;) {
        int total = 0;
        for (int e : exps) total += e;
        if (total <= degree) {
            std::vector<uint8_t> digits(2);
            digits[0] = static_cast<uint8_t>(rng.below(f.q()));
            digits[1] = static_cast<uint8_t>(rng.below(f.q()));
            Laurent c(f, -1, digits);
            poly.add(c, exps);
        }
        int v = 0;
        while (v < vars && ++exps[static_cast<size_t>(v)] > degree) exps[static_cast<size_t>(v++)] = 0;
        if (v == vars) break;
    }
    if (poly.zero()) poly.add(Laurent::t_power(f, 0), std::vector<int>(static_cast<size_t>(vars), 0));
    return poly;
}

int run_goodcheck(const ExperimentConfig& cfg, int vars, int degree, int polys, int ball_c,
                  int eps_lo) {
    if (vars < 1 || vars > 4) throw ConfigError("goodcheck --vars must be in [1, 4]");
    if (degree < 1) throw ConfigError("goodcheck --degree must be >= 1");
    Fq f(cfg.q);
    int depth = cfg.depth > 0 ? cfg.depth : (vars == 1 ? 8 : 6);
    std::vector<int> eps;
    for (int e = -1; e >= eps_lo; --e) eps.push_back(e);

    std::vector<std::pair<std::string, MultiPoly>> battery;
    for (int e = 1; e <= degree; ++e) {
        MultiPoly mono(vars);
        std::vector<int> exps(static_cast<size_t>(vars), 0);
        exps[0] = e;
        mono.add(Laurent::t_power(f, 0), exps);
        battery.emplace_back("x1^" + std::to_string(e), std::move(mono));
    }
    if (vars >= 2 && degree >= 2) {
        MultiPoly mixed(vars);
        std::vector<int> exps(static_cast<size_t>(vars), 0);
        exps[0] = 1;
        exps[1] = 1;
        mixed.add(Laurent::t_power(f, 0), exps);
        battery.emplace_back("x1*x2", std::move(mixed));
    }
    for (int i = 0; i < polys; ++i)
        battery.emplace_back("random" + std::to_string(i),
                             random_poly(f, vars, degree, derive_seed(cfg.master_seed, 1000 + i)));

    nlohmann::json out = nlohmann::json::array();
    for (const auto& [name, poly] : battery) {
        GoodReport rep = good_function_check(poly, cfg.q, ball_c, eps, depth, cfg.budget);
        nlohmann::json entry;
        entry["poly"] = name;
        entry["r"] = rep.r;
        entry["s"] = rep.s;
        entry["sup_exp"] = rep.sup_exp;
        entry["C"] = rep.C;
        std::vector<std::pair<double, double>> pts;
        nlohmann::json rows = nlohmann::json::array();
        for (const GoodRow& row : rep.rows) {
            rows.push_back({{"eps_exp", row.eps_exp},
                            {"ratio", rat_str(row.ratio)},
                            {"bound_exp", rat_str(row.bound_exp)}});
            if (row.ratio > 0)
                pts.emplace_back(to_double(pow_q(cfg.q, row.eps_exp)), to_double(row.ratio));
        }
        entry["rows"] = rows;
        try {
            entry["slope"] = fit_loglog_slope(pts).slope;
        } catch (const DegenerateFit&) {
            entry["slope"] = nullptr;
        }
        out.push_back(entry);
    }
    write_output(cfg.out, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact counting and equidistribution experiments over F_q((1/t))"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "config file in key = value form");

    std::map<std::string, std::string> overlay;
    auto opt = [&](const char* flag, const char* key, const char* desc) {
        app.add_option_function<std::string>(
            flag, [&overlay, key](const std::string& v) { overlay[key] = v; }, desc);
    };
    opt("--q", "q", "field size (prime)");
    opt("--weights", "weights", "weights as m:n:a1,...,ad");
    opt("--R", "R", "approximation exponent R");
    opt("--T", "T", "T value, list, or range lo..hi");
    opt("--N", "N", "orbit checkpoints: value, list, or range");
    opt("--trials", "trials", "number of sampled matrices");
    opt("--depth", "depth", "fractional digits of sampled matrices (0 = auto)");
    opt("--seed", "seed", "master seed");
    opt("--observable", "observable", "orbit observable literal");
    opt("--region", "region", "region literal, e.g. E:T=2,R=0");
    opt("--cylinder", "cylinder1", "alpha-side direction cylinder literal");
    opt("--cylinder2", "cylinder2", "beta-side direction cylinder literal");
    opt("--budget", "budget", "enumeration budget");
    opt("--workers", "workers", "parallel trial workers");
    opt("--format", "format", "report format: csv or json");
    opt("--out", "out", "output path (default stdout)");
    opt("--n0", "n0", "probe offset for orbit targets");
    app.add_flag_function(
        "--force-zero", [&overlay](int64_t) { overlay["force_zero"] = "1"; },
        "debug: run every trial on A = 0");

    CLI::App* volume = app.add_subcommand("volume", "region measure with grid-oracle cross-check");
    CLI::App* count = app.add_subcommand("count", "Diophantine solution counts vs expectation");
    CLI::App* orbit = app.add_subcommand("orbit", "Birkhoff averages along the diagonal flow");
    CLI::App* experiment =
        app.add_subcommand("experiment", "full sweep: orbit when N is set, else counting");
    CLI::App* goodcheck = app.add_subcommand("goodcheck", "empirical (C, 1/(r s))-good tables");
    CLI::App* oracle = app.add_subcommand("oracle", "grid measure / exhaustive average oracles");
    for (CLI::App* sub : {volume, count, orbit, experiment, goodcheck, oracle})
        sub->fallthrough();

    int gc_vars = 1, gc_degree = 1, gc_polys = 0, gc_ball = 0, gc_eps_lo = -6;
    goodcheck->add_option("--vars", gc_vars, "number of variables r");
    goodcheck->add_option("--degree", gc_degree, "total degree s");
    goodcheck->add_option("--polys", gc_polys, "extra random polynomials");
    goodcheck->add_option("--ball", gc_ball, "box radius exponent (0 = unit box)");
    goodcheck->add_option("--eps-lo", gc_eps_lo, "smallest epsilon exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::map<std::string, std::string> kv;
        if (!config_path.empty()) kv = ffl::parse_config_text(read_file(config_path));
        for (const auto& [k, v] : overlay) kv[k] = v;
        if (goodcheck->parsed()) {
            kv.emplace("q", "2");
            kv.emplace("weights", "1:1:1,1");
            kv.emplace("T", "1");
        }
        ExperimentConfig cfg = ffl::build_config(kv);

        if (volume->parsed()) return run_volume(cfg);
        if (oracle->parsed()) return run_oracle(cfg, kv.count("T") > 0);
        if (count->parsed()) {
            if (!kv.count("T")) throw ConfigError("count needs a T sweep");
            return run_counts(cfg);
        }
        if (orbit->parsed()) {
            if (!kv.count("N")) throw ConfigError("orbit needs N checkpoints");
            return run_orbits(cfg);
        }
        if (experiment->parsed()) {
            if (kv.count("N")) return run_orbits(cfg);
            if (!kv.count("T")) throw ConfigError("experiment needs T or N");
            return run_counts(cfg);
        }
        if (goodcheck->parsed())
            return run_goodcheck(cfg, gc_vars, gc_degree, gc_polys, gc_ball, gc_eps_lo);
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidWeights& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientPrecision& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
