#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffl/dynamics.hpp"
#include "ffl/regions.hpp"
#include "ffl/weights.hpp"

namespace ffl {

// Batch description shared by the counting and orbit runners and the CLI.
// `sweep` holds T values for counting experiments and Birkhoff checkpoints N
// for orbit experiments; depth 0 means "derive from the precision rule".
struct ExperimentConfig {
    uint32_t q = 2;
    Weights w = Weights(1, 1, {1, 1});
    int R = 0;
    std::vector<long> sweep;
    long trials = 1;
    int depth = 0;
    uint64_t master_seed = 0;
    Observable observable = Observable::alpha();
    RegionSpec region;
    bool has_region = false;
    Cylinder c1 = Cylinder::full(Side::alpha);
    Cylinder c2 = Cylinder::full(Side::beta);
    Int budget = Int(1) << 24;
    long n0 = 8;  // probe offset for the per-unit shell mass in orbit targets
    int workers = 1;
    bool force_zero = false;  // debug: run every trial on A = 0
    std::string format = "csv";
    std::string out;
};

struct TrialRecord {
    long trial = 0;
    uint64_t seed = 0;
    long t_or_n = 0;
    Rat value;
    Rat centering;
    Rat norm_error;
    long micros = 0;
};

struct Aggregate {
    Rat mean_ratio;                  // mean of value/centering at the top sweep point
    Rat err_q25, err_q50, err_q75;   // normalized-error quantiles over all records
    double slope = 0;                // pooled log-log slope of mean |value - centering|
    bool has_slope = false;
    std::vector<std::pair<std::string, bool>> checks;  // named oracle cross-checks
};

struct LineFit {
    double slope = 0;
    double intercept = 0;
};

// Ordinary least squares of log y against log x. Throws DegenerateFit for
// fewer than two points, nonpositive coordinates, or coinciding abscissae.
LineFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

// (value - centering) / (centering^{1/2} * (log_q centering)^2), kept exact
// by standing in q^{floor(e/2)} for the square root and the integer exponent
// e of the nearest q-power for the log (clamped to 1 when e is 0 or +-1).
// A zero centering returns the raw value.
Rat normalized_error(const Rat& value, const Rat& centering, uint32_t q);

// Ergodic target of the Birkhoff average for an observable. Siegel counts
// center on q^{m+n} times the region measure; for E regions this is built,
// as the acceptance protocol requires, from the per-unit shell mass probed
// at n0 (expected_count(n0) - expected_count(n0-1)) plus the boundary shell
// at level 0 — the two routes agree identically because shell masses are
// 1-periodic. Indicator and height observables center on 0.
Rat orbit_target(const Observable& obs, uint32_t q, const Weights& w, long n0);

// One record per (trial, T): value = count_solutions (or its directional
// variant when a cylinder is proper), centering = the exact expectation.
// Trials are partitioned over cfg.workers; records are identical regardless
// of the worker count, timing aside. Throws ConfigError on an invalid batch
// shape, InsufficientPrecision when an explicit depth is too small.
std::vector<TrialRecord> run_count_experiment(const ExperimentConfig& cfg);

// One record per (trial, N checkpoint): value = the Birkhoff average of
// cfg.observable at N along the g-orbit of u_A, centering = orbit_target.
std::vector<TrialRecord> run_orbit_experiment(const ExperimentConfig& cfg);

// Aggregates for reports: mean ratio at the top sweep point, normalized-error
// quantiles (lower nearest-rank), pooled deviation slope (against centering
// for counts, against N for orbits), and exact cross-check booleans.
Aggregate aggregate_count(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);
Aggregate aggregate_orbit(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

}  // namespace ffl
