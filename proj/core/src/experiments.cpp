#include "ffl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "ffl/counting.hpp"
#include "ffl/errors.hpp"
#include "ffl/measures.hpp"
#include "ffl/sampling.hpp"

namespace ffl {

namespace {

long now_micros() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<long> checked_sweep(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("experiment needs trials >= 1");
    if (cfg.sweep.empty()) throw ConfigError("experiment needs a nonempty sweep");
    std::vector<long> sweep = cfg.sweep;
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    if (sweep.front() < 0) throw ConfigError("sweep values must be >= 0");
    return sweep;
}

// Round-robin trial partition; records have a total order independent of the
// worker count, so the merge sorts by (trial, sweep point).
template <typename Body>
std::vector<TrialRecord> run_partitioned(long trials, int workers, const Body& body) {
    workers = std::max(1, workers);
    std::vector<std::vector<TrialRecord>> buckets(static_cast<size_t>(workers));
    auto chunk = [&](int wk) {
        for (long t = wk; t < trials; t += workers) body(t, buckets[static_cast<size_t>(wk)]);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::thread> pool;
        for (int wk = 0; wk < workers; ++wk) pool.emplace_back(chunk, wk);
        for (auto& th : pool) th.join();
    }
    std::vector<TrialRecord> out;
    for (auto& b : buckets)
        for (auto& rec : b) out.push_back(std::move(rec));
    std::sort(out.begin(), out.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return a.trial != b.trial ? a.trial < b.trial : a.t_or_n < b.t_or_n;
    });
    return out;
}

Rat exact_mean(const std::vector<Rat>& xs) {
    Rat sum(0);
    for (const Rat& x : xs) sum += x;
    if (xs.empty()) return sum;
    Rat mean = sum / Rat(static_cast<long>(xs.size()));
    mean.canonicalize();
    return mean;
}

void fill_quantiles(Aggregate& agg, const std::vector<TrialRecord>& records) {
    std::vector<Rat> errs;
    errs.reserve(records.size());
    for (const auto& r : records) errs.push_back(r.norm_error);
    std::sort(errs.begin(), errs.end());
    if (errs.empty()) return;
    size_t n = errs.size();
    agg.err_q25 = errs[(n - 1) / 4];
    agg.err_q50 = errs[(n - 1) / 2];
    agg.err_q75 = errs[3 * (n - 1) / 4];
}

Rat mean_top_ratio(const std::vector<TrialRecord>& records) {
    long top = 0;
    for (const auto& r : records) top = std::max(top, r.t_or_n);
    std::vector<Rat> ratios;
    for (const auto& r : records) {
        if (r.t_or_n != top || r.centering == 0) continue;
        Rat ratio = r.value / r.centering;
        ratio.canonicalize();
        ratios.push_back(std::move(ratio));
    }
    return exact_mean(ratios);
}

// Mean absolute deviation per sweep point, as exact rationals.
std::map<long, Rat> mean_abs_deviation(const std::vector<TrialRecord>& records) {
    std::map<long, std::pair<Rat, long>> acc;
    for (const auto& r : records) {
        Rat dev = r.value - r.centering;
        if (dev < 0) dev = -dev;
        auto& slot = acc[r.t_or_n];
        slot.first += dev;
        slot.second += 1;
    }
    std::map<long, Rat> out;
    for (auto& [t, slot] : acc) {
        Rat mean = slot.first / Rat(slot.second);
        mean.canonicalize();
        out[t] = std::move(mean);
    }
    return out;
}

void fit_pooled_slope(Aggregate& agg, const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> usable;
    for (const auto& p : pts)
        if (p.first > 0 && p.second > 0) usable.push_back(p);
    std::sort(usable.begin(), usable.end());
    usable.erase(std::unique(usable.begin(), usable.end(),
                             [](const auto& a, const auto& b) { return a.first == b.first; }),
                 usable.end());
    if (usable.size() < 2) return;
    agg.slope = fit_loglog_slope(usable).slope;
    agg.has_slope = true;
}

}  // namespace

LineFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw DegenerateFit("log-log fit needs at least two points");
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0) || !(y > 0)) throw DegenerateFit("log-log fit needs positive points");
        double lx = std::log(x), ly = std::log(y);
        n += 1;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw DegenerateFit("log-log fit needs distinct abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

Rat normalized_error(const Rat& value, const Rat& centering, uint32_t q) {
    Rat diff = value - centering;
    diff.canonicalize();
    if (centering == 0) return diff;
    if (centering < 0) throw Error("normalized error needs centering >= 0");
    long e = nearest_qpow_exponent(centering, q);
    long log_sq = std::max(1L, e * e);
    Rat denom = pow_q(q, floor_div(e, 2)) * Rat(log_sq);
    denom.canonicalize();
    Rat out = diff / denom;
    out.canonicalize();
    return out;
}

Rat orbit_target(const Observable& obs, uint32_t q, const Weights& w, long n0) {
    if (obs.kind != Observable::Kind::SiegelCount) return Rat(0);
    const RegionSpec& reg = obs.region;
    switch (reg.kind) {
        case RegionSpec::Kind::E: {
            if (n0 < 1) throw ConfigError("orbit target probe n0 must be >= 1");
            Rat unit = expected_count(q, w, reg.R, static_cast<int>(n0)) -
                       expected_count(q, w, reg.R, static_cast<int>(n0) - 1);
            unit.canonicalize();
            Rat target = Rat(reg.T) * unit + expected_count(q, w, reg.R, 0);
            target.canonicalize();
            return target;
        }
        case RegionSpec::Kind::F: {
            Rat target = pow_q(q, w.d()) * measure_F(q, w, reg.R, reg.S);
            target.canonicalize();
            return target;
        }
        case RegionSpec::Kind::Ball: {
            // space average of the ball count; the -1 a standard lattice
            // would contribute at time 0 is a boundary term that dies in
            // the Birkhoff limit
            Rat target = pow_q(q, static_cast<long>(w.d()) * reg.r);
            target.canonicalize();
            return target;
        }
        case RegionSpec::Kind::EDir: {
            Rat target = pow_q(q, w.d()) * measure_E_directional(q, w, reg.R, reg.T, reg.c1, reg.c2);
            target.canonicalize();
            return target;
        }
    }
    return Rat(0);
}

std::vector<TrialRecord> run_count_experiment(const ExperimentConfig& cfg) {
    std::vector<long> sweep = checked_sweep(cfg);
    Fq f(cfg.q);
    long t_max = sweep.back();
    if (t_max > 1 << 20) throw ConfigError("count sweep T is out of range");
    int need = min_depth(cfg.w, cfg.R, static_cast<int>(t_max));
    int depth = cfg.depth == 0 ? need : cfg.depth;
    if (depth < need) throw InsufficientPrecision("configured depth is below the precision rule");

    bool directional = !cfg.c1.is_full || !cfg.c2.is_full;
    std::map<long, Rat> centering;
    for (long T : sweep) {
        Rat c;
        if (directional)
            c = pow_q(cfg.q, cfg.w.d()) *
                measure_E_directional(cfg.q, cfg.w, cfg.R, static_cast<int>(T), cfg.c1, cfg.c2);
        else
            c = expected_count(cfg.q, cfg.w, cfg.R, static_cast<int>(T));
        c.canonicalize();
        centering[T] = std::move(c);
    }

    return run_partitioned(cfg.trials, cfg.workers, [&](long trial, std::vector<TrialRecord>& out) {
        uint64_t seed = derive_seed(cfg.master_seed, static_cast<uint64_t>(trial));
        LaurentMatrix A = cfg.force_zero ? LaurentMatrix(cfg.w.m, cfg.w.n, depth, f)
                                         : sample_matrix(f, cfg.w.m, cfg.w.n, depth, seed);
        for (long T : sweep) {
            long t0 = now_micros();
            Rat value;
            if (directional) {
                auto res = count_solutions_directional(A, cfg.w, cfg.R, static_cast<int>(T), cfg.c1,
                                                       cfg.c2, cfg.budget);
                value = Rat(res.count);
            } else {
                value = Rat(count_solutions(A, cfg.w, cfg.R, static_cast<int>(T)).count);
            }
            value.canonicalize();
            TrialRecord rec;
            rec.trial = trial;
            rec.seed = seed;
            rec.t_or_n = T;
            rec.value = value;
            rec.centering = centering.at(T);
            rec.norm_error = normalized_error(rec.value, rec.centering, cfg.q);
            rec.micros = now_micros() - t0;
            out.push_back(std::move(rec));
        }
    });
}

std::vector<TrialRecord> run_orbit_experiment(const ExperimentConfig& cfg) {
    std::vector<long> sweep = checked_sweep(cfg);
    if (sweep.front() < 1) throw ConfigError("orbit checkpoints must be >= 1");
    Fq f(cfg.q);
    long n_max = sweep.back();
    if (n_max > 1 << 24) throw ConfigError("orbit checkpoint N is out of range");
    int need = orbit_min_depth(cfg.observable, cfg.w, n_max);
    // Evaluation is exact whenever depth >= need, but a shallow A is a
    // rational point whose orbit diverges; auto depth keeps A generic over
    // the whole flow window regardless of what the observable reads.
    int generic = static_cast<int>(n_max * (cfg.w.max_alpha() + cfg.w.max_beta()) + 1);
    int depth = cfg.depth == 0 ? std::max(need, generic) : cfg.depth;
    if (depth < need) throw InsufficientPrecision("configured depth is below the precision rule");

    Rat target = orbit_target(cfg.observable, cfg.q, cfg.w, cfg.n0);

    return run_partitioned(cfg.trials, cfg.workers, [&](long trial, std::vector<TrialRecord>& out) {
        uint64_t seed = derive_seed(cfg.master_seed, static_cast<uint64_t>(trial));
        LaurentMatrix A = cfg.force_zero ? LaurentMatrix(cfg.w.m, cfg.w.n, depth, f)
                                         : sample_matrix(f, cfg.w.m, cfg.w.n, depth, seed);
        long t0 = now_micros();
        std::vector<Rat> series = birkhoff_series(cfg.observable, A, cfg.w, n_max, cfg.budget);
        long elapsed = now_micros() - t0;
        for (long N : sweep) {
            TrialRecord rec;
            rec.trial = trial;
            rec.seed = seed;
            rec.t_or_n = N;
            rec.value = series[static_cast<size_t>(N - 1)];
            rec.centering = target;
            rec.norm_error = normalized_error(rec.value, rec.centering, cfg.q);
            rec.micros = elapsed;
            out.push_back(std::move(rec));
        }
    });
}

Aggregate aggregate_count(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
    Aggregate agg;
    agg.mean_ratio = mean_top_ratio(records);
    fill_quantiles(agg, records);

    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, dev] : mean_abs_deviation(records)) {
        Rat centering;
        for (const auto& r : records)
            if (r.t_or_n == t) {
                centering = r.centering;
                break;
            }
        pts.emplace_back(to_double(centering), to_double(dev));
    }
    fit_pooled_slope(agg, pts);

    bool directional = !cfg.c1.is_full || !cfg.c2.is_full;
    bool matches = true;
    bool monotone = true;
    Rat prev;
    bool have_prev = false;
    for (long T : cfg.sweep) {
        Rat expect;
        if (directional)
            expect = pow_q(cfg.q, cfg.w.d()) *
                     measure_E_directional(cfg.q, cfg.w, cfg.R, static_cast<int>(T), cfg.c1, cfg.c2);
        else
            expect = expected_count(cfg.q, cfg.w, cfg.R, static_cast<int>(T));
        expect.canonicalize();
        Rat geom = pow_q(cfg.q, cfg.w.d()) *
                   (directional ? measure_E_directional(cfg.q, cfg.w, cfg.R, static_cast<int>(T),
                                                        cfg.c1, cfg.c2)
                                : measure_E(cfg.q, cfg.w, cfg.R, static_cast<int>(T)));
        geom.canonicalize();
        if (expect != geom) matches = false;
        if (have_prev && expect < prev) monotone = false;
        prev = expect;
        have_prev = true;
    }
    agg.checks.emplace_back("centering_matches_measure", matches);
    agg.checks.emplace_back("monotone_in_T", monotone);
    return agg;
}

Aggregate aggregate_orbit(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
    Aggregate agg;
    agg.mean_ratio = mean_top_ratio(records);
    fill_quantiles(agg, records);

    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, dev] : mean_abs_deviation(records))
        pts.emplace_back(static_cast<double>(n), to_double(dev));
    fit_pooled_slope(agg, pts);

    bool matches = true;
    if (cfg.observable.kind == Observable::Kind::SiegelCount) {
        const RegionSpec& reg = cfg.observable.region;
        Rat target = orbit_target(cfg.observable, cfg.q, cfg.w, cfg.n0);
        Rat geom = pow_q(cfg.q, cfg.w.d()) * region_measure(cfg.q, cfg.w, reg);
        geom.canonicalize();
        matches = target == geom;
    }
    agg.checks.emplace_back("target_matches_measure", matches);
    return agg;
}

}  // namespace ffl
