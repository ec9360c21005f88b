#include "ffl/config.hpp"

#include <algorithm>
#include <set>

#include "ffl/counting.hpp"
#include "ffl/errors.hpp"
#include "ffl/fq.hpp"

namespace ffl {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_long_value(const std::string& key, const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || s.empty()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' needs an integer, got '" + s + "'");
    }
}

uint64_t parse_u64_value(const std::string& key, const std::string& s) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' needs an unsigned integer, got '" + s + "'");
    }
}

bool parse_bool_value(const std::string& key, const std::string& s) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    throw ConfigError("key '" + key + "' needs a boolean, got '" + s + "'");
}

// "7" | "4..12" | "1,2,4,8"
std::vector<long> parse_sweep_value(const std::string& key, const std::string& s) {
    std::vector<long> out;
    size_t dots = s.find("..");
    if (dots != std::string::npos) {
        long lo = parse_long_value(key, s.substr(0, dots));
        long hi = parse_long_value(key, s.substr(dots + 2));
        if (lo > hi) throw ConfigError("key '" + key + "' has an empty range '" + s + "'");
        if (hi - lo > (1 << 20)) throw ConfigError("key '" + key + "' range is too large");
        for (long v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    size_t start = 0;
    while (start <= s.size()) {
        size_t p = s.find(',', start);
        std::string item = s.substr(start, p == std::string::npos ? p : p - start);
        out.push_back(parse_long_value(key, trim(item)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        kv[key] = value;
        if (pos > text.size()) break;
    }
    return kv;
}

ExperimentConfig build_config(const std::map<std::string, std::string>& kv) {
    static const std::set<std::string> known = {
        "q",      "weights", "R",       "T",       "N",       "trials",     "depth",
        "seed",   "observable", "region", "cylinder1", "cylinder2", "budget", "n0",
        "workers", "force_zero", "format", "out"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    const std::string* v = get("q");
    if (!v) throw ConfigError("config is missing required key 'q'");
    long q = parse_long_value("q", *v);
    if (q < 2 || q > (1 << 20)) throw ConfigError("q out of range");
    cfg.q = static_cast<uint32_t>(q);
    try {
        Fq probe(cfg.q);
    } catch (const Error& e) {
        throw ConfigError(std::string("bad q: ") + e.what());
    }

    v = get("weights");
    if (!v) throw ConfigError("config is missing required key 'weights'");
    cfg.w = Weights::parse(*v);

    if ((v = get("R"))) cfg.R = static_cast<int>(parse_long_value("R", *v));
    if ((v = get("trials"))) cfg.trials = parse_long_value("trials", *v);
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if ((v = get("depth"))) {
        long depth = parse_long_value("depth", *v);
        if (depth < 0) throw ConfigError("depth must be >= 0");
        cfg.depth = static_cast<int>(depth);
    }
    if ((v = get("seed"))) cfg.master_seed = parse_u64_value("seed", *v);
    if ((v = get("budget"))) {
        long b = parse_long_value("budget", *v);
        if (b < 1) throw ConfigError("budget must be >= 1");
        cfg.budget = Int(b);
    }
    if ((v = get("n0"))) {
        cfg.n0 = parse_long_value("n0", *v);
        if (cfg.n0 < 1) throw ConfigError("n0 must be >= 1");
    }
    if ((v = get("workers"))) {
        long wk = parse_long_value("workers", *v);
        if (wk < 1 || wk > 256) throw ConfigError("workers must be in [1, 256]");
        cfg.workers = static_cast<int>(wk);
    }
    if ((v = get("force_zero"))) cfg.force_zero = parse_bool_value("force_zero", *v);
    if ((v = get("format"))) {
        if (*v != "csv" && *v != "json") throw ConfigError("format must be csv or json");
        cfg.format = *v;
    }
    if ((v = get("out"))) cfg.out = *v;

    if ((v = get("region"))) {
        cfg.region = RegionSpec::parse(*v);
        cfg.has_region = true;
    }
    if ((v = get("cylinder1"))) {
        cfg.c1 = Cylinder::parse(*v);
        if (cfg.c1.side != Side::alpha) throw ConfigError("cylinder1 must sit on side alpha");
    }
    if ((v = get("cylinder2"))) {
        cfg.c2 = Cylinder::parse(*v);
        if (cfg.c2.side != Side::beta) throw ConfigError("cylinder2 must sit on side beta");
    }

    std::vector<long> t_list, n_list;
    if ((v = get("T"))) t_list = parse_sweep_value("T", *v);
    if ((v = get("N"))) n_list = parse_sweep_value("N", *v);
    if (!n_list.empty()) {
        if (t_list.size() > 1)
            throw ConfigError("an orbit config takes a single T (the region parameter)");
        cfg.sweep = n_list;
    } else if (!t_list.empty()) {
        cfg.sweep = t_list;
    } else if (!cfg.has_region) {
        throw ConfigError("config is missing a sweep: set T, N, or region");
    }

    if ((v = get("observable"))) {
        try {
            cfg.observable = Observable::parse(*v);
        } catch (const ConfigError&) {
            if (*v == "siegel:E") {
                if (cfg.has_region) {
                    if (cfg.region.kind != RegionSpec::Kind::E &&
                        cfg.region.kind != RegionSpec::Kind::EDir)
                        throw ConfigError("observable siegel:E needs an E region");
                    cfg.observable = Observable::siegel(cfg.region);
                } else if (t_list.size() == 1) {
                    cfg.observable = Observable::siegel(
                        RegionSpec::E(static_cast<int>(t_list[0]), cfg.R));
                } else {
                    throw ConfigError("observable siegel:E needs a region or a single T");
                }
            } else if (*v == "siegel:F" || *v == "siegel:ball") {
                if (!cfg.has_region) throw ConfigError("observable '" + *v + "' needs a region");
                bool ok = (*v == "siegel:F" && cfg.region.kind == RegionSpec::Kind::F) ||
                          (*v == "siegel:ball" && cfg.region.kind == RegionSpec::Kind::Ball);
                if (!ok) throw ConfigError("observable '" + *v + "' does not match the region kind");
                cfg.observable = Observable::siegel(cfg.region);
            } else {
                throw;
            }
        }
    } else if (cfg.has_region) {
        cfg.observable = Observable::siegel(cfg.region);
    }

    if (cfg.depth > 0) {
        int need;
        if (!n_list.empty())
            need = orbit_min_depth(cfg.observable, cfg.w,
                                   *std::max_element(n_list.begin(), n_list.end()));
        else if (!t_list.empty())
            need = min_depth(cfg.w, cfg.R,
                             static_cast<int>(*std::max_element(t_list.begin(), t_list.end())));
        else
            need = 0;
        if (cfg.depth < need)
            throw ConfigError("depth " + std::to_string(cfg.depth) +
                              " is below the precision rule (needs " + std::to_string(need) + ")");
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    return build_config(parse_config_text(text));
}

}  // namespace ffl
