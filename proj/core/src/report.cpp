#include "ffl/report.hpp"

#include <json.hpp>

#include "ffl/errors.hpp"

namespace ffl {

namespace {

const char* kHeader = "trial,seed,T_or_N,value,centering,norm_error,micros";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= line.size()) {
        size_t p = line.find(',', start);
        out.push_back(line.substr(start, p == std::string::npos ? p : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

long parse_long(const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer field in report: '" + s + "'");
    }
}

uint64_t parse_u64(const std::string& s) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad seed field in report: '" + s + "'");
    }
}

}  // namespace

std::string emit_csv(const std::vector<TrialRecord>& records) {
    std::string out = kHeader;
    out += '\n';
    for (const TrialRecord& r : records) {
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.t_or_n);
        out += ',';
        out += rat_str(r.value);
        out += ',';
        out += rat_str(r.centering);
        out += ',';
        out += rat_str(r.norm_error);
        out += ',';
        out += std::to_string(r.micros);
        out += '\n';
    }
    return out;
}

std::vector<TrialRecord> parse_csv(const std::string& text) {
    std::vector<TrialRecord> out;
    size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kHeader) throw ConfigError("report is missing the expected CSV header");
            saw_header = true;
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 7) throw ConfigError("report row does not have 7 columns");
        TrialRecord r;
        r.trial = parse_long(fields[0]);
        r.seed = parse_u64(fields[1]);
        r.t_or_n = parse_long(fields[2]);
        r.value = parse_rat(fields[3]);
        r.centering = parse_rat(fields[4]);
        r.norm_error = parse_rat(fields[5]);
        r.micros = parse_long(fields[6]);
        out.push_back(std::move(r));
    }
    if (!saw_header) throw ConfigError("report is missing the expected CSV header");
    return out;
}

std::string emit_json(const std::vector<TrialRecord>& records, const Aggregate& agg) {
    nlohmann::json j;
    j["records"] = records.size();
    j["mean_ratio"] = rat_str(agg.mean_ratio);
    j["quantiles"] = {{"q25", rat_str(agg.err_q25)},
                      {"q50", rat_str(agg.err_q50)},
                      {"q75", rat_str(agg.err_q75)}};
    if (agg.has_slope)
        j["slope"] = agg.slope;
    else
        j["slope"] = nullptr;
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& [name, ok] : agg.checks) checks[name] = ok;
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string emit_report(const std::vector<TrialRecord>& records, const Aggregate& agg,
                        const std::string& format) {
    if (format == "csv") return emit_csv(records);
    if (format == "json") return emit_json(records, agg);
    throw ConfigError("unknown report format '" + format + "'");
}

}  // namespace ffl
