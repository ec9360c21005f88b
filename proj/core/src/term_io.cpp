#include "ffl/detail/term_io.hpp"

#include <cctype>
#include <set>

#include "ffl/errors.hpp"

namespace ffl::detail {

std::string format_terms(const std::vector<std::pair<int, uint32_t>>& terms_desc) {
    if (terms_desc.empty()) return "0";
    std::string out;
    for (const auto& [deg, c] : terms_desc) {
        if (!out.empty()) out += '+';
        if (deg == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += 't';
            if (deg != 1) {
                out += '^';
                out += std::to_string(deg);
            }
        }
    }
    return out;
}

namespace {

std::pair<int, uint32_t> parse_one_term(const Fq& f, const std::string& term) {
    if (term.empty()) throw ConfigError("empty term in a Laurent literal");
    size_t i = 0;
    uint64_t coeff = 1;
    bool saw_digits = false;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
        coeff = saw_digits ? coeff * 10 + (term[i] - '0') : static_cast<uint64_t>(term[i] - '0');
        saw_digits = true;
        if (coeff > 1'000'000) throw ConfigError("coefficient too large: " + term);
        ++i;
    }
    int deg = 0;
    if (i == term.size()) {
        if (!saw_digits) throw ConfigError("malformed term: " + term);
    } else {
        if (term[i] != 't') throw ConfigError("malformed term: " + term);
        ++i;
        deg = 1;
        if (i < term.size()) {
            if (term[i] != '^') throw ConfigError("malformed term: " + term);
            ++i;
            bool negative = false;
            if (i < term.size() && term[i] == '-') {
                negative = true;
                ++i;
            }
            if (i == term.size()) throw ConfigError("malformed exponent: " + term);
            long e = 0;
            for (; i < term.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(term[i])))
                    throw ConfigError("malformed exponent: " + term);
                e = e * 10 + (term[i] - '0');
                if (e > 1'000'000) throw ConfigError("exponent too large: " + term);
            }
            deg = static_cast<int>(negative ? -e : e);
        }
    }
    if (coeff >= f.q()) throw ConfigError("coefficient out of range for F_q: " + term);
    return {deg, static_cast<uint32_t>(coeff)};
}

}  // namespace

std::vector<std::pair<int, uint32_t>> parse_terms(const Fq& f, const std::string& s) {
    if (s.empty()) throw ConfigError("empty Laurent literal");
    std::vector<std::pair<int, uint32_t>> out;
    std::set<int> seen;
    size_t start = 0;
    while (start <= s.size()) {
        size_t plus = s.find('+', start);
        std::string term = s.substr(start, plus == std::string::npos ? plus : plus - start);
        auto [deg, c] = parse_one_term(f, term);
        if (!seen.insert(deg).second) throw ConfigError("duplicate degree in literal: " + s);
        if (c != 0) out.emplace_back(deg, c);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return out;
}

}  // namespace ffl::detail
