#include "ffl/weights.hpp"

#include <algorithm>
#include <numeric>

namespace ffl {

Weights::Weights(int m_, int n_, std::vector<int> a_) : m(m_), n(n_), a(std::move(a_)) {
    if (m < 1 || n < 1) throw InvalidWeights("need at least one coordinate on each side");
    if (a.size() != static_cast<size_t>(m + n)) throw InvalidWeights("weight count != m + n");
    for (int w : a)
        if (w < 1) throw InvalidWeights("weights must be positive integers");
    long sa = std::accumulate(a.begin(), a.begin() + m, 0L);
    long sb = std::accumulate(a.begin() + m, a.end(), 0L);
    if (sa != sb) throw InvalidWeights("weight block sums differ: " + std::to_string(sa) + " vs " +
                                       std::to_string(sb));
}

int Weights::max_alpha() const { return *std::max_element(a.begin(), a.begin() + m); }
int Weights::max_beta() const { return *std::max_element(a.begin() + m, a.end()); }
int Weights::block_sum() const { return static_cast<int>(std::accumulate(a.begin(), a.begin() + m, 0L)); }

std::string Weights::str() const {
    std::string s = std::to_string(m) + ":" + std::to_string(n) + ":";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a[i]);
    }
    return s;
}

Weights Weights::parse(const std::string& text) {
    auto fail = [&] { throw ConfigError("malformed weights literal (want m:n:a1,...,ad): " + text); };
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) fail();
    size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) fail();
    auto to_int = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail();
        if (s.size() > 6) fail();
        return std::stoi(s);
    };
    int m = to_int(text.substr(0, c1));
    int n = to_int(text.substr(c1 + 1, c2 - c1 - 1));
    std::vector<int> a;
    size_t start = c2 + 1;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        a.push_back(to_int(text.substr(start, comma == std::string::npos ? comma : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Weights(m, n, std::move(a));
}

}  // namespace ffl
