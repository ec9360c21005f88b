#include "ffl/sampling.hpp"

#include "ffl/errors.hpp"

namespace ffl {

uint64_t CounterRng::next() {
    uint64_t z = key + (++counter) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t CounterRng::below(uint64_t n) {
    if (n == 0) throw Error("uniform draw from an empty range");
    uint64_t reject = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        uint64_t x = next();
        if (x >= reject) return x % n;
    }
}

uint64_t derive_seed(uint64_t master_seed, uint64_t trial) {
    CounterRng r(master_seed ^ 0xD1B54A32D192ED03ull);
    r.counter = trial;
    return r.next();
}

LaurentMatrix sample_matrix(const Fq& f, int m, int n, int depth, uint64_t seed) {
    if (m < 1 || n < 1) throw DimensionMismatch("sample_matrix needs positive dimensions");
    if (depth < 1) throw ConfigError("sample_matrix needs depth >= 1");
    CounterRng rng(seed);
    LaurentMatrix A(m, n, depth, f);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<uint8_t> coeffs(static_cast<size_t>(depth), 0);
            // coeffs[k] sits at exponent -depth + k; draw from exponent -1 down
            for (int p = 1; p <= depth; ++p)
                coeffs[static_cast<size_t>(depth - p)] = static_cast<uint8_t>(rng.below(f.q()));
            A.at(i, j) = Laurent(f, -depth, std::move(coeffs));
        }
    }
    return A;
}

}  // namespace ffl
