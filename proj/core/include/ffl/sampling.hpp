#pragma once

#include <cstdint>

#include "ffl/laurent.hpp"

namespace ffl {

// Counter-based generator: output k is a pure function of (key, k), so any
// consumer can jump to an arbitrary position and parallel trials stay
// reproducible regardless of scheduling. Mixing is the SplitMix64 finalizer
// applied to a Weyl sequence offset by the key.
struct CounterRng {
    uint64_t key = 0;
    uint64_t counter = 0;

    explicit CounterRng(uint64_t key) : key(key) {}

    uint64_t next();
    // Unbiased uniform draw in [0, n), n >= 1, by rejection.
    uint64_t below(uint64_t n);
};

// Per-trial stream key of a batch keyed by master_seed; distinct trials get
// decorrelated streams and the mapping is order-independent.
uint64_t derive_seed(uint64_t master_seed, uint64_t trial);

// m x n matrix over K whose entries have zero integral part and exactly
// `depth` fractional digits (exponents -1..-depth), each digit uniform in
// F_q. Deterministic in seed; consumes m*n*depth draws in row-major entry
// order, most significant digit first.
LaurentMatrix sample_matrix(const Fq& f, int m, int n, int depth, uint64_t seed);

}  // namespace ffl
