#pragma once

#include <cstdint>

#include "ffl/errors.hpp"

namespace ffl {

bool is_prime(uint32_t n);

// Prime field F_q with runtime modulus. Elements are plain uint32_t values in
// [0, q); the field object carries the modulus and does the arithmetic.
class Fq {
   public:
    explicit Fq(uint32_t q) : q_(q) {
        if (!is_prime(q)) throw ConfigError("field size must be prime, got " + std::to_string(q));
    }

    uint32_t q() const { return q_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + q_ - b; }
    uint32_t neg(uint32_t a) const { return a ? q_ - a : 0; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % q_);
    }
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    bool operator==(const Fq& o) const { return q_ == o.q_; }
    bool operator!=(const Fq& o) const { return q_ != o.q_; }

   private:
    uint32_t q_;
};

}  // namespace ffl
