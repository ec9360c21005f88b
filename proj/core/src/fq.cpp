#include "ffl/fq.hpp"

namespace ffl {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

uint32_t Fq::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in F_q");
    // extended Euclid on (a, q)
    int64_t t = 0, new_t = 1;
    int64_t r = q_, new_r = a;
    while (new_r != 0) {
        int64_t quo = r / new_r;
        int64_t tmp = t - quo * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quo * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += q_;
    return static_cast<uint32_t>(t);
}

}  // namespace ffl
