#include "ffl/numeric.hpp"

#include <cmath>
#include <cstdlib>

#include "ffl/errors.hpp"

namespace ffl {

Int pow_q_int(uint32_t q, long e) {
    if (e < 0) throw Error("pow_q_int: negative exponent");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(e));
    return r;
}

Rat pow_q(uint32_t q, long e) {
    if (e >= 0) return Rat(pow_q_int(q, e));
    Rat r(1, pow_q_int(q, -e));
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();  // two-argument mpq_class construction does not reduce
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw ConfigError("malformed rational literal: " + s);
    }
    Rat r;
    if (r.set_str(s, 10) != 0) throw ConfigError("malformed rational literal: " + s);
    if (r.get_den() == 0) throw ConfigError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

long floor_div(long a, long b) {
    long quo = a / b, rem = a % b;
    return (rem != 0 && ((rem < 0) != (b < 0))) ? quo - 1 : quo;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

namespace {
long checked_long(const Int& v) {
    if (!v.fits_slong_p()) throw Error("rational floor/ceil out of long range");
    return v.get_si();
}
}  // namespace

long rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return checked_long(q);
}

long rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return checked_long(q);
}

long nearest_qpow_exponent(const Rat& r, uint32_t q) {
    if (sgn(r) <= 0) throw Error("nearest_qpow_exponent: argument must be positive");
    // First guess from doubles, then correct with exact comparisons.
    double lg = (mpz_sizeinbase(r.get_num().get_mpz_t(), 2) -
                 static_cast<double>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2))) *
                std::log(2.0) / std::log(static_cast<double>(q));
    long e = static_cast<long>(std::lround(lg));
    Rat r2 = r * r;
    // want: q^{2e-1} <= r2 < q^{2e+1}
    while (r2 < pow_q(q, 2 * e - 1)) --e;
    while (r2 >= pow_q(q, 2 * e + 1)) ++e;
    return e;
}

double to_double(const Rat& r) { return r.get_d(); }

}  // namespace ffl
