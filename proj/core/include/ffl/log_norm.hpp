#pragma once

#include <string>

#include "ffl/errors.hpp"
#include "ffl/numeric.hpp"

namespace ffl {

// Absolute values in F_q((1/t)) and the weighted quasi-norms built on them
// take values in {0} ∪ q^Q. We store the exact rational exponent plus a
// distinguished zero, so comparisons and products never round.
class LogNorm {
   public:
    static LogNorm zero() { return LogNorm(); }
    static LogNorm from_exponent(Rat e) {
        e.canonicalize();  // callers may pass num/den forms straight from degrees
        LogNorm n;
        n.zero_ = false;
        n.e_ = std::move(e);
        return n;
    }
    static LogNorm from_int_exponent(long e) { return from_exponent(Rat(e)); }

    bool is_zero() const { return zero_; }
    const Rat& exponent() const {
        if (zero_) throw Error("exponent of the zero norm");
        return e_;
    }

    // multiplicative structure: |xy| = |x||y|, zero absorbing
    friend LogNorm operator*(const LogNorm& a, const LogNorm& b) {
        if (a.zero_ || b.zero_) return zero();
        return from_exponent(a.e_ + b.e_);
    }

    // |x|^{1/a} for a weight a >= 1
    LogNorm root(long a) const {
        if (a <= 0) throw Error("root weight must be positive");
        if (zero_) return zero();
        Rat e = e_ / Rat(a);
        e.canonicalize();
        return from_exponent(e);
    }

    // total order with zero below every q-power
    friend bool operator<(const LogNorm& a, const LogNorm& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.e_ < b.e_;
    }
    friend bool operator==(const LogNorm& a, const LogNorm& b) {
        if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
        return a.e_ == b.e_;
    }
    friend bool operator!=(const LogNorm& a, const LogNorm& b) { return !(a == b); }
    friend bool operator>(const LogNorm& a, const LogNorm& b) { return b < a; }
    friend bool operator<=(const LogNorm& a, const LogNorm& b) { return !(b < a); }
    friend bool operator>=(const LogNorm& a, const LogNorm& b) { return !(a < b); }

    // exact value q^e (requires an integral exponent); zero -> 0
    Rat value(uint32_t q) const;

    // "zero" or the exponent as "num" / "num/den"
    std::string str() const { return zero_ ? "zero" : rat_str(e_); }
    static LogNorm parse(const std::string& s);

   private:
    LogNorm() : zero_(true), e_(0) {}
    bool zero_;
    Rat e_;
};

LogNorm max(const LogNorm& a, const LogNorm& b);

}  // namespace ffl
