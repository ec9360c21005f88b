#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffl/fq_poly.hpp"
#include "ffl/log_norm.hpp"

namespace ffl {

// A finite F_q-linear combination of integer powers of t, i.e. an element of
// F_q((1/t)) with bounded support. coeffs_[i] multiplies t^{lo_+i}; both ends
// of the stored window are nonzero (canonical form), and zero is the empty
// window. |f| = q^{deg f} with |0| = 0.
class Laurent {
   public:
    explicit Laurent(Fq f) : field_(f), lo_(0) {}
    Laurent(Fq f, int lo, std::vector<uint8_t> coeffs)
        : field_(f), lo_(lo), coeffs_(std::move(coeffs)) {
        for (uint8_t c : coeffs_)
            if (c >= field_.q()) throw Error("coefficient out of range");
        normalize();
    }

    static Laurent of_poly(const FqPoly& p) { return Laurent(p.field(), 0, p.coeffs()); }
    static Laurent t_power(Fq f, int e, uint32_t c = 1) {
        if (c >= f.q()) throw Error("coefficient out of range");
        std::vector<uint8_t> v;
        if (c != 0) v.push_back(static_cast<uint8_t>(c));
        return Laurent(f, e, std::move(v));
    }

    const Fq& field() const { return field_; }
    bool zero() const { return coeffs_.empty(); }
    int top() const {  // degree of the leading term
        if (zero()) throw Error("degree of zero");
        return lo_ + static_cast<int>(coeffs_.size()) - 1;
    }
    int bottom() const {  // degree of the trailing term
        if (zero()) throw Error("degree of zero");
        return lo_;
    }
    uint32_t coeff(int e) const {
        int i = e - lo_;
        return (i >= 0 && i < static_cast<int>(coeffs_.size()))
                   ? coeffs_[static_cast<size_t>(i)]
                   : 0;
    }

    Laurent shifted(int e) const {  // multiply by t^e
        if (zero()) return *this;
        return Laurent(field_, lo_ + e, coeffs_);
    }
    Laurent scaled(uint32_t c) const;

    // Terms of degree < floor are dropped (used where only leading digits can
    // influence a decision and supports would otherwise grow without bound).
    Laurent truncated_below(int floor) const;

    friend Laurent operator+(const Laurent& a, const Laurent& b);
    friend Laurent operator-(const Laurent& a, const Laurent& b);
    friend Laurent operator*(const Laurent& a, const Laurent& b);

    bool operator==(const Laurent& o) const {
        return field_ == o.field_ && lo_ == o.lo_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // split into (integral, fractional): terms of degree >= 0 as a polynomial
    // and terms of degree <= -1
    std::pair<FqPoly, Laurent> split() const;

    std::string str() const;
    static Laurent parse(Fq f, const std::string& s);

   private:
    void normalize() {
        size_t drop = 0;
        while (drop < coeffs_.size() && coeffs_[drop] == 0) ++drop;
        if (drop) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(drop));
            lo_ += static_cast<int>(drop);
        }
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) lo_ = 0;
    }

    Fq field_;
    int lo_;
    std::vector<uint8_t> coeffs_;
};

// |f| on the log scale: q^{deg f}, with |0| -> the distinguished zero
inline LogNorm abs_log(const Laurent& x) {
    return x.zero() ? LogNorm::zero() : LogNorm::from_int_exponent(x.top());
}

// A matrix of Laurent entries together with the number of fractional digits
// that are actually specified. Entries may not reach below degree -depth;
// depth is what the precision rule checks before any counting that would
// otherwise silently depend on unknown digits.
struct LaurentMatrix {
    int rows = 0, cols = 0;
    int depth = 0;
    std::vector<Laurent> entries;

    LaurentMatrix(int r, int c, int d, Fq f)
        : rows(r), cols(c), depth(d), entries(static_cast<size_t>(r) * c, Laurent(f)) {}

    Laurent& at(int i, int j) { return entries[static_cast<size_t>(i) * cols + j]; }
    const Laurent& at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }

    void validate() const {
        for (const Laurent& e : entries)
            if (!e.zero() && e.bottom() < -depth)
                throw Error("matrix entry has digits below the declared depth");
    }
};

}  // namespace ffl
