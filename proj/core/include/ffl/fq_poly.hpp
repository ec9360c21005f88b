#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffl/fq.hpp"

namespace ffl {

void require_same_field(const Fq& a, const Fq& b);

// Dense polynomial over F_q in t. Coefficients are stored ascending by degree
// with no trailing zeros; the zero polynomial is the empty vector and has no
// degree (callers check zero() before asking for one).
class FqPoly {
   public:
    explicit FqPoly(Fq f) : field_(f) {}
    FqPoly(Fq f, std::vector<uint8_t> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
        for (uint8_t c : coeffs_)
            if (c >= field_.q()) throw Error("coefficient out of range");
        trim();
    }

    static FqPoly constant(Fq f, uint32_t c);
    static FqPoly t_power(Fq f, int e, uint32_t c = 1);

    const Fq& field() const { return field_; }
    bool zero() const { return coeffs_.empty(); }
    int degree() const {
        if (zero()) throw Error("degree of the zero polynomial");
        return static_cast<int>(coeffs_.size()) - 1;
    }
    uint32_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0;
    }
    uint32_t leading() const { return coeff(degree()); }
    const std::vector<uint8_t>& coeffs() const { return coeffs_; }

    FqPoly shifted(int e) const;      // multiply by t^e, e >= 0
    FqPoly scaled(uint32_t c) const;  // multiply by the scalar c

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);

    bool operator==(const FqPoly& o) const {
        return field_ == o.field_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const FqPoly& o) const { return !(*this == o); }

    std::string str() const;
    static FqPoly parse(Fq f, const std::string& s);

   private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    Fq field_;
    std::vector<uint8_t> coeffs_;
};

// Quotient and remainder: a = quo * b + rem with rem == 0 or deg rem < deg b.
std::pair<FqPoly, FqPoly> divrem(const FqPoly& a, const FqPoly& b);

// Monic greatest common divisor. gcd(0, 0) is an error.
FqPoly poly_gcd(FqPoly a, FqPoly b);

}  // namespace ffl
