#include "ffl/fq_poly.hpp"

#include <algorithm>

#include "ffl/detail/term_io.hpp"

namespace ffl {

void require_same_field(const Fq& a, const Fq& b) {
    if (a != b) throw DimensionMismatch("mixed field sizes");
}

FqPoly FqPoly::constant(Fq f, uint32_t c) {
    if (c >= f.q()) throw Error("coefficient out of range");
    std::vector<uint8_t> v;
    if (c != 0) v.push_back(static_cast<uint8_t>(c));
    return FqPoly(f, std::move(v));
}

FqPoly FqPoly::t_power(Fq f, int e, uint32_t c) {
    if (e < 0) throw Error("negative exponent in a polynomial");
    if (c >= f.q()) throw Error("coefficient out of range");
    std::vector<uint8_t> v;
    if (c != 0) {
        v.assign(static_cast<size_t>(e) + 1, 0);
        v.back() = static_cast<uint8_t>(c);
    }
    return FqPoly(f, std::move(v));
}

FqPoly FqPoly::shifted(int e) const {
    if (e < 0) throw Error("negative shift on a polynomial");
    if (zero()) return *this;
    std::vector<uint8_t> v(static_cast<size_t>(e), 0);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return FqPoly(field_, std::move(v));
}

FqPoly FqPoly::scaled(uint32_t c) const {
    FqPoly r(field_);
    if (c == 0 || zero()) return r;
    r.coeffs_.resize(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i)
        r.coeffs_[i] = static_cast<uint8_t>(field_.mul(coeffs_[i], c));
    r.trim();
    return r;
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    require_same_field(a.field_, b.field_);
    FqPoly r(a.field_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (size_t i = 0; i < r.coeffs_.size(); ++i)
        r.coeffs_[i] = static_cast<uint8_t>(a.field_.add(a.coeff(static_cast<int>(i)),
                                                         b.coeff(static_cast<int>(i))));
    r.trim();
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    require_same_field(a.field_, b.field_);
    FqPoly r(a.field_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (size_t i = 0; i < r.coeffs_.size(); ++i)
        r.coeffs_[i] = static_cast<uint8_t>(a.field_.sub(a.coeff(static_cast<int>(i)),
                                                         b.coeff(static_cast<int>(i))));
    r.trim();
    return r;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    require_same_field(a.field_, b.field_);
    FqPoly r(a.field_);
    if (a.zero() || b.zero()) return r;
    const Fq& f = a.field_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] = static_cast<uint8_t>(
                f.add(r.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j])));
        }
    }
    r.trim();
    return r;
}

std::pair<FqPoly, FqPoly> divrem(const FqPoly& a, const FqPoly& b) {
    require_same_field(a.field(), b.field());
    if (b.zero()) throw DivisionByZero("polynomial division by zero");
    const Fq& f = a.field();
    FqPoly quo(f);
    if (a.zero() || a.degree() < b.degree()) return {quo, a};

    std::vector<uint8_t> rem(a.coeffs());
    int db = b.degree();
    uint32_t lead_inv = f.inv(b.leading());
    std::vector<uint8_t> q(static_cast<size_t>(a.degree() - db) + 1, 0);
    for (int i = a.degree(); i >= db; --i) {
        uint32_t c = rem[static_cast<size_t>(i)];
        if (c == 0) continue;
        uint32_t factor = f.mul(c, lead_inv);
        q[static_cast<size_t>(i - db)] = static_cast<uint8_t>(factor);
        for (int j = 0; j <= db; ++j) {
            size_t k = static_cast<size_t>(i - db + j);
            rem[k] = static_cast<uint8_t>(f.sub(rem[k], f.mul(factor, b.coeff(j))));
        }
    }
    return {FqPoly(f, std::move(q)), FqPoly(f, std::move(rem))};
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    require_same_field(a.field(), b.field());
    if (a.zero() && b.zero()) throw DivisionByZero("gcd(0, 0) is undefined");
    while (!b.zero()) {
        FqPoly r = divrem(a, b).second;
        a = b;
        b = r;
    }
    return a.scaled(a.field().inv(a.leading()));  // monic normalization
}

std::string FqPoly::str() const {
    std::vector<std::pair<int, uint32_t>> terms;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
        if (coeffs_[static_cast<size_t>(i)] != 0) terms.emplace_back(i, coeffs_[static_cast<size_t>(i)]);
    return detail::format_terms(terms);
}

FqPoly FqPoly::parse(Fq f, const std::string& s) {
    FqPoly r(f);
    for (const auto& [deg, c] : detail::parse_terms(f, s)) {
        if (deg < 0) throw ConfigError("negative exponent in a polynomial literal: " + s);
        r = r + FqPoly::t_power(f, deg, c);
    }
    return r;
}

}  // namespace ffl
