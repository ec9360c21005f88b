#include "ffl/laurent.hpp"

#include <algorithm>

#include "ffl/detail/term_io.hpp"

namespace ffl {

Laurent Laurent::scaled(uint32_t c) const {
    Laurent r(field_);
    if (c == 0 || zero()) return r;
    r.lo_ = lo_;
    r.coeffs_.resize(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i)
        r.coeffs_[i] = static_cast<uint8_t>(field_.mul(coeffs_[i], c));
    r.normalize();
    return r;
}

Laurent Laurent::truncated_below(int floor) const {
    if (zero() || lo_ >= floor) return *this;
    if (top() < floor) return Laurent(field_);
    size_t drop = static_cast<size_t>(floor - lo_);
    return Laurent(field_, floor, std::vector<uint8_t>(coeffs_.begin() + static_cast<long>(drop),
                                                       coeffs_.end()));
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    require_same_field(a.field_, b.field_);
    if (a.zero()) return b;
    if (b.zero()) return a;
    int lo = std::min(a.lo_, b.lo_);
    int hi = std::max(a.top(), b.top());
    std::vector<uint8_t> v(static_cast<size_t>(hi - lo + 1), 0);
    const Fq& f = a.field_;
    for (int e = lo; e <= hi; ++e)
        v[static_cast<size_t>(e - lo)] = static_cast<uint8_t>(f.add(a.coeff(e), b.coeff(e)));
    return Laurent(f, lo, std::move(v));
}

Laurent operator-(const Laurent& a, const Laurent& b) {
    require_same_field(a.field_, b.field_);
    if (b.zero()) return a;
    int lo = a.zero() ? b.lo_ : std::min(a.lo_, b.lo_);
    int hi = a.zero() ? b.top() : std::max(a.top(), b.top());
    std::vector<uint8_t> v(static_cast<size_t>(hi - lo + 1), 0);
    const Fq& f = a.field_;
    for (int e = lo; e <= hi; ++e)
        v[static_cast<size_t>(e - lo)] = static_cast<uint8_t>(f.sub(a.coeff(e), b.coeff(e)));
    return Laurent(f, lo, std::move(v));
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    require_same_field(a.field_, b.field_);
    Laurent r(a.field_);
    if (a.zero() || b.zero()) return r;
    const Fq& f = a.field_;
    r.lo_ = a.lo_ + b.lo_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] = static_cast<uint8_t>(
                f.add(r.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j])));
        }
    }
    r.normalize();
    return r;
}

std::pair<FqPoly, Laurent> Laurent::split() const {
    FqPoly integral(field_);
    Laurent fractional(field_);
    if (zero()) return {integral, fractional};
    if (lo_ >= 0) return {FqPoly(field_, coeffs_).shifted(lo_), fractional};
    if (top() < 0) return {integral, *this};
    size_t cut = static_cast<size_t>(-lo_);  // index of the degree-0 slot
    std::vector<uint8_t> frac(coeffs_.begin(), coeffs_.begin() + static_cast<long>(cut));
    std::vector<uint8_t> intp(coeffs_.begin() + static_cast<long>(cut), coeffs_.end());
    return {FqPoly(field_, std::move(intp)), Laurent(field_, lo_, std::move(frac))};
}

std::string Laurent::str() const {
    std::vector<std::pair<int, uint32_t>> terms;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
        if (coeffs_[static_cast<size_t>(i)] != 0)
            terms.emplace_back(lo_ + i, coeffs_[static_cast<size_t>(i)]);
    return detail::format_terms(terms);
}

Laurent Laurent::parse(Fq f, const std::string& s) {
    Laurent r(f);
    for (const auto& [deg, c] : detail::parse_terms(f, s)) r = r + Laurent::t_power(f, deg, c);
    return r;
}

}  // namespace ffl
