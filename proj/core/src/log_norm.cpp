#include "ffl/log_norm.hpp"

namespace ffl {

Rat LogNorm::value(uint32_t q) const {
    if (zero_) return Rat(0);
    if (e_.get_den() != 1) throw Error("norm value with fractional exponent " + rat_str(e_));
    if (!e_.get_num().fits_slong_p()) throw Error("norm exponent out of range");
    return pow_q(q, e_.get_num().get_si());
}

LogNorm LogNorm::parse(const std::string& s) {
    if (s == "zero") return zero();
    return from_exponent(parse_rat(s));
}

LogNorm max(const LogNorm& a, const LogNorm& b) { return a < b ? b : a; }

}  // namespace ffl
