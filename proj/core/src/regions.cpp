#include "ffl/regions.hpp"

#include <algorithm>
#include <sstream>

namespace ffl {

namespace {

int side_dim(Side side, const Weights& w) { return side == Side::alpha ? w.m : w.n; }
int side_weight(Side side, const Weights& w, int i) {
    return side == Side::alpha ? w.alpha(i) : w.beta(i);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? p : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

int parse_int_field(const std::string& kv, const std::string& key) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || kv.substr(0, eq) != key)
        throw ConfigError("expected '" + key + "=<int>' in region literal, got '" + kv + "'");
    try {
        size_t used = 0;
        int v = std::stoi(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer in region literal: '" + kv + "'");
    }
}

}  // namespace

Cylinder Cylinder::of(Side s, int depth, std::set<std::vector<uint8_t>> allowed) {
    if (depth < 0) throw ConfigError("cylinder depth must be >= 0");
    Cylinder c;
    c.side = s;
    c.depth = depth;
    c.is_full = false;
    for (const auto& t : allowed)
        if (t.size() % static_cast<size_t>(std::max(1, depth)) != 0 && depth > 0)
            throw ConfigError("cylinder table length is not a multiple of depth");
    c.allowed = std::move(allowed);
    return c;
}

std::string Cylinder::str() const {
    std::string out = "side=";
    out += (side == Side::alpha ? "alpha" : "beta");
    if (is_full) return out + ",full";
    if (allowed.empty()) return out + ",empty";
    out += ",depth=" + std::to_string(depth) + ",allow=[";
    bool first = true;
    for (const auto& t : allowed) {
        if (!first) out += ';';
        first = false;
        for (uint8_t d : t) out += static_cast<char>('0' + d);
    }
    return out + "]";
}

Cylinder Cylinder::parse(const std::string& s) {
    Cylinder c;
    c.is_full = false;
    bool saw_side = false, saw_kind = false;
    for (const std::string& part : split_on(s, ',')) {
        if (part == "full") {
            c.is_full = true;
            saw_kind = true;
        } else if (part == "empty") {
            c.is_full = false;
            saw_kind = true;
        } else if (part.rfind("side=", 0) == 0) {
            std::string v = part.substr(5);
            if (v == "alpha")
                c.side = Side::alpha;
            else if (v == "beta")
                c.side = Side::beta;
            else
                throw ConfigError("cylinder side must be alpha or beta, got '" + v + "'");
            saw_side = true;
        } else if (part.rfind("depth=", 0) == 0) {
            c.depth = parse_int_field(part, "depth");
            if (c.depth < 0) throw ConfigError("cylinder depth must be >= 0");
        } else if (part.rfind("allow=", 0) == 0) {
            std::string v = part.substr(6);
            if (v.size() < 2 || v.front() != '[' || v.back() != ']')
                throw ConfigError("cylinder allow list must be bracketed: '" + v + "'");
            v = v.substr(1, v.size() - 2);
            saw_kind = true;
            if (v.empty()) continue;  // explicit empty list
            for (const std::string& pat : split_on(v, ';')) {
                std::vector<uint8_t> table;
                for (char ch : pat) {
                    if (ch < '0' || ch > '9')
                        throw ConfigError("cylinder digit patterns use characters 0-9");
                    table.push_back(static_cast<uint8_t>(ch - '0'));
                }
                c.allowed.insert(std::move(table));
            }
        } else {
            throw ConfigError("unknown cylinder field '" + part + "'");
        }
    }
    if (!saw_side) throw ConfigError("cylinder literal is missing side=");
    if (!saw_kind) throw ConfigError("cylinder literal needs full, empty, or allow=[...]");
    return c;
}

RegionSpec RegionSpec::E(int T, int R) {
    if (T < 0) throw ConfigError("E region needs T >= 0");
    RegionSpec s;
    s.kind = Kind::E;
    s.T = T;
    s.R = R;
    return s;
}

RegionSpec RegionSpec::F(int S, int R) {
    if (S < 0) throw ConfigError("F region needs S >= 0");
    RegionSpec s;
    s.kind = Kind::F;
    s.S = S;
    s.R = R;
    return s;
}

RegionSpec RegionSpec::Ball(int r) {
    RegionSpec s;
    s.kind = Kind::Ball;
    s.r = r;
    return s;
}

RegionSpec RegionSpec::EDir(int T, int R, Cylinder c1, Cylinder c2) {
    RegionSpec s = E(T, R);
    s.kind = Kind::EDir;
    if (c1.side != Side::alpha || c2.side != Side::beta)
        throw ConfigError("EDir needs an alpha-side and a beta-side cylinder, in that order");
    s.c1 = std::move(c1);
    s.c2 = std::move(c2);
    return s;
}

std::string RegionSpec::str() const {
    switch (kind) {
        case Kind::E:
            return "E:T=" + std::to_string(T) + ",R=" + std::to_string(R);
        case Kind::F:
            return "F:S=" + std::to_string(S) + ",R=" + std::to_string(R);
        case Kind::Ball:
            return "ball:r=" + std::to_string(r);
        case Kind::EDir:
            return "E:T=" + std::to_string(T) + ",R=" + std::to_string(R) + ",dir";
    }
    return "";
}

RegionSpec RegionSpec::parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("region literal needs a kind prefix: '" + s + "'");
    std::string kind = s.substr(0, colon);
    auto fields = split_on(s.substr(colon + 1), ',');
    if (kind == "E") {
        if (fields.size() != 2) throw ConfigError("E region literal is E:T=<int>,R=<int>");
        return E(parse_int_field(fields[0], "T"), parse_int_field(fields[1], "R"));
    }
    if (kind == "F") {
        if (fields.size() != 2) throw ConfigError("F region literal is F:S=<int>,R=<int>");
        return F(parse_int_field(fields[0], "S"), parse_int_field(fields[1], "R"));
    }
    if (kind == "ball") {
        if (fields.size() != 1) throw ConfigError("ball region literal is ball:r=<int>");
        return Ball(parse_int_field(fields[0], "r"));
    }
    throw ConfigError("unknown region kind '" + kind + "'");
}

LogNorm quasi_norm(const LaurentVector& x, Side side, const Weights& w) {
    int r = side_dim(side, w);
    if (x.size() != static_cast<size_t>(r)) throw DimensionMismatch("quasi-norm slice length");
    LogNorm best = LogNorm::zero();
    for (int i = 0; i < r; ++i) {
        const Laurent& e = x[static_cast<size_t>(i)];
        if (e.zero()) continue;
        best = max(best, LogNorm::from_exponent(Rat(e.top(), side_weight(side, w, i))));
    }
    return best;
}

Direction direction_project(const LaurentVector& x, Side side, const Weights& w, int depth) {
    if (depth < 0) throw ConfigError("direction depth must be >= 0");
    LogNorm norm = quasi_norm(x, side, w);
    if (norm.is_zero()) throw ZeroVector("direction of the zero vector");
    // s = -ceil(e): the dilated quasi-norm exponent e + s lands in (-1, 0]
    Rat e = norm.exponent();
    Int num = e.get_num(), den = e.get_den();
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (!c.fits_sint_p()) throw Error("direction dilation out of range");
    int s = -static_cast<int>(c.get_si());

    Direction out;
    out.s = s;
    int r = side_dim(side, w);
    out.digits.assign(static_cast<size_t>(r) * static_cast<size_t>(depth), 0);
    for (int i = 0; i < r; ++i) {
        int shift = s * side_weight(side, w, i);
        const Laurent& xi = x[static_cast<size_t>(i)];
        for (int p = 0; p < depth; ++p) {
            // digit at degree -p of x_i * t^shift == digit of x_i at -p-shift
            out.digits[static_cast<size_t>(i) * depth + p] =
                static_cast<uint8_t>(xi.zero() ? 0 : xi.coeff(-p - shift));
        }
    }
    return out;
}

bool region_contains(const RegionSpec& region, const LaurentVector& v, const Weights& w) {
    if (region.kind == RegionSpec::Kind::Ball) {
        for (const auto& e : v)
            if (!e.zero() && e.top() > region.r - 1) return false;
        return true;
    }
    if (v.size() != static_cast<size_t>(w.d())) throw DimensionMismatch("region point dimension");
    LaurentVector x(v.begin(), v.begin() + w.m);
    LaurentVector y(v.begin() + w.m, v.end());
    LogNorm nx = quasi_norm(x, Side::alpha, w);
    LogNorm ny = quasi_norm(y, Side::beta, w);
    const LogNorm one = LogNorm::from_int_exponent(0);

    if (region.kind == RegionSpec::Kind::F) {
        if (!(one <= nx && nx <= LogNorm::from_int_exponent(region.S))) return false;
        return ny < LogNorm::from_exponent(Rat(region.R) - nx.exponent());
    }

    // E and EDir
    if (ny.is_zero()) return false;
    if (!(one <= ny && ny <= LogNorm::from_int_exponent(region.T))) return false;
    if (!(nx < LogNorm::from_exponent(Rat(region.R) - ny.exponent()))) return false;
    if (region.kind == RegionSpec::Kind::E) return true;

    // EDir: x must be nonzero and both directions must pass their cylinders
    if (nx.is_zero()) return false;
    if (region.c1.is_empty() || region.c2.is_empty()) return false;
    if (!region.c1.is_full) {
        Direction dx = direction_project(x, Side::alpha, w, region.c1.depth);
        if (!region.c1.contains_table(dx.digits)) return false;
    }
    if (!region.c2.is_full) {
        Direction dy = direction_project(y, Side::beta, w, region.c2.depth);
        if (!region.c2.contains_table(dy.digits)) return false;
    }
    return true;
}

std::vector<int> region_bounding_box(const RegionSpec& region, const Weights& w) {
    std::vector<int> cut(static_cast<size_t>(w.d()), 0);
    switch (region.kind) {
        case RegionSpec::Kind::Ball:
            std::fill(cut.begin(), cut.end(), region.r - 1);
            break;
        case RegionSpec::Kind::E:
        case RegionSpec::Kind::EDir:
            // ||x|| < q^R / ||y|| <= q^R, so deg x_i < R*a_i; deg y_j <= T*a_{m+j}
            for (int i = 0; i < w.m; ++i) cut[static_cast<size_t>(i)] = region.R * w.alpha(i) - 1;
            for (int j = 0; j < w.n; ++j)
                cut[static_cast<size_t>(w.m + j)] = region.T * w.beta(j);
            break;
        case RegionSpec::Kind::F:
            for (int i = 0; i < w.m; ++i) cut[static_cast<size_t>(i)] = region.S * w.alpha(i);
            for (int j = 0; j < w.n; ++j)
                cut[static_cast<size_t>(w.m + j)] = region.R * w.beta(j) - 1;
            break;
    }
    return cut;
}

}  // namespace ffl
