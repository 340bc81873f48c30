#include "supenv/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace supenv {

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

} // namespace

FieldSpec::FieldSpec(uint32_t prime, std::vector<std::string> variables)
    : p(prime), vars(std::move(variables)) {
    if (p < 3 || !is_prime(p))
        throw InvalidParameter("field characteristic must be an odd prime >= 3, got " + std::to_string(p));
    if (vars.size() > 2)
        throw InvalidParameter("at most two indeterminates supported");
    for (const auto& v : vars)
        if (!valid_ident(v))
            throw InvalidParameter("bad indeterminate name '" + v + "'");
    if (vars.size() == 2 && vars[0] == vars[1])
        throw InvalidParameter("indeterminate names must be distinct");
}

std::string FieldSpec::name() const {
    std::string s = "F_" + std::to_string(p);
    if (!vars.empty()) {
        s += "(" + vars[0];
        if (vars.size() == 2) s += "," + vars[1];
        s += ")";
    }
    return s;
}

namespace detail {

uint64_t pack_exp(uint32_t e0, uint32_t e1) { return (static_cast<uint64_t>(e0) << 32) | e1; }
uint32_t exp0(uint64_t e) { return static_cast<uint32_t>(e >> 32); }
uint32_t exp1(uint64_t e) { return static_cast<uint32_t>(e & 0xffffffffu); }

Poly Poly::constant(uint32_t c) {
    Poly r;
    if (c) r.t.push_back({0, c});
    return r;
}

Poly Poly::monomial(uint64_t exp, uint32_t c) {
    Poly r;
    if (c) r.t.push_back({exp, c});
    return r;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    if (a % p == 0) throw DivisionByZero();
    // Fermat: a^(p-2) mod p
    uint64_t base = a % p, acc = 1;
    uint32_t e = p - 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

Poly add(const Poly& a, const Poly& b, uint32_t p) {
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        if (a.t[i].exp < b.t[j].exp) r.t.push_back(a.t[i++]);
        else if (b.t[j].exp < a.t[i].exp) r.t.push_back(b.t[j++]);
        else {
            uint32_t c = (a.t[i].coeff + b.t[j].coeff) % p;
            if (c) r.t.push_back({a.t[i].exp, c});
            ++i; ++j;
        }
    }
    while (i < a.t.size()) r.t.push_back(a.t[i++]);
    while (j < b.t.size()) r.t.push_back(b.t[j++]);
    return r;
}

Poly neg(const Poly& a, uint32_t p) {
    Poly r = a;
    for (auto& tm : r.t) tm.coeff = p - tm.coeff;
    return r;
}

Poly sub(const Poly& a, const Poly& b, uint32_t p) { return add(a, neg(b, p), p); }

Poly scale(const Poly& a, uint32_t c, uint32_t p) {
    c %= p;
    if (!c) return {};
    Poly r = a;
    for (auto& tm : r.t) tm.coeff = static_cast<uint32_t>(static_cast<uint64_t>(tm.coeff) * c % p);
    return r;
}

Poly mul(const Poly& a, const Poly& b, uint32_t p) {
    if (a.zero() || b.zero()) return {};
    std::map<uint64_t, uint32_t> acc;
    for (const auto& ta : a.t)
        for (const auto& tb : b.t) {
            uint64_t e0 = static_cast<uint64_t>(exp0(ta.exp)) + exp0(tb.exp);
            uint64_t e1 = static_cast<uint64_t>(exp1(ta.exp)) + exp1(tb.exp);
            if (e0 > 0xffffffffull || e1 > 0xffffffffull)
                throw Error("polynomial exponent overflow");
            uint64_t e = pack_exp(static_cast<uint32_t>(e0), static_cast<uint32_t>(e1));
            uint32_t c = static_cast<uint32_t>((acc[e] + static_cast<uint64_t>(ta.coeff) * tb.coeff) % p);
            if (c) acc[e] = c; else acc.erase(e);
        }
    Poly r;
    r.t.reserve(acc.size());
    for (const auto& [e, c] : acc) r.t.push_back({e, c});
    return r;
}

namespace {

// univariate helpers: every exponent has e1 == 0, terms ascending, so the
// last term carries the degree and leading coefficient
uint32_t udeg(const Poly& a) { return exp0(a.t.back().exp); }
uint32_t ulc(const Poly& a) { return a.t.back().coeff; }

Poly urem(Poly a, const Poly& b, uint32_t p) {
    const uint32_t db = udeg(b), li = inv_mod(ulc(b), p);
    while (!a.zero() && udeg(a) >= db) {
        uint32_t c = static_cast<uint32_t>(static_cast<uint64_t>(ulc(a)) * li % p);
        a = sub(a, mul(b, Poly::monomial(pack_exp(udeg(a) - db, 0), c), p), p);
    }
    return a;
}

Poly ugcd(Poly a, Poly b, uint32_t p) {
    while (!b.zero()) {
        Poly r = urem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.zero()) return a;
    return scale(a, inv_mod(ulc(a), p), p); // monic
}

Poly udivexact(Poly a, const Poly& b, uint32_t p) {
    const uint32_t db = udeg(b), li = inv_mod(ulc(b), p);
    std::vector<Term> q;
    while (!a.zero() && udeg(a) >= db) {
        uint32_t c = static_cast<uint32_t>(static_cast<uint64_t>(ulc(a)) * li % p);
        uint32_t k = udeg(a) - db;
        q.push_back({pack_exp(k, 0), c});
        a = sub(a, mul(b, Poly::monomial(pack_exp(k, 0), c), p), p);
    }
    if (!a.zero()) throw Error("inexact polynomial division");
    std::reverse(q.begin(), q.end());
    Poly r;
    r.t = std::move(q);
    return r;
}

} // namespace

} // namespace detail

using detail::Poly;
using detail::Term;
using detail::pack_exp;
using detail::exp0;
using detail::exp1;

FieldElement FieldElement::zero(const FieldSpec& f) {
    FieldElement x;
    x.p_ = f.p;
    x.k_ = f.nvars();
    return x;
}

FieldElement FieldElement::one(const FieldSpec& f) { return integer(f, 1); }

FieldElement FieldElement::integer(const FieldSpec& f, long long v) {
    FieldElement x = zero(f);
    long long r = v % static_cast<long long>(f.p);
    if (r < 0) r += f.p;
    x.num_ = Poly::constant(static_cast<uint32_t>(r));
    return x;
}

FieldElement FieldElement::variable(const FieldSpec& f, uint32_t index) {
    if (index >= f.nvars())
        throw InvalidParameter("variable index out of range for " + f.name());
    FieldElement x = zero(f);
    x.num_ = Poly::monomial(index == 0 ? pack_exp(1, 0) : pack_exp(0, 1), 1);
    return x;
}

FieldElement FieldElement::from_parts(const FieldSpec& f, Poly num, Poly den) {
    FieldElement x = zero(f);
    x.num_ = std::move(num);
    x.den_ = std::move(den);
    x.reduce();
    return x;
}

void FieldElement::check_compat(const FieldElement& o) const {
    if (p_ != o.p_ || k_ != o.k_)
        throw DimensionMismatch("field elements from different fields");
}

void FieldElement::reduce() {
    if (den_.zero()) throw DivisionByZero();
    if (num_.zero()) {
        den_ = Poly::constant(1);
        return;
    }
    if (den_.is_constant()) {
        uint32_t d = den_.t[0].coeff;
        if (d != 1) num_ = detail::scale(num_, detail::inv_mod(d, p_), p_);
        den_ = Poly::constant(1);
        return;
    }
    if (k_ == 1) {
        Poly g = detail::ugcd(num_, den_, p_);
        if (!g.is_one() && !g.zero()) {
            num_ = detail::udivexact(std::move(num_), g, p_);
            den_ = detail::udivexact(std::move(den_), g, p_);
        }
        if (den_.is_constant()) {
            uint32_t d = den_.t[0].coeff;
            if (d != 1) num_ = detail::scale(num_, detail::inv_mod(d, p_), p_);
            den_ = Poly::constant(1);
            return;
        }
    } else if (k_ == 2) {
        auto content = [](const Poly& a) {
            uint32_t c0 = 0xffffffffu, c1 = 0xffffffffu;
            for (const auto& tm : a.t) {
                c0 = std::min(c0, exp0(tm.exp));
                c1 = std::min(c1, exp1(tm.exp));
            }
            return std::pair{c0, c1};
        };
        auto [n0, n1] = content(num_);
        auto [d0, d1] = content(den_);
        uint32_t c0 = std::min(n0, d0), c1 = std::min(n1, d1);
        if (c0 || c1) {
            auto shift = [&](Poly& a) {
                for (auto& tm : a.t)
                    tm.exp = pack_exp(exp0(tm.exp) - c0, exp1(tm.exp) - c1);
            };
            shift(num_);
            shift(den_);
        }
    }
    uint32_t lc = den_.t.back().coeff;
    if (lc != 1) {
        uint32_t li = detail::inv_mod(lc, p_);
        num_ = detail::scale(num_, li, p_);
        den_ = detail::scale(den_, li, p_);
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_compat(o);
    FieldElement r = *this;
    if (den_.is_one() && o.den_.is_one()) {
        r.num_ = detail::add(num_, o.num_, p_);
        return r; // den stays 1, no reduction needed
    }
    r.num_ = detail::add(detail::mul(num_, o.den_, p_), detail::mul(o.num_, den_, p_), p_);
    r.den_ = detail::mul(den_, o.den_, p_);
    r.reduce();
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.num_ = detail::neg(num_, p_);
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_compat(o);
    FieldElement r = *this;
    r.num_ = detail::mul(num_, o.num_, p_);
    if (den_.is_one() && o.den_.is_one()) return r;
    r.den_ = detail::mul(den_, o.den_, p_);
    r.reduce();
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_compat(o);
    if (o.is_zero()) throw DivisionByZero();
    FieldElement r = *this;
    r.num_ = detail::mul(num_, o.den_, p_);
    r.den_ = detail::mul(den_, o.num_, p_);
    r.reduce();
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    FieldElement r = *this;
    std::swap(r.num_, r.den_);
    r.reduce();
    return r;
}

bool FieldElement::equals(const FieldElement& o) const {
    check_compat(o);
    return detail::mul(num_, o.den_, p_) == detail::mul(o.num_, den_, p_);
}

FieldElement FieldElement::frobenius(uint32_t e) const {
    if (e == 0 || (num_.is_constant() && den_.is_constant())) return *this;
    uint64_t q = 1;
    uint32_t maxe = 0;
    for (const auto& tm : num_.t) maxe = std::max({maxe, exp0(tm.exp), exp1(tm.exp)});
    for (const auto& tm : den_.t) maxe = std::max({maxe, exp0(tm.exp), exp1(tm.exp)});
    for (uint32_t i = 0; i < e; ++i) {
        q *= p_;
        if (maxe && q > 0xffffffffull / std::max<uint32_t>(maxe, 1))
            throw Error("exponent overflow in frobenius");
    }
    // coefficients fixed by Frobenius (Fermat), exponents scale by p^e;
    // packed order is preserved under componentwise scaling
    auto map = [&](const Poly& a) {
        Poly r = a;
        for (auto& tm : r.t)
            tm.exp = pack_exp(static_cast<uint32_t>(exp0(tm.exp) * q),
                              static_cast<uint32_t>(exp1(tm.exp) * q));
        return r;
    };
    FieldElement r = *this;
    r.num_ = map(num_);
    r.den_ = map(den_);
    return r;
}

std::optional<FieldElement> FieldElement::pth_root() const {
    if (is_zero()) return *this;
    // a = f/g; a = f·g^(p-1) / g^p, and h^p = f·g^(p-1) iff every exponent
    // of that product is divisible by p (coefficients are fixed points)
    Poly gp = Poly::constant(1);
    for (uint32_t i = 0; i + 1 < p_; ++i) gp = detail::mul(gp, den_, p_);
    Poly prod = detail::mul(num_, gp, p_);
    Poly h;
    h.t.reserve(prod.t.size());
    for (const auto& tm : prod.t) {
        uint32_t e0 = exp0(tm.exp), e1 = exp1(tm.exp);
        if (e0 % p_ || e1 % p_) return std::nullopt;
        h.t.push_back({pack_exp(e0 / p_, e1 / p_), tm.coeff});
    }
    FieldElement r = *this;
    r.num_ = std::move(h);
    r.den_ = den_;
    r.reduce();
    return r;
}

uint64_t FieldElement::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(p_);
    mix(k_);
    mix(num_.t.size());
    for (const auto& tm : num_.t) { mix(tm.exp); mix(tm.coeff); }
    mix(den_.t.size());
    for (const auto& tm : den_.t) { mix(tm.exp); mix(tm.coeff); }
    return h;
}

FieldElement pow(const FieldElement& x, uint64_t e) {
    if (x.is_zero()) {
        if (e == 0) throw InvalidParameter("0^0 undefined");
        return x;
    }
    FieldElement acc = x;
    FieldElement r = x / x; // one of the same field
    while (e) {
        if (e & 1) r = r * acc;
        acc = acc * acc;
        e >>= 1;
    }
    return r;
}

// ---- literal parser ----------------------------------------------------

namespace {

struct LiteralParser {
    const FieldSpec& f;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, 0, static_cast<int>(i) + 1);
    }

    uint64_t read_uint() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected integer");
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + static_cast<uint64_t>(s[i] - '0');
            if (v > 1000000000ull) fail("exponent too large");
            ++i;
        }
        return v;
    }

    Poly power(Poly base, uint64_t e) {
        Poly r = Poly::constant(1);
        while (e) {
            if (e & 1) r = detail::mul(r, base, f.p);
            base = detail::mul(base, base, f.p);
            e >>= 1;
        }
        return r;
    }

    Poly factor() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint32_t v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = (v * 10 + static_cast<uint32_t>(s[i] - '0')) % f.p;
                ++i;
            }
            return Poly::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            std::string name = s.substr(start, i - start);
            uint32_t idx = 0;
            for (; idx < f.nvars(); ++idx)
                if (f.vars[idx] == name) break;
            if (idx == f.nvars())
                throw UnknownName("unknown indeterminate '" + name + "' in " + f.name(), 0,
                                  static_cast<int>(start) + 1);
            Poly m = Poly::monomial(idx == 0 ? pack_exp(1, 0) : pack_exp(0, 1), 1);
            if (eat('^')) return power(std::move(m), read_uint());
            return m;
        }
        if (c == '(') {
            ++i;
            Poly e = expr();
            if (!eat(')')) fail("expected ')'");
            if (eat('^')) return power(std::move(e), read_uint());
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Poly term() {
        Poly r = factor();
        while (eat('*')) r = detail::mul(r, factor(), f.p);
        return r;
    }

    Poly expr() {
        skip();
        bool negate = false;
        if (eat('-')) negate = true;
        else eat('+');
        Poly r = term();
        if (negate) r = detail::neg(r, f.p);
        for (;;) {
            skip();
            if (eat('+')) r = detail::add(r, term(), f.p);
            else if (eat('-')) r = detail::sub(r, term(), f.p);
            else break;
        }
        return r;
    }
};

Poly parse_poly_text(const FieldSpec& f, const std::string& text, size_t col_offset) {
    LiteralParser pp{f, text};
    Poly r = pp.expr();
    pp.skip();
    if (pp.i != text.size())
        throw ParseError("trailing input in coefficient", 0,
                         static_cast<int>(pp.i + col_offset) + 1);
    return r;
}

} // namespace

FieldElement parse_field_element(const FieldSpec& f, const std::string& text) {
    // at most one '/' at paren depth 0 splits numerator from denominator
    int depth = 0;
    size_t slash = std::string::npos;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') {
            if (--depth < 0) throw ParseError("unbalanced ')'", 0, static_cast<int>(i) + 1);
        } else if (c == '/' && depth == 0) {
            if (slash != std::string::npos)
                throw ParseError("more than one top-level '/'", 0, static_cast<int>(i) + 1);
            slash = i;
        }
    }
    if (depth != 0) throw ParseError("unbalanced '('", 0, static_cast<int>(text.size()));
    if (slash == std::string::npos) {
        Poly num = parse_poly_text(f, text, 0);
        return FieldElement::from_parts(f, std::move(num), Poly::constant(1));
    }
    Poly num = parse_poly_text(f, text.substr(0, slash), 0);
    Poly den = parse_poly_text(f, text.substr(slash + 1), slash + 1);
    if (den.zero()) throw DivisionByZero();
    return FieldElement::from_parts(f, std::move(num), std::move(den));
}

namespace {

std::string poly_to_string(const Poly& a, const FieldSpec& f) {
    if (a.zero()) return "0";
    std::vector<Term> ts = a.t;
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) {
        uint64_t dx = static_cast<uint64_t>(exp0(x.exp)) + exp1(x.exp);
        uint64_t dy = static_cast<uint64_t>(exp0(y.exp)) + exp1(y.exp);
        if (dx != dy) return dx > dy;
        return x.exp > y.exp;
    });
    std::string out;
    for (size_t n = 0; n < ts.size(); ++n) {
        if (n) out += " + ";
        const Term& tm = ts[n];
        uint32_t e0 = exp0(tm.exp), e1 = exp1(tm.exp);
        std::vector<std::string> parts;
        if (tm.coeff != 1 || (e0 == 0 && e1 == 0))
            parts.push_back(std::to_string(tm.coeff));
        auto var_part = [&](uint32_t idx, uint32_t e) {
            if (!e) return;
            std::string v = f.vars[idx];
            if (e > 1) v += "^" + std::to_string(e);
            parts.push_back(std::move(v));
        };
        var_part(0, e0);
        var_part(1, e1);
        for (size_t j = 0; j < parts.size(); ++j) {
            if (j) out += "*";
            out += parts[j];
        }
    }
    return out;
}

} // namespace

std::string to_string(const FieldElement& x, const FieldSpec& f) {
    std::string num = poly_to_string(x.num(), f);
    if (x.den().is_one()) return num;
    std::string den = poly_to_string(x.den(), f);
    if (x.num().t.size() > 1) num = "(" + num + ")";
    if (x.den().t.size() > 1) den = "(" + den + ")";
    return num + "/" + den;
}

} // namespace supenv
