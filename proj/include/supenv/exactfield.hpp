#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supenv/errors.hpp"

namespace supenv {

/// Base field description: F_p or the rational function field F_p(t_1..t_k),
/// k <= 2, p an odd prime.
struct FieldSpec {
    uint32_t p = 3;
    std::vector<std::string> vars; // 0, 1 or 2 indeterminate names

    FieldSpec() = default;
    FieldSpec(uint32_t prime, std::vector<std::string> variables = {});

    uint32_t nvars() const { return static_cast<uint32_t>(vars.size()); }
    bool finite() const { return vars.empty(); }
    bool operator==(const FieldSpec& o) const { return p == o.p && vars == o.vars; }
    std::string name() const; // "F_3", "F_3(t)", "F_3(a,b)"
};

namespace detail {

// Sparse polynomial over F_p in at most two variables. Exponents are packed
// as (e0 << 32) | e1; terms are kept sorted by packed exponent with nonzero
// coefficients in [1, p).
struct Term {
    uint64_t exp;
    uint32_t coeff;
    bool operator==(const Term&) const = default;
};

class Poly {
public:
    std::vector<Term> t;

    bool zero() const { return t.empty(); }
    bool is_one() const { return t.size() == 1 && t[0].exp == 0 && t[0].coeff == 1; }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].exp == 0); }
    bool operator==(const Poly&) const = default;

    static Poly constant(uint32_t c);
    static Poly monomial(uint64_t exp, uint32_t c);
};

uint64_t pack_exp(uint32_t e0, uint32_t e1);
uint32_t exp0(uint64_t e);
uint32_t exp1(uint64_t e);

Poly add(const Poly& a, const Poly& b, uint32_t p);
Poly sub(const Poly& a, const Poly& b, uint32_t p);
Poly neg(const Poly& a, uint32_t p);
Poly mul(const Poly& a, const Poly& b, uint32_t p);
Poly scale(const Poly& a, uint32_t c, uint32_t p);
uint32_t inv_mod(uint32_t a, uint32_t p);

} // namespace detail

/// Exact scalar in F_p or F_p(t_1..t_k). Stored as numerator/denominator
/// pair of sparse polynomials; fractions are not required to be in lowest
/// terms, equality is decided by cross-multiplication. A cheap reduction
/// pass (exact GCD for k <= 1, monomial content for k = 2) keeps growth in
/// check; the denominator's leading coefficient is normalized to 1.
class FieldElement {
public:
    FieldElement() = default; // zero of F_3; usable but prefer the factories

    static FieldElement zero(const FieldSpec& f);
    static FieldElement one(const FieldSpec& f);
    static FieldElement integer(const FieldSpec& f, long long v);
    static FieldElement variable(const FieldSpec& f, uint32_t index);
    static FieldElement from_parts(const FieldSpec& f, detail::Poly num, detail::Poly den);

    uint32_t p() const { return p_; }
    uint32_t nvars() const { return k_; }
    bool is_zero() const { return num_.zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const; // DivisionByZero
    FieldElement operator-() const;
    FieldElement inverse() const; // DivisionByZero

    FieldElement& operator+=(const FieldElement& o) { *this = *this + o; return *this; }
    FieldElement& operator-=(const FieldElement& o) { *this = *this - o; return *this; }
    FieldElement& operator*=(const FieldElement& o) { *this = *this * o; return *this; }

    /// a == b by cross-multiplication; independent of stored form.
    bool equals(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const { return equals(o); }

    /// a^(p^e); the Frobenius endomorphism iterated e times.
    FieldElement frobenius(uint32_t e) const;

    /// The p-th root, when it exists in the field. Over F_p it always does;
    /// over F_p(t) e.g. t has none.
    std::optional<FieldElement> pth_root() const;

    const detail::Poly& num() const { return num_; }
    const detail::Poly& den() const { return den_; }

    /// Stable hash of the reduced representative (used for instance ids).
    uint64_t hash() const;

private:
    uint32_t p_ = 3;
    uint32_t k_ = 0;
    detail::Poly num_;                          // zero polynomial
    detail::Poly den_ = detail::Poly::constant(1);

    void reduce();
    void check_compat(const FieldElement& o) const;
};

/// x^e by square-and-multiply (e a plain integer, not a p-power).
FieldElement pow(const FieldElement& x, uint64_t e);

/// Parse a coefficient literal: signed decimal integers, variable powers
/// `t^3`, `*` products, `+`/`-` sums, one optional top-level `/`, parens.
FieldElement parse_field_element(const FieldSpec& f, const std::string& text);

/// Canonical rendering accepted back by parse_field_element.
std::string to_string(const FieldElement& x, const FieldSpec& f);

} // namespace supenv
