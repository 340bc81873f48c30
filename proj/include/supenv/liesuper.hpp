#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "supenv/linalg.hpp"

namespace supenv {

/// Vector of L = L_0 ⊕ L_1 in the declared basis; even and odd coordinate
/// blocks are kept separate because most operations are parity-sensitive.
struct LieElement {
    std::vector<FieldElement> even, odd;

    bool is_zero() const;
    bool even_zero() const;
    bool odd_zero() const;
    bool homogeneous() const { return even_zero() || odd_zero(); }
    /// 0 or 1 for homogeneous elements (zero counts as either; returns 0).
    int parity() const; // NotHomogeneous on mixed nonzero elements
    bool operator==(const LieElement& o) const;
};

LieElement add(const LieElement& a, const LieElement& b);
LieElement sub(const LieElement& a, const LieElement& b);
LieElement neg(const LieElement& a);
LieElement scale(const FieldElement& c, const LieElement& a);

/// Restricted Lie superalgebra given by structure constants: basis sizes
/// (n even, m odd), a full (n+m)² bracket table and a p-map table on the
/// even basis. Construction is deliberately lenient — verify_axioms decides
/// whether the tables actually satisfy the axioms.
struct RestrictedLieSuperalgebra {
    FieldSpec field;
    uint32_t n = 0, m = 0;
    std::vector<std::string> names;                  // even block then odd block
    std::vector<std::vector<LieElement>> bracket_table; // (e_i, e_j)
    std::vector<LieElement> pmap_table;              // e_i^[p] for i < n

    uint32_t dim() const { return n + m; }
    int parity_of(uint32_t i) const { return i < n ? 0 : 1; }

    LieElement zero_element() const;
    LieElement basis_element(uint32_t i) const;
    SparseVec to_coords(const LieElement& v) const;
    LieElement from_coords(const SparseVec& v) const;

    /// Structural well-formedness (table shapes, coordinate lengths, names);
    /// throws InvalidParameter. Does not check the algebra axioms.
    void validate_shape() const;

    /// Stable content hash (field, dims, names, tables); seeds sampling.
    uint64_t instance_hash() const;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string witness; // counterexample description on failure
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
    const AxiomCheck* find(std::string_view name) const;
};

/// Bilinear extension of the bracket table.
LieElement bracket(const RestrictedLieSuperalgebra& L, const LieElement& u,
                   const LieElement& v);

/// Check the defining axioms: grading of structure constants,
/// super-anticommutativity, super-Jacobi, the p-map compatibility
/// (y, x^[p]) = (ad x)^p y, the p=3 cube axiom ((y,y),y) = 0, and that p-map
/// values are even. Basis tuples exhaustively, plus `samples` seeded random
/// general elements.
AxiomReport verify_axioms(const RestrictedLieSuperalgebra& L, uint32_t samples = 20,
                          uint64_t seed = 0);

/// s_1..s_{p-1} with i·s_i the λ^{i-1}-coefficient of (ad(λx+y))^{p-1}(x).
std::vector<LieElement> s_coefficients(const RestrictedLieSuperalgebra& L,
                                       const LieElement& x, const LieElement& y);

/// x^[p] for a general even element, by folding
/// (x + y)^[p] = x^[p] + y^[p] + Σ s_i(x, y) over the basis decomposition.
LieElement p_power(const RestrictedLieSuperalgebra& L, const LieElement& x);

struct PNilpotence {
    bool nilpotent = false;
    std::optional<uint32_t> exponent; // least s with x^[p]^s = 0
};

/// Iterates p_power at most n+1 times; the bound is exact because the
/// iterates live in a span on which the p-map acts semilinearly, and a
/// nilpotent semilinear operator on a d-dim space kills vectors in d steps.
PNilpotence is_p_nilpotent(const RestrictedLieSuperalgebra& L, const LieElement& x);

/// Smallest subspace containing X, stable under bracketing with L and under
/// the p-map of its even part.
Subspace restricted_closure(const RestrictedLieSuperalgebra& L,
                            const std::vector<LieElement>& X);

struct QuotientResult {
    RestrictedLieSuperalgebra algebra;
    std::vector<uint32_t> complement; // old coordinate of each new basis vector
};

/// L / I for a homogeneous restricted ideal I (verified; NotHomogeneous /
/// NotAnIdeal otherwise). The new basis is the complement of I's pivot
/// coordinates.
QuotientResult quotient(const RestrictedLieSuperalgebra& L, const Subspace& I);

/// Image of v under the canonical projection of quotient(L, I).
LieElement project_to_quotient(const RestrictedLieSuperalgebra& L, const Subspace& I,
                               const QuotientResult& Q, const LieElement& v);

enum class SeriesKind { lower_central, derived };

/// Chain until stabilization: γ_1 = L, γ_{k+1} = (γ_k, L), or
/// δ_0 = L, δ_{k+1} = (δ_k, δ_k). Last entry is the stable term.
std::vector<Subspace> series(const RestrictedLieSuperalgebra& L, SeriesKind kind);

bool is_nilpotent(const RestrictedLieSuperalgebra& L);
bool is_solvable(const RestrictedLieSuperalgebra& L);

/// {v : (v, e_i) = 0 for all i}, as a kernel computation.
Subspace center(const RestrictedLieSuperalgebra& L);

struct SubspaceScan {
    Subspace space;
    bool complete = false;   // exhaustive enumeration ran
    bool set_closed = false; // exhaustive only: the witness set was already a subspace
};

struct SampledScan {
    uint32_t count = 40;
    uint64_t seed = 0;
};

/// Span of all odd y with (y, y) p-nilpotent. Exhaustive mode enumerates the
/// whole of L_1 (finite base field only, ExhaustionUnavailable otherwise);
/// sampled mode spans the witnesses found among basis vectors, small
/// combinations and seeded random elements — a lower bound.
SubspaceScan compute_M(const RestrictedLieSuperalgebra& L,
                       std::optional<SampledScan> sampled = std::nullopt);

/// Span of the p-nilpotent even elements found, same mode semantics.
SubspaceScan compute_p_nil_part(const RestrictedLieSuperalgebra& L,
                                std::optional<SampledScan> sampled = std::nullopt);

std::string to_string(const RestrictedLieSuperalgebra& L, const LieElement& v);

/// Deterministic stream for (seed, operation, instance) triples.
std::mt19937_64 seeded_rng(uint64_t seed, std::string_view op, uint64_t instance_hash);

/// Deterministic platform-independent samples (uniform_int_distribution is
/// not portable, so these use plain modular draws).
FieldElement random_field_element(std::mt19937_64& rng, const FieldSpec& f,
                                  bool allow_fraction = true);
LieElement random_lie_element(std::mt19937_64& rng, const RestrictedLieSuperalgebra& L,
                              int parity); // parity 0/1 homogeneous, -1 general

} // namespace supenv
