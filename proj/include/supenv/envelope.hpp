#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "supenv/liesuper.hpp"

namespace supenv {

/// Elements of u(L) are sparse coordinate vectors over the PBW monomial
/// basis; the coordinate of a monomial is its mixed-radix index (radix p for
/// even generators, 2 for odd ones, least-significant position first).
using UElement = SparseVec;

/// PBW straightening engine for u(L). The generator order is configurable:
/// position k of every canonical monomial holds the algebra generator
/// order[k]. The default is the algebra's own basis order; the regular
/// representation reorders so that complement generators come first.
class PBWContext {
public:
    explicit PBWContext(RestrictedLieSuperalgebra algebra,
                        std::vector<uint32_t> order = {},
                        uint64_t dimension_cap = 200000);

    const RestrictedLieSuperalgebra& algebra() const { return L_; }
    uint64_t dimension() const { return D_; } // p^n · 2^m
    uint32_t generators() const { return L_.dim(); }
    const std::vector<uint32_t>& order() const { return order_; }
    /// Exponent of each PBW position in the monomial with this index.
    std::vector<uint32_t> exponents(uint32_t index) const;

    UElement unit() const;
    /// Degree-1 element: the canonical embedding L ⊆ u(L).
    UElement embed(const LieElement& v) const;
    /// Single-letter monomial for the generator at PBW position pos.
    UElement letter(uint32_t pos) const;

    UElement multiply(const UElement& u, const UElement& v);
    UElement power(const UElement& u, uint32_t k);
    /// u·x_g and x_g·u for the generator at PBW position pos.
    UElement rmul_letter(const UElement& u, uint32_t pos);
    UElement lmul_letter(uint32_t pos, const UElement& u);

    enum class CommutatorKind { lie, super };
    /// [u,v] = uv - vu, or the super bracket uv - (-1)^{|u||v|}vu
    /// (super requires homogeneous arguments; ParityError otherwise).
    UElement super_commutator(const UElement& u, const UElement& v,
                              CommutatorKind kind = CommutatorKind::lie);
    bool is_central(const UElement& u);

    /// Parity of a homogeneous element (total odd degree mod 2);
    /// ParityError when monomial parities are mixed. Zero has parity 0.
    int parity(const UElement& u) const;
    uint32_t degree(const UElement& u) const; // max total degree, 0 for u = 0

    std::string monomial_string(uint32_t index) const;
    std::string to_string(const UElement& u) const;

private:
    RestrictedLieSuperalgebra L_;
    std::vector<uint32_t> order_;    // position -> algebra generator
    std::vector<uint32_t> position_; // algebra generator -> position
    std::vector<uint32_t> radix_;    // per position: p or 2
    std::vector<uint64_t> weight_;   // mixed-radix place values
    uint64_t D_ = 1;

    // straightening memos, keyed by monomial·dim + position
    std::unordered_map<uint64_t, UElement> rmemo_, lmemo_;

    const UElement& rmul_mono(uint32_t mono, uint32_t gpos);
    const UElement& lmul_mono(uint32_t gpos, uint32_t mono);
    UElement rmul_lie(uint32_t mono, const LieElement& v);
    UElement lmul_lie(const LieElement& v, uint32_t mono);
};

uint64_t pbw_dimension(const RestrictedLieSuperalgebra& L);

/// Two-sided ideal of u(L): a row-echelon space (large ideals are never
/// canonicalized), the generating set that produced it, and a spanning set
/// of short product vectors suitable for further multiplication.
struct Ideal {
    EchelonBuilder space;
    std::vector<UElement> generators;
    std::vector<UElement> spanning;
};

Ideal ideal_generated(PBWContext& ctx, const std::vector<UElement>& gens);

/// Ideal generated by the commutators of the algebra generators. With
/// dual_route_check, also builds the ideal from all PBW basis-pair
/// commutators and asserts both routes agree (small dimensions only).
Ideal commutator_ideal(PBWContext& ctx, bool dual_route_check = false);

/// ω(L): the span of every positive-degree monomial, generated as an ideal
/// by the embedded basis of L.
Ideal augmentation_ideal(PBWContext& ctx);

struct IdealChain {
    std::vector<uint32_t> dims;          // dim I, dim I², …
    bool nilpotent = false;
    uint32_t index = 0;                  // least N with I^N = 0, when nilpotent
    std::vector<SparseVec> stable_basis; // echelon basis of the stable term
    std::vector<Subspace> terms;         // canonical chain, when keep_terms
};

/// Descending chain I ⊇ I² ⊇ …, stopping at zero (nilpotent, with index) or
/// at a nonzero fixed point. Verifies multiplication-stability of I
/// (NotAnIdeal otherwise). With the recorded generators G the step uses the
/// right-closure identity I^{k+1} = (I^k·G)·u(L), which keeps every product
/// short; the generic basis×basis step is cross-checked against it on small
/// dimensions.
IdealChain ideal_power_chain(PBWContext& ctx, const Ideal& I, bool use_hint = true,
                             bool keep_terms = false);

/// Least k with u^k = 0, or nullopt when u is not nilpotent: a power falling
/// into the span of the earlier ones before reaching zero gives the minimal
/// polynomial a nonzero lower coefficient.
std::optional<uint32_t> nil_index_of(PBWContext& ctx, const UElement& u);

struct NilProbe {
    uint32_t max_index = 1; // greatest per-element nilpotency index seen
    UElement witness;       // element attaining it (witness^{max_index-1} ≠ 0)
    bool complete = false;  // exhaustive enumeration ran
    bool all_nilpotent = true;
};

/// Max nilpotency index over elements of I: exhaustive enumeration over a
/// finite field (ExhaustionUnavailable / BudgetExceeded otherwise), or
/// generators + spanning vectors + seeded combinations when sampled.
NilProbe nil_index_probe(PBWContext& ctx, const Ideal& I,
                         std::optional<SampledScan> sampled = std::nullopt);

/// r×r matrix over u(A), row-major.
struct UMatrix {
    uint32_t r = 0;
    std::vector<UElement> entries;
    UElement& at(uint32_t i, uint32_t j) { return entries[i * r + j]; }
    const UElement& at(uint32_t i, uint32_t j) const { return entries[i * r + j]; }
};

/// u(L) as a free right u(A)-module of rank r = p^(n-n_A)·2^(m-m_A), for a
/// homogeneous restricted ideal A ⊆ L: ρ(u) is the matrix of left
/// multiplication by u on the complement monomials, an algebra homomorphism
/// into M_r(u(A)).
class RegularRepresentation {
public:
    RegularRepresentation(const RestrictedLieSuperalgebra& L, const Subspace& A);

    uint32_t rank() const { return r_; }
    /// Context for u(L) over the reordered basis (complement first, then A).
    PBWContext& big() { return *big_; }
    /// Context for u(A) on A's echelon basis.
    PBWContext& small() { return *small_; }

    /// Transport an element from a context over the original basis of L
    /// into big()'s basis.
    UElement transport(PBWContext& src, const UElement& u);

    UMatrix rho(const UElement& u_in_big);
    UMatrix matmul(const UMatrix& a, const UMatrix& b);
    /// Column of the basis monomial 1: reassembles Σ M_i·w_i0 as an element
    /// of big(), recovering u from ρ(u).
    UElement apply_to_unit(const UMatrix& m);

private:
    uint32_t r_ = 1;
    uint32_t nc_ = 0, mc_ = 0;          // complement dimensions
    std::vector<SparseVec> new_basis_;  // base-change rows, old coordinates
    std::vector<UElement> gen_image_;   // old basis vectors inside big()
    std::unique_ptr<PBWContext> big_, small_;
};

} // namespace supenv
