#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "supenv/envelope.hpp"
#include "supenv/liesuper.hpp"

namespace supenv {

enum class Verdict { pass, fail, incomplete, expected_divergence };

std::string_view verdict_name(Verdict v);

/// One clause of a condition check. pass/fail are definitive; incomplete
/// means the evidence was sampled, with `observed` recording which way it
/// pointed.
struct SubCheck {
    std::string name;
    Verdict verdict = Verdict::pass;
    bool observed = true;
    std::string witness; // certificate or counterexample description
};

/// Outcome of one theorem-condition checker. FAIL always carries a concrete
/// witness in some sub-check; INCOMPLETE only arises from sampled sub-checks
/// over infinite base fields.
struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::pass;
    std::vector<SubCheck> checks;
    std::optional<uint32_t> s_exponent; // uniform p-nilpotence exponent found
    std::optional<uint32_t> t_exponent; // identity exponent found
    std::optional<uint32_t> nil_index;  // commutator-ideal nilpotency index
    bool complete = true;

    const SubCheck* find(std::string_view name) const;
};

struct PNilScan {
    bool p_nilpotent = true; // no counterexample among the scanned elements
    uint32_t exponent = 0;   // max exponent seen; a uniform bound when complete
    bool complete = false;
    std::optional<LieElement> witness; // non-p-nilpotent element, on failure
};

/// Uniform p-nilpotence over a span of even vectors. Exhaustive over a
/// finite base field; otherwise basis rows, small combinations and seeded
/// samples, flagged incomplete — the p-map is not additive, so basis checks
/// alone never decide a span.
PNilScan subspace_p_nilpotent(const RestrictedLieSuperalgebra& L, const Subspace& V,
                              std::optional<SampledScan> sampled = std::nullopt);

/// span{(u, w) : u ∈ U, w ∈ W}, from the basis-pair brackets.
Subspace bracket_span(const RestrictedLieSuperalgebra& L, const Subspace& U,
                      const Subspace& W);

Subspace even_part(const RestrictedLieSuperalgebra& L);
Subspace odd_part(const RestrictedLieSuperalgebra& L);

/// Witness-pair hypotheses for PI-ness of u(L): B ⊆ A, both homogeneous
/// restricted ideals, (A,A) ⊆ B, (B,B) = 0, and B∩L_0 p-nilpotent.
/// Structural defects are FAIL entries, never exceptions.
ConditionReport check_petrogradsky(const RestrictedLieSuperalgebra& L, const Subspace& A,
                                   const Subspace& B,
                                   std::optional<SampledScan> sampled = std::nullopt);

/// M = span{y ∈ L_1 : (y,y) p-nilpotent}, computed here (exhaustively over a
/// finite base field, sampled otherwise — a lower bound) …
struct ComputedM {
    std::optional<SampledScan> mode; // force sampling; nullopt picks by field
};
/// … or supplied by the caller, validated as an odd homogeneous subspace
/// whose basis vectors have p-nilpotent squares (InvalidM otherwise) and
/// then trusted to be the whole of M: every clause is decided against it.
struct SuppliedM {
    Subspace M;
};
using MSource = std::variant<ComputedM, SuppliedM>;

/// The structural half of the main equivalence: u(L) PI (automatic in finite
/// dimension), (L_0,L_0) p-nilpotent, dim L_1/M ≤ 1, (M,L_1) p-nilpotent,
/// (L_1,L_0) ⊆ M. With a lower-bound M, clauses that hold for every larger
/// subspace stay definitive; the rest degrade to incomplete.
ConditionReport check_condition2(const RestrictedLieSuperalgebra& L,
                                 const MSource& source = ComputedM{},
                                 std::optional<SampledScan> span_scan = std::nullopt);

/// Exact decision: the commutator ideal of u(L) is nil of bounded index ⟺
/// its power chain reaches zero. PASS certifies the nilpotency index; FAIL
/// reports the stabilized subspace and hunts a non-nilpotent element in it.
ConditionReport check_condition3(PBWContext& ctx);
ConditionReport check_condition3(const RestrictedLieSuperalgebra& L);

struct IdentityScan {
    std::optional<uint32_t> t; // least t ≤ t_max with ([u,v]w)^{p^t} = 0 throughout
    bool complete = false;
    std::string witness; // triple attaining the bound, or defeating t_max
};

/// Search for the non-matrix identity exponent. Exhaustive mode enumerates
/// every triple of u(L) elements (finite base field under the budget cap);
/// sampled mode scans generator-pair triples with w ∈ {1} ∪ generators plus
/// seeded random triples.
IdentityScan check_nonmatrix_identity(PBWContext& ctx, uint32_t t_max,
                                      std::optional<SampledScan> sampled = std::nullopt);
IdentityScan check_nonmatrix_identity(const RestrictedLieSuperalgebra& L, uint32_t t_max,
                                      std::optional<SampledScan> sampled = std::nullopt);

/// (2) ⟺ (3) on one instance: PASS/FAIL when both sides are definitive
/// (finite base fields), INCOMPLETE when condition (2) had to rely on a
/// sampled M, and EXPECTED-DIVERGENCE for the documented non-perfect-field
/// pattern — condition (3) holds while the sampled M leaves dim L_1/M ≥ 2.
ConditionReport equivalence_audit(const RestrictedLieSuperalgebra& L,
                                  std::optional<SampledScan> sampled = std::nullopt);

} // namespace supenv
