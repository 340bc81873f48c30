#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supenv/analysis.hpp"

namespace supenv {

// ---------------------------------------------------------------------------
// Algebra spec files. One declaration per line, `#` comments:
//   p = 3
//   field = F3(t)
//   even = x1 x2 x3
//   odd = y z
//   bracket (y,z) = x3
//   pmap x2 = t^2*x1
// Unspecified brackets are zero; the super-anticommutative partner of each
// declared pair is filled in automatically. Coefficients use the field
// literal grammar; non-atomic ones are parenthesized, as in (1+t)*x1.

RestrictedLieSuperalgebra parse_algebra(const std::string& text);
RestrictedLieSuperalgebra load_algebra(const std::string& path);

/// Canonical rendering; parse_algebra(print_algebra(L)) reconstructs L and
/// print ∘ parse is a fixed point on printed text.
std::string print_algebra(const RestrictedLieSuperalgebra& L);

bool algebras_equal(const RestrictedLieSuperalgebra& a,
                    const RestrictedLieSuperalgebra& b);

/// Linear combination of basis names, e.g. "y - t*z" or "0".
LieElement parse_combination(const RestrictedLieSuperalgebra& L,
                             const std::string& text);

/// One generator combination per line; the span of the parsed elements.
Subspace parse_subspace(const RestrictedLieSuperalgebra& L, const std::string& text);

// ---------------------------------------------------------------------------
// Stock algebras.

/// L_0 = <x1,x2,x3>, L_1 = <y,z>, (L_0,L) = 0, (y,y) = x1, (z,z) = x2,
/// (y,z) = x3; x1^[p] = x1, x2^[p] = α²x1, x3^[p] = αx1.
RestrictedLieSuperalgebra ex41(const FieldSpec& f, const FieldElement& alpha);

/// L_0 = <x1,x2,x3,z12,z13,z23>, L_1 = <y1,y2,y3>, (L_0,L) = 0,
/// (y_i,y_i) = x_i, (y_i,y_j) = z_ij; x1^[p] = x1, x2^[p] = α²x1,
/// x3^[p] = β²x1, z12^[p] = αx1, z13^[p] = βx1, z23^[p] = αβx1.
RestrictedLieSuperalgebra ex42(const FieldSpec& f, const FieldElement& alpha,
                               const FieldElement& beta);

/// One even x, one odd y, (y,y) = x, p-map zero. u(L) is commutative.
RestrictedLieSuperalgebra heisenberg_super(uint32_t p);

/// Purely even a, b, c with (a,b) = c and c^[p] = c: the commutator ideal
/// of u(L) contains a torus, so every theorem condition fails.
RestrictedLieSuperalgebra even_heisenberg_toral(uint32_t p);

/// Zero brackets, zero p-map, basis e1..en | f1..fm.
RestrictedLieSuperalgebra abelian(const FieldSpec& f, uint32_t n, uint32_t m);

struct ExampleOptions {
    uint32_t p = 3;
    std::optional<std::string> field; // "F3", "F5(t)", "F3(a,b)"; default per id
    std::string alpha, beta;          // literals over the field; default per id
};

/// id: ex41 | ex42 | heisenberg_super | even_heisenberg_toral | abelian(n,m).
/// Defaults: ex41 over F_p(t) with α = t; ex42 over F_p(a,b) with α = a,
/// β = b; the rest over F_p. Overriding the field of ex41/ex42 requires
/// explicit alpha (and beta). Throws InvalidParameter.
RestrictedLieSuperalgebra build_example(const std::string& id,
                                        const ExampleOptions& opt = {});

// ---------------------------------------------------------------------------
// Corpus generation: deterministic per (count, seed, profile); candidates are
// drawn with profile-biased p-maps and kept only when verify_axioms passes.

enum class CorpusProfile { nilpotent_pnil, toral_mix, odd_heavy };

CorpusProfile parse_profile(const std::string& name); // InvalidParameter
std::string_view profile_name(CorpusProfile p);

struct CorpusInstance {
    std::string id; // "<profile>/<index>-<tag>", ordered by index
    RestrictedLieSuperalgebra algebra;
};

struct Corpus {
    std::vector<CorpusInstance> instances;
    uint64_t attempts = 0; // candidates drawn, accepted ones included
    double rejection_rate() const;
};

/// Dimensions n ≤ 3, m ≤ 2 over F_3/F_5. nilpotent_pnil: zero p-map, every
/// instance lands on the all-true audit branch; toral_mix: leads with
/// even_heisenberg_toral and ex41(F_3, α=1), then instances whose commutator
/// span meets a toral element; odd_heavy: m = 2, central even part, mixed
/// p-maps. count = 0 throws InvalidParameter.
Corpus generate_corpus(uint32_t count, uint64_t seed, CorpusProfile profile);

// ---------------------------------------------------------------------------
// Run reports.

struct RunReport {
    std::string instance;
    std::string command;
    std::vector<SubCheck> checks;
    std::vector<std::pair<std::string, std::string>> figures; // dims, indices…
    Verdict status = Verdict::pass;
    bool complete = true;
    uint64_t seed = 0;
    double wall_ms = 0.0;
};

enum class ReportFormat { text, machine };

/// text: indented human-readable block. machine: line-oriented key=value
/// (keys lowercased, non-alphanumerics folded to '_'), LF endings.
std::string render_report(const RunReport& r, ReportFormat fmt);

/// 1 iff some report has a FAIL status; INCOMPLETE and EXPECTED-DIVERGENCE
/// exit 0 with their own status field.
int exit_code(const std::vector<RunReport>& reports);

/// Full command-line interface; returns the process exit code (2 on input
/// errors). Used by the supenv binary and exercised directly in tests.
int run(int argc, const char* const* argv);

} // namespace supenv
