// Release gate: ten independent criteria, one verdict line each, exact
// equality throughout. Budgets are wall-clock seconds; exceeding one fails
// the criterion even if every check passed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "supenv/harness.hpp"

using namespace supenv;

namespace {

const FieldSpec F3(3);
const FieldSpec F3t(3, {"t"});
const FieldSpec F3ab(3, {"a", "b"});
const FieldElement tv = FieldElement::variable(F3t, 0);
const FieldElement av = FieldElement::variable(F3ab, 0);
const FieldElement bv = FieldElement::variable(F3ab, 1);

struct Gate {
    std::vector<std::string> faults;
    void expect(bool ok, const std::string& what) {
        if (!ok) faults.push_back(what);
    }
};

UElement random_uelt(std::mt19937_64& rng, PBWContext& ctx, uint32_t terms) {
    std::map<uint32_t, FieldElement> acc;
    const FieldSpec& f = ctx.algebra().field;
    for (uint32_t k = 0; k < terms; ++k) {
        uint32_t idx = static_cast<uint32_t>(rng() % ctx.dimension());
        FieldElement c = random_field_element(rng, f, false);
        auto [it, fresh] = acc.emplace(idx, c);
        if (!fresh) it->second = it->second + c;
    }
    UElement u;
    for (auto& [idx, c] : acc)
        if (!c.is_zero()) u.push_back({idx, c});
    return u;
}

// shared corpus: 50 instances across the three profiles, finite fields only
const Corpus& corpus50() {
    static Corpus c = [] {
        Corpus all;
        for (auto [profile, count, seed] :
             {std::tuple{CorpusProfile::nilpotent_pnil, 17u, 101ull},
              std::tuple{CorpusProfile::toral_mix, 17u, 202ull},
              std::tuple{CorpusProfile::odd_heavy, 16u, 303ull}}) {
            Corpus part = generate_corpus(count, seed, profile);
            for (auto& inst : part.instances) all.instances.push_back(std::move(inst));
            all.attempts += part.attempts;
        }
        return all;
    }();
    return c;
}

// ---------------------------------------------------------------------------

void c1_pbw_associativity(Gate& g) {
    struct Small {
        const char* label;
        RestrictedLieSuperalgebra L;
    };
    const Small smalls[] = {
        {"heisenberg_super p=3", heisenberg_super(3)},
        {"heisenberg_super p=5", heisenberg_super(5)},
        {"abelian(1,2)", abelian(F3, 1, 2)},
        {"toral line",
         parse_algebra("p = 3\neven = x\nodd = y\nbracket (y,y) = x\npmap x = x\n")},
    };
    for (const Small& s : smalls) {
        PBWContext ctx(s.L);
        uint64_t D = ctx.dimension();
        g.expect(D <= 16, std::string(s.label) + ": dimension exceeds 16");
        const FieldElement one = FieldElement::one(s.L.field);
        for (uint32_t i = 0; i < D; ++i)
            for (uint32_t j = 0; j < D; ++j)
                for (uint32_t k = 0; k < D; ++k) {
                    UElement a{{i, one}}, b{{j, one}}, c{{k, one}};
                    UElement lhs = ctx.multiply(ctx.multiply(a, b), c);
                    UElement rhs = ctx.multiply(a, ctx.multiply(b, c));
                    if (!sv_eq(lhs, rhs)) {
                        g.expect(false, std::string(s.label) + ": basis triple (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            "," + std::to_string(k) + ") breaks");
                        return;
                    }
                }
    }

    RestrictedLieSuperalgebra L = ex41(F3t, tv);
    PBWContext ctx(L);
    g.expect(ctx.dimension() == 108, "ex41 envelope dimension is not 108");
    std::mt19937_64 rng = seeded_rng(1, "acceptance pbw triples", L.instance_hash());
    for (int n = 0; n < 200; ++n) {
        UElement a = random_uelt(rng, ctx, 2);
        UElement b = random_uelt(rng, ctx, 2);
        UElement c = random_uelt(rng, ctx, 2);
        if (!sv_eq(ctx.multiply(ctx.multiply(a, b), c),
                   ctx.multiply(a, ctx.multiply(b, c)))) {
            g.expect(false, "seeded triple " + std::to_string(n) + " breaks on ex41");
            return;
        }
    }
}

void c2_ex41_reproduction(Gate& g) {
    RestrictedLieSuperalgebra L = ex41(F3t, tv);
    AxiomReport ax = verify_axioms(L, 30, 1);
    for (const AxiomCheck& c : ax.checks)
        g.expect(c.pass, "axiom " + c.name + ": " + c.witness);

    PBWContext ctx(L);
    auto E = [&](uint32_t i) { return ctx.embed(L.basis_element(i)); };
    UElement x1 = E(0), x2 = E(1), x3 = E(2), y = E(3), z = E(4);

    UElement comm = ctx.super_commutator(y, z); // yz - zy
    UElement sq = ctx.power(comm, 2);
    UElement rhs = sv_add(ctx.power(x3, 2), sv_neg(ctx.multiply(x1, x2)));
    g.expect(sv_eq(sq, rhs), "[y,z]^2 != x3^2 - x1*x2");
    g.expect(ctx.is_central(sq), "[y,z]^2 is not central");
    g.expect(ctx.power(comm, 6).empty(), "[y,z]^6 != 0");

    Ideal CI = commutator_ideal(ctx);
    const std::vector<SparseVec>& rows = CI.space.rows();
    g.expect(!rows.empty(), "commutator ideal is zero");
    std::mt19937_64 rng = seeded_rng(2, "acceptance nil elements", L.instance_hash());
    int seen = 0;
    while (seen < 100) {
        UElement u;
        uint32_t parts = 1 + static_cast<uint32_t>(rng() % 3);
        for (uint32_t k = 0; k < parts; ++k) {
            FieldElement c = random_field_element(rng, F3t, false);
            u = sv_add(u, sv_scale(c, rows[rng() % rows.size()]));
        }
        if (u.empty()) continue;
        ++seen;
        if (!ctx.power(u, 6).empty()) {
            g.expect(false, "commutator-ideal element with u^6 != 0: " + ctx.to_string(u));
            return;
        }
    }

    NilProbe probe = nil_index_probe(ctx, CI, SampledScan{60, 2});
    g.expect(probe.all_nilpotent, "commutator ideal has a non-nilpotent element");
    g.expect(probe.max_index == 6,
             "nil index probe reports " + std::to_string(probe.max_index) + ", not 6");

    std::vector<LieElement> odds;
    for (const char* s : {"y", "z", "y + z", "y - z", "y + t*z"})
        odds.push_back(parse_combination(L, s));
    std::mt19937_64 orng = seeded_rng(2, "acceptance odd squares", L.instance_hash());
    while (odds.size() < 25) {
        LieElement c = random_lie_element(orng, L, 1);
        if (!c.is_zero()) odds.push_back(c);
    }
    for (const LieElement& c : odds)
        g.expect(!is_p_nilpotent(L, bracket(L, c, c)).nilpotent,
                 "(c,c) p-nilpotent for c = " + to_string(L, c));

    g.expect(!tv.pth_root().has_value(), "t has a cube root in F_3(t)");
}

void c3_ex41_certificate(Gate& g) {
    RestrictedLieSuperalgebra L = ex41(F3t, tv);
    const FieldElement one = FieldElement::one(F3t);
    const LieElement x1e = L.basis_element(0);
    const LieElement ye = L.basis_element(3), ze = L.basis_element(4);
    const std::vector<FieldElement> betas = {one, tv, tv * tv, one + tv};

    for (const FieldElement& beta : betas) {
        std::string tag = " at beta = " + to_string(beta, F3t);
        FieldElement b3 = pow(beta, 3);

        // (y + βz, z): powers α^{p^{m-1}}(1 + β^p α)^{p^{m-1}} x1
        LieElement w = bracket(L, add(ye, scale(beta, ze)), ze);
        FieldElement base1 = tv * (one + b3 * tv);
        for (uint32_t m = 1; m <= 3; ++m) {
            w = p_power(L, w);
            g.expect(w == scale(base1.frobenius(m - 1), x1e),
                     "(y+bz,z) power m=" + std::to_string(m) + " off" + tag);
            g.expect(!w.is_zero(), "(y+bz,z) power vanished" + tag);
        }

        // (z + βy, y): powers (α + β^p)^{p^{m-1}} x1
        LieElement v = bracket(L, add(ze, scale(beta, ye)), ye);
        FieldElement base2 = tv + b3;
        for (uint32_t m = 1; m <= 3; ++m) {
            v = p_power(L, v);
            g.expect(v == scale(base2.frobenius(m - 1), x1e),
                     "(z+by,y) power m=" + std::to_string(m) + " off" + tag);
            g.expect(!v.is_zero(), "(z+by,y) power vanished" + tag);
        }

        // the vanishing condition is exactly α = (−β)^p …
        FieldElement kill = pow(-beta, 3);
        g.expect((kill + b3).is_zero(), "(-b)^p + b^p != 0" + tag);
        RestrictedLieSuperalgebra Lk = ex41(F3t, kill);
        LieElement vk = bracket(Lk, add(ze, scale(beta, ye)), ye);
        g.expect(!vk.is_zero(), "control bracket is zero" + tag);
        g.expect(p_power(Lk, vk).is_zero(), "alpha = (-b)^p fails to kill (z+by,y)" + tag);
        g.expect(is_p_nilpotent(Lk, vk).nilpotent, "control square not p-nilpotent" + tag);

        // … equivalently α = (−β)^{-p} for the first pairing
        FieldElement killinv = kill.inverse();
        RestrictedLieSuperalgebra Li = ex41(F3t, killinv);
        LieElement wk = bracket(Li, add(ye, scale(beta, ze)), ze);
        g.expect(p_power(Li, wk).is_zero(),
                 "alpha = (-b)^-p fails to kill (y+bz,z)" + tag);

        // p-th root cross-checks: β recovers from (−β)^p, while α = t admits
        // no β at all
        auto root = pow(beta, 3).pth_root();
        g.expect(root.has_value() && *root == beta, "pth_root(b^p) != b" + tag);
        g.expect(!(-tv).pth_root().has_value(), "-t gained a cube root" + tag);
    }
}

void c4_ex42_reproduction(Gate& g) {
    RestrictedLieSuperalgebra L = ex42(F3ab, av, bv);
    AxiomReport ax = verify_axioms(L, 30, 1);
    for (const AxiomCheck& c : ax.checks)
        g.expect(c.pass, "axiom " + c.name + ": " + c.witness);
    g.expect(pbw_dimension(L) == 5832, "envelope dimension is not 5832");

    ConditionReport c3 = check_condition3(L);
    g.expect(c3.verdict == Verdict::pass, "condition (3) did not PASS");
    g.expect(c3.nil_index.has_value(), "condition (3) carries no nil index");

    const LieElement x1e = L.basis_element(0);
    const LieElement y1 = L.basis_element(6), y2 = L.basis_element(7),
                     y3 = L.basis_element(8);
    const FieldElement zero = FieldElement::zero(F3ab), one = FieldElement::one(F3ab);
    for (const FieldElement& a1 : {zero, one, av, bv})
        for (const FieldElement& a2 : {zero, one, av, bv}) {
            std::string tag = " at a1 = " + to_string(a1, F3ab) +
                              ", a2 = " + to_string(a2, F3ab);
            LieElement c = add(y3, add(scale(a1, y1), scale(a2, y2)));
            LieElement w = bracket(L, c, y3);
            for (uint32_t m = 1; m <= 3; ++m) {
                w = p_power(L, w);
                FieldElement bm = bv.frobenius(m - 1);
                FieldElement coeff =
                    bm * (bm + a1.frobenius(m) + a2.frobenius(m) * av.frobenius(m - 1));
                g.expect(w == scale(coeff, x1e),
                         "closed form off at m = " + std::to_string(m) + tag);
            }
        }
}

void c5_equivalence_corpus(Gate& g) {
    const Corpus& corpus = corpus50();
    g.expect(corpus.instances.size() >= 50,
             "corpus holds " + std::to_string(corpus.instances.size()) + " < 50");
    bool has_toral = false, has_ex41 = false;
    int true_branch = 0, false_branch = 0;
    for (const CorpusInstance& inst : corpus.instances) {
        if (inst.id.find("even_heisenberg_toral") != std::string::npos) has_toral = true;
        if (inst.id.find("ex41_alpha1") != std::string::npos) has_ex41 = true;
        ConditionReport c2 = check_condition2(inst.algebra);
        ConditionReport c3 = check_condition3(inst.algebra);
        bool def2 = c2.verdict == Verdict::pass || c2.verdict == Verdict::fail;
        bool def3 = c3.verdict == Verdict::pass || c3.verdict == Verdict::fail;
        g.expect(def2 && def3, inst.id + ": verdict not definitive");
        if (!(def2 && def3)) continue;
        bool t2 = c2.verdict == Verdict::pass, t3 = c3.verdict == Verdict::pass;
        if (t2 != t3) {
            g.expect(false, inst.id + ": conditions (2) and (3) disagree");
            continue;
        }
        (t2 ? true_branch : false_branch)++;
    }
    g.expect(has_toral, "corpus lacks even_heisenberg_toral");
    g.expect(has_ex41, "corpus lacks ex41 with alpha = 1");
    g.expect(true_branch >= 10,
             "only " + std::to_string(true_branch) + " both-true instances");
    g.expect(false_branch >= 10,
             "only " + std::to_string(false_branch) + " both-false instances");
}

void c6_nonperfect_divergence(Gate& g) {
    RestrictedLieSuperalgebra L = ex41(F3t, tv);

    g.expect(check_condition3(L).verdict == Verdict::pass, "condition (3) not PASS");
    SubspaceScan M = compute_M(L, SampledScan{40, 1});
    g.expect(M.space.dim() == 0, "sampled M is nonzero");

    ConditionReport c2 =
        check_condition2(L, ComputedM{SampledScan{40, 1}}, SampledScan{40, 1});
    const SubCheck* dim = c2.find("dim L_1/M <= 1");
    g.expect(dim && dim->verdict == Verdict::incomplete,
             "dim clause is not INCOMPLETE under the sampled M");
    g.expect(dim && dim->witness.find("dim L_1/M = 2") != std::string::npos,
             "dim clause does not report dim L_1/M = 2");

    ConditionReport audit = equivalence_audit(L, SampledScan{40, 1});
    g.expect(audit.verdict == Verdict::expected_divergence,
             "audit verdict is not EXPECTED-DIVERGENCE");
    const SubCheck* c3row = audit.find("condition (3)");
    g.expect(c3row && c3row->verdict == Verdict::pass, "audit lost condition (3)");
}

void c7_omega_law(Gate& g) {
    for (const CorpusInstance& inst : corpus50().instances) {
        PBWContext ctx(inst.algebra);
        IdealChain chain = ideal_power_chain(ctx, augmentation_ideal(ctx));
        PNilScan even = subspace_p_nilpotent(inst.algebra, even_part(inst.algebra));
        g.expect(even.complete, inst.id + ": even scan not exhaustive");
        g.expect(chain.nilpotent == (even.complete && even.p_nilpotent),
                 inst.id + ": omega nilpotency disagrees with p-nil L_0");
    }

    PBWContext hctx(heisenberg_super(3));
    IdealChain hs = ideal_power_chain(hctx, augmentation_ideal(hctx));
    g.expect(hs.nilpotent && hs.index == 6,
             "heisenberg omega index is " + std::to_string(hs.index) + ", not 6");
}

void c8_regular_representation(Gate& g) {
    RestrictedLieSuperalgebra L = ex41(F3t, tv);
    Subspace A = parse_subspace(L, "x1\nx2\nx3\nz\n");
    RegularRepresentation rr(L, A);
    g.expect(rr.rank() == 2, "rank is " + std::to_string(rr.rank()) + ", not 2");

    PBWContext& B = rr.big();
    std::mt19937_64 rng = seeded_rng(3, "acceptance rho pairs", L.instance_hash());
    for (int n = 0; n < 100; ++n) {
        UElement u = random_uelt(rng, B, 2);
        UElement v = random_uelt(rng, B, 2);
        UMatrix mu = rr.rho(u), mv = rr.rho(v);
        UMatrix prod = rr.matmul(mu, mv);
        UMatrix direct = rr.rho(B.multiply(u, v));
        for (uint32_t i = 0; i < rr.rank(); ++i)
            for (uint32_t j = 0; j < rr.rank(); ++j)
                if (!sv_eq(prod.at(i, j), direct.at(i, j))) {
                    g.expect(false, "rho not multiplicative on pair " + std::to_string(n));
                    return;
                }
        if (!sv_eq(rr.apply_to_unit(mu), u)) {
            g.expect(false, "rho(u)(1) != u on pair " + std::to_string(n));
            return;
        }
    }

    PBWContext src(L);
    UElement y = src.embed(L.basis_element(3));
    UElement yb = rr.transport(src, y);
    g.expect(sv_eq(rr.apply_to_unit(rr.rho(yb)), yb), "transported y fails the unit law");
}

void c9_identity_exponent(Gate& g) {
    RestrictedLieSuperalgebra L = ex41(F3t, tv);
    for (uint64_t seed : {1, 2, 3}) {
        IdentityScan scan = check_nonmatrix_identity(L, 3, SampledScan{40, seed});
        g.expect(scan.t.has_value() && *scan.t == 2,
                 "ex41 least exponent is not 2 at seed " + std::to_string(seed));
    }
    IdentityScan none =
        check_nonmatrix_identity(even_heisenberg_toral(3), 3, SampledScan{40, 1});
    g.expect(!none.t.has_value(), "even_heisenberg_toral admits an exponent");
    g.expect(!none.witness.empty(), "no surviving triple reported");
}

void c10_property_suites(Gate& g) {
    std::vector<std::pair<std::string, RestrictedLieSuperalgebra>> pool = {
        {"ex41", ex41(F3t, tv)},
        {"ex42", ex42(F3ab, av, bv)},
        {"heisenberg_super p=5", heisenberg_super(5)},
        {"even_heisenberg_toral", even_heisenberg_toral(3)},
    };
    for (size_t i : {2, 20, 40}) {
        const CorpusInstance& inst = corpus50().instances.at(i);
        pool.push_back({inst.id, inst.algebra});
    }

    for (uint64_t seed : {1, 2, 3}) {
        // restricted power against the envelope, and fold-order independence
        for (auto& [label, L] : pool) {
            PBWContext ctx(L);
            std::mt19937_64 rng = seeded_rng(seed, "acceptance p-power", L.instance_hash());
            for (int n = 0; n < 6; ++n) {
                LieElement x = random_lie_element(rng, L, 0);
                g.expect(sv_eq(ctx.power(ctx.embed(x), L.field.p),
                               ctx.embed(p_power(L, x))),
                         label + ": x^p != x^[p] in u(L), seed " + std::to_string(seed));
                LieElement yv = random_lie_element(rng, L, 0);
                LieElement xy = p_power(L, add(x, yv));
                auto fold = [&](const LieElement& u, const LieElement& v) {
                    LieElement total = add(p_power(L, u), p_power(L, v));
                    std::vector<LieElement> s = s_coefficients(L, u, v);
                    for (const LieElement& si : s) total = add(total, si);
                    return total;
                };
                g.expect(xy == fold(x, yv) && xy == fold(yv, x),
                         label + ": p-power fold depends on order, seed " +
                             std::to_string(seed));
            }

            // (w, x^[p]) = (ad x)^p w on sampled pairs
            std::mt19937_64 brng =
                seeded_rng(seed, "acceptance ad power", L.instance_hash());
            for (int n = 0; n < 8; ++n) {
                LieElement x = random_lie_element(brng, L, 0);
                LieElement w = random_lie_element(brng, L, -1);
                LieElement lhs = bracket(L, p_power(L, x), w);
                LieElement rhs = w;
                for (uint32_t k = 0; k < L.field.p; ++k) rhs = bracket(L, x, rhs);
                g.expect(lhs == rhs, label + ": ad(x^[p]) != (ad x)^p, seed " +
                                         std::to_string(seed));
            }
        }

        // commutator-square identity where the even part is central
        for (const char* id : {"ex41", "ex42"}) {
            RestrictedLieSuperalgebra L =
                id == std::string("ex41") ? ex41(F3t, tv) : ex42(F3ab, av, bv);
            PBWContext ctx(L);
            std::mt19937_64 rng =
                seeded_rng(seed, "acceptance square identity", L.instance_hash());
            for (int n = 0; n < 5; ++n) {
                LieElement u = random_lie_element(rng, L, 1);
                LieElement v = random_lie_element(rng, L, 1);
                UElement cm = ctx.super_commutator(ctx.embed(u), ctx.embed(v));
                UElement lhs = ctx.power(cm, 2);
                UElement rhs =
                    sv_add(ctx.power(ctx.embed(bracket(L, u, v)), 2),
                           sv_neg(ctx.multiply(ctx.embed(bracket(L, u, u)),
                                               ctx.embed(bracket(L, v, v)))));
                g.expect(sv_eq(lhs, rhs),
                         std::string(id) + ": [u,v]^2 != (u,v)^2 - (u,u)(v,v), seed " +
                             std::to_string(seed));
            }
        }
    }

    // the instance behind the square identity: x3^(2p) = x1^p x2^p
    {
        RestrictedLieSuperalgebra L = ex41(F3t, tv);
        PBWContext ctx(L);
        g.expect(sv_eq(ctx.power(ctx.embed(L.basis_element(2)), 6),
                       ctx.multiply(ctx.power(ctx.embed(L.basis_element(0)), 3),
                                    ctx.power(ctx.embed(L.basis_element(1)), 3))),
                 "x3^6 != x1^3 x2^3 in u(ex41)");
    }

    // Engel direction and the p-nil lemma over the corpus
    auto ad_nilpotent = [](const RestrictedLieSuperalgebra& L, const LieElement& x) {
        for (uint32_t j = 0; j < L.dim(); ++j) {
            LieElement v = L.basis_element(j);
            for (uint32_t k = 0; k < L.dim() && !v.is_zero(); ++k) v = bracket(L, x, v);
            if (!v.is_zero()) return false;
        }
        return true;
    };
    auto all_homogeneous_ad_nilpotent = [&](const RestrictedLieSuperalgebra& L) {
        for (int parity = 0; parity <= 1; ++parity) {
            uint32_t block = parity ? L.m : L.n, base = parity ? L.n : 0;
            uint64_t total = 1;
            for (uint32_t k = 0; k < block; ++k) total *= L.field.p;
            for (uint64_t code = 1; code < total; ++code) {
                LieElement x = L.zero_element();
                uint64_t rest = code;
                for (uint32_t k = 0; k < block; ++k, rest /= L.field.p) {
                    auto c = FieldElement::integer(L.field,
                                                   static_cast<long long>(rest % L.field.p));
                    x = add(x, scale(c, L.basis_element(base + k)));
                }
                if (!ad_nilpotent(L, x)) return false;
            }
        }
        return true;
    };
    for (const CorpusInstance& inst : corpus50().instances) {
        const RestrictedLieSuperalgebra& L = inst.algebra;
        bool nilp = is_nilpotent(L);
        if (all_homogeneous_ad_nilpotent(L))
            g.expect(nilp, inst.id + ": every homogeneous ad nilpotent yet L is not");
        PNilScan even = subspace_p_nilpotent(L, even_part(L));
        if (even.complete && even.p_nilpotent)
            g.expect(nilp, inst.id + ": p-nil L_0 yet L is not nilpotent");
    }
}

struct Criterion {
    int number;
    const char* label;
    double budget_s;
    std::function<void(Gate&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "pbw associativity", 60, c1_pbw_associativity},
        {2, "ex41 reproduction", 120, c2_ex41_reproduction},
        {3, "ex41 vanishing certificate", 0, c3_ex41_certificate},
        {4, "ex42 reproduction", 600, c4_ex42_reproduction},
        {5, "equivalence corpus", 900, c5_equivalence_corpus},
        {6, "non-perfect divergence", 0, c6_nonperfect_divergence},
        {7, "omega nilpotency law", 0, c7_omega_law},
        {8, "regular representation", 0, c8_regular_representation},
        {9, "identity exponent", 0, c9_identity_exponent},
        {10, "property suites", 0, c10_property_suites},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Gate g;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(g);
        } catch (const std::exception& e) {
            g.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (c.budget_s > 0 && secs > c.budget_s)
            g.expect(false, "over budget: " + std::to_string(secs) + " s > " +
                                std::to_string(c.budget_s) + " s");
        bool ok = g.faults.empty();
        failed += !ok;
        std::printf("criterion %2d %s %s (%.1f s)\n", c.number,
                    ok ? "PASS" : "FAIL", c.label, secs);
        for (size_t i = 0; i < g.faults.size() && i < 8; ++i)
            std::printf("    - %s\n", g.faults[i].c_str());
        if (g.faults.size() > 8)
            std::printf("    - (%zu more)\n", g.faults.size() - 8);
        std::fflush(stdout);
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed ? 1 : 0;
}
