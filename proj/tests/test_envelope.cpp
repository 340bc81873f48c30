#include "doctest.h"

#include <algorithm>
#include <map>

#include "supenv/envelope.hpp"
#include "supenv/errors.hpp"
#include "supenv/liesuper.hpp"
#include "oracles.hpp"

using namespace supenv;
using Alg = RestrictedLieSuperalgebra;
using Kind = PBWContext::CommutatorKind;

namespace {

Alg shell(const FieldSpec& f, uint32_t n, uint32_t m, std::vector<std::string> names) {
    Alg L;
    L.field = f;
    L.n = n;
    L.m = m;
    L.names = std::move(names);
    L.bracket_table.assign(n + m, std::vector<LieElement>(n + m, L.zero_element()));
    L.pmap_table.assign(n, L.zero_element());
    return L;
}

void set_bracket(Alg& L, uint32_t i, uint32_t j, const LieElement& v) {
    L.bracket_table[i][j] = v;
    if (i != j) {
        bool both_odd = L.parity_of(i) == 1 && L.parity_of(j) == 1;
        L.bracket_table[j][i] = both_odd ? v : neg(v);
    }
}

LieElement unit(const Alg& L, uint32_t i) { return L.basis_element(i); }

Alg borel2(const FieldSpec& f) {
    Alg L = shell(f, 2, 0, {"a", "b"});
    set_bracket(L, 0, 1, unit(L, 1));
    L.pmap_table[0] = unit(L, 0);
    return L;
}

Alg heisenberg_super(const FieldSpec& f) {
    Alg L = shell(f, 1, 1, {"x", "y"});
    set_bracket(L, 1, 1, unit(L, 0));
    return L;
}

// L_0 = <x1,x2,x3> central, L_1 = <y,z>; x1=(y,y), x2=(z,z), x3=(y,z);
// x1^[p] = x1, x2^[p] = α²x1, x3^[p] = αx1
Alg odd_pair(const FieldSpec& f, const FieldElement& alpha) {
    Alg L = shell(f, 3, 2, {"x1", "x2", "x3", "y", "z"});
    set_bracket(L, 3, 3, unit(L, 0));
    set_bracket(L, 4, 4, unit(L, 1));
    set_bracket(L, 3, 4, unit(L, 2));
    L.pmap_table[0] = unit(L, 0);
    L.pmap_table[1] = scale(alpha * alpha, unit(L, 0));
    L.pmap_table[2] = scale(alpha, unit(L, 0));
    return L;
}

const FieldSpec F3(3);
const FieldSpec F3t(3, {"t"});

Alg odd_pair_f3() { return odd_pair(F3, FieldElement::one(F3)); }
Alg odd_pair_f3t() { return odd_pair(F3t, FieldElement::variable(F3t, 0)); }

UElement el(const FieldSpec& f, std::vector<std::pair<uint32_t, uint32_t>> terms) {
    UElement out;
    for (auto& [i, c] : terms)
        if (c % f.p) out.emplace_back(i, FieldElement::integer(f, c));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

UElement random_uelement(std::mt19937_64& rng, PBWContext& ctx, uint32_t terms) {
    std::map<uint32_t, FieldElement> acc;
    for (uint32_t t = 0; t < terms; ++t) {
        uint32_t idx = static_cast<uint32_t>(rng() % ctx.dimension());
        FieldElement c = random_field_element(rng, ctx.algebra().field);
        auto it = acc.find(idx);
        if (it == acc.end()) acc.emplace(idx, c);
        else it->second = it->second + c;
    }
    UElement out;
    for (const auto& [i, c] : acc)
        if (!c.is_zero()) out.emplace_back(i, c);
    return out;
}

} // namespace

TEST_CASE("context shape and monomial indexing") {
    Alg L = odd_pair_f3t();
    PBWContext ctx(L);
    CHECK(ctx.dimension() == 108); // 3^3 · 2^2
    CHECK(pbw_dimension(L) == 108);
    CHECK(pbw_dimension(heisenberg_super(F3)) == 6);

    // weights: x1=1, x2=3, x3=9, y=27, z=54
    CHECK(ctx.letter(2) == el(F3t, {{9, 1}}));
    CHECK(ctx.embed(unit(L, 3)) == el(F3t, {{27, 1}}));
    CHECK(ctx.unit() == el(F3t, {{0, 1}}));
    auto e = ctx.exponents(81); // y·z
    CHECK(e == std::vector<uint32_t>{0, 0, 0, 1, 1});
    CHECK(ctx.monomial_string(81) == "y*z");
    CHECK(ctx.monomial_string(0) == "1");
    CHECK(ctx.monomial_string(2) == "x1^2");
    CHECK(ctx.degree(el(F3t, {{81, 1}, {1, 1}})) == 2);

    // mixed-parity detection and zero conventions
    CHECK(ctx.parity(ctx.embed(unit(L, 3))) == 1);
    CHECK(ctx.parity(el(F3t, {{81, 1}})) == 0);
    CHECK_THROWS_AS(ctx.parity(el(F3t, {{0, 1}, {27, 1}})), ParityError);
    CHECK(ctx.parity(UElement{}) == 0);

    std::vector<std::string> names;
    for (int i = 0; i < 12; ++i) names.push_back("v" + std::to_string(i));
    Alg big = shell(F3, 12, 0, names);
    CHECK_THROWS_AS(PBWContext{big}, BudgetExceeded); // 3^12 > 200000
    CHECK_THROWS_AS((PBWContext(L, {0, 1, 2, 3, 3})), InvalidParameter);
    CHECK_THROWS_AS((PBWContext(L, {0, 1, 2})), InvalidParameter);
}

TEST_CASE("straightening reproduces the defining relations") {
    Alg L = odd_pair_f3t();
    PBWContext ctx(L);
    UElement y = ctx.embed(unit(L, 3));
    UElement z = ctx.embed(unit(L, 4));

    // z·y = x3 - y·z
    CHECK(ctx.multiply(z, y) == el(F3t, {{9, 1}, {81, 2}}));
    // [y,z] = 2y·z - x3
    UElement c = ctx.super_commutator(y, z, Kind::lie);
    CHECK(c == el(F3t, {{9, 2}, {81, 2}}));
    // super bracket lands on the Lie bracket: (y,z) = x3
    CHECK(ctx.super_commutator(y, z, Kind::super) == ctx.embed(unit(L, 2)));
    CHECK(ctx.super_commutator(y, y, Kind::super) == ctx.embed(unit(L, 0)));
    // y² = ½(y,y) = 2x1
    CHECK(ctx.power(y, 2) == el(F3t, {{1, 2}}));

    // [y,z]² = x3² - x1x2, central; [y,z]^6 = 0
    UElement c2 = ctx.power(c, 2);
    CHECK(c2 == el(F3t, {{4, 2}, {18, 1}}));
    CHECK(ctx.is_central(c2));
    CHECK_FALSE(ctx.is_central(y));
    CHECK(ctx.power(c, 6).empty());
    CHECK_FALSE(ctx.power(c, 5).empty());

    // x3^6 = (x3^[3])² = α²x1²
    FieldElement t = FieldElement::variable(F3t, 0);
    CHECK(ctx.power(ctx.embed(unit(L, 2)), 6) == UElement{{2, t * t}});

    // unit behaves as identity
    CHECK(ctx.multiply(ctx.unit(), c) == c);
    CHECK(ctx.multiply(c, ctx.unit()) == c);
    CHECK(ctx.power(c, 0) == ctx.unit());
}

TEST_CASE("straightening agrees with the free-word oracle") {
    std::vector<Alg> algebras = {odd_pair_f3(), odd_pair_f3t(), heisenberg_super(F3),
                                 borel2(F3), heisenberg_super(FieldSpec(5))};
    for (Alg& L : algebras) {
        CAPTURE(L.field.name());
        PBWContext ctx(L);
        testoracle::WordOracle oracle(L);
        auto rng = seeded_rng(11, "test_envelope_oracle", L.instance_hash());
        for (int s = 0; s < 40; ++s) {
            UElement u = random_uelement(rng, ctx, 2);
            UElement v = random_uelement(rng, ctx, 2);
            CHECK(sv_eq(ctx.multiply(u, v), oracle.multiply(u, v)));
        }
        for (int s = 0; s < 25; ++s) {
            UElement u = random_uelement(rng, ctx, 2);
            UElement v = random_uelement(rng, ctx, 2);
            UElement w = random_uelement(rng, ctx, 2);
            CHECK(sv_eq(ctx.multiply(ctx.multiply(u, v), w),
                        ctx.multiply(u, ctx.multiply(v, w))));
        }
    }
}

TEST_CASE("letter products match full multiplication") {
    Alg L = odd_pair_f3();
    PBWContext ctx(L);
    auto rng = seeded_rng(3, "test_envelope_letters", L.instance_hash());
    for (int s = 0; s < 10; ++s) {
        UElement u = random_uelement(rng, ctx, 3);
        for (uint32_t pos = 0; pos < ctx.generators(); ++pos) {
            CHECK(sv_eq(ctx.rmul_letter(u, pos), ctx.multiply(u, ctx.letter(pos))));
            CHECK(sv_eq(ctx.lmul_letter(pos, u), ctx.multiply(ctx.letter(pos), u)));
        }
    }
}

TEST_CASE("associative p-th powers realize the p-map") {
    for (Alg L : {borel2(F3), odd_pair_f3(), odd_pair_f3t(), borel2(FieldSpec(5))}) {
        CAPTURE(L.field.name());
        PBWContext ctx(L);
        const uint32_t p = L.field.p;
        for (uint32_t i = 0; i < L.n; ++i)
            CHECK(sv_eq(ctx.power(ctx.embed(unit(L, i)), p),
                        ctx.embed(L.pmap_table[i])));
        auto rng = seeded_rng(5, "test_envelope_pmap", L.instance_hash());
        for (int s = 0; s < 8; ++s) {
            LieElement v = random_lie_element(rng, L, 0);
            CHECK(sv_eq(ctx.power(ctx.embed(v), p), ctx.embed(p_power(L, v))));
        }
        for (uint32_t j = L.n; j < L.dim(); ++j) {
            FieldElement half = FieldElement::integer(L.field, (p + 1) / 2);
            CHECK(sv_eq(ctx.power(ctx.embed(unit(L, j)), 2),
                        ctx.embed(scale(half, L.bracket_table[j][j]))));
        }
    }
}

TEST_CASE("heisenberg ideals and power chains") {
    Alg L = heisenberg_super(F3);
    PBWContext ctx(L);

    // u(L) is commutative here: x is central and y generates everything
    Ideal comm = commutator_ideal(ctx, true);
    CHECK(comm.space.rank() == 0);

    Ideal ix = ideal_generated(ctx, {ctx.embed(unit(L, 0))});
    CHECK(ix.space.rank() == 4); // x, x², xy, x²y
    CHECK(ix.space.contains(el(F3, {{1, 1}})));
    CHECK(ix.space.contains(el(F3, {{5, 1}})));
    CHECK_FALSE(ix.space.contains(el(F3, {{3, 1}})));

    IdealChain cx = ideal_power_chain(ctx, ix);
    CHECK(cx.nilpotent);
    CHECK(cx.index == 3);
    CHECK(cx.dims == std::vector<uint32_t>{4, 2, 0});

    NilProbe probe = nil_index_probe(ctx, ix);
    CHECK(probe.complete);
    CHECK(probe.all_nilpotent);
    CHECK(probe.max_index == 3);
    CHECK_FALSE(ctx.power(probe.witness, 2).empty());
    CHECK(ctx.power(probe.witness, 3).empty());

    Ideal omega = augmentation_ideal(ctx);
    IdealChain cw = ideal_power_chain(ctx, omega, true, true);
    CHECK(cw.nilpotent);
    CHECK(cw.index == 6);
    CHECK(cw.dims == std::vector<uint32_t>{5, 4, 3, 2, 1, 0});
    REQUIRE(cw.terms.size() == 6);
    CHECK(cw.terms[1].dim() == 4);
    CHECK(cw.terms[1].member(el(F3, {{1, 1}}))); // x = 2y² lands in ω²

    IdealChain cw2 = ideal_power_chain(ctx, omega, false);
    CHECK(cw2.dims == cw.dims);
    CHECK(cw2.nilpotent);

    // a subspace that is not multiplication stable is rejected
    EchelonBuilder bad(F3, static_cast<uint32_t>(ctx.dimension()));
    bad.insert(ctx.embed(unit(L, 1)));
    CHECK_THROWS_AS((ideal_power_chain(ctx, Ideal{bad, {}, {}})), NotAnIdeal);
}

TEST_CASE("commutator ideal of the twisted odd pair") {
    Alg L = odd_pair_f3t();
    PBWContext ctx(L);
    Ideal I = commutator_ideal(ctx, true);
    CHECK(I.space.rank() == 84);

    UElement c = ctx.super_commutator(ctx.embed(unit(L, 3)), ctx.embed(unit(L, 4)));
    CHECK(I.space.contains(c));
    CHECK(I.space.contains(ctx.power(c, 2)));

    IdealChain chain = ideal_power_chain(ctx, I);
    CHECK(chain.nilpotent);
    CHECK(chain.index == 6);
    CHECK(chain.dims == std::vector<uint32_t>{84, 60, 41, 24, 12, 0});

    NilProbe probe = nil_index_probe(ctx, I, SampledScan{40, 1});
    CHECK(probe.all_nilpotent);
    CHECK_FALSE(probe.complete);
    CHECK(probe.max_index == 6);

    CHECK_THROWS_AS(nil_index_probe(ctx, I), ExhaustionUnavailable);

    Alg Lf = odd_pair_f3();
    PBWContext ctxf(Lf);
    Ideal If = commutator_ideal(ctxf);
    CHECK(If.space.rank() == 84);
    CHECK_THROWS_AS(nil_index_probe(ctxf, If), BudgetExceeded); // 3^84 elements
}

TEST_CASE("regular representation on a codimension-one ideal") {
    Alg L = odd_pair_f3t();
    PBWContext src(L);
    const FieldSpec& f = F3t;
    Subspace A = Subspace::span(f, 5, {unit_vec(f, 0), unit_vec(f, 1),
                                       unit_vec(f, 2), unit_vec(f, 4)});
    RegularRepresentation rep(L, A);
    CHECK(rep.rank() == 2);
    CHECK(rep.small().algebra().dim() == 4);
    CHECK(rep.big().algebra().dim() == 5);

    // ρ(y) = [[0, ½x1], [1, 0]]
    UElement y_big = rep.transport(src, src.embed(unit(L, 3)));
    UMatrix my = rep.rho(y_big);
    CHECK(my.at(0, 0).empty());
    CHECK(my.at(1, 1).empty());
    CHECK(my.at(1, 0) == rep.small().unit());
    CHECK(my.at(0, 1) == sv_scale(FieldElement::integer(f, 2), rep.small().letter(0)));

    // homomorphism property and recovery of u from ρ(u)(1)
    auto rng = seeded_rng(9, "test_envelope_rep", L.instance_hash());
    for (int s = 0; s < 10; ++s) {
        UElement u = random_uelement(rng, src, 2);
        UElement v = random_uelement(rng, src, 2);
        UElement ub = rep.transport(src, u), vb = rep.transport(src, v);
        UElement prod = rep.transport(src, src.multiply(u, v));
        CHECK(sv_eq(prod, rep.big().multiply(ub, vb)));
        UMatrix lhs = rep.rho(prod);
        UMatrix rhs = rep.matmul(rep.rho(ub), rep.rho(vb));
        REQUIRE(lhs.entries.size() == rhs.entries.size());
        for (size_t k = 0; k < lhs.entries.size(); ++k)
            CHECK(sv_eq(lhs.entries[k], rhs.entries[k]));
        CHECK(sv_eq(rep.apply_to_unit(rep.rho(ub)), ub));
    }

    // A = L gives a rank-one representation; non-ideals are rejected
    Subspace whole = Subspace::span(f, 5, {unit_vec(f, 0), unit_vec(f, 1),
                                           unit_vec(f, 2), unit_vec(f, 3),
                                           unit_vec(f, 4)});
    RegularRepresentation rep1(L, whole);
    CHECK(rep1.rank() == 1);
    UElement w = rep1.transport(src, src.power(src.embed(unit(L, 3)), 2));
    CHECK(sv_eq(rep1.apply_to_unit(rep1.rho(w)), w));

    Subspace bad = Subspace::span(f, 5, {unit_vec(f, 3)});
    CHECK_THROWS_AS(RegularRepresentation(L, bad), NotAnIdeal);
}

TEST_CASE("straightening is order independent") {
    Alg L = odd_pair_f3t();
    PBWContext rev(L, {4, 3, 2, 1, 0});
    CHECK(rev.dimension() == 108);

    UElement y = rev.embed(unit(L, 3));
    UElement z = rev.embed(unit(L, 4));
    // weights under the reversed order: z=1, y=2, x3=4, x2=12, x1=36
    CHECK(rev.power(y, 2) == el(F3t, {{36, 2}}));
    CHECK(rev.multiply(z, y) == el(F3t, {{3, 1}})); // already canonical
    CHECK(rev.multiply(y, z) == el(F3t, {{3, 2}, {4, 1}}));

    UElement c = rev.super_commutator(y, z, Kind::lie);
    CHECK(rev.is_central(rev.power(c, 2)));
    CHECK(rev.power(c, 6).empty());
    CHECK_FALSE(rev.power(c, 5).empty());
    CHECK(rev.super_commutator(y, z, Kind::super) == rev.embed(unit(L, 2)));

    Ideal I = commutator_ideal(rev);
    IdealChain chain = ideal_power_chain(rev, I);
    CHECK(chain.nilpotent);
    CHECK(chain.index == 6);
}
