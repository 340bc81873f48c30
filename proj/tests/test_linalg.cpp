#include "doctest.h"

#include <vector>

#include "supenv/linalg.hpp"

using namespace supenv;

namespace {

const FieldSpec F3(3);
const FieldSpec F3t(3, {"t"});

SparseVec vec(const FieldSpec& f, const std::vector<long long>& entries) {
    std::vector<FieldElement> d;
    for (long long e : entries) d.push_back(FieldElement::integer(f, e));
    return to_sparse(d);
}

} // namespace

TEST_CASE("span basics") {
    auto full = Subspace::span(F3, 2, {vec(F3, {1, 0}), vec(F3, {0, 1})});
    CHECK(full.dim() == 2);

    auto dep = Subspace::span(F3, 2, {vec(F3, {1, 1}), vec(F3, {2, 2})});
    CHECK(dep.dim() == 1);
    CHECK(sv_eq(dep.basis()[0], vec(F3, {1, 1})));

    auto zero = Subspace::span(F3, 2, {});
    CHECK(zero.dim() == 0);
    CHECK(zero.member(SparseVec{}));

    CHECK_THROWS_AS(Subspace::span(F3, 2, {vec(F3, {1, 0, 1})}), DimensionMismatch);
}

TEST_CASE("span is canonical") {
    auto a = Subspace::span(F3, 3, {vec(F3, {1, 2, 0}), vec(F3, {0, 1, 1})});
    auto b = Subspace::span(F3, 3, {vec(F3, {0, 1, 1}), vec(F3, {2, 2, 1}), vec(F3, {1, 2, 0})});
    CHECK(a == b);
    auto respan = Subspace::span(F3, 3, a.basis());
    CHECK(respan == a);

    // pivots increasing, normalized, reduced above
    auto s = Subspace::span(F3, 3, {vec(F3, {2, 1, 1}), vec(F3, {0, 2, 1})});
    REQUIRE(s.dim() == 2);
    CHECK(s.basis()[0][0].first == 0);
    CHECK(s.basis()[1][0].first == 1);
    CHECK(s.basis()[0][0].second.is_one());
    CHECK(s.basis()[1][0].second.is_one());
    for (const auto& [c, x] : s.basis()[0]) CHECK(c != 1); // pivot col 1 cleared
}

TEST_CASE("membership") {
    auto s = Subspace::span(F3, 2, {vec(F3, {1, 1})});
    CHECK(s.member(vec(F3, {1, 1})));
    CHECK(s.member(vec(F3, {2, 2})));
    CHECK_FALSE(s.member(vec(F3, {1, 0})));
    CHECK(Subspace(F3, 2).member(SparseVec{}));
    CHECK_THROWS_AS(s.member(vec(F3, {1, 1, 1})), DimensionMismatch);

    // member(v, S) iff adjoining v does not grow the span
    std::vector<SparseVec> gens = {vec(F3, {1, 0, 2}), vec(F3, {0, 1, 1})};
    auto t = Subspace::span(F3, 3, gens);
    for (const auto& v : {vec(F3, {1, 1, 0}), vec(F3, {1, 2, 1}), vec(F3, {0, 0, 1})}) {
        auto grown = gens;
        grown.push_back(v);
        bool same_dim = Subspace::span(F3, 3, grown).dim() == t.dim();
        CHECK(t.member(v) == same_dim);
    }
}

TEST_CASE("sum and intersection") {
    auto e1 = Subspace::span(F3, 3, {vec(F3, {1, 0, 0})});
    auto e2 = Subspace::span(F3, 3, {vec(F3, {0, 1, 0})});
    auto s12 = e1.sum(e2);
    CHECK(s12 == Subspace::span(F3, 3, {vec(F3, {1, 0, 0}), vec(F3, {0, 1, 0})}));

    auto a = Subspace::span(F3, 3, {vec(F3, {1, 0, 0}), vec(F3, {0, 1, 0})});
    auto b = Subspace::span(F3, 3, {vec(F3, {0, 1, 0}), vec(F3, {0, 0, 1})});
    CHECK(a.intersect(b) == e2);

    // modular law on a spread of sample subspaces
    std::vector<Subspace> spaces = {
        Subspace(F3, 3),
        e1, e2, a, b,
        Subspace::span(F3, 3, {vec(F3, {1, 1, 1})}),
        Subspace::span(F3, 3, {vec(F3, {1, 2, 0}), vec(F3, {0, 1, 2})}),
        Subspace::span(F3, 3, {vec(F3, {1, 0, 0}), vec(F3, {0, 1, 0}), vec(F3, {0, 0, 1})}),
    };
    for (const auto& S : spaces)
        for (const auto& T : spaces) {
            CHECK(S.sum(T).dim() + S.intersect(T).dim() == S.dim() + T.dim());
            CHECK(S.sum(T).contains(S));
            CHECK(S.contains(S.intersect(T)));
            CHECK(S.sum(T) == T.sum(S));
            CHECK(S.intersect(T) == T.intersect(S));
        }
}

TEST_CASE("quotient dimension") {
    auto full = Subspace::span(F3, 2, {vec(F3, {1, 0}), vec(F3, {0, 1})});
    auto diag = Subspace::span(F3, 2, {vec(F3, {1, 1})});
    CHECK(full.quotient_dim(diag) == 1);
    CHECK(full.quotient_dim(full) == 0);
    CHECK_THROWS_AS(diag.quotient_dim(full), NotContained);
    auto other = Subspace::span(F3, 2, {vec(F3, {1, 2})});
    CHECK_THROWS_AS(diag.quotient_dim(other), NotContained);
}

TEST_CASE("function-field coefficients") {
    auto t = FieldElement::variable(F3t, 0);
    auto one = FieldElement::one(F3t);
    SparseVec v1 = {{0, t}, {1, one}};
    SparseVec v2 = {{0, t * t}, {1, t}}; // t · v1
    auto s = Subspace::span(F3t, 2, {v1, v2});
    CHECK(s.dim() == 1);
    CHECK(s.member(SparseVec{{0, one}, {1, t.inverse()}}));
    SparseVec v3 = {{0, one}, {1, one}};
    auto s2 = Subspace::span(F3t, 2, {v1, v3});
    CHECK(s2.dim() == 2);
}

TEST_CASE("echelon builder matches span") {
    std::vector<SparseVec> gens = {vec(F3, {1, 2, 0, 1}), vec(F3, {0, 0, 1, 1}),
                                   vec(F3, {1, 2, 1, 2}), vec(F3, {2, 1, 0, 2})};
    EchelonBuilder eb(F3, 4);
    int grew = 0;
    for (const auto& g : gens) grew += eb.insert(g);
    CHECK(grew == 2);
    CHECK(eb.rank() == 2);
    CHECK(eb.finalize() == Subspace::span(F3, 4, gens));
    CHECK(eb.contains(vec(F3, {2, 4 % 3, 1, 0})) == eb.finalize().member(vec(F3, {2, 1, 1, 0})));
    CHECK(eb.contains(vec(F3, {1, 2, 0, 1})));
    CHECK_FALSE(eb.contains(vec(F3, {1, 0, 0, 0})));
}

TEST_CASE("kernel") {
    // map F_3^3 -> F_3^2 sending e0 -> (1,0), e1 -> (0,1), e2 -> (1,1)
    std::vector<SparseVec> rows = {vec(F3, {1, 0}), vec(F3, {0, 1}), vec(F3, {1, 1})};
    auto k = kernel(F3, rows, 2);
    CHECK(k.dim() == 1);
    CHECK(k.member(vec(F3, {1, 1, 2}))); // e0 + e1 - e2

    // injective map has trivial kernel
    auto k2 = kernel(F3, {vec(F3, {1, 0}), vec(F3, {0, 1})}, 2);
    CHECK(k2.dim() == 0);

    // zero map has full kernel
    auto k3 = kernel(F3, {SparseVec{}, SparseVec{}}, 2);
    CHECK(k3.dim() == 2);
}

TEST_CASE("sparse vector helpers") {
    auto v = vec(F3, {1, 0, 2});
    CHECK(v.size() == 2);
    auto d = to_dense(F3, v, 3);
    CHECK(d[0].is_one());
    CHECK(d[1].is_zero());
    CHECK(sv_eq(to_sparse(d), v));
    CHECK(sv_eq(sv_add(v, sv_neg(v)), SparseVec{}));
    CHECK(sv_eq(axpy(vec(F3, {1, 1, 0}), FieldElement::integer(F3, 2), vec(F3, {1, 0, 1})),
                vec(F3, {0, 1, 2})));
    CHECK_THROWS_AS(to_dense(F3, v, 2), DimensionMismatch);
}
