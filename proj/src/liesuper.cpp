#include "supenv/liesuper.hpp"

#include <algorithm>
#include <deque>

namespace supenv {

namespace {

bool all_zero(const std::vector<FieldElement>& v) {
    return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

void check_same_shape(const LieElement& a, const LieElement& b) {
    if (a.even.size() != b.even.size() || a.odd.size() != b.odd.size())
        throw DimensionMismatch("elements of different algebras");
}

uint64_t fnv_mix(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t fnv_str(uint64_t h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

bool LieElement::is_zero() const { return even_zero() && odd_zero(); }
bool LieElement::even_zero() const { return all_zero(even); }
bool LieElement::odd_zero() const { return all_zero(odd); }

int LieElement::parity() const {
    bool e = !even_zero(), o = !odd_zero();
    if (e && o) throw NotHomogeneous("element has both even and odd components");
    return o ? 1 : 0;
}

bool LieElement::operator==(const LieElement& o) const {
    check_same_shape(*this, o);
    for (size_t i = 0; i < even.size(); ++i)
        if (!(even[i] == o.even[i])) return false;
    for (size_t i = 0; i < odd.size(); ++i)
        if (!(odd[i] == o.odd[i])) return false;
    return true;
}

LieElement add(const LieElement& a, const LieElement& b) {
    check_same_shape(a, b);
    LieElement r = a;
    for (size_t i = 0; i < r.even.size(); ++i) r.even[i] += b.even[i];
    for (size_t i = 0; i < r.odd.size(); ++i) r.odd[i] += b.odd[i];
    return r;
}

LieElement sub(const LieElement& a, const LieElement& b) { return add(a, neg(b)); }

LieElement neg(const LieElement& a) {
    LieElement r = a;
    for (auto& c : r.even) c = -c;
    for (auto& c : r.odd) c = -c;
    return r;
}

LieElement scale(const FieldElement& c, const LieElement& a) {
    LieElement r = a;
    for (auto& x : r.even) x = c * x;
    for (auto& x : r.odd) x = c * x;
    return r;
}

LieElement RestrictedLieSuperalgebra::zero_element() const {
    return {std::vector<FieldElement>(n, FieldElement::zero(field)),
            std::vector<FieldElement>(m, FieldElement::zero(field))};
}

LieElement RestrictedLieSuperalgebra::basis_element(uint32_t i) const {
    LieElement r = zero_element();
    if (i >= dim()) throw InvalidParameter("basis index out of range");
    if (i < n) r.even[i] = FieldElement::one(field);
    else r.odd[i - n] = FieldElement::one(field);
    return r;
}

SparseVec RestrictedLieSuperalgebra::to_coords(const LieElement& v) const {
    SparseVec s;
    for (uint32_t i = 0; i < n; ++i)
        if (!v.even[i].is_zero()) s.emplace_back(i, v.even[i]);
    for (uint32_t j = 0; j < m; ++j)
        if (!v.odd[j].is_zero()) s.emplace_back(n + j, v.odd[j]);
    return s;
}

LieElement RestrictedLieSuperalgebra::from_coords(const SparseVec& v) const {
    LieElement r = zero_element();
    for (const auto& [c, x] : v) {
        if (c >= dim()) throw DimensionMismatch("coordinate out of range");
        if (c < n) r.even[c] = x;
        else r.odd[c - n] = x;
    }
    return r;
}

void RestrictedLieSuperalgebra::validate_shape() const {
    auto check_elem = [&](const LieElement& e, const char* where) {
        if (e.even.size() != n || e.odd.size() != m)
            throw InvalidParameter(std::string("mis-sized element in ") + where);
        for (const auto& c : e.even)
            if (c.p() != field.p || c.nvars() != field.nvars())
                throw InvalidParameter(std::string("foreign coefficient in ") + where);
        for (const auto& c : e.odd)
            if (c.p() != field.p || c.nvars() != field.nvars())
                throw InvalidParameter(std::string("foreign coefficient in ") + where);
    };
    if (names.size() != dim()) throw InvalidParameter("need one name per basis vector");
    if (bracket_table.size() != dim()) throw InvalidParameter("bracket table must be square");
    for (const auto& row : bracket_table) {
        if (row.size() != dim()) throw InvalidParameter("bracket table must be square");
        for (const auto& e : row) check_elem(e, "bracket table");
    }
    if (pmap_table.size() != n) throw InvalidParameter("p-map table needs one entry per even basis vector");
    for (const auto& e : pmap_table) check_elem(e, "p-map table");
}

uint64_t RestrictedLieSuperalgebra::instance_hash() const {
    uint64_t h = 1469598103934665603ull;
    h = fnv_mix(h, field.p);
    for (const auto& v : field.vars) h = fnv_str(h, v);
    h = fnv_mix(h, n);
    h = fnv_mix(h, m);
    for (const auto& nm : names) h = fnv_str(h, nm);
    auto mix_elem = [&](const LieElement& e) {
        for (const auto& c : e.even) h = fnv_mix(h, c.hash());
        for (const auto& c : e.odd) h = fnv_mix(h, c.hash());
    };
    for (const auto& row : bracket_table)
        for (const auto& e : row) mix_elem(e);
    for (const auto& e : pmap_table) mix_elem(e);
    return h;
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

LieElement bracket(const RestrictedLieSuperalgebra& L, const LieElement& u,
                   const LieElement& v) {
    check_same_shape(u, L.zero_element());
    check_same_shape(v, L.zero_element());
    LieElement r = L.zero_element();
    auto coords = [&](const LieElement& w) {
        std::vector<std::pair<uint32_t, const FieldElement*>> c;
        for (uint32_t i = 0; i < L.n; ++i)
            if (!w.even[i].is_zero()) c.emplace_back(i, &w.even[i]);
        for (uint32_t j = 0; j < L.m; ++j)
            if (!w.odd[j].is_zero()) c.emplace_back(L.n + j, &w.odd[j]);
        return c;
    };
    for (const auto& [i, ci] : coords(u))
        for (const auto& [j, cj] : coords(v))
            r = add(r, scale(*ci * *cj, L.bracket_table[i][j]));
    return r;
}

// ---- axiom verification ----------------------------------------------------

namespace {

LieElement ad_pow(const RestrictedLieSuperalgebra& L, const LieElement& y,
                  const LieElement& x, uint32_t k) {
    LieElement w = y;
    for (uint32_t i = 0; i < k; ++i) w = bracket(L, w, x);
    return w;
}

} // namespace

AxiomReport verify_axioms(const RestrictedLieSuperalgebra& L, uint32_t samples,
                          uint64_t seed) {
    L.validate_shape();
    AxiomReport rep;
    const uint32_t d = L.dim();
    auto rng = seeded_rng(seed, "verify_axioms", L.instance_hash());

    { // structure constants land in the right parity block
        AxiomCheck c{"grading", true, ""};
        for (uint32_t i = 0; i < d && c.pass; ++i)
            for (uint32_t j = 0; j < d && c.pass; ++j) {
                int q = (L.parity_of(i) + L.parity_of(j)) % 2;
                const LieElement& e = L.bracket_table[i][j];
                if ((q == 0 && !e.odd_zero()) || (q == 1 && !e.even_zero())) {
                    c.pass = false;
                    c.witness = "(" + L.names[i] + "," + L.names[j] + ") = " + to_string(L, e);
                }
            }
        rep.checks.push_back(std::move(c));
    }

    { // (x,y) = -(-1)^{|x||y|}(y,x); forces (x,x)=0 for even x since p>2
        AxiomCheck c{"anticommutativity", true, ""};
        for (uint32_t i = 0; i < d && c.pass; ++i)
            for (uint32_t j = i; j < d && c.pass; ++j) {
                bool both_odd = L.parity_of(i) == 1 && L.parity_of(j) == 1;
                LieElement expect = both_odd ? L.bracket_table[i][j] : neg(L.bracket_table[i][j]);
                if (!(L.bracket_table[j][i] == expect)) {
                    c.pass = false;
                    c.witness = "(" + L.names[j] + "," + L.names[i] + ") vs (" + L.names[i] +
                                "," + L.names[j] + ")";
                }
            }
        rep.checks.push_back(std::move(c));
    }

    { // (x,(y,z)) = ((x,y),z) + (-1)^{|x||y|}(y,(x,z))
        AxiomCheck c{"jacobi", true, ""};
        auto holds = [&](const LieElement& x, const LieElement& y, const LieElement& z,
                         int px, int py) {
            LieElement lhs = bracket(L, x, bracket(L, y, z));
            LieElement rhs = bracket(L, bracket(L, x, y), z);
            LieElement tail = bracket(L, y, bracket(L, x, z));
            if (px == 1 && py == 1) tail = neg(tail);
            return lhs == add(rhs, tail);
        };
        for (uint32_t a = 0; a < d && c.pass; ++a)
            for (uint32_t b = 0; b < d && c.pass; ++b)
                for (uint32_t e = 0; e < d && c.pass; ++e)
                    if (!holds(L.basis_element(a), L.basis_element(b), L.basis_element(e),
                               L.parity_of(a), L.parity_of(b))) {
                        c.pass = false;
                        c.witness = "(" + L.names[a] + "," + L.names[b] + "," + L.names[e] + ")";
                    }
        for (uint32_t s = 0; s < samples && c.pass; ++s) {
            int px = static_cast<int>(rng() % 2), py = static_cast<int>(rng() % 2);
            LieElement x = random_lie_element(rng, L, px);
            LieElement y = random_lie_element(rng, L, py);
            LieElement z = random_lie_element(rng, L, -1);
            if (!holds(x, y, z, px, py)) {
                c.pass = false;
                c.witness = "sampled triple " + to_string(L, x) + "; " + to_string(L, y) +
                            "; " + to_string(L, z);
            }
        }
        rep.checks.push_back(std::move(c));
    }

    { // (y, x^[p]) = (ad x)^p (y)
        AxiomCheck c{"p_map_compat", true, ""};
        for (uint32_t i = 0; i < L.n && c.pass; ++i)
            for (uint32_t j = 0; j < d && c.pass; ++j) {
                LieElement lhs = bracket(L, L.basis_element(j), L.pmap_table[i]);
                LieElement rhs = ad_pow(L, L.basis_element(j), L.basis_element(i), L.field.p);
                if (!(lhs == rhs)) {
                    c.pass = false;
                    c.witness = "(" + L.names[j] + ", " + L.names[i] + "^[p])";
                }
            }
        for (uint32_t s = 0; s < samples && c.pass && L.n > 0; ++s) {
            LieElement x = random_lie_element(rng, L, 0);
            LieElement xp = p_power(L, x);
            for (uint32_t j = 0; j < d && c.pass; ++j) {
                LieElement lhs = bracket(L, L.basis_element(j), xp);
                LieElement rhs = ad_pow(L, L.basis_element(j), x, L.field.p);
                if (!(lhs == rhs)) {
                    c.pass = false;
                    c.witness = "(" + L.names[j] + ", (" + to_string(L, x) + ")^[p])";
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    if (L.field.p == 3) { // ((y,y),y) = 0 for odd y
        AxiomCheck c{"p3_cube", true, ""};
        for (uint32_t j = L.n; j < d && c.pass; ++j) {
            LieElement y = L.basis_element(j);
            if (!bracket(L, bracket(L, y, y), y).is_zero()) {
                c.pass = false;
                c.witness = "((" + L.names[j] + "," + L.names[j] + ")," + L.names[j] + ")";
            }
        }
        for (uint32_t s = 0; s < samples && c.pass && L.m > 0; ++s) {
            LieElement y = random_lie_element(rng, L, 1);
            if (!bracket(L, bracket(L, y, y), y).is_zero()) {
                c.pass = false;
                c.witness = "((c,c),c) for c = " + to_string(L, y);
            }
        }
        rep.checks.push_back(std::move(c));
    }

    { // p-map values stay in the even part
        AxiomCheck c{"pmap_even", true, ""};
        for (uint32_t i = 0; i < L.n && c.pass; ++i)
            if (!L.pmap_table[i].odd_zero()) {
                c.pass = false;
                c.witness = L.names[i] + "^[p] = " + to_string(L, L.pmap_table[i]);
            }
        rep.checks.push_back(std::move(c));
    }

    return rep;
}

// ---- p-map machinery -------------------------------------------------------

std::vector<LieElement> s_coefficients(const RestrictedLieSuperalgebra& L,
                                       const LieElement& x, const LieElement& y) {
    if (!x.odd_zero() || !y.odd_zero())
        throw ParityError("s_i coefficients are defined for even arguments");
    const uint32_t p = L.field.p;
    // w(λ) = (ad(λx+y))^{p-1}(x) as a polynomial in λ
    std::vector<LieElement> w{x};
    for (uint32_t step = 0; step < p - 1; ++step) {
        std::vector<LieElement> nw(w.size() + 1, L.zero_element());
        for (size_t ddeg = 0; ddeg < w.size(); ++ddeg) {
            nw[ddeg] = add(nw[ddeg], bracket(L, w[ddeg], y));
            nw[ddeg + 1] = add(nw[ddeg + 1], bracket(L, w[ddeg], x));
        }
        w = std::move(nw);
    }
    std::vector<LieElement> s;
    s.reserve(p - 1);
    for (uint32_t i = 1; i <= p - 1; ++i)
        s.push_back(scale(FieldElement::integer(L.field, i).inverse(), w[i - 1]));
    return s;
}

LieElement p_power(const RestrictedLieSuperalgebra& L, const LieElement& x) {
    if (!x.odd_zero()) throw ParityError("p-th power of a non-even element");
    LieElement suffix = L.zero_element();
    LieElement suffix_pow = L.zero_element();
    bool have_suffix = false;
    for (uint32_t i = L.n; i-- > 0;) {
        if (x.even[i].is_zero()) continue;
        LieElement term = scale(x.even[i], L.basis_element(i));
        LieElement term_pow = scale(x.even[i].frobenius(1), L.pmap_table[i]);
        if (!have_suffix) {
            suffix = std::move(term);
            suffix_pow = std::move(term_pow);
            have_suffix = true;
            continue;
        }
        LieElement acc = add(term_pow, suffix_pow);
        for (const auto& si : s_coefficients(L, term, suffix)) acc = add(acc, si);
        suffix = add(term, suffix);
        suffix_pow = std::move(acc);
    }
    return suffix_pow;
}

PNilpotence is_p_nilpotent(const RestrictedLieSuperalgebra& L, const LieElement& x) {
    LieElement z = x;
    for (uint32_t s = 0; s <= L.n + 1; ++s) {
        if (z.is_zero()) return {true, s};
        z = p_power(L, z);
    }
    return {false, std::nullopt};
}

Subspace restricted_closure(const RestrictedLieSuperalgebra& L,
                            const std::vector<LieElement>& X) {
    const uint32_t d = L.dim();
    EchelonBuilder eb(L.field, d);
    std::deque<SparseVec> work;
    auto push = [&](const SparseVec& v) {
        if (eb.insert(v)) work.push_back(eb.rows().back());
    };
    for (const auto& x : X) push(L.to_coords(x));
    for (;;) {
        while (!work.empty()) {
            LieElement v = L.from_coords(work.front());
            work.pop_front();
            for (uint32_t i = 0; i < d; ++i)
                push(L.to_coords(bracket(L, v, L.basis_element(i))));
        }
        // p-closure of the even part; s_i terms are iterated brackets, so
        // closing on an even-part basis suffices once bracket-closure holds
        Subspace cur = eb.finalize();
        std::vector<SparseVec> evens;
        for (uint32_t i = 0; i < L.n; ++i) evens.push_back(unit_vec(L.field, i));
        Subspace even_part = cur.intersect(Subspace::span(L.field, d, evens));
        bool grew = false;
        for (const auto& b : even_part.basis()) {
            LieElement z = p_power(L, L.from_coords(b));
            if (eb.insert(L.to_coords(z))) {
                work.push_back(eb.rows().back());
                grew = true;
            }
        }
        if (!grew) break;
    }
    return eb.finalize();
}

// ---- quotients, series, center ---------------------------------------------

namespace {

Subspace parity_block(const RestrictedLieSuperalgebra& L, int parity) {
    std::vector<SparseVec> units;
    uint32_t lo = parity == 0 ? 0 : L.n;
    uint32_t hi = parity == 0 ? L.n : L.dim();
    for (uint32_t i = lo; i < hi; ++i) units.push_back(unit_vec(L.field, i));
    return Subspace::span(L.field, L.dim(), units);
}

} // namespace

QuotientResult quotient(const RestrictedLieSuperalgebra& L, const Subspace& I) {
    if (I.ambient() != L.dim() || !(I.field() == L.field))
        throw DimensionMismatch("ideal lives in a different space");
    Subspace I0 = I.intersect(parity_block(L, 0));
    Subspace I1 = I.intersect(parity_block(L, 1));
    if (I0.dim() + I1.dim() != I.dim())
        throw NotHomogeneous("subspace is not graded");
    for (const auto& b : I.basis()) {
        LieElement v = L.from_coords(b);
        for (uint32_t i = 0; i < L.dim(); ++i)
            if (!I.member(L.to_coords(bracket(L, v, L.basis_element(i)))))
                throw NotAnIdeal("subspace is not bracket-stable");
    }
    for (const auto& b : I0.basis())
        if (!I.member(L.to_coords(p_power(L, L.from_coords(b)))))
            throw NotAnIdeal("subspace is not p-map-stable");

    std::vector<bool> is_pivot(L.dim(), false);
    for (const auto& row : I.basis()) is_pivot[row[0].first] = true;
    std::vector<uint32_t> compl_coords;
    for (uint32_t i = 0; i < L.dim(); ++i)
        if (!is_pivot[i]) compl_coords.push_back(i);

    QuotientResult q;
    q.complement = compl_coords;
    RestrictedLieSuperalgebra& Q = q.algebra;
    Q.field = L.field;
    Q.n = L.n - I0.dim();
    Q.m = L.m - I1.dim();
    std::vector<uint32_t> new_index(L.dim(), UINT32_MAX);
    for (uint32_t a = 0; a < compl_coords.size(); ++a) {
        Q.names.push_back(L.names[compl_coords[a]]);
        new_index[compl_coords[a]] = a;
    }
    auto project = [&](const LieElement& v) {
        SparseVec red = I.reduce(L.to_coords(v));
        LieElement r = Q.zero_element();
        for (const auto& [c, x] : red) {
            uint32_t a = new_index[c];
            if (a < Q.n) r.even[a] = x;
            else r.odd[a - Q.n] = x;
        }
        return r;
    };
    Q.bracket_table.assign(Q.dim(), std::vector<LieElement>(Q.dim(), Q.zero_element()));
    for (uint32_t a = 0; a < Q.dim(); ++a)
        for (uint32_t b = 0; b < Q.dim(); ++b)
            Q.bracket_table[a][b] =
                project(bracket(L, L.basis_element(compl_coords[a]),
                                L.basis_element(compl_coords[b])));
    for (uint32_t a = 0; a < Q.n; ++a)
        Q.pmap_table.push_back(project(p_power(L, L.basis_element(compl_coords[a]))));
    return q;
}

LieElement project_to_quotient(const RestrictedLieSuperalgebra& L, const Subspace& I,
                               const QuotientResult& Q, const LieElement& v) {
    SparseVec red = I.reduce(L.to_coords(v));
    LieElement r = Q.algebra.zero_element();
    for (const auto& [c, x] : red) {
        auto it = std::find(Q.complement.begin(), Q.complement.end(), c);
        if (it == Q.complement.end())
            throw Error("reduction left a pivot coordinate");
        uint32_t a = static_cast<uint32_t>(it - Q.complement.begin());
        if (a < Q.algebra.n) r.even[a] = x;
        else r.odd[a - Q.algebra.n] = x;
    }
    return r;
}

std::vector<Subspace> series(const RestrictedLieSuperalgebra& L, SeriesKind kind) {
    const uint32_t d = L.dim();
    std::vector<SparseVec> units;
    for (uint32_t i = 0; i < d; ++i) units.push_back(unit_vec(L.field, i));
    Subspace cur = Subspace::span(L.field, d, units);
    std::vector<Subspace> chain{cur};
    for (;;) {
        EchelonBuilder eb(L.field, d);
        if (kind == SeriesKind::lower_central) {
            for (const auto& b : cur.basis())
                for (uint32_t i = 0; i < d; ++i)
                    eb.insert(L.to_coords(
                        bracket(L, L.from_coords(b), L.basis_element(i))));
        } else {
            for (const auto& b : cur.basis())
                for (const auto& c : cur.basis())
                    eb.insert(L.to_coords(
                        bracket(L, L.from_coords(b), L.from_coords(c))));
        }
        Subspace next = eb.finalize();
        if (next == chain.back()) break;
        chain.push_back(next);
        cur = std::move(next);
    }
    return chain;
}

bool is_nilpotent(const RestrictedLieSuperalgebra& L) {
    return series(L, SeriesKind::lower_central).back().dim() == 0;
}

bool is_solvable(const RestrictedLieSuperalgebra& L) {
    return series(L, SeriesKind::derived).back().dim() == 0;
}

Subspace center(const RestrictedLieSuperalgebra& L) {
    const uint32_t d = L.dim();
    std::vector<SparseVec> rows;
    for (uint32_t j = 0; j < d; ++j) {
        SparseVec row;
        for (uint32_t i = 0; i < d; ++i) {
            SparseVec img = L.to_coords(bracket(L, L.basis_element(j), L.basis_element(i)));
            for (const auto& [c, x] : img) row.emplace_back(i * d + c, x);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
    }
    return kernel(L.field, rows, d * d);
}

// ---- M and the p-nilpotent part --------------------------------------------

namespace {

// enumerate all coefficient tuples in [0,p)^width, calling f on each element
template <typename F>
void enumerate_combinations(const RestrictedLieSuperalgebra& L, uint32_t offset,
                            uint32_t width, F&& f) {
    const uint32_t p = L.field.p;
    double total = 1;
    for (uint32_t i = 0; i < width; ++i) total *= p;
    if (total > 2e6) throw BudgetExceeded("exhaustive enumeration too large");
    std::vector<uint32_t> digits(width, 0);
    for (;;) {
        LieElement v = L.zero_element();
        for (uint32_t i = 0; i < width; ++i) {
            if (!digits[i]) continue;
            uint32_t c = offset + i;
            FieldElement x = FieldElement::integer(L.field, digits[i]);
            if (c < L.n) v.even[c] = x;
            else v.odd[c - L.n] = x;
        }
        f(v);
        uint32_t k = 0;
        while (k < width && ++digits[k] == p) digits[k++] = 0;
        if (k == width) break;
    }
}

SubspaceScan scan_helper(const RestrictedLieSuperalgebra& L, int parity,
                         std::optional<SampledScan> sampled,
                         const char* op_name) {
    const uint32_t d = L.dim();
    auto nil_square = [&](const LieElement& c) {
        LieElement z = parity == 1 ? bracket(L, c, c) : c;
        return is_p_nilpotent(L, z).nilpotent;
    };
    EchelonBuilder eb(L.field, d);
    SubspaceScan out{Subspace(L.field, d), false, false};
    if (!sampled) {
        if (L.field.nvars() != 0)
            throw ExhaustionUnavailable("exhaustive scan needs a finite base field");
        uint64_t found = 0;
        uint32_t offset = parity == 1 ? L.n : 0;
        uint32_t width = parity == 1 ? L.m : L.n;
        enumerate_combinations(L, offset, width, [&](const LieElement& v) {
            if (nil_square(v)) {
                ++found;
                eb.insert(L.to_coords(v));
            }
        });
        out.space = eb.finalize();
        out.complete = true;
        uint64_t span_size = 1;
        for (uint32_t i = 0; i < out.space.dim(); ++i) span_size *= L.field.p;
        out.set_closed = found == span_size;
        return out;
    }
    auto rng = seeded_rng(sampled->seed, op_name, L.instance_hash());
    std::vector<LieElement> cands;
    uint32_t lo = parity == 1 ? L.n : 0;
    uint32_t hi = parity == 1 ? d : L.n;
    for (uint32_t i = lo; i < hi; ++i) cands.push_back(L.basis_element(i));
    for (uint32_t i = lo; i < hi; ++i)
        for (uint32_t j = i + 1; j < hi; ++j) {
            cands.push_back(add(L.basis_element(i), L.basis_element(j)));
            cands.push_back(sub(L.basis_element(i), L.basis_element(j)));
            for (uint32_t v = 0; v < L.field.nvars(); ++v)
                cands.push_back(add(L.basis_element(i),
                                    scale(FieldElement::variable(L.field, v),
                                          L.basis_element(j))));
        }
    for (uint32_t s = 0; s < sampled->count; ++s)
        cands.push_back(random_lie_element(rng, L, parity));
    for (const auto& c : cands)
        if (!c.is_zero() && nil_square(c)) eb.insert(L.to_coords(c));
    out.space = eb.finalize();
    return out;
}

} // namespace

SubspaceScan compute_M(const RestrictedLieSuperalgebra& L,
                       std::optional<SampledScan> sampled) {
    return scan_helper(L, 1, sampled, "compute_M");
}

SubspaceScan compute_p_nil_part(const RestrictedLieSuperalgebra& L,
                                std::optional<SampledScan> sampled) {
    return scan_helper(L, 0, sampled, "compute_p_nil_part");
}

// ---- rendering and sampling -------------------------------------------------

std::string to_string(const RestrictedLieSuperalgebra& L, const LieElement& v) {
    std::string out;
    auto emit = [&](const FieldElement& c, const std::string& name) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        if (c.is_one()) {
            out += name;
            return;
        }
        std::string cs = to_string(c, L.field);
        if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos)
            cs = "(" + cs + ")";
        out += cs + "*" + name;
    };
    for (uint32_t i = 0; i < L.n; ++i) emit(v.even[i], L.names[i]);
    for (uint32_t j = 0; j < L.m; ++j) emit(v.odd[j], L.names[L.n + j]);
    return out.empty() ? "0" : out;
}

std::mt19937_64 seeded_rng(uint64_t seed, std::string_view op, uint64_t instance_hash) {
    uint64_t h = 1469598103934665603ull;
    h = fnv_mix(h, seed);
    h = fnv_str(h, op);
    h = fnv_mix(h, instance_hash);
    return std::mt19937_64(h);
}

FieldElement random_field_element(std::mt19937_64& rng, const FieldSpec& f,
                                  bool allow_fraction) {
    if (f.nvars() == 0)
        return FieldElement::integer(f, static_cast<long long>(rng() % f.p));
    auto small_poly = [&]() {
        FieldElement acc = FieldElement::zero(f);
        uint32_t terms = 1 + static_cast<uint32_t>(rng() % 3);
        for (uint32_t i = 0; i < terms; ++i) {
            FieldElement mono =
                FieldElement::integer(f, 1 + static_cast<long long>(rng() % (f.p - 1)));
            for (uint32_t v = 0; v < f.nvars(); ++v) {
                uint32_t e = static_cast<uint32_t>(rng() % 3);
                for (uint32_t k = 0; k < e; ++k)
                    mono = mono * FieldElement::variable(f, v);
            }
            acc = acc + mono;
        }
        return acc;
    };
    FieldElement num = small_poly();
    if (allow_fraction && rng() % 2 == 0) {
        FieldElement den = small_poly();
        if (!den.is_zero()) return num / den;
    }
    return num;
}

LieElement random_lie_element(std::mt19937_64& rng, const RestrictedLieSuperalgebra& L,
                              int parity) {
    LieElement v = L.zero_element();
    if (parity != 1)
        for (uint32_t i = 0; i < L.n; ++i)
            if (rng() % 2 == 0) v.even[i] = random_field_element(rng, L.field);
    if (parity != 0)
        for (uint32_t j = 0; j < L.m; ++j)
            if (rng() % 2 == 0) v.odd[j] = random_field_element(rng, L.field);
    return v;
}

} // namespace supenv
