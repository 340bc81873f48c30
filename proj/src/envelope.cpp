#include "supenv/envelope.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "supenv/errors.hpp"

namespace supenv {

namespace {

/// Merge-accumulator for products that fan out into many short vectors;
/// keeps insertion O(log n) instead of re-merging a growing sparse vector.
struct Accum {
    std::map<uint32_t, FieldElement> slots;

    void add(const FieldElement& c, const UElement& x) {
        if (c.is_zero()) return;
        for (const auto& [i, v] : x) {
            auto it = slots.find(i);
            if (it == slots.end())
                slots.emplace(i, c * v);
            else
                it->second = it->second + c * v;
        }
    }

    UElement take() const {
        UElement out;
        for (const auto& [i, v] : slots)
            if (!v.is_zero()) out.emplace_back(i, v);
        return out;
    }
};

} // namespace

PBWContext::PBWContext(RestrictedLieSuperalgebra algebra, std::vector<uint32_t> order,
                       uint64_t dimension_cap)
    : L_(std::move(algebra)) {
    L_.validate_shape();
    const uint32_t d = L_.dim();
    if (order.empty()) {
        order.resize(d);
        for (uint32_t i = 0; i < d; ++i) order[i] = i;
    }
    if (order.size() != d)
        throw InvalidParameter("generator order has wrong length");
    std::vector<char> seen(d, 0);
    for (uint32_t idx : order) {
        if (idx >= d || seen[idx])
            throw InvalidParameter("generator order is not a permutation");
        seen[idx] = 1;
    }
    order_ = std::move(order);
    position_.assign(d, 0);
    for (uint32_t k = 0; k < d; ++k) position_[order_[k]] = k;
    radix_.resize(d);
    weight_.resize(d);
    for (uint32_t k = 0; k < d; ++k) {
        radix_[k] = L_.parity_of(order_[k]) == 0 ? L_.field.p : 2;
        weight_[k] = D_;
        D_ *= radix_[k];
        if (D_ > dimension_cap)
            throw BudgetExceeded("PBW dimension exceeds cap");
    }
}

std::vector<uint32_t> PBWContext::exponents(uint32_t index) const {
    if (index >= D_) throw InvalidParameter("monomial index out of range");
    std::vector<uint32_t> e(radix_.size());
    for (size_t k = 0; k < radix_.size(); ++k)
        e[k] = static_cast<uint32_t>((index / weight_[k]) % radix_[k]);
    return e;
}

UElement PBWContext::unit() const {
    return {{0u, FieldElement::one(L_.field)}};
}

UElement PBWContext::letter(uint32_t pos) const {
    if (pos >= order_.size()) throw InvalidParameter("generator position out of range");
    return {{static_cast<uint32_t>(weight_[pos]), FieldElement::one(L_.field)}};
}

UElement PBWContext::embed(const LieElement& v) const {
    UElement out;
    for (const auto& [i, c] : L_.to_coords(v))
        out.emplace_back(static_cast<uint32_t>(weight_[position_[i]]), c);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

const UElement& PBWContext::rmul_mono(uint32_t mono, uint32_t gpos) {
    const uint64_t key = static_cast<uint64_t>(mono) * order_.size() + gpos;
    if (auto it = rmemo_.find(key); it != rmemo_.end()) return it->second;

    const FieldSpec& f = L_.field;
    std::vector<uint32_t> e = exponents(mono);
    int q = -1; // rightmost occupied position
    for (int k = static_cast<int>(e.size()) - 1; k >= 0; --k)
        if (e[k]) { q = k; break; }

    const uint32_t gidx = order_[gpos];
    const bool g_odd = L_.parity_of(gidx) == 1;

    UElement out;
    if (q < static_cast<int>(gpos)) {
        out = {{mono + static_cast<uint32_t>(weight_[gpos]), FieldElement::one(f)}};
    } else if (q == static_cast<int>(gpos)) {
        if (!g_odd && e[gpos] + 1 < radix_[gpos]) {
            out = {{mono + static_cast<uint32_t>(weight_[gpos]), FieldElement::one(f)}};
        } else if (!g_odd) {
            // x^(p-1)·x collapses through the p-map
            uint32_t rest = mono - static_cast<uint32_t>((radix_[gpos] - 1) * weight_[gpos]);
            out = rmul_lie(rest, L_.pmap_table[gidx]);
        } else {
            // y·y = ½(y,y)
            uint32_t rest = mono - static_cast<uint32_t>(weight_[gpos]);
            FieldElement half = FieldElement::integer(f, (f.p + 1) / 2);
            out = sv_scale(half, rmul_lie(rest, L_.bracket_table[gidx][gidx]));
        }
    } else {
        // M = M'·x_q with q after g: M·x_g = ±(M'·x_g)·x_q + M'·(x_q, x_g)
        uint32_t rest = mono - static_cast<uint32_t>(weight_[q]);
        uint32_t qidx = order_[q];
        bool flip = g_odd && L_.parity_of(qidx) == 1;
        UElement left = rmul_mono(rest, gpos); // copy: recursion mutates the memo
        Accum part1;
        FieldElement sgn = FieldElement::integer(f, flip ? f.p - 1 : 1);
        for (const auto& [nmono, c] : left)
            part1.add(sgn * c, rmul_mono(nmono, q));
        part1.add(FieldElement::one(f), rmul_lie(rest, L_.bracket_table[qidx][gidx]));
        out = part1.take();
    }
    return rmemo_.emplace(key, std::move(out)).first->second;
}

const UElement& PBWContext::lmul_mono(uint32_t gpos, uint32_t mono) {
    const uint64_t key = static_cast<uint64_t>(mono) * order_.size() + gpos;
    if (auto it = lmemo_.find(key); it != lmemo_.end()) return it->second;

    const FieldSpec& f = L_.field;
    std::vector<uint32_t> e = exponents(mono);
    int q = -1; // leftmost occupied position
    for (size_t k = 0; k < e.size(); ++k)
        if (e[k]) { q = static_cast<int>(k); break; }

    const uint32_t gidx = order_[gpos];
    const bool g_odd = L_.parity_of(gidx) == 1;

    UElement out;
    if (q < 0 || static_cast<int>(gpos) < q) {
        out = {{mono + static_cast<uint32_t>(weight_[gpos]), FieldElement::one(f)}};
    } else if (q == static_cast<int>(gpos)) {
        if (!g_odd && e[gpos] + 1 < radix_[gpos]) {
            out = {{mono + static_cast<uint32_t>(weight_[gpos]), FieldElement::one(f)}};
        } else if (!g_odd) {
            uint32_t rest = mono - static_cast<uint32_t>((radix_[gpos] - 1) * weight_[gpos]);
            out = lmul_lie(L_.pmap_table[gidx], rest);
        } else {
            uint32_t rest = mono - static_cast<uint32_t>(weight_[gpos]);
            FieldElement half = FieldElement::integer(f, (f.p + 1) / 2);
            out = sv_scale(half, lmul_lie(L_.bracket_table[gidx][gidx], rest));
        }
    } else {
        // M = x_q·M' with q before g: x_g·M = ±x_q·(x_g·M') + (x_g, x_q)·M'
        uint32_t rest = mono - static_cast<uint32_t>(weight_[q]);
        uint32_t qidx = order_[q];
        bool flip = g_odd && L_.parity_of(qidx) == 1;
        UElement right = lmul_mono(gpos, rest);
        Accum part1;
        FieldElement sgn = FieldElement::integer(f, flip ? f.p - 1 : 1);
        for (const auto& [nmono, c] : right)
            part1.add(sgn * c, lmul_mono(q, nmono));
        part1.add(FieldElement::one(f), lmul_lie(L_.bracket_table[gidx][qidx], rest));
        out = part1.take();
    }
    return lmemo_.emplace(key, std::move(out)).first->second;
}

UElement PBWContext::rmul_lie(uint32_t mono, const LieElement& v) {
    Accum acc;
    for (const auto& [i, c] : L_.to_coords(v))
        acc.add(c, rmul_mono(mono, position_[i]));
    return acc.take();
}

UElement PBWContext::lmul_lie(const LieElement& v, uint32_t mono) {
    Accum acc;
    for (const auto& [i, c] : L_.to_coords(v))
        acc.add(c, lmul_mono(position_[i], mono));
    return acc.take();
}

UElement PBWContext::rmul_letter(const UElement& u, uint32_t pos) {
    if (pos >= order_.size()) throw InvalidParameter("generator position out of range");
    Accum acc;
    for (const auto& [mono, c] : u)
        acc.add(c, rmul_mono(mono, pos));
    return acc.take();
}

UElement PBWContext::lmul_letter(uint32_t pos, const UElement& u) {
    if (pos >= order_.size()) throw InvalidParameter("generator position out of range");
    Accum acc;
    for (const auto& [mono, c] : u)
        acc.add(c, lmul_mono(pos, mono));
    return acc.take();
}

UElement PBWContext::multiply(const UElement& u, const UElement& v) {
    Accum acc;
    for (const auto& [mono, c] : v) {
        UElement cur = u;
        std::vector<uint32_t> e = exponents(mono);
        for (uint32_t pos = 0; pos < e.size() && !cur.empty(); ++pos)
            for (uint32_t t = 0; t < e[pos]; ++t)
                cur = rmul_letter(cur, pos);
        acc.add(c, cur);
    }
    return acc.take();
}

UElement PBWContext::power(const UElement& u, uint32_t k) {
    UElement out = unit();
    for (uint32_t i = 0; i < k; ++i) out = multiply(out, u);
    return out;
}

UElement PBWContext::super_commutator(const UElement& u, const UElement& v,
                                      CommutatorKind kind) {
    bool flip = false;
    if (kind == CommutatorKind::super)
        flip = parity(u) == 1 && parity(v) == 1;
    UElement uv = multiply(u, v);
    UElement vu = multiply(v, u);
    const FieldSpec& f = L_.field;
    return axpy(uv, FieldElement::integer(f, flip ? 1 : f.p - 1), vu);
}

bool PBWContext::is_central(const UElement& u) {
    for (uint32_t pos = 0; pos < order_.size(); ++pos)
        if (!sv_eq(rmul_letter(u, pos), lmul_letter(pos, u))) return false;
    return true;
}

int PBWContext::parity(const UElement& u) const {
    int par = -1;
    for (const auto& [mono, c] : u) {
        (void)c;
        std::vector<uint32_t> e = exponents(mono);
        uint32_t s = 0;
        for (size_t k = 0; k < e.size(); ++k)
            if (L_.parity_of(order_[k]) == 1) s += e[k];
        int pk = static_cast<int>(s % 2);
        if (par == -1) par = pk;
        else if (par != pk) throw ParityError("element of u(L) has mixed parity");
    }
    return par == -1 ? 0 : par;
}

uint32_t PBWContext::degree(const UElement& u) const {
    uint32_t deg = 0;
    for (const auto& [mono, c] : u) {
        (void)c;
        std::vector<uint32_t> e = exponents(mono);
        uint32_t s = 0;
        for (uint32_t ek : e) s += ek;
        deg = std::max(deg, s);
    }
    return deg;
}

std::string PBWContext::monomial_string(uint32_t index) const {
    std::vector<uint32_t> e = exponents(index);
    std::string s;
    for (size_t k = 0; k < e.size(); ++k) {
        if (!e[k]) continue;
        if (!s.empty()) s += "*";
        s += L_.names[order_[k]];
        if (e[k] > 1) s += "^" + std::to_string(e[k]);
    }
    return s.empty() ? "1" : s;
}

std::string PBWContext::to_string(const UElement& u) const {
    if (u.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : u) {
        std::string cs = supenv::to_string(c, L_.field);
        std::string ms = monomial_string(mono);
        if (!s.empty()) s += " + ";
        if (ms == "1") {
            s += cs;
        } else if (cs == "1") {
            s += ms;
        } else {
            bool wrap = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
            s += (wrap ? "(" + cs + ")" : cs) + "*" + ms;
        }
    }
    return s;
}

uint64_t pbw_dimension(const RestrictedLieSuperalgebra& L) {
    uint64_t d = 1;
    for (uint32_t i = 0; i < L.n; ++i) {
        if (d > UINT64_MAX / L.field.p) throw BudgetExceeded("PBW dimension overflows");
        d *= L.field.p;
    }
    for (uint32_t j = 0; j < L.m; ++j) {
        if (d > UINT64_MAX / 2) throw BudgetExceeded("PBW dimension overflows");
        d *= 2;
    }
    return d;
}

Ideal ideal_generated(PBWContext& ctx, const std::vector<UElement>& gens) {
    EchelonBuilder space(ctx.algebra().field, static_cast<uint32_t>(ctx.dimension()));
    std::vector<UElement> spanning;
    std::deque<UElement> queue;
    for (const auto& g : gens) {
        if (space.insert(g)) {
            spanning.push_back(g);
            queue.push_back(g);
        }
    }
    // BFS over single-letter products; a product already in the current span
    // stays in the final span, so only rank-growing products need expanding
    while (!queue.empty()) {
        UElement u = std::move(queue.front());
        queue.pop_front();
        for (uint32_t pos = 0; pos < ctx.generators(); ++pos) {
            for (UElement w : {ctx.rmul_letter(u, pos), ctx.lmul_letter(pos, u)}) {
                if (w.empty()) continue;
                if (space.insert(w)) {
                    spanning.push_back(w);
                    queue.push_back(w);
                }
            }
        }
    }
    return Ideal{std::move(space), gens, std::move(spanning)};
}

Ideal commutator_ideal(PBWContext& ctx, bool dual_route_check) {
    std::vector<UElement> gens;
    for (uint32_t i = 0; i < ctx.generators(); ++i)
        for (uint32_t j = i + 1; j < ctx.generators(); ++j) {
            UElement c = ctx.super_commutator(ctx.letter(i), ctx.letter(j));
            if (!c.empty()) gens.push_back(std::move(c));
        }
    Ideal I = ideal_generated(ctx, gens);
    if (dual_route_check) {
        if (ctx.dimension() > 512)
            throw BudgetExceeded("basis-pair commutator route needs a small PBW basis");
        const uint32_t D = static_cast<uint32_t>(ctx.dimension());
        const FieldElement one = FieldElement::one(ctx.algebra().field);
        std::vector<UElement> pair_gens;
        for (uint32_t a = 0; a < D; ++a)
            for (uint32_t b = a + 1; b < D; ++b) {
                UElement c = ctx.super_commutator(UElement{{a, one}}, UElement{{b, one}});
                if (!c.empty()) pair_gens.push_back(std::move(c));
            }
        Ideal J = ideal_generated(ctx, pair_gens);
        bool same = I.space.rank() == J.space.rank();
        for (size_t k = 0; same && k < J.space.rows().size(); ++k)
            same = I.space.contains(J.space.rows()[k]);
        if (!same) throw Error("commutator ideal routes disagree");
    }
    return I;
}

Ideal augmentation_ideal(PBWContext& ctx) {
    const FieldSpec& f = ctx.algebra().field;
    const uint32_t D = static_cast<uint32_t>(ctx.dimension());
    EchelonBuilder space(f, D);
    std::vector<UElement> spanning;
    spanning.reserve(D - 1);
    for (uint32_t k = 1; k < D; ++k) {
        UElement mono = unit_vec(f, k);
        space.insert(mono);
        spanning.push_back(std::move(mono));
    }
    std::vector<UElement> gens;
    for (uint32_t pos = 0; pos < ctx.generators(); ++pos)
        gens.push_back(ctx.letter(pos));
    return Ideal{std::move(space), std::move(gens), std::move(spanning)};
}

IdealChain ideal_power_chain(PBWContext& ctx, const Ideal& I, bool use_hint,
                             bool keep_terms) {
    const FieldSpec& f = ctx.algebra().field;
    const uint32_t D = static_cast<uint32_t>(ctx.dimension());

    const std::vector<UElement>& stab =
        I.spanning.empty() ? I.space.rows() : I.spanning;
    for (const auto& s : stab)
        for (uint32_t pos = 0; pos < ctx.generators(); ++pos)
            if (!I.space.contains(ctx.rmul_letter(s, pos)) ||
                !I.space.contains(ctx.lmul_letter(pos, s)))
                throw NotAnIdeal("subspace is not multiplication-stable in u(L)");

    IdealChain out;
    out.dims.push_back(I.space.rank());
    if (keep_terms) out.terms.push_back(I.space.finalize());
    if (I.space.rank() == 0) {
        out.nilpotent = true;
        out.index = 1;
        return out;
    }

    const bool hint = use_hint && !I.generators.empty();
    uint32_t cur_rank = I.space.rank();
    std::vector<UElement> cur_span = stab;

    while (true) {
        EchelonBuilder next(f, D);
        std::vector<UElement> next_span;
        if (hint) {
            std::deque<UElement> queue;
            for (const auto& s : cur_span)
                for (const auto& g : I.generators) {
                    UElement w = ctx.multiply(s, g);
                    if (!w.empty() && next.insert(w)) {
                        next_span.push_back(w);
                        queue.push_back(std::move(w));
                    }
                }
            while (!queue.empty()) {
                UElement u = std::move(queue.front());
                queue.pop_front();
                for (uint32_t pos = 0; pos < ctx.generators(); ++pos) {
                    UElement w = ctx.rmul_letter(u, pos);
                    if (!w.empty() && next.insert(w)) {
                        next_span.push_back(w);
                        queue.push_back(std::move(w));
                    }
                }
            }
            if (D <= 128) {
                // cross-check the hinted step against the generic product
                EchelonBuilder plain(f, D);
                for (const auto& r : cur_span)
                    for (const auto& s : stab)
                        plain.insert(ctx.multiply(r, s));
                bool same = plain.rank() == next.rank();
                for (size_t k = 0; same && k < plain.rows().size(); ++k)
                    same = next.contains(plain.rows()[k]);
                if (!same) throw Error("ideal power routes disagree");
            }
        } else {
            // I^k·I is already two-sided, so the products alone span it
            for (const auto& r : cur_span)
                for (const auto& s : stab) {
                    UElement w = ctx.multiply(r, s);
                    if (!w.empty() && next.insert(w)) next_span.push_back(std::move(w));
                }
        }

        out.dims.push_back(next.rank());
        if (keep_terms) out.terms.push_back(next.finalize());
        if (next.rank() == 0) {
            out.nilpotent = true;
            out.index = static_cast<uint32_t>(out.dims.size());
            return out;
        }
        if (next.rank() == cur_rank) {
            // the chain is descending, so equal rank means a fixed point
            out.stable_basis = next.rows();
            return out;
        }
        cur_rank = next.rank();
        cur_span = std::move(next_span);
    }
}

/// Least k with u^k = 0, or nullopt. If some power falls into the span of
/// the earlier ones before reaching zero, the minimal polynomial has a
/// nonzero lower coefficient and u cannot be nilpotent.
std::optional<uint32_t> nil_index_of(PBWContext& ctx, const UElement& u) {
    if (u.empty()) return 1u;
    EchelonBuilder powers(ctx.algebra().field, static_cast<uint32_t>(ctx.dimension()));
    UElement cur = u;
    uint32_t k = 1;
    while (true) {
        if (cur.empty()) return k;
        if (!powers.insert(cur)) return std::nullopt;
        cur = ctx.multiply(cur, u);
        ++k;
    }
}

NilProbe nil_index_probe(PBWContext& ctx, const Ideal& I,
                         std::optional<SampledScan> sampled) {
    const FieldSpec& f = ctx.algebra().field;
    NilProbe out;

    auto consider = [&](const UElement& u) -> bool {
        std::optional<uint32_t> k = nil_index_of(ctx, u);
        if (!k) {
            out.all_nilpotent = false;
            out.witness = u;
            return false;
        }
        if (*k > out.max_index) {
            out.max_index = *k;
            out.witness = u;
        }
        return true;
    };

    const std::vector<UElement>& rows = I.space.rows();
    if (!sampled) {
        if (!f.finite())
            throw ExhaustionUnavailable("cannot enumerate an ideal over an infinite field");
        const uint32_t dim = I.space.rank();
        uint64_t total = 1;
        for (uint32_t i = 0; i < dim; ++i) {
            total *= f.p;
            if (total > 100000)
                throw BudgetExceeded("ideal has too many elements to enumerate");
        }
        std::vector<uint32_t> digits(dim, 0);
        for (uint64_t step = 1; step < total; ++step) {
            uint32_t pos = 0;
            while (true) {
                if (++digits[pos] < f.p) break;
                digits[pos] = 0;
                ++pos;
            }
            Accum acc;
            for (uint32_t i = 0; i < dim; ++i)
                if (digits[i]) acc.add(FieldElement::integer(f, digits[i]), rows[i]);
            if (!consider(acc.take())) return out;
        }
        out.complete = true;
        return out;
    }

    std::vector<UElement> pool = I.generators;
    const size_t cap = 500;
    for (const auto& s : I.spanning) {
        if (pool.size() >= cap) break;
        pool.push_back(s);
    }
    for (const auto& r : rows) {
        if (pool.size() >= cap) break;
        pool.push_back(r);
    }
    for (size_t i = 0; i < I.generators.size(); ++i)
        for (size_t j = i + 1; j < I.generators.size(); ++j) {
            pool.push_back(sv_add(I.generators[i], I.generators[j]));
            pool.push_back(axpy(I.generators[i], FieldElement::integer(f, f.p - 1),
                                I.generators[j]));
        }
    std::mt19937_64 rng = seeded_rng(sampled->seed, "nil_index_probe",
                                     ctx.algebra().instance_hash());
    const std::vector<UElement>& mix = I.spanning.empty() ? rows : I.spanning;
    for (uint32_t t = 0; t < sampled->count && !mix.empty(); ++t) {
        Accum acc;
        uint32_t picks = 2 + static_cast<uint32_t>(rng() % 3);
        for (uint32_t s = 0; s < picks; ++s)
            acc.add(random_field_element(rng, f), mix[rng() % mix.size()]);
        pool.push_back(acc.take());
    }
    for (const auto& u : pool)
        if (!consider(u)) return out;
    return out;
}

RegularRepresentation::RegularRepresentation(const RestrictedLieSuperalgebra& L,
                                             const Subspace& A) {
    const FieldSpec& f = L.field;
    QuotientResult q = quotient(L, A); // validates: homogeneous restricted ideal

    std::vector<SparseVec> a_even, a_odd;
    for (const auto& row : A.basis()) {
        bool odd = row.front().first >= L.n;
        for (const auto& [i, c] : row) {
            (void)c;
            if ((i >= L.n) != odd)
                throw NotHomogeneous("ideal basis row mixes parities");
        }
        (odd ? a_odd : a_even).push_back(row);
    }
    const uint32_t nA = static_cast<uint32_t>(a_even.size());
    const uint32_t mA = static_cast<uint32_t>(a_odd.size());
    nc_ = L.n - nA;
    mc_ = L.m - mA;

    std::vector<uint32_t> comp_even, comp_odd;
    for (uint32_t c : q.complement) (c < L.n ? comp_even : comp_odd).push_back(c);

    auto row_name = [&](const SparseVec& row) -> std::string {
        if (row.size() == 1 && row.front().second.is_one())
            return L.names[row.front().first];
        return "(" + supenv::to_string(L, L.from_coords(row)) + ")";
    };

    new_basis_.clear();
    std::vector<std::string> names;
    for (uint32_t c : comp_even) {
        new_basis_.push_back(unit_vec(f, c));
        names.push_back(L.names[c]);
    }
    for (const auto& row : a_even) {
        new_basis_.push_back(row);
        names.push_back(row_name(row));
    }
    for (uint32_t c : comp_odd) {
        new_basis_.push_back(unit_vec(f, c));
        names.push_back(L.names[c]);
    }
    for (const auto& row : a_odd) {
        new_basis_.push_back(row);
        names.push_back(row_name(row));
    }

    const uint32_t d = L.dim();
    EchelonBuilder solver(f, 2 * d);
    for (uint32_t k = 0; k < d; ++k) {
        SparseVec row = new_basis_[k];
        row.emplace_back(d + k, FieldElement::one(f));
        solver.insert(std::move(row));
    }
    auto coords_of = [&](const SparseVec& v_old) -> SparseVec {
        SparseVec res = solver.reduce(v_old);
        SparseVec out;
        for (const auto& [i, c] : res) {
            if (i < d) throw Error("base change failed to span");
            out.emplace_back(i - d, -c);
        }
        return out;
    };
    auto lie_from_new = [&](const SparseVec& coords) -> LieElement {
        LieElement v{std::vector<FieldElement>(L.n, FieldElement::zero(f)),
                     std::vector<FieldElement>(L.m, FieldElement::zero(f))};
        for (const auto& [i, c] : coords)
            (i < L.n ? v.even[i] : v.odd[i - L.n]) = c;
        return v;
    };

    RestrictedLieSuperalgebra big;
    big.field = f;
    big.n = L.n;
    big.m = L.m;
    big.names = names;
    big.bracket_table.assign(d, std::vector<LieElement>(d, big.zero_element()));
    big.pmap_table.assign(L.n, big.zero_element());
    std::vector<LieElement> old_basis;
    for (uint32_t k = 0; k < d; ++k) old_basis.push_back(L.from_coords(new_basis_[k]));
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) {
            LieElement w = bracket(L, old_basis[i], old_basis[j]);
            big.bracket_table[i][j] = lie_from_new(coords_of(L.to_coords(w)));
        }
    for (uint32_t i = 0; i < L.n; ++i) {
        LieElement w = p_power(L, old_basis[i]);
        big.pmap_table[i] = lie_from_new(coords_of(L.to_coords(w)));
    }
    big.validate_shape();

    // PBW order: complement evens, complement odds, then A's generators
    std::vector<uint32_t> order;
    for (uint32_t k = 0; k < nc_; ++k) order.push_back(k);
    for (uint32_t k = 0; k < mc_; ++k) order.push_back(L.n + k);
    for (uint32_t k = 0; k < nA; ++k) order.push_back(nc_ + k);
    for (uint32_t k = 0; k < mA; ++k) order.push_back(L.n + mc_ + k);
    big_ = std::make_unique<PBWContext>(big, order);

    auto to_small = [&](const LieElement& v) -> LieElement {
        SparseVec coords = big.to_coords(v);
        LieElement s{std::vector<FieldElement>(nA, FieldElement::zero(f)),
                     std::vector<FieldElement>(mA, FieldElement::zero(f))};
        for (const auto& [i, c] : coords) {
            if (i < L.n) {
                if (i < nc_) throw NotAnIdeal("product escapes the ideal");
                s.even[i - nc_] = c;
            } else {
                if (i - L.n < mc_) throw NotAnIdeal("product escapes the ideal");
                s.odd[i - L.n - mc_] = c;
            }
        }
        return s;
    };
    auto big_index = [&](uint32_t a) -> uint32_t {
        return a < nA ? nc_ + a : L.n + mc_ + (a - nA);
    };

    RestrictedLieSuperalgebra small;
    small.field = f;
    small.n = nA;
    small.m = mA;
    for (uint32_t a = 0; a < nA + mA; ++a) small.names.push_back(names[big_index(a)]);
    small.bracket_table.assign(nA + mA, std::vector<LieElement>(nA + mA, small.zero_element()));
    small.pmap_table.assign(nA, small.zero_element());
    for (uint32_t a = 0; a < nA + mA; ++a)
        for (uint32_t b = 0; b < nA + mA; ++b)
            small.bracket_table[a][b] = to_small(big.bracket_table[big_index(a)][big_index(b)]);
    for (uint32_t a = 0; a < nA; ++a)
        small.pmap_table[a] = to_small(big.pmap_table[big_index(a)]);
    small.validate_shape();
    small_ = std::make_unique<PBWContext>(small);

    uint64_t r64 = 1;
    for (uint32_t i = 0; i < nc_; ++i) r64 *= f.p;
    for (uint32_t j = 0; j < mc_; ++j) r64 *= 2;
    r_ = static_cast<uint32_t>(r64); // big_'s cap already bounds this

    gen_image_.clear();
    for (uint32_t i = 0; i < d; ++i) {
        SparseVec coords = coords_of(unit_vec(f, i));
        gen_image_.push_back(big_->embed(lie_from_new(coords)));
    }
}

UElement RegularRepresentation::transport(PBWContext& src, const UElement& u) {
    if (src.generators() != gen_image_.size())
        throw DimensionMismatch("source context has a different generator count");
    Accum acc;
    for (const auto& [mono, c] : u) {
        UElement cur = big_->unit();
        std::vector<uint32_t> e = src.exponents(mono);
        for (uint32_t pos = 0; pos < e.size(); ++pos) {
            uint32_t old_idx = src.order()[pos];
            for (uint32_t t = 0; t < e[pos]; ++t)
                cur = big_->multiply(cur, gen_image_[old_idx]);
        }
        acc.add(c, cur);
    }
    return acc.take();
}

UMatrix RegularRepresentation::rho(const UElement& u_in_big) {
    UMatrix M;
    M.r = r_;
    M.entries.assign(static_cast<size_t>(r_) * r_, UElement{});
    const FieldSpec& f = big_->algebra().field;
    for (uint32_t j = 0; j < r_; ++j) {
        UElement col = big_->multiply(u_in_big, UElement{{j, FieldElement::one(f)}});
        for (const auto& [mono, c] : col) {
            uint32_t i = mono % r_;
            uint32_t a = mono / r_;
            M.at(i, j).emplace_back(a, c); // a ascends within each i
        }
    }
    return M;
}

UMatrix RegularRepresentation::matmul(const UMatrix& a, const UMatrix& b) {
    UMatrix M;
    M.r = r_;
    M.entries.assign(static_cast<size_t>(r_) * r_, UElement{});
    for (uint32_t i = 0; i < r_; ++i)
        for (uint32_t j = 0; j < r_; ++j) {
            UElement s;
            for (uint32_t k = 0; k < r_; ++k) {
                if (a.at(i, k).empty() || b.at(k, j).empty()) continue;
                s = sv_add(s, small_->multiply(a.at(i, k), b.at(k, j)));
            }
            M.at(i, j) = std::move(s);
        }
    return M;
}

UElement RegularRepresentation::apply_to_unit(const UMatrix& m) {
    UElement out;
    for (uint32_t i = 0; i < r_; ++i)
        for (const auto& [a, c] : m.at(i, 0))
            out.emplace_back(i + r_ * a, c);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

} // namespace supenv
