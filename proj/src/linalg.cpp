#include "supenv/linalg.hpp"

#include <algorithm>

namespace supenv {

SparseVec to_sparse(const std::vector<FieldElement>& dense) {
    SparseVec v;
    for (uint32_t i = 0; i < dense.size(); ++i)
        if (!dense[i].is_zero()) v.emplace_back(i, dense[i]);
    return v;
}

std::vector<FieldElement> to_dense(const FieldSpec& f, const SparseVec& v, uint32_t ambient) {
    std::vector<FieldElement> d(ambient, FieldElement::zero(f));
    for (const auto& [c, x] : v) {
        if (c >= ambient) throw DimensionMismatch("coordinate out of range");
        d[c] = x;
    }
    return d;
}

SparseVec unit_vec(const FieldSpec& f, uint32_t col) {
    return {{col, FieldElement::one(f)}};
}

SparseVec axpy(const SparseVec& v, const FieldElement& c, const SparseVec& w) {
    if (c.is_zero()) return v;
    SparseVec r;
    r.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() && j < w.size()) {
        if (v[i].first < w[j].first) r.push_back(v[i++]);
        else if (w[j].first < v[i].first) {
            r.emplace_back(w[j].first, c * w[j].second);
            ++j;
        } else {
            FieldElement s = v[i].second + c * w[j].second;
            if (!s.is_zero()) r.emplace_back(v[i].first, std::move(s));
            ++i; ++j;
        }
    }
    while (i < v.size()) r.push_back(v[i++]);
    while (j < w.size()) {
        r.emplace_back(w[j].first, c * w[j].second);
        ++j;
    }
    return r;
}

SparseVec sv_add(const SparseVec& v, const SparseVec& w) {
    if (w.empty()) return v;
    if (v.empty()) return w;
    return axpy(v, w[0].second / w[0].second, w); // one of the right field
}

SparseVec sv_scale(const FieldElement& c, const SparseVec& v) {
    if (c.is_zero()) return {};
    SparseVec r;
    r.reserve(v.size());
    for (const auto& [col, x] : v) {
        FieldElement y = c * x;
        if (!y.is_zero()) r.emplace_back(col, std::move(y));
    }
    return r;
}

SparseVec sv_neg(const SparseVec& v) {
    SparseVec r = v;
    for (auto& [col, x] : r) x = -x;
    return r;
}

bool sv_eq(const SparseVec& v, const SparseVec& w) {
    if (v.size() != w.size()) return false;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i].first != w[i].first || !(v[i].second == w[i].second)) return false;
    return true;
}

// ---- EchelonBuilder ------------------------------------------------------

EchelonBuilder::EchelonBuilder(FieldSpec f, uint32_t ambient)
    : f_(std::move(f)), ambient_(ambient) {}

SparseVec EchelonBuilder::reduce(SparseVec v) const {
    while (!v.empty()) {
        auto it = pivot_row_.find(v[0].first);
        if (it == pivot_row_.end()) break;
        v = axpy(v, -v[0].second, rows_[it->second]);
    }
    return v;
}

bool EchelonBuilder::insert(SparseVec v) {
    if (!v.empty() && v.back().first >= ambient_)
        throw DimensionMismatch("vector exceeds ambient dimension");
    v = reduce(std::move(v));
    if (v.empty()) return false;
    FieldElement inv = v[0].second.inverse();
    if (!inv.is_one()) v = sv_scale(inv, v);
    pivot_row_[v[0].first] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
}

Subspace EchelonBuilder::finalize() const {
    std::vector<SparseVec> rows = rows_;
    std::sort(rows.begin(), rows.end(),
              [](const SparseVec& a, const SparseVec& b) { return a[0].first < b[0].first; });
    // back-substitute: clear each pivot column from the rows above it
    for (size_t i = rows.size(); i-- > 0;) {
        uint32_t piv = rows[i][0].first;
        for (size_t j = 0; j < i; ++j) {
            auto it = std::lower_bound(rows[j].begin(), rows[j].end(), piv,
                                       [](const auto& e, uint32_t c) { return e.first < c; });
            if (it != rows[j].end() && it->first == piv)
                rows[j] = axpy(rows[j], -it->second, rows[i]);
        }
    }
    Subspace s(f_, ambient_);
    s.rows_ = std::move(rows);
    return s;
}

// ---- Subspace ------------------------------------------------------------

Subspace::Subspace(FieldSpec f, uint32_t ambient) : f_(std::move(f)), ambient_(ambient) {}

Subspace Subspace::span(const FieldSpec& f, uint32_t ambient,
                        const std::vector<SparseVec>& vectors) {
    EchelonBuilder eb(f, ambient);
    for (const auto& v : vectors) eb.insert(v);
    return eb.finalize();
}

void Subspace::check_ambient(const SparseVec& v) const {
    if (!v.empty() && v.back().first >= ambient_)
        throw DimensionMismatch("vector exceeds ambient dimension");
}

void Subspace::check_space(const Subspace& o) const {
    if (ambient_ != o.ambient_ || !(f_ == o.f_))
        throw DimensionMismatch("subspaces of different spaces");
}

SparseVec Subspace::reduce(SparseVec v) const {
    check_ambient(v);
    // pivot columns are increasing, so one left-to-right pass suffices
    for (const auto& row : rows_) {
        if (v.empty()) break;
        uint32_t piv = row[0].first;
        auto it = std::lower_bound(v.begin(), v.end(), piv,
                                   [](const auto& e, uint32_t c) { return e.first < c; });
        if (it != v.end() && it->first == piv) v = axpy(v, -it->second, row);
    }
    return v;
}

bool Subspace::member(const SparseVec& v) const { return reduce(v).empty(); }

bool Subspace::contains(const Subspace& o) const {
    check_space(o);
    for (const auto& row : o.rows_)
        if (!member(row)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    check_space(o);
    if (rows_.size() != o.rows_.size()) return false;
    for (size_t i = 0; i < rows_.size(); ++i)
        if (!sv_eq(rows_[i], o.rows_[i])) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    check_space(o);
    EchelonBuilder eb(f_, ambient_);
    for (const auto& r : rows_) eb.insert(r);
    for (const auto& r : o.rows_) eb.insert(r);
    return eb.finalize();
}

Subspace Subspace::intersect(const Subspace& o) const {
    check_space(o);
    // Zassenhaus: echelonize rows (u|u) for u in S and (w|0) for w in T;
    // rows with pivot in the right block span S ∩ T
    EchelonBuilder eb(f_, 2 * ambient_);
    for (const auto& u : rows_) {
        SparseVec both = u;
        both.reserve(2 * u.size());
        for (const auto& [c, x] : u) both.emplace_back(c + ambient_, x);
        eb.insert(std::move(both));
    }
    for (const auto& w : o.rows_) eb.insert(w);
    EchelonBuilder out(f_, ambient_);
    for (const auto& row : eb.rows()) {
        if (row[0].first < ambient_) continue;
        SparseVec v;
        v.reserve(row.size());
        for (const auto& [c, x] : row) v.emplace_back(c - ambient_, x);
        out.insert(std::move(v));
    }
    return out.finalize();
}

uint32_t Subspace::quotient_dim(const Subspace& o) const {
    check_space(o);
    if (!contains(o)) throw NotContained("quotient by a non-subspace");
    return dim() - o.dim();
}

Subspace kernel(const FieldSpec& f, const std::vector<SparseVec>& rows,
                uint32_t codomain_dim) {
    const uint32_t dom = static_cast<uint32_t>(rows.size());
    // echelonize (image | identity); rows with pivot in the identity block
    // record dependencies, i.e. kernel vectors
    EchelonBuilder eb(f, codomain_dim + dom);
    for (uint32_t i = 0; i < dom; ++i) {
        SparseVec aug = rows[i];
        aug.emplace_back(codomain_dim + i, FieldElement::one(f));
        eb.insert(std::move(aug));
    }
    EchelonBuilder out(f, dom);
    for (const auto& row : eb.rows()) {
        if (row[0].first < codomain_dim) continue;
        SparseVec v;
        v.reserve(row.size());
        for (const auto& [c, x] : row) v.emplace_back(c - codomain_dim, x);
        out.insert(std::move(v));
    }
    return out.finalize();
}

} // namespace supenv
