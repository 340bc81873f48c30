#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "supenv/exactfield.hpp"

namespace supenv {

/// Sparse coordinate vector: (column, value) pairs sorted by column, values
/// nonzero. Columns index the declared basis of whatever space the caller is
/// working in; this module never interprets them.
using SparseVec = std::vector<std::pair<uint32_t, FieldElement>>;

SparseVec to_sparse(const std::vector<FieldElement>& dense);
std::vector<FieldElement> to_dense(const FieldSpec& f, const SparseVec& v, uint32_t ambient);
SparseVec unit_vec(const FieldSpec& f, uint32_t col);

/// v + c·w, dropping entries that cancel to zero.
SparseVec axpy(const SparseVec& v, const FieldElement& c, const SparseVec& w);
SparseVec sv_add(const SparseVec& v, const SparseVec& w);
SparseVec sv_scale(const FieldElement& c, const SparseVec& v);
SparseVec sv_neg(const SparseVec& v);
bool sv_eq(const SparseVec& v, const SparseVec& w);

class Subspace;

/// Incremental row-echelon accumulator. Rows are stored pivot-normalized but
/// not reduced above the pivot, so inserts stay cheap inside fixed-point
/// loops; finalize() produces the canonical subspace.
class EchelonBuilder {
public:
    EchelonBuilder(FieldSpec f, uint32_t ambient);

    /// Reduce v against current rows; absorb the residual if nonzero.
    /// Returns true when the rank grew.
    bool insert(SparseVec v);

    /// Residual of v after elimination (zero iff v in current span).
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
    uint32_t ambient() const { return ambient_; }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const FieldSpec& field() const { return f_; }

    Subspace finalize() const;

private:
    FieldSpec f_;
    uint32_t ambient_;
    std::vector<SparseVec> rows_;
    std::unordered_map<uint32_t, size_t> pivot_row_;
};

/// Subspace in canonical reduced row-echelon form: pivot columns strictly
/// increasing, pivots 1, pivot columns eliminated from all other rows.
/// Canonical form makes equality a structural comparison.
class Subspace {
public:
    Subspace(FieldSpec f, uint32_t ambient); // zero subspace

    static Subspace span(const FieldSpec& f, uint32_t ambient,
                         const std::vector<SparseVec>& vectors);

    uint32_t ambient() const { return ambient_; }
    uint32_t dim() const { return static_cast<uint32_t>(rows_.size()); }
    const std::vector<SparseVec>& basis() const { return rows_; }
    const FieldSpec& field() const { return f_; }

    bool member(const SparseVec& v) const;
    SparseVec reduce(SparseVec v) const; // residual against the basis
    bool contains(const Subspace& o) const;
    bool operator==(const Subspace& o) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;              // Zassenhaus
    uint32_t quotient_dim(const Subspace& o) const;           // NotContained

private:
    friend class EchelonBuilder;
    FieldSpec f_;
    uint32_t ambient_;
    std::vector<SparseVec> rows_;

    void check_ambient(const SparseVec& v) const;
    void check_space(const Subspace& o) const;
};

/// Null space of the linear map e_i ↦ rows[i] (domain dim = rows.size()).
Subspace kernel(const FieldSpec& f, const std::vector<SparseVec>& rows,
                uint32_t codomain_dim);

} // namespace supenv
