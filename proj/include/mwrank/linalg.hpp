#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mwrank/rational.hpp"

namespace mw {

// Sparse vector: strictly increasing column indices with nonzero entries.
using SparseVec = std::vector<std::pair<std::size_t, Q>>;

// Incremental row echelon form. Rows are stored as primitive integer vectors
// and combined fraction-free; the pivot of a row is its smallest column. The
// set of pivot columns depends only on the row space, not on insertion order.
class Echelon {
public:
    explicit Echelon(std::size_t ncols) : ncols_(ncols) {}

    // Returns true if the row increased the rank.
    bool insert(const SparseVec& row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    std::vector<std::size_t> pivots() const;
    std::vector<std::size_t> free_columns() const;
    // Unique representative of v modulo the row space with zero pivot entries.
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

private:
    using IntRow = std::vector<std::pair<std::size_t, Z>>;
    std::size_t ncols_;
    std::map<std::size_t, IntRow> rows_;  // pivot column -> row
};

// Dense helpers used by the Taylor-jet and surface computations.
using DenseMatrix = std::vector<std::vector<Q>>;
std::size_t matrix_rank(const DenseMatrix& m);
// Basis of {x : m x = 0}.
std::vector<std::vector<Q>> nullspace(const DenseMatrix& m, std::size_t ncols);
// Some x with m x = b, or nullopt when b is outside the column span.
std::optional<std::vector<Q>> solve_linear(const DenseMatrix& m, std::size_t ncols, const std::vector<Q>& b);
// Bareiss determinant of an integer matrix.
Z determinant(std::vector<std::vector<Z>> m);

SparseVec to_sparse(const std::vector<Q>& dense);

}  // namespace mw
