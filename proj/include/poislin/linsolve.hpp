#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "poislin/rational.hpp"

namespace poislin {

using RationalMatrix = std::vector<std::vector<Rational>>;

std::size_t matrix_rank(RationalMatrix m);
Rational determinant(RationalMatrix m);
/// Throws PreconditionError if singular.
RationalMatrix matrix_inverse(const RationalMatrix& m);
/// One solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_dense(const RationalMatrix& a, const std::vector<Rational>& b);

/// Sparse exact linear system solved by incremental row reduction.
///
/// Equations are reduced in insertion order against the pivot rows found so
/// far; a surviving row pivots on its lowest column index. The returned
/// solution sets every non-pivot column to zero, so the representative is
/// fully determined by the equation and column order.
class SparseSystem {
public:
    using Row = std::vector<std::pair<std::size_t, Rational>>;

    explicit SparseSystem(std::size_t columns) : columns_(columns) {}

    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return pivots_.size(); }
    bool consistent() const noexcept { return consistent_; }

    /// Entries in any order; repeated columns are summed.
    void add_equation(Row row, const Rational& rhs);

    /// nullopt if some equation reduced to 0 = nonzero.
    std::optional<std::vector<Rational>> solve() const;

private:
    struct Pivot {
        std::size_t column;
        Row row;  // sorted by column, pivot entry normalized to 1
        Rational rhs;
    };

    std::size_t columns_;
    std::vector<Pivot> pivots_;
    std::vector<std::ptrdiff_t> pivot_of_column_;
    bool consistent_ = true;
};

}  // namespace poislin
