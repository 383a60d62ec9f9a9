#include "poislin/linsolve.hpp"

#include <algorithm>

#include "poislin/error.hpp"

namespace poislin {

namespace {

// Row-reduces in place; returns the pivot columns and the sign of the row swaps.
std::pair<std::vector<std::size_t>, int> row_reduce(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    int sign = 1;
    const std::size_t rows = m.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (is_zero(m[i][c])) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return {pivots, sign};
}

}  // namespace

std::size_t matrix_rank(RationalMatrix m) {
    if (m.empty()) return 0;
    return row_reduce(m, m[0].size()).first.size();
}

Rational determinant(RationalMatrix m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
    if (n == 0) return 1;
    auto [pivots, sign] = row_reduce(m, n);
    if (pivots.size() < n) return 0;
    Rational d = sign;
    for (std::size_t i = 0; i < n; ++i) d *= m[i][i];
    return d;
}

RationalMatrix matrix_inverse(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix aug(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw DimensionError("inverse of a non-square matrix");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(aug[p][c])) ++p;
        if (p == n) throw PreconditionError("matrix is singular");
        std::swap(aug[p], aug[c]);
        Rational inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || is_zero(aug[i][c])) continue;
            Rational f = aug[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    RationalMatrix out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

std::optional<std::vector<Rational>> solve_dense(const RationalMatrix& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw DimensionError("solve_dense: row count mismatch");
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    SparseSystem sys(cols);
    for (std::size_t i = 0; i < a.size(); ++i) {
        SparseSystem::Row row;
        for (std::size_t j = 0; j < cols; ++j)
            if (!is_zero(a[i][j])) row.emplace_back(j, a[i][j]);
        sys.add_equation(std::move(row), b[i]);
    }
    return sys.solve();
}

void SparseSystem::add_equation(Row row, const Rational& rhs_in) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Row merged;
    for (auto& e : row) {
        if (e.first >= columns_) throw DimensionError("sparse system: column out of range");
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const auto& e) { return is_zero(e.second); });
    Rational rhs = rhs_in;
    if (pivot_of_column_.empty()) pivot_of_column_.assign(columns_, -1);

    // Pivot k's row holds no pivot columns older than k, so one pass in
    // creation order clears every pivot column from the new row.
    Row scratch;
    for (const auto& pv : pivots_) {
        auto it = std::lower_bound(merged.begin(), merged.end(), pv.column,
                                   [](const auto& e, std::size_t c) { return e.first < c; });
        if (it == merged.end() || it->first != pv.column) continue;
        const Rational f = it->second;
        scratch.clear();
        scratch.reserve(merged.size() + pv.row.size());
        auto a = merged.begin();
        auto b = pv.row.begin();
        while (a != merged.end() || b != pv.row.end()) {
            if (b == pv.row.end() || (a != merged.end() && a->first < b->first)) {
                scratch.push_back(std::move(*a++));
            } else if (a == merged.end() || b->first < a->first) {
                scratch.emplace_back(b->first, -f * b->second);
                ++b;
            } else {
                Rational v = a->second - f * b->second;
                if (!is_zero(v)) scratch.emplace_back(a->first, std::move(v));
                ++a;
                ++b;
            }
        }
        rhs -= f * pv.rhs;
        merged.swap(scratch);
    }
    if (merged.empty()) {
        if (!is_zero(rhs)) consistent_ = false;
        return;
    }
    const Rational lead = merged.front().second;
    if (lead != 1) {
        for (auto& e : merged) e.second /= lead;
        rhs /= lead;
    }
    pivot_of_column_[merged.front().first] = static_cast<std::ptrdiff_t>(pivots_.size());
    pivots_.push_back({merged.front().first, std::move(merged), std::move(rhs)});
}

std::optional<std::vector<Rational>> SparseSystem::solve() const {
    if (!consistent_) return std::nullopt;
    std::vector<Rational> x(columns_);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        Rational v = it->rhs;
        for (std::size_t k = 1; k < it->row.size(); ++k) {
            const auto& [c, a] = it->row[k];
            if (!is_zero(x[c])) v -= a * x[c];
        }
        x[it->column] = std::move(v);
    }
    return x;
}

}  // namespace poislin
