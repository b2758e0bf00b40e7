#pragma once

// Exact sparse linear algebra over the rationals. Matrices are row-major and
// "span" always means row span.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/rational.hpp"

namespace qpot {

struct SparseEntry {
    std::uint32_t col;
    Rational value;
};

// Sorted by column, no zero values.
using SparseRow = std::vector<SparseEntry>;

namespace detail {

// a + factor * b, both sorted.
inline SparseRow axpy(const SparseRow& a, const Rational& factor, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            out.push_back({b[j].col, factor * b[j].value});
            ++j;
        } else {
            Rational v = a[i].value + factor * b[j].value;
            if (!v.is_zero()) out.push_back({a[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseRow normalized(SparseRow row) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.col < y.col; });
    SparseRow out;
    out.reserve(row.size());
    for (auto& e : row) {
        if (!out.empty() && out.back().col == e.col) {
            out.back().value += e.value;
        } else {
            out.push_back(std::move(e));
        }
    }
    std::erase_if(out, [](const SparseEntry& e) { return e.value.is_zero(); });
    return out;
}

} // namespace detail

class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    static SparseMatrix from_dense(std::size_t cols, const std::vector<std::vector<Rational>>& dense) {
        SparseMatrix m(0, cols);
        for (const auto& r : dense) {
            if (r.size() != cols) throw DimensionMismatch("dense row has wrong length");
            SparseRow row;
            for (std::size_t c = 0; c < cols; ++c) {
                if (!r[c].is_zero()) row.push_back({static_cast<std::uint32_t>(c), r[c]});
            }
            m.rows_.push_back(std::move(row));
        }
        return m;
    }

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({static_cast<std::uint32_t>(i), Rational(1)});
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    std::span<const SparseEntry> row(std::size_t r) const { return rows_.at(r); }
    const std::vector<SparseRow>& row_data() const { return rows_; }

    // Entries may arrive unsorted and with repeated columns; they are summed.
    void append_row(SparseRow row) {
        for (const auto& e : row) {
            if (e.col >= cols_) throw DimensionMismatch("column index out of range");
        }
        rows_.push_back(detail::normalized(std::move(row)));
    }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        if (r >= rows_.size() || c >= cols_) throw DimensionMismatch("index out of range");
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.col < col; });
        if (it != row.end() && it->col == c) {
            if (v.is_zero()) {
                row.erase(it);
            } else {
                it->value = v;
            }
        } else if (!v.is_zero()) {
            row.insert(it, {static_cast<std::uint32_t>(c), v});
        }
    }

    Rational at(std::size_t r, std::size_t c) const {
        if (r >= rows_.size() || c >= cols_) throw DimensionMismatch("index out of range");
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.col < col; });
        return (it != row.end() && it->col == c) ? it->value : Rational();
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (const auto& e : rows_[r]) t.rows_[e.col].push_back({static_cast<std::uint32_t>(r), e.value});
        }
        return t;
    }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows()) throw DimensionMismatch("matrix product of incompatible shapes");
        SparseMatrix out(0, b.cols_);
        for (const auto& row : a.rows_) {
            SparseRow acc;
            for (const auto& e : row) acc = detail::axpy(acc, e.value, b.rows_[e.col]);
            out.rows_.push_back(std::move(acc));
        }
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.cols_ || a.rows_.size() != b.rows_.size()) return false;
        for (std::size_t r = 0; r < a.rows_.size(); ++r) {
            const auto& x = a.rows_[r];
            const auto& y = b.rows_[r];
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i].col != y[i].col || x[i].value != y[i].value) return false;
            }
        }
        return true;
    }

  private:
    std::size_t cols_ = 0;
    std::vector<SparseRow> rows_;
};

// Incrementally maintained row-echelon basis. Each stored row has leading
// coefficient 1 at a column no other stored row leads at.
class RowEchelon {
  public:
    explicit RowEchelon(std::size_t cols) : cols_(cols), pivot_of_(cols, kNone) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return basis_.size(); }

    // Residue of `row` after eliminating every pivot it meets at its leading
    // position. Empty iff the row lies in the current span.
    SparseRow reduce(SparseRow row) const {
        while (!row.empty()) {
            const auto p = pivot_of_[row.front().col];
            if (p == kNone) break;
            const Rational factor = -row.front().value;
            row = detail::axpy(row, factor, basis_[p]);
        }
        return row;
    }

    // Returns true if the row enlarged the span.
    bool insert(SparseRow row) {
        check(row);
        row = reduce(std::move(row));
        if (row.empty()) return false;
        if (!row.front().value.is_one()) {
            const Rational inv = row.front().value.inverse();
            for (auto& e : row) e.value *= inv;
        }
        pivot_of_[row.front().col] = static_cast<std::uint32_t>(basis_.size());
        basis_.push_back(std::move(row));
        return true;
    }

    bool contains(SparseRow row) const {
        check(row);
        return reduce(std::move(row)).empty();
    }

  private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    void check(const SparseRow& row) const {
        if (!row.empty() && row.back().col >= cols_) throw DimensionMismatch("row does not fit the echelon width");
    }

    std::size_t cols_;
    std::vector<std::uint32_t> pivot_of_;
    std::vector<SparseRow> basis_;
};

// Builds an echelon basis of the row span, shortest rows first to limit fill-in.
inline RowEchelon echelon_of(const SparseMatrix& m) {
    std::vector<std::size_t> order(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto& rows = m.row_data();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
    RowEchelon e(m.cols());
    for (auto i : order) {
        if (!rows[i].empty()) e.insert(rows[i]);
    }
    return e;
}

inline std::size_t rank(const SparseMatrix& m) { return echelon_of(m).rank(); }

inline SparseRow to_sparse(std::span<const Rational> v) {
    SparseRow row;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!v[c].is_zero()) row.push_back({static_cast<std::uint32_t>(c), v[c]});
    }
    return row;
}

inline bool is_in_span(std::span<const Rational> v, const SparseMatrix& basis) {
    if (v.size() != basis.cols()) throw DimensionMismatch("vector length differs from basis column count");
    return echelon_of(basis).contains(to_sparse(v));
}

inline std::size_t quotient_dim(std::size_t ambient_dim, const SparseMatrix& subspace) {
    if (subspace.cols() != ambient_dim) throw DimensionMismatch("subspace columns differ from ambient dimension");
    return ambient_dim - rank(subspace);
}

} // namespace qpot
