// Bit-packed linear algebra over the two-element field.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace steenrod {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        if (v)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void xor_with(const BitVector& o) {
        if (o.size_ != size_) throw std::invalid_argument("BitVector: length mismatch in xor");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    // Index of the lowest set bit, or -1.
    long first_set() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<long>(i * 64 + __builtin_ctzll(words_[i]));
        return -1;
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    // Parity of <a, b>.
    static bool dot(const BitVector& a, const BitVector& b) {
        if (a.size_ != b.size_) throw std::invalid_argument("BitVector: length mismatch in dot");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
        return __builtin_popcountll(acc) & 1u;
    }

    bool operator==(const BitVector& o) const = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Dense matrix stored row-major; row addition is XOR.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows, BitVector(cols)), n_cols_(cols) {}
    explicit F2Matrix(std::vector<BitVector> rows, std::size_t n_cols)
        : rows_(std::move(rows)), n_cols_(n_cols) {
        for (const auto& r : rows_)
            if (r.size() != n_cols_) throw std::invalid_argument("F2Matrix: ragged rows");
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return n_cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }

private:
    std::vector<BitVector> rows_;
    std::size_t n_cols_ = 0;
};

struct EchelonForm {
    F2Matrix reduced;                    // reduced row-echelon form
    std::vector<std::size_t> pivot_cols; // strictly increasing
    std::size_t rank = 0;
};

// Reduced row-echelon form. Pivot choice: lowest column, then lowest
// remaining row, so results are reproducible.
inline EchelonForm echelonize(F2Matrix m) {
    const std::size_t R = m.n_rows(), C = m.n_cols();
    std::vector<std::size_t> pivots;
    std::size_t fill = 0;
    for (std::size_t c = 0; c < C && fill < R; ++c) {
        std::size_t r = fill;
        while (r < R && !m.get(r, c)) ++r;
        if (r == R) continue;
        if (r != fill) std::swap(m.row(r), m.row(fill));
        for (std::size_t r2 = 0; r2 < R; ++r2)
            if (r2 != fill && m.get(r2, c)) m.row(r2).xor_with(m.row(fill));
        pivots.push_back(c);
        ++fill;
    }
    EchelonForm out{std::move(m), std::move(pivots), 0};
    out.rank = out.pivot_cols.size();
    return out;
}

// Basis of {x : m x = 0}; one vector per non-pivot column.
inline std::vector<BitVector> kernel_basis(const F2Matrix& m) {
    EchelonForm ef = echelonize(m);
    const std::size_t C = m.n_cols();
    std::vector<bool> is_pivot(C, false);
    for (auto c : ef.pivot_cols) is_pivot[c] = true;
    std::vector<BitVector> out;
    for (std::size_t c = 0; c < C; ++c) {
        if (is_pivot[c]) continue;
        BitVector v(C);
        v.set(c);
        for (std::size_t r = 0; r < ef.rank; ++r)
            if (ef.reduced.get(r, c)) v.set(ef.pivot_cols[r]);
        out.push_back(std::move(v));
    }
    return out;
}

// Solves A c = t for a fixed set of columns A, reusable over many targets.
// Row-reduces [A | I] once; solving a target is one transform application.
class MembershipSolver {
public:
    explicit MembershipSolver(const std::vector<BitVector>& columns, std::size_t n_rows)
        : n_rows_(n_rows), n_cols_(columns.size()) {
        for (const auto& col : columns)
            if (col.size() != n_rows_)
                throw std::invalid_argument("MembershipSolver: column length mismatch");
        arows_.assign(n_rows_, BitVector(n_cols_));
        trows_.assign(n_rows_, BitVector(n_rows_));
        for (std::size_t j = 0; j < n_cols_; ++j)
            for (std::size_t r = 0; r < n_rows_; ++r)
                if (columns[j].get(r)) arows_[r].set(j);
        for (std::size_t r = 0; r < n_rows_; ++r) trows_[r].set(r);

        std::size_t fill = 0;
        for (std::size_t c = 0; c < n_cols_ && fill < n_rows_; ++c) {
            std::size_t r = fill;
            while (r < n_rows_ && !arows_[r].get(c)) ++r;
            if (r == n_rows_) continue;
            if (r != fill) {
                std::swap(arows_[r], arows_[fill]);
                std::swap(trows_[r], trows_[fill]);
            }
            for (std::size_t r2 = 0; r2 < n_rows_; ++r2) {
                if (r2 != fill && arows_[r2].get(c)) {
                    arows_[r2].xor_with(arows_[fill]);
                    trows_[r2].xor_with(trows_[fill]);
                }
            }
            pivot_cols_.push_back(c);
            ++fill;
        }
    }

    std::size_t rank() const { return pivot_cols_.size(); }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    // Coefficients supported on pivot columns, or nullopt if t is outside
    // the column span.
    std::optional<BitVector> solve(const BitVector& t) const {
        if (t.size() != n_rows_)
            throw std::invalid_argument("MembershipSolver: target length mismatch");
        BitVector c(n_cols_);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            bool u = BitVector::dot(trows_[r], t);
            if (r < pivot_cols_.size()) {
                if (u) c.set(pivot_cols_[r]);
            } else if (u) {
                return std::nullopt;
            }
        }
        return c;
    }

private:
    std::size_t n_rows_, n_cols_;
    std::vector<BitVector> arows_; // RREF of A
    std::vector<BitVector> trows_; // transform T with T A = RREF
    std::vector<std::size_t> pivot_cols_;
};

// One-shot wrapper: columns of `span` are the spanning vectors.
inline std::optional<BitVector> solve_membership(const F2Matrix& span, const BitVector& target) {
    if (target.size() != span.n_rows())
        throw std::invalid_argument("solve_membership: target length != number of rows");
    std::vector<BitVector> cols;
    cols.reserve(span.n_cols());
    for (std::size_t j = 0; j < span.n_cols(); ++j) {
        BitVector col(span.n_rows());
        for (std::size_t r = 0; r < span.n_rows(); ++r)
            if (span.get(r, j)) col.set(r);
        cols.push_back(std::move(col));
    }
    return MembershipSolver(cols, span.n_rows()).solve(target);
}

inline BitVector combine_columns(const std::vector<BitVector>& columns, const BitVector& coeffs,
                                 std::size_t n_rows) {
    BitVector out(n_rows);
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (coeffs.get(j)) out.xor_with(columns[j]);
    return out;
}

// Basis of span(a) ∩ span(b), both given as column lists of common length.
inline std::vector<BitVector> column_space_intersection(const std::vector<BitVector>& a,
                                                        const std::vector<BitVector>& b,
                                                        std::size_t n_rows) {
    F2Matrix stacked(n_rows, a.size() + b.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t r = 0; r < n_rows; ++r)
            if (a[j].get(r)) stacked.set(r, j);
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t r = 0; r < n_rows; ++r)
            if (b[j].get(r)) stacked.set(r, a.size() + j);
    std::vector<BitVector> raw;
    for (const auto& k : kernel_basis(stacked)) {
        BitVector coeffs(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            if (k.get(j)) coeffs.set(j);
        BitVector v = combine_columns(a, coeffs, n_rows);
        if (v.any()) raw.push_back(std::move(v));
    }
    // reduce to a basis
    F2Matrix rows(raw.size(), n_rows);
    for (std::size_t i = 0; i < raw.size(); ++i) rows.row(i) = raw[i];
    EchelonForm ef = echelonize(rows);
    std::vector<BitVector> out;
    for (std::size_t r = 0; r < ef.rank; ++r) out.push_back(ef.reduced.row(r));
    return out;
}

} // namespace steenrod
