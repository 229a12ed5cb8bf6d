#pragma once

#include "localg/fp.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <vector>

namespace localg {

/// Dense matrix over the prime field F_p.  Entries are residues in [0, p),
/// stored row-major.  All values are immutable in spirit: operations return
/// fresh matrices, and every exported basis is put in a canonical form (see
/// rref) so that repeated runs produce bit-identical results.
class FpMatrix {
public:
    FpMatrix() : p_(2), rows_(0), cols_(0) {}

    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), e_(rows * cols, 0) {
        fp::check_prime(p);
    }

    FpMatrix(std::uint32_t p, std::initializer_list<std::initializer_list<std::int64_t>> data)
        : p_(p), rows_(data.size()), cols_(data.size() ? data.begin()->size() : 0) {
        fp::check_prime(p);
        e_.reserve(rows_ * cols_);
        for (const auto& row : data) {
            if (row.size() != cols_) throw InputError("ragged initializer for FpMatrix");
            for (std::int64_t x : row) e_.push_back(static_cast<std::uint8_t>(fp::reduce(x, p_)));
        }
    }

    static FpMatrix identity(std::uint32_t p, std::size_t n) {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static FpMatrix zero(std::uint32_t p, std::size_t rows, std::size_t cols) {
        return FpMatrix(p, rows, cols);
    }

    /// Column vector from residues.
    static FpMatrix column(std::uint32_t p, const std::vector<std::uint32_t>& v) {
        FpMatrix m(p, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = static_cast<std::uint8_t>(v[i] % p);
        return m;
    }

    std::uint32_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    std::uint8_t& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return at(r, c); }

    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](std::uint8_t x) { return x == 0; });
    }

    FpMatrix transpose() const {
        FpMatrix t(p_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    FpMatrix operator+(const FpMatrix& o) const {
        require_same_shape(o);
        FpMatrix s(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            s.e_[i] = static_cast<std::uint8_t>((e_[i] + o.e_[i]) % p_);
        return s;
    }

    FpMatrix operator-(const FpMatrix& o) const {
        require_same_shape(o);
        FpMatrix s(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            s.e_[i] = static_cast<std::uint8_t>((e_[i] + p_ - o.e_[i]) % p_);
        return s;
    }

    FpMatrix operator*(const FpMatrix& o) const {
        if (p_ != o.p_) throw InputError("modulus mismatch in matrix product");
        if (cols_ != o.rows_) throw InputError("shape mismatch in matrix product");
        FpMatrix prod(p_, rows_, o.cols_);
        // i-k-j order with 64-bit row accumulators.
        std::vector<std::uint64_t> acc(o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = at(i, k);
                if (a == 0) continue;
                const std::uint8_t* row = &o.e_[k * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * row[j];
            }
            for (std::size_t j = 0; j < o.cols_; ++j)
                prod.at(i, j) = static_cast<std::uint8_t>(acc[j] % p_);
        }
        return prod;
    }

    FpMatrix scaled(std::uint32_t c) const {
        c %= p_;
        FpMatrix s(p_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i)
            s.e_[i] = static_cast<std::uint8_t>(e_[i] * c % p_);
        return s;
    }

    FpMatrix negated() const { return scaled(p_ - 1); }

    /// Horizontal concatenation [this | o].
    FpMatrix hcat(const FpMatrix& o) const {
        if (rows_ != o.rows_ || p_ != o.p_) throw InputError("hcat shape mismatch");
        FpMatrix m(p_, rows_, cols_ + o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
            for (std::size_t c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
        }
        return m;
    }

    /// Vertical concatenation [this; o].
    FpMatrix vcat(const FpMatrix& o) const {
        if (cols_ != o.cols_ || p_ != o.p_) throw InputError("vcat shape mismatch");
        FpMatrix m(p_, rows_ + o.rows_, cols_);
        std::copy(e_.begin(), e_.end(), m.e_.begin());
        std::copy(o.e_.begin(), o.e_.end(), m.e_.begin() + static_cast<std::ptrdiff_t>(e_.size()));
        return m;
    }

    FpMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
        FpMatrix m(p_, nrows, ncols);
        for (std::size_t r = 0; r < nrows; ++r)
            for (std::size_t c = 0; c < ncols; ++c) m.at(r, c) = at(r0 + r, c0 + c);
        return m;
    }

    FpMatrix column_at(std::size_t c) const { return submatrix(0, c, rows_, 1); }

    std::vector<std::uint32_t> column_vector(std::size_t c) const {
        std::vector<std::uint32_t> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    /// Kronecker (tensor) product.
    FpMatrix kron(const FpMatrix& o) const {
        if (p_ != o.p_) throw InputError("modulus mismatch in kron");
        FpMatrix m(p_, rows_ * o.rows_, cols_ * o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) {
                std::uint32_t a = at(r, c);
                if (a == 0) continue;
                for (std::size_t r2 = 0; r2 < o.rows_; ++r2)
                    for (std::size_t c2 = 0; c2 < o.cols_; ++c2)
                        m.at(r * o.rows_ + r2, c * o.cols_ + c2) =
                            static_cast<std::uint8_t>(a * o.at(r2, c2) % p_);
            }
        return m;
    }

    std::size_t entry_count() const { return e_.size(); }

private:
    void require_same_shape(const FpMatrix& o) const {
        if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw InputError("shape mismatch in matrix addition");
    }

    std::uint32_t p_;
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> e_;
};

inline std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
    os << m.rows() << "x" << m.cols() << " mod " << m.p() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << unsigned(m.at(r, c)) << (c + 1 < m.cols() ? " " : "");
        os << "\n";
    }
    return os;
}

struct RowReduction {
    FpMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form.  Pivot selection is leftmost nonzero column,
/// topmost row, so the result is the unique canonical rref and every basis
/// derived from it is reproducible.
inline RowReduction row_reduce(FpMatrix m) {
    const std::uint32_t p = m.p();
    RowReduction out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
        const std::uint32_t s = fp::inv(m.at(pivot_row, col), p);
        if (s != 1)
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(pivot_row, c) = static_cast<std::uint8_t>(m.at(pivot_row, c) * s % p);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row) continue;
            const std::uint32_t f = m.at(r, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = static_cast<std::uint8_t>((m.at(r, c) + (p - f) * m.at(pivot_row, c)) % p);
        }
        out.pivot_columns.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivot_columns.size();
    out.rref = std::move(m);
    return out;
}

inline std::size_t rank(const FpMatrix& m) { return row_reduce(m).rank; }

/// Basis of {v : m v = 0} as columns, derived from the canonical rref:
/// one column per free variable, in increasing free-column order.
inline FpMatrix nullspace(const FpMatrix& m) {
    const auto rr = row_reduce(m);
    const std::uint32_t p = m.p();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_columns) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMatrix basis(p, m.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const std::size_t fc = free_cols[j];
        basis.at(fc, j) = 1;
        for (std::size_t i = 0; i < rr.rank; ++i)
            basis.at(rr.pivot_columns[i], j) = static_cast<std::uint8_t>(fp::neg(rr.rref.at(i, fc), p));
    }
    return basis;
}

/// Solve m x = b (b a column); returns empty optional-style matrix (0 cols)
/// when inconsistent, otherwise one solution with free variables set to 0.
struct SolveResult {
    bool solvable = false;
    FpMatrix x; // column vector when solvable
};

inline SolveResult solve(const FpMatrix& m, const FpMatrix& b) {
    if (b.rows() != m.rows() || b.cols() != 1) throw InputError("solve: rhs has wrong shape");
    const auto rr = row_reduce(m.hcat(b));
    SolveResult res;
    for (std::size_t c : rr.pivot_columns)
        if (c == m.cols()) return res; // pivot in the augmented column
    res.solvable = true;
    res.x = FpMatrix(m.p(), m.cols(), 1);
    for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i)
        res.x.at(rr.pivot_columns[i], 0) = rr.rref.at(i, m.cols());
    return res;
}

/// Solve m X = B column by column; all-or-nothing.
inline SolveResult solve_many(const FpMatrix& m, const FpMatrix& B) {
    SolveResult res;
    res.x = FpMatrix(m.p(), m.cols(), B.cols());
    for (std::size_t c = 0; c < B.cols(); ++c) {
        auto one = solve(m, B.column_at(c));
        if (!one.solvable) return SolveResult{};
        for (std::size_t r = 0; r < m.cols(); ++r) res.x.at(r, c) = one.x.at(r, 0);
    }
    res.solvable = true;
    return res;
}

/// Canonical basis (as columns) of the column space: rref of the transpose,
/// nonzero rows transposed back.  Two subspaces are equal iff these agree.
inline FpMatrix column_space(const FpMatrix& m) {
    const auto rr = row_reduce(m.transpose());
    FpMatrix basis(m.p(), m.rows(), rr.rank);
    for (std::size_t i = 0; i < rr.rank; ++i)
        for (std::size_t r = 0; r < m.rows(); ++r) basis.at(r, i) = rr.rref.at(i, r);
    return basis;
}

/// True iff every column of v lies in the column span of basis.
inline bool in_span(const FpMatrix& basis, const FpMatrix& v) {
    if (basis.cols() == 0) return v.is_zero();
    return solve_many(basis, v).solvable;
}

inline bool same_subspace(const FpMatrix& a, const FpMatrix& b) {
    return column_space(a) == column_space(b);
}

/// Canonical basis of the sum of two column spans.
inline FpMatrix span_sum(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() == 0) return column_space(b);
    if (b.cols() == 0) return column_space(a);
    return column_space(a.hcat(b));
}

/// Representatives, inside the span of `cycles`, of a complement of the span
/// of `boundaries`.  Both inputs are column families; boundaries must lie in
/// the cycle span.  The choice is canonical: scan the cycle columns in order
/// and keep those that enlarge the span of boundaries.
inline FpMatrix complement_in(const FpMatrix& cycles, const FpMatrix& boundaries) {
    FpMatrix cur = column_space(boundaries);
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < cycles.cols(); ++c) {
        FpMatrix cand = cur.hcat(cycles.column_at(c));
        if (rank(cand) > cur.cols()) {
            chosen.push_back(c);
            cur = column_space(cand);
        }
    }
    FpMatrix out(cycles.p(), cycles.rows(), chosen.size());
    for (std::size_t j = 0; j < chosen.size(); ++j)
        for (std::size_t r = 0; r < cycles.rows(); ++r) out.at(r, j) = cycles.at(r, chosen[j]);
    return out;
}

} // namespace localg
