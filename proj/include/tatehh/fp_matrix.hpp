#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tatehh/fp.hpp"

namespace tatehh {

// Dense matrix over F_p, row-major. All cohomology computations reduce to
// rank / solve / kernel / subquotient calls on this type, so the row
// operations below are the hot path of the whole library.
class FpMatrix {
public:
    FpMatrix() : p_(2), rows_(0), cols_(0) {}

    FpMatrix(int p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
        require_prime(p);
    }

    static FpMatrix identity(int p, std::size_t n) {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    fp_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    fp_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    fp_t* row(std::size_t r) { return a_.data() + r * cols_; }
    const fp_t* row(std::size_t r) const { return a_.data() + r * cols_; }

    void set_from_int(std::size_t r, std::size_t c, long long v) { at(r, c) = fp_of_int(v, p_); }

    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    FpMatrix transposed() const {
        FpMatrix t(p_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    FpMatrix operator*(const FpMatrix& o) const;

    std::vector<fp_t> apply(const std::vector<fp_t>& v) const;

    void swap_rows(std::size_t i, std::size_t j);
    void scale_row(std::size_t r, fp_t c);

private:
    int p_;
    std::size_t rows_, cols_;
    std::vector<fp_t> a_;
};

// dst -= c * src over n entries. Specialized loops for p = 2, 3 so the
// compiler can vectorize; generic path for larger primes.
inline void fp_axpy_sub(fp_t* __restrict__ d, const fp_t* __restrict__ s, std::size_t n, fp_t c,
                        int p) {
    if (c == 0) return;
    if (p == 2) {
        for (std::size_t k = 0; k < n; ++k) d[k] ^= s[k];
    } else if (p == 3 && c == 1) {
        // d - s == d + 2s mod 3, and d + 2s <= 6 fits in a byte
        for (std::size_t k = 0; k < n; ++k) {
            fp_t t = static_cast<fp_t>(d[k] + 2 * s[k]);
            t = static_cast<fp_t>(t >= 3 ? t - 3 : t);
            d[k] = static_cast<fp_t>(t >= 3 ? t - 3 : t);
        }
    } else if (p == 3 && c == 2) {
        for (std::size_t k = 0; k < n; ++k) {
            fp_t t = static_cast<fp_t>(d[k] + s[k]);
            d[k] = static_cast<fp_t>(t >= 3 ? t - 3 : t);
        }
    } else {
        const int m = p - c;
        for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<fp_t>((d[k] + m * s[k]) % p);
    }
}

inline void FpMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    fp_t* a = row(i);
    fp_t* b = row(j);
    for (std::size_t k = 0; k < cols_; ++k) std::swap(a[k], b[k]);
}

inline void FpMatrix::scale_row(std::size_t r, fp_t c) {
    fp_t* a = row(r);
    for (std::size_t k = 0; k < cols_; ++k) a[k] = static_cast<fp_t>(a[k] * c % p_);
}

inline FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    FpMatrix r(p_, rows_, o.cols());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            fp_t c = at(i, k);
            if (!c) continue;
            const fp_t* src = o.row(k);
            fp_t* dst = r.row(i);
            for (std::size_t j = 0; j < o.cols(); ++j)
                dst[j] = static_cast<fp_t>((dst[j] + c * src[j]) % p_);
        }
    return r;
}

inline std::vector<fp_t> FpMatrix::apply(const std::vector<fp_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
    std::vector<fp_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        long long acc = 0;
        const fp_t* r = row(i);
        for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * v[j];
        out[i] = static_cast<fp_t>(acc % p_);
    }
    return out;
}

struct RrefResult {
    std::size_t rank = 0;
    FpMatrix rref;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form with deterministic pivoting: first nonzero entry
// in column order. Every basis choice downstream inherits this determinism.
inline RrefResult rank_and_rref(FpMatrix a) {
    const int p = a.p();
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a.at(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(r, piv);
        fp_t v = a.at(r, c);
        if (v != 1) a.scale_row(r, fp_inv(v, p));
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && a.at(i, c) != 0) fp_axpy_sub(a.row(i), a.row(r), a.cols(), a.at(i, c), p);
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    res.rref = std::move(a);
    return res;
}

inline std::size_t rank_of(const FpMatrix& a) { return rank_and_rref(a).rank; }

// Incremental row echelon: rows are fed one at a time and reduced against
// the pivots collected so far. This is what makes kernel computations on the
// tall coboundary matrices tractable (they are processed row-by-row and only
// rank-many rows are ever kept).
class RowEchelon {
public:
    RowEchelon(int p, std::size_t cols) : p_(p), cols_(cols) { require_prime(p); }

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    // Reduce v in place against the current pivots.
    void reduce(std::vector<fp_t>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            fp_t c = v[pivots_[i]];
            if (c) fp_axpy_sub(v.data(), rows_[i].data(), cols_, c, p_);
        }
    }

    bool is_in_span(std::vector<fp_t> v) const {
        reduce(v);
        for (fp_t x : v)
            if (x) return false;
        return true;
    }

    // Insert one row; returns true if it enlarged the span.
    bool insert(std::vector<fp_t> v) {
        reduce(v);
        std::size_t lead = cols_;
        for (std::size_t k = 0; k < cols_; ++k)
            if (v[k]) {
                lead = k;
                break;
            }
        if (lead == cols_) return false;
        fp_t inv = fp_inv(v[lead], p_);
        if (inv != 1)
            for (auto& x : v) x = static_cast<fp_t>(x * inv % p_);
        // back-reduce existing rows so the basis stays fully reduced
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            fp_t c = rows_[i][lead];
            if (c) fp_axpy_sub(rows_[i].data(), v.data(), cols_, c, p_);
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

    const std::vector<std::vector<fp_t>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Null space of the matrix whose row space this echelon spans (columns
    // indexed like our rows' entries). Free variables iterate in column
    // order; each gets value 1 with pivots back-substituted.
    std::vector<std::vector<fp_t>> null_space_basis() const {
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots_) is_pivot[c] = true;
        std::vector<std::vector<fp_t>> basis;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<fp_t> v(cols_, 0);
            v[c] = 1;
            for (std::size_t i = 0; i < pivots_.size(); ++i)
                v[pivots_[i]] = fp_neg(rows_[i][c], p_);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int p_;
    std::size_t cols_;
    std::vector<std::vector<fp_t>> rows_;  // fully reduced, pivots ascending
    std::vector<std::size_t> pivots_;
};

// Solve A x = b; returns the solution with all free variables set to 0,
// or nullopt when b is outside the column space.
inline std::optional<std::vector<fp_t>> solve(const FpMatrix& a, const std::vector<fp_t>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
    FpMatrix aug(a.p(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult rr = rank_and_rref(std::move(aug));
    std::vector<fp_t> x(a.cols(), 0);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        if (rr.pivot_cols[i] == a.cols()) return std::nullopt;  // 0 = nonzero row
        x[rr.pivot_cols[i]] = rr.rref.at(i, a.cols());
    }
    return x;
}

// Basis of { v : A v = 0 }, as vectors of length cols. Count is
// cols - rank (rank-nullity; asserted by callers).
inline std::vector<std::vector<fp_t>> kernel_basis(const FpMatrix& a) {
    RowEchelon ech(a.p(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<fp_t> r(a.row(i), a.row(i) + a.cols());
        ech.insert(std::move(r));
        if (ech.rank() == a.cols()) break;
    }
    return ech.null_space_basis();
}

// Quotient span(Z)/span(B): coset representatives extending a basis of
// span(B) to one of span(Z), plus a projection onto quotient coordinates.
class Subquotient {
public:
    // Z, B given as vectors of length dim. Throws if span(B) is not
    // contained in span(Z).
    Subquotient(int p, std::size_t dim, const std::vector<std::vector<fp_t>>& z_vecs,
                const std::vector<std::vector<fp_t>>& b_vecs)
        : p_(p), dim_(dim) {
        RowEchelon zech(p, dim);
        for (const auto& z : z_vecs) zech.insert(z);
        for (const auto& b : b_vecs)
            if (!zech.is_in_span(b)) throw std::invalid_argument("subquotient: B not inside span(Z)");

        RowEchelon ech(p, dim);
        for (const auto& b : b_vecs)
            if (ech.insert(b)) sub_basis_.push_back(b);
        sub_rank_ = ech.rank();
        for (const auto& z : z_vecs)
            if (ech.insert(z)) reps_.push_back(z);

        build_projector();
    }

    std::size_t quotient_dim() const { return reps_.size(); }
    std::size_t ambient_dim() const { return dim_; }
    const std::vector<std::vector<fp_t>>& coset_reps() const { return reps_; }

    // Quotient coordinates of v; v must lie in span(Z).
    std::vector<fp_t> project(const std::vector<fp_t>& v) const {
        std::size_t k = sub_rank_ + reps_.size();
        std::vector<fp_t> picked(k);
        for (std::size_t i = 0; i < k; ++i) picked[i] = v[pivot_rows_[i]];
        std::vector<fp_t> coords = inv_.apply(picked);
        return std::vector<fp_t>(coords.begin() + sub_rank_, coords.end());
    }

    bool projects_to_zero(const std::vector<fp_t>& v) const {
        for (fp_t c : project(v))
            if (c) return false;
        return true;
    }

private:
    // Combined basis M = [sub_basis | reps] has full column rank; pick pivot
    // rows P with M[P,:] invertible and store its inverse, so projection is
    // a small matrix apply instead of an elimination per call.
    void build_projector() {
        std::size_t k = sub_rank_ + reps_.size();
        auto col = [&](std::size_t j) -> const std::vector<fp_t>& {
            return j < sub_rank_ ? sub_basis_[j] : reps_[j - sub_rank_];
        };
        RowEchelon ech(p_, k);
        pivot_rows_.clear();
        for (std::size_t r = 0; r < dim_ && ech.rank() < k; ++r) {
            std::vector<fp_t> row(k);
            for (std::size_t j = 0; j < k; ++j) row[j] = col(j)[r];
            if (ech.insert(std::move(row))) pivot_rows_.push_back(r);
        }
        if (ech.rank() != k) throw std::logic_error("subquotient: basis not independent");
        FpMatrix square(p_, k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) square.at(i, j) = col(j)[pivot_rows_[i]];
        inv_ = invert(square);
    }

    static FpMatrix invert(const FpMatrix& m) {
        std::size_t n = m.rows();
        FpMatrix aug(m.p(), n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, n + i) = 1;
        }
        RrefResult rr = rank_and_rref(std::move(aug));
        if (rr.rank != n) throw std::logic_error("invert: singular matrix");
        FpMatrix inv(m.p(), n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.rref.at(i, n + j);
        return inv;
    }

    int p_;
    std::size_t dim_;
    std::size_t sub_rank_ = 0;
    std::vector<std::vector<fp_t>> sub_basis_;  // independent subset of B, in input order
    std::vector<std::vector<fp_t>> reps_;       // coset representatives from Z, in input order
    std::vector<std::size_t> pivot_rows_;
    FpMatrix inv_;
};

}  // namespace tatehh
