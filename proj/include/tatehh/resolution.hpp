#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tatehh/fp.hpp"
#include "tatehh/fp_matrix.hpp"
#include "tatehh/group.hpp"

namespace tatehh {

// ---------------------------------------------------------------------------
// Sparse vectors over the k-basis of a free kG-module term.
// A term X_d has kG-rank `rank` and k-basis indexed by t*m + g, where t is a
// generator label (a tuple index for bar terms, a dual-tuple index for
// negative terms) and g a group element; g * (t, g') = (t, gg').
// ---------------------------------------------------------------------------

using basis_idx = std::int64_t;

struct SparseTerm {
    basis_idx idx;
    fp_t c;
};

using SparseVec = std::vector<SparseTerm>;  // sorted by idx, coefficients nonzero

inline void sparse_normalize(SparseVec& v, int p) {
    std::sort(v.begin(), v.end(), [](const SparseTerm& a, const SparseTerm& b) { return a.idx < b.idx; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        basis_idx idx = v[i].idx;
        int acc = 0;
        while (i < v.size() && v[i].idx == idx) acc += v[i++].c;
        fp_t c = static_cast<fp_t>(acc % p);
        if (c) v[out++] = {idx, c};
    }
    v.resize(out);
}

inline bool sparse_equal(const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].idx != b[i].idx || a[i].c != b[i].c) return false;
    return true;
}

// Shape of one term: free kG-module of the given rank over a group of order m.
struct TermShape {
    basis_idx rank = 0;
    int m = 1;
    basis_idx dim() const { return rank * m; }
};

// An equivariant map out of a term, stored as one sparse column per
// kG-generator of the domain. Values of the full k-linear expansion follow by
// acting on the codomain, so codomain index arithmetic is supplied by the
// caller through small lambdas where needed.
struct EqMap {
    basis_idx domain_rank = 0;
    std::vector<SparseVec> cols;  // size domain_rank
};

// ---------------------------------------------------------------------------
// The spliced bar resolution of k over kG, windowed to degrees [lo, hi].
//
// Degree d >= 0: the unnormalized bar term, free on d-tuples of group
// elements (rank m^d). Degree d <= -1: the k-linear dual of X_{-d-1} with
// dual-tuple generators beta_t, beta_t(g b_s) = delta_{ts} delta_{g,1}.
// Differentials: the bar differential for d >= 1, the splice eta.eps at
// d = 0, and the plain transpose of d_{-d} below.
// ---------------------------------------------------------------------------
class BarResolution {
public:
    BarResolution(const FiniteGroup& g, int p, int lo, int hi)
        : g_(&g), p_(p), lo_(lo), hi_(hi) {
        require_prime(p);
        if (lo > -1 || hi < 1) throw std::invalid_argument("resolution window must contain [-1,1]");
        int m = g.order();
        pow_.push_back(1);
        int maxlen = std::max(hi, -lo) + 1;
        for (int i = 0; i < maxlen + 1; ++i) pow_.push_back(pow_.back() * m);
    }

    const FiniteGroup& group() const { return *g_; }
    int p() const { return p_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int m() const { return g_->order(); }

    basis_idx rank(int d) const {
        check_degree(d);
        return d >= 0 ? pow_[d] : pow_[-d - 1];
    }
    TermShape shape(int d) const { return TermShape{rank(d), m()}; }
    basis_idx dim(int d) const { return rank(d) * m(); }

    // d_d : X_d -> X_{d-1}; defined for lo+1 <= d <= hi.
    const EqMap& diff(int d) const {
        check_degree(d);
        check_degree(d - 1);
        auto it = diffs_.find(d);
        if (it != diffs_.end()) return it->second;
        EqMap dm = d >= 1 ? build_bar_diff(d) : (d == 0 ? build_splice() : build_dual_diff(d));
        return diffs_.emplace(d, std::move(dm)).first->second;
    }

    // Contraction sigma_d : X_d -> X_{d+1} with d.sigma + sigma.d = 1; it is
    // k-linear (not equivariant) and maps basis elements to at most one basis
    // element. Returns nullopt when the image is zero.
    std::optional<basis_idx> sigma(int d, basis_idx flat) const {
        const int mm = m();
        basis_idx t = flat / mm;
        int g = static_cast<int>(flat % mm);
        if (d >= 0) {
            // g[t] -> [g|t]
            return (g + t * mm) * mm + 0;
        }
        if (d == -1) {
            // (g[])^dual -> delta_{g,1} []
            if (g == 0) return basis_idx{0};
            return std::nullopt;
        }
        // dual of sigma_{-d-2}: nonzero only on beta-type basis elements
        if (g != 0) return std::nullopt;
        basis_idx u = t / mm;
        int h = static_cast<int>(t % mm);
        return u * mm + h;
    }

    // Augmentation eps : X_0 -> k, eps(g[]) = 1 for every g.
    fp_t augmentation(basis_idx flat) const {
        (void)flat;
        return 1;
    }

    // h * (t, g) = (t, hg) in every degree.
    basis_idx act_idx(int h, basis_idx flat) const {
        const int mm = m();
        basis_idx t = flat / mm;
        int g = static_cast<int>(flat % mm);
        return t * mm + g_->mul(h, g);
    }

    // Tuple utilities (little-endian digits; entry 1 is the lowest digit, so
    // prepending g to t gives g + t*m).
    int tuple_entry(basis_idx t, int pos) const {  // pos is 1-based
        for (int i = 1; i < pos; ++i) t /= m();
        return static_cast<int>(t % m());
    }

    // Full k-column of d_d at basis element (t, g): g * column(t).
    SparseVec diff_at(int d, basis_idx flat) const {
        const EqMap& dm = diff(d);
        const int mm = m();
        basis_idx t = flat / mm;
        int g = static_cast<int>(flat % mm);
        SparseVec out = dm.cols[t];
        if (g != 0)
            for (auto& term : out) term.idx = act_idx(g, term.idx);
        sparse_normalize(out, p_);
        return out;
    }

private:
    void check_degree(int d) const {
        if (d < lo_ || d > hi_) throw std::out_of_range("resolution: degree outside window");
    }

    EqMap build_bar_diff(int n) const {
        const int mm = m();
        EqMap dm;
        dm.domain_rank = rank(n);
        dm.cols.resize(dm.domain_rank);
        for (basis_idx t = 0; t < dm.domain_rank; ++t) {
            SparseVec col;
            // face 0: g1 [g2|...|gn]
            int g1 = static_cast<int>(t % mm);
            basis_idx tail = t / mm;
            col.push_back({tail * mm + g1, 1});
            // faces 1..n-1: merge entries i, i+1
            fp_t sign = 1;
            for (int i = 1; i <= n - 1; ++i) {
                sign = fp_neg(sign, p_);
                basis_idx lowpart = t % pow_[i - 1];
                basis_idx rest = t / pow_[i - 1];
                int ei = static_cast<int>(rest % mm);
                int ei1 = static_cast<int>((rest / mm) % mm);
                basis_idx high = rest / (static_cast<basis_idx>(mm) * mm);
                basis_idx merged = lowpart + (g_->mul(ei, ei1) + high * mm) * pow_[i - 1];
                if (sign) col.push_back({merged * mm + 0, sign});
            }
            // face n: drop the last entry
            sign = fp_neg(sign, p_);
            basis_idx dropped = t % pow_[n - 1];
            if (sign) col.push_back({dropped * mm + 0, sign});
            sparse_normalize(col, p_);
            dm.cols[t] = std::move(col);
        }
        return dm;
    }

    // d_0 = eta.eps : X_0 -> X_{-1}; [] -> sum_g (g[])^dual.
    EqMap build_splice() const {
        EqMap dm;
        dm.domain_rank = 1;
        SparseVec col;
        for (int g = 0; g < m(); ++g) col.push_back({g, 1});
        dm.cols.push_back(std::move(col));
        return dm;
    }

    // d_d for d <= -1 is the transpose of d_{-d} : X_{-d} -> X_{-d-1};
    // column at beta_t collects all k-basis elements of X_{-d} whose bar
    // image hits (t, e).
    EqMap build_dual_diff(int d) const {
        int n = -d;  // transposing d_n, n >= 1
        const int mm = m();
        const EqMap& bar = n == 0 ? diff(0) : diff(n);
        EqMap dm;
        dm.domain_rank = rank(d);  // = m^{n-1}
        dm.cols.resize(dm.domain_rank);
        for (basis_idx u = 0; u < bar.domain_rank; ++u) {
            for (const SparseTerm& term : bar.cols[u]) {
                basis_idx t = term.idx / mm;
                int g = static_cast<int>(term.idx % mm);
                // (t, g) appears in d_n(u); hence beta_t . d_n has coefficient
                // term.c at (u, g^{-1}) since g^{-1} moves (t,g) to (t,e).
                dm.cols[t].push_back({u * mm + g_->inv(g), term.c});
            }
        }
        for (auto& col : dm.cols) sparse_normalize(col, p_);
        return dm;
    }

    const FiniteGroup* g_;
    int p_;
    int lo_, hi_;
    std::vector<basis_idx> pow_;
    mutable std::map<int, EqMap> diffs_;
};

// ---------------------------------------------------------------------------
// The 2-periodic complete resolution of a cyclic group C_m = <a> with p | m:
// every term is kC_m itself, d is multiplication by (a - 1) in odd degrees
// and by the norm in even degrees. The splice map eta.eps coincides with the
// norm, so the complex is strictly periodic in all degrees.
// ---------------------------------------------------------------------------
class PeriodicResolution {
public:
    PeriodicResolution(int m, int p) : m_(m), p_(p) {
        if (m % p != 0) throw std::invalid_argument("periodic resolution requires p | m");
    }

    int m() const { return m_; }
    int p() const { return p_; }

    // d_d is multiplication by a - 1 when d is odd, by the norm when even.
    static bool diff_is_a_minus_1(int d) { return ((d % 2) + 2) % 2 == 1; }

    // d_d(e_d) as a kC element in power coordinates.
    std::vector<fp_t> diff_coeffs(int d) const {
        std::vector<fp_t> v(m_, 0);
        if (diff_is_a_minus_1(d)) {
            v[1] = fp_add(v[1], 1, p_);
            v[0] = fp_sub(v[0], 1, p_);
        } else {
            for (int i = 0; i < m_; ++i) v[i] = 1;
        }
        return v;
    }

    // Contraction tau with d.tau + tau.d = 1, valid in every degree:
    //   at even degrees  a^i e -> (1 + a + ... + a^{i-1}) e   (prefix sums)
    //   at odd degrees   a^i e -> delta_{i, m-1} e
    std::vector<fp_t> tau(int d, int i) const {
        std::vector<fp_t> v(m_, 0);
        if (((d % 2) + 2) % 2 == 0) {
            for (int l = 0; l < i; ++l) v[l] = 1;
        } else {
            if (i == m_ - 1) v[0] = 1;
        }
        return v;
    }

    // Complete diagonal component on the generator: coefficient matrix c with
    // Delta_{r,s}(e_{r+s}) = sum c[x][y] a^x e_r (x) a^y e_s. Verified against
    // the chain-map identities in the test suite; depends only on parities.
    std::vector<std::vector<fp_t>> diagonal(int r, int s) const {
        auto even = [](int d) { return ((d % 2) + 2) % 2 == 0; };
        std::vector<std::vector<fp_t>> c(m_, std::vector<fp_t>(m_, 0));
        if (even(r) && even(s)) {
            c[0][0] = 1;
        } else if (!even(r) && even(s)) {
            c[0][0] = 1;
        } else if (even(r) && !even(s)) {
            c[1 % m_][0] = 1;  // a e_r (x) e_s
        } else {
            for (int x = 0; x < m_; ++x)
                for (int y = 0; y < x; ++y) c[x][y] = fp_neg(1, p_);
        }
        return c;
    }

private:
    int m_;
    int p_;
};

}  // namespace tatehh
