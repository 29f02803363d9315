#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tatehh/resolution.hpp"

namespace tatehh {

// ---------------------------------------------------------------------------
// Complete diagonal approximation Gamma : X -> X (x) X on the spliced bar
// resolution, materialized one component Gamma_{r,s} : X_{r+s} -> X_r (x) X_s
// at a time. Tensor indices are flat ia * dim(X_s) + ib with the diagonal
// action on both factors.
//
// Construction, by region:
//   r,s >= 0      Alexander-Whitney front-face/back-face formula.
//   r = 0, s < 0  the same single-term formula [] (x) x, which stays a chain
//                 map through the splice.
//   r <= -1       a closed form assembled from the contraction: the column
//                 r = -M has components
//                   x |-> sum_{g,t} (g[t])^dual (x) g S_t(g^{-1} x),
//                 S_t a nested twist of sigma by the tuple entries. Each E(r,s)
//                 identity for these columns reduces to d.sigma + sigma.d = 1.
//   r >= 1, s<=-1 eastward propagation: Gamma_{r,s} is the sigma-preimage of
//                 W = Gamma_{r-1,s} d - (-1)^{r-1} (1 (x) d) Gamma_{r-1,s+1},
//                 which enforces the chain identity E(r-1,s) exactly.
//
// The recursion order produced by the memoized cell() calls matches the
// consistency requirements of each step, so every built family extends a
// genuine complete diagonal; the test suite asserts the chain identities on
// every cell it touches.
// ---------------------------------------------------------------------------
class DiagonalStore {
public:
    explicit DiagonalStore(const BarResolution& res) : res_(&res) {}

    const BarResolution& resolution() const { return *res_; }

    basis_idx tensor_dim(int r, int s) const { return res_->dim(r) * res_->dim(s); }

    basis_idx tensor_act(int h, int r, int s, basis_idx idx) const {
        basis_idx ds = res_->dim(s);
        basis_idx ia = idx / ds, ib = idx % ds;
        return res_->act_idx(h, ia) * ds + res_->act_idx(h, ib);
    }

    const EqMap& cell(int r, int s) {
        auto key = std::make_pair(r, s);
        auto it = cells_.find(key);
        if (it != cells_.end()) return it->second;
        EqMap built = build_cell(r, s);
        return cells_.emplace(key, std::move(built)).first->second;
    }

    // Chain identity at (r, s):
    //   Gamma_{r,s} . d_{r+s+1}
    //     = (d_{r+1} (x) 1) Gamma_{r+1,s} + (-1)^r (1 (x) d_{s+1}) Gamma_{r,s+1}
    // checked on every kG-generator of X_{r+s+1}. Used by the test suite.
    bool check_equation(int r, int s) {
        const int p = res_->p();
        const EqMap& here = cell(r, s);
        const EqMap& east = cell(r + 1, s);
        const EqMap& north = cell(r, s + 1);
        const EqMap& d = res_->diff(r + s + 1);
        fp_t sign = (((r % 2) + 2) % 2 == 0) ? 1 : fp_neg(1, p);
        basis_idx ds = res_->dim(s);
        basis_idx ds1 = res_->dim(s + 1);
        for (basis_idx b = 0; b < res_->rank(r + s + 1); ++b) {
            SparseVec lhs;
            for (const SparseTerm& t : d.cols[b]) {
                basis_idx tt = t.idx / res_->m();
                int h = static_cast<int>(t.idx % res_->m());
                for (const SparseTerm& u : here.cols[tt])
                    lhs.push_back({tensor_act(h, r, s, u.idx), static_cast<fp_t>(u.c * t.c % p)});
            }
            sparse_normalize(lhs, p);

            SparseVec rhs;
            for (const SparseTerm& u : east.cols[b]) {
                basis_idx ia = u.idx / ds, ib = u.idx % ds;
                for (const SparseTerm& v : res_->diff_at(r + 1, ia))
                    rhs.push_back({v.idx * ds + ib, static_cast<fp_t>(v.c * u.c % p)});
            }
            for (const SparseTerm& u : north.cols[b]) {
                basis_idx ia = u.idx / ds1, ib = u.idx % ds1;
                for (const SparseTerm& v : res_->diff_at(s + 1, ib))
                    rhs.push_back(
                        {ia * ds + v.idx, static_cast<fp_t>(v.c * u.c % p * sign % p)});
            }
            sparse_normalize(rhs, p);
            if (!sparse_equal(lhs, rhs)) return false;
        }
        return true;
    }

    // (eps (x) eps) Gamma_{0,0} = eps
    bool check_augmentation() {
        const EqMap& g00 = cell(0, 0);
        if (g00.cols.size() != 1 || g00.cols[0].size() != 1) return false;
        return g00.cols[0][0].idx == 0 && g00.cols[0][0].c == 1;
    }

private:
    EqMap build_cell(int r, int s) {
        if (r >= 0 && s >= 0) return build_aw(r, s);
        if (r == 0) return build_column0(s);
        if (r < 0) return build_negative_column(r, s);
        return build_east(r, s);
    }

    // AW = front r-face (x) translated back s-face on bar tuples.
    EqMap build_aw(int r, int s) {
        const int m = res_->m();
        EqMap out;
        out.domain_rank = res_->rank(r + s);
        out.cols.resize(out.domain_rank);
        basis_idx ds = res_->dim(s);
        basis_idx pr = 1;
        for (int i = 0; i < r; ++i) pr *= m;
        for (basis_idx t = 0; t < out.domain_rank; ++t) {
            basis_idx front = t % pr;
            basis_idx back = t / pr;
            int pi = 0;  // product of the first r entries
            basis_idx ft = front;
            for (int i = 0; i < r; ++i) {
                pi = res_->group().mul(pi, static_cast<int>(ft % m));
                ft /= m;
            }
            basis_idx ia = front * m + 0;
            basis_idx ib = back * m + pi;
            out.cols[t] = SparseVec{{ia * ds + ib, 1}};
        }
        return out;
    }

    // Gamma_{0,s}(x) = [] (x) x on kG-generators, every s.
    EqMap build_column0(int s) {
        EqMap out;
        out.domain_rank = res_->rank(s);
        out.cols.resize(out.domain_rank);
        basis_idx ds = res_->dim(s);
        for (basis_idx t = 0; t < out.domain_rank; ++t)
            out.cols[t] = SparseVec{{0 * ds + t * res_->m(), 1}};
        return out;
    }

    // Columns r = -M: the nested-contraction closed form. For the tuple
    // (h_1, ..., h_{M-1}) the kernel is
    //   (-1)^{M(M-1)/2} sigma_{s-1} h_1 sigma_{s-2} h_2 ... sigma_{s-M} (h_1...h_{M-1})^{-1}
    // conjugated by g and paired with the dual basis vector (g[t])^dual.
    EqMap build_negative_column(int r, int s) {
        const int m = res_->m();
        const int M = -r;
        const FiniteGroup& grp = res_->group();
        EqMap out;
        out.domain_rank = res_->rank(r + s);
        out.cols.resize(out.domain_rank);
        basis_idx ds = res_->dim(s);
        basis_idx tuples = 1;
        for (int i = 0; i < M - 1; ++i) tuples *= m;
        // global sign (-1)^{M(M-1)/2}
        fp_t sign = ((M * (M - 1) / 2) % 2 == 0) ? 1 : fp_neg(1, res_->p());
        for (basis_idx dom = 0; dom < out.domain_rank; ++dom) {
            SparseVec col;
            basis_idx x0 = dom * m + 0;
            for (int g = 0; g < m; ++g) {
                for (basis_idx tt = 0; tt < tuples; ++tt) {
                    // digits of tt are h_1 (lowest) .. h_{M-1} (highest)
                    int prod = 0;
                    {
                        basis_idx w = tt;
                        for (int i = 0; i < M - 1; ++i) {
                            prod = grp.mul(prod, static_cast<int>(w % m));
                            w /= m;
                        }
                    }
                    std::optional<basis_idx> z = res_->act_idx(grp.inv(grp.mul(g, prod)), x0);
                    bool alive = true;
                    for (int step = 0; step < M && alive; ++step) {
                        auto nxt = res_->sigma(s - M + step, *z);
                        if (!nxt) {
                            alive = false;
                            break;
                        }
                        z = *nxt;
                        if (step < M - 1) {
                            // after sigma_{s-M+step} comes the twist by h_{M-1-step}
                            int hj = digit(tt, M - 2 - step);
                            z = res_->act_idx(hj, *z);
                        }
                    }
                    if (!alive) continue;
                    z = res_->act_idx(g, *z);
                    basis_idx ia = tt * m + g;
                    col.push_back({ia * ds + *z, sign});
                }
            }
            sparse_normalize(col, res_->p());
            out.cols[dom] = std::move(col);
        }
        return out;
    }

    int digit(basis_idx t, int pos0) const {  // 0-based digit
        const int m = res_->m();
        for (int i = 0; i < pos0; ++i) t /= m;
        return static_cast<int>(t % m);
    }

    // South strip: solve (d_r (x) 1) Gamma_{r,s} = W via the contraction on
    // the first factor, defined on kG-generators and extended equivariantly.
    EqMap build_east(int r, int s) {
        const int p = res_->p();
        const int m = res_->m();
        const EqMap& west = cell(r - 1, s);
        const EqMap& northwest = cell(r - 1, s + 1);
        const EqMap& d = res_->diff(r + s);
        basis_idx ds = res_->dim(s);
        basis_idx ds1 = res_->dim(s + 1);
        fp_t sign2 = (((r % 2) + 2) % 2 == 0) ? 1 : fp_neg(1, p);  // -(-1)^{r-1}
        EqMap out;
        out.domain_rank = res_->rank(r + s);
        out.cols.resize(out.domain_rank);
        for (basis_idx b = 0; b < out.domain_rank; ++b) {
            SparseVec w;
            // Gamma_{r-1,s} . d_{r+s} on the generator b
            for (const SparseTerm& t : d.cols[b]) {
                basis_idx tt = t.idx / m;
                int h = static_cast<int>(t.idx % m);
                for (const SparseTerm& u : west.cols[tt])
                    w.push_back({tensor_act(h, r - 1, s, u.idx),
                                 static_cast<fp_t>(u.c * t.c % p)});
            }
            // -(-1)^{r-1} (1 (x) d_{s+1}) Gamma_{r-1,s+1}
            for (const SparseTerm& u : northwest.cols[b]) {
                basis_idx ia = u.idx / ds1, ib = u.idx % ds1;
                for (const SparseTerm& v : res_->diff_at(s + 1, ib))
                    w.push_back({ia * ds + v.idx,
                                 static_cast<fp_t>(v.c * u.c % p * sign2 % p)});
            }
            sparse_normalize(w, p);
            // (sigma_{r-1} (x) 1)
            SparseVec col;
            for (const SparseTerm& u : w) {
                basis_idx ia = u.idx / ds, ib = u.idx % ds;
                auto l = res_->sigma(r - 1, ia);
                if (l) col.push_back({*l * ds + ib, u.c});
            }
            sparse_normalize(col, p);
            out.cols[b] = std::move(col);
        }
        return out;
    }

    const BarResolution* res_;
    std::map<std::pair<int, int>, EqMap> cells_;
};

}  // namespace tatehh
