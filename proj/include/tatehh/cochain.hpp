#pragma once

#include <stdexcept>
#include <vector>

#include "tatehh/fp_matrix.hpp"
#include "tatehh/group.hpp"
#include "tatehh/kg_module.hpp"
#include "tatehh/resolution.hpp"

namespace tatehh {

// The resolution of H viewed as a complex of free kV-modules for a subgroup
// V <= H. kG is free over kV with one generator per right coset Vg, so each
// X_d picks up kV-generators (t, c) with c the least-index coset
// representative.
struct SubgroupSlice {
    Subgroup v;
    std::vector<int> reps;      // right-coset representatives, ascending
    std::vector<int> cidx_of;   // g -> index of its coset rep
    std::vector<int> vpart_of;  // g -> v in V with g = v * rep

    SubgroupSlice() = default;

    SubgroupSlice(const FiniteGroup& h, Subgroup sub) : v(std::move(sub)) {
        reps = right_coset_reps(h, v);
        cidx_of.assign(h.order(), -1);
        vpart_of.assign(h.order(), -1);
        for (std::size_t ci = 0; ci < reps.size(); ++ci)
            for (int x : v.members) {
                int g = h.mul(x, reps[ci]);
                cidx_of[g] = static_cast<int>(ci);
                vpart_of[g] = x;
            }
    }

    int cosets() const { return static_cast<int>(reps.size()); }
};

// A cochain in Hom_{kV}(X_d, M), stored by its values on kV-generators:
// layout ((t * cosets + c) * dim(M) + mi). The module lives over the parent
// group; only actions of elements of V are ever applied to it here.
struct CochainLayout {
    basis_idx rank;  // kG-rank of X_d
    int cosets;
    std::size_t mdim;

    std::size_t dim() const { return static_cast<std::size_t>(rank) * cosets * mdim; }
    std::size_t block(basis_idx t, int c) const {
        return (static_cast<std::size_t>(t) * cosets + c) * mdim;
    }
};

inline CochainLayout cochain_layout(const BarResolution& res, const SubgroupSlice& slice,
                                    const KGModule& mod, int degree) {
    return CochainLayout{res.rank(degree), slice.cosets(), mod.dim()};
}

// Value of the cochain at an arbitrary k-basis element (t, g) of X_d,
// accumulated into out with coefficient coef: g = v*c, value = v . f(c b_t).
inline void cochain_value_accum(const std::vector<fp_t>& f, const CochainLayout& lay,
                                const SubgroupSlice& slice, const KGModule& mod, basis_idx flat,
                                int m, fp_t coef, std::vector<fp_t>& out) {
    basis_idx t = flat / m;
    int g = static_cast<int>(flat % m);
    int c = slice.cidx_of[g];
    int v = slice.vpart_of[g];
    std::size_t base = lay.block(t, c);
    for (std::size_t mi = 0; mi < lay.mdim; ++mi) {
        fp_t x = f[base + mi];
        if (x) mod.act_accum(v, mi, static_cast<fp_t>(x * coef % mod.p()), out);
    }
}

// Coboundary delta^d : Hom_{kV}(X_d, M) -> Hom_{kV}(X_{d+1}, M), i.e.
// precomposition with d_{d+1}. Assembled densely; the space constructions
// stream its rows.
inline FpMatrix coboundary_matrix(const BarResolution& res, const SubgroupSlice& slice,
                                  const KGModule& mod, int degree) {
    const int m = res.m();
    const int p = res.p();
    CochainLayout src = cochain_layout(res, slice, mod, degree);
    CochainLayout dst = cochain_layout(res, slice, mod, degree + 1);
    const EqMap& d = res.diff(degree + 1);
    FpMatrix out(p, dst.dim(), src.dim());
    for (basis_idx u = 0; u < dst.rank; ++u) {
        for (int c = 0; c < dst.cosets; ++c) {
            int celt = slice.reps[c];
            std::size_t row0 = dst.block(u, c);
            // (delta f)(c b_u) = f(c . d(b_u)); expand each term c*(t, h).
            for (const SparseTerm& term : d.cols[u]) {
                basis_idx t = term.idx / m;
                int h = static_cast<int>(term.idx % m);
                int g = res.group().mul(celt, h);
                int c2 = slice.cidx_of[g];
                int v = slice.vpart_of[g];
                std::size_t col0 = src.block(t, c2);
                const FpMatrix& act = mod.action(v);
                for (std::size_t mi = 0; mi < src.mdim; ++mi)
                    for (std::size_t mo = 0; mo < src.mdim; ++mo) {
                        fp_t a = act.at(mo, mi);
                        if (a)
                            out.at(row0 + mo, col0 + mi) = static_cast<fp_t>(
                                (out.at(row0 + mo, col0 + mi) + term.c * a) % p);
                    }
            }
        }
    }
    return out;
}

// Matrix-free application of the coboundary, for cocycle checks at degrees
// where the dense matrix would be wastefully large.
inline std::vector<fp_t> apply_coboundary(const BarResolution& res, const SubgroupSlice& slice,
                                          const KGModule& mod, int degree,
                                          const std::vector<fp_t>& f) {
    const int m = res.m();
    CochainLayout src = cochain_layout(res, slice, mod, degree);
    CochainLayout dst = cochain_layout(res, slice, mod, degree + 1);
    if (f.size() != src.dim()) throw std::invalid_argument("coboundary: cochain size mismatch");
    const EqMap& d = res.diff(degree + 1);
    std::vector<fp_t> out(dst.dim(), 0);
    std::vector<fp_t> acc(dst.mdim, 0);
    for (basis_idx u = 0; u < dst.rank; ++u)
        for (int c = 0; c < dst.cosets; ++c) {
            std::fill(acc.begin(), acc.end(), 0);
            int celt = slice.reps[c];
            for (const SparseTerm& term : d.cols[u]) {
                basis_idx acted = res.act_idx(celt, term.idx);
                cochain_value_accum(f, src, slice, mod, acted, m, term.c, acc);
            }
            std::size_t row0 = dst.block(u, c);
            for (std::size_t mi = 0; mi < dst.mdim; ++mi) out[row0 + mi] = acc[mi];
        }
    return out;
}

// Boundary of the homology complex M (x)_{kG} X_d ~ M^{rank d}; used by the
// ordinary-homology cross-checks only, so it stays G-level (V = G).
inline FpMatrix boundary_matrix(const BarResolution& res, const KGModule& mod, int degree) {
    const int m = res.m();
    const int p = res.p();
    const EqMap& d = res.diff(degree);
    std::size_t md = mod.dim();
    FpMatrix out(p, res.rank(degree - 1) * md, res.rank(degree) * md);
    for (basis_idx u = 0; u < res.rank(degree); ++u)
        for (const SparseTerm& term : d.cols[u]) {
            basis_idx t = term.idx / m;
            int h = static_cast<int>(term.idx % m);
            // m (x) h b_t = (h^{-1} m) (x) b_t
            const FpMatrix& act = mod.action(res.group().inv(h));
            for (std::size_t mi = 0; mi < md; ++mi)
                for (std::size_t mo = 0; mo < md; ++mo) {
                    fp_t a = act.at(mo, mi);
                    if (a)
                        out.at(t * md + mo, u * md + mi) =
                            static_cast<fp_t>((out.at(t * md + mo, u * md + mi) + term.c * a) % p);
                }
        }
    return out;
}

}  // namespace tatehh
