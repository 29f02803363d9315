#pragma once

#include <vector>

#include "tatehh/cohomology.hpp"
#include "tatehh/diagonal.hpp"
#include "tatehh/maps.hpp"

namespace tatehh {

inline fp_t koszul_sign(int i, int j, int p) {
    long long prod = static_cast<long long>(i) * j;
    return (prod % 2 + 2) % 2 == 0 ? fp_t{1} : fp_neg(1, p);
}

// f cup g = (-1)^{ij} pairing . (f (x) g) . Gamma_{i,j}, evaluated on the
// kV-generators of X_{i+j}. f, g are bar cochains over the subgroup V.
inline std::vector<fp_t> cup_bar_cochain(TateContext& ctx, DiagonalStore& dia, int sub,
                                         const ModulePairing& pairing, int mod_m, int mod_n,
                                         int mod_l, int di, int dj,
                                         const std::vector<fp_t>& f, const std::vector<fp_t>& g) {
    const BarResolution& res = ctx.resolution();
    const SubgroupSlice& sl = ctx.slice(sub);
    const KGModule& mm = ctx.module(mod_m);
    const KGModule& mn = ctx.module(mod_n);
    const KGModule& ml = ctx.module(mod_l);
    const int m = res.m();
    const int p = res.p();
    CochainLayout lm = cochain_layout(res, sl, mm, di);
    CochainLayout ln = cochain_layout(res, sl, mn, dj);
    CochainLayout ll = cochain_layout(res, sl, ml, di + dj);
    const EqMap& gamma = dia.cell(di, dj);
    basis_idx ds = res.dim(dj);
    fp_t sign = koszul_sign(di, dj, p);

    std::vector<fp_t> out(ll.dim(), 0);
    std::vector<fp_t> va(mm.dim()), vb(mn.dim()), acc(ml.dim());
    for (basis_idx u = 0; u < ll.rank; ++u) {
        for (int c = 0; c < ll.cosets; ++c) {
            int celt = sl.reps[c];
            std::fill(acc.begin(), acc.end(), 0);
            for (const SparseTerm& term : gamma.cols[u]) {
                basis_idx ia = res.act_idx(celt, term.idx / ds);
                basis_idx ib = res.act_idx(celt, term.idx % ds);
                std::fill(va.begin(), va.end(), 0);
                cochain_value_accum(f, lm, sl, mm, ia, m, 1, va);
                bool any = false;
                for (fp_t x : va)
                    if (x) {
                        any = true;
                        break;
                    }
                if (!any) continue;
                std::fill(vb.begin(), vb.end(), 0);
                cochain_value_accum(g, ln, sl, mn, ib, m, 1, vb);
                fp_t cc = static_cast<fp_t>(term.c * sign % p);
                for (std::size_t i = 0; i < va.size(); ++i) {
                    if (!va[i]) continue;
                    for (std::size_t j = 0; j < vb.size(); ++j) {
                        fp_t w = static_cast<fp_t>(va[i] * vb[j] % p * cc % p);
                        if (w) pairing.pair_basis_accum(i, j, w, acc);
                    }
                }
            }
            std::size_t base = ll.block(u, c);
            for (std::size_t i = 0; i < ml.dim(); ++i) out[base + i] = acc[i];
        }
    }
    return out;
}

// The cyclic-backend cup: both inputs are periodic cochains (M-vectors) and
// the explicit 2-periodic diagonal supplies the coefficients.
inline std::vector<fp_t> cup_periodic_cochain(TateContext& ctx, int sub,
                                              const ModulePairing& pairing, int di, int dj,
                                              const std::vector<fp_t>& fval,
                                              const std::vector<fp_t>& gval) {
    PeriodicBackend& pb = ctx.periodic_backend(sub);
    const KGModule& mm = pairing.left();
    const KGModule& mn = pairing.right();
    const KGModule& ml = pairing.out();
    const int p = ctx.p();
    auto delta = pb.resolution().diagonal(di, dj);
    fp_t sign = koszul_sign(di, dj, p);
    std::vector<fp_t> out(ml.dim(), 0);
    for (int x = 0; x < pb.m; ++x) {
        std::vector<fp_t> ax = mm.act(pb.pow_elt[x], fval);
        for (int y = 0; y < pb.m; ++y) {
            fp_t c = static_cast<fp_t>(delta[x][y] * sign % p);
            if (!c) continue;
            std::vector<fp_t> by = mn.act(pb.pow_elt[y], gval);
            for (std::size_t i = 0; i < ax.size(); ++i) {
                if (!ax[i]) continue;
                for (std::size_t j = 0; j < by.size(); ++j) {
                    fp_t w = static_cast<fp_t>(ax[i] * by[j] % p * c % p);
                    if (w) pairing.pair_basis_accum(i, j, w, out);
                }
            }
        }
    }
    return out;
}

// Class-level cup over a common subgroup, dispatching on the subgroup's
// backend. The result is projected into the natural space at degree i+j.
inline CohomologyClass cup_classes(ClassOps& ops, DiagonalStore& dia,
                                   const ModulePairing& pairing, int mod_m, int mod_n, int mod_l,
                                   const CohomologyClass& a, const CohomologyClass& b) {
    TateContext& ctx = ops.ctx();
    if (a.space.sub != b.space.sub)
        throw std::invalid_argument("cup: classes over different subgroups");
    int sub = a.space.sub;
    int dt = a.degree + b.degree;
    Backend be = ctx.backend_for(sub);
    if (be == Backend::zero) {
        CohomologyClass out;
        out.space = SpaceKey{sub, mod_l, dt, Backend::zero};
        out.degree = dt;
        return out;
    }
    if (be == Backend::periodic) {
        // both representatives in periodic coordinates
        std::vector<fp_t> fa = a.space.backend == Backend::periodic
                                   ? a.rep
                                   : ctx.to_periodic(sub, mod_m, a.degree, a.rep);
        std::vector<fp_t> fb = b.space.backend == Backend::periodic
                                   ? b.rep
                                   : ctx.to_periodic(sub, mod_n, b.degree, b.rep);
        std::vector<fp_t> val = cup_periodic_cochain(ctx, sub, pairing, a.degree, b.degree, fa, fb);
        const CohomologySpace& sp = ctx.space(SpaceKey{sub, mod_l, dt, Backend::periodic});
        CohomologyClass out;
        out.space = sp.key;
        out.degree = dt;
        out.coords = sp.project(val);
        out.rep = std::move(val);
        return out;
    }
    std::vector<fp_t> f = ops.bar_rep(a);
    std::vector<fp_t> g = ops.bar_rep(b);
    std::vector<fp_t> u =
        cup_bar_cochain(ctx, dia, sub, pairing, mod_m, mod_n, mod_l, a.degree, b.degree, f, g);
    return ops.make(sub, mod_l, dt, u);
}

// Cochain-level cup over a subgroup with trivial coefficients, used by the
// product engine (results may live in degrees whose spaces are never built).
inline std::vector<fp_t> cup_trivial_cochain(TateContext& ctx, DiagonalStore& dia, int sub,
                                             const ModulePairing& trivial_pairing, int di, int dj,
                                             const std::vector<fp_t>& f,
                                             const std::vector<fp_t>& g) {
    Backend be = ctx.backend_for(sub);
    int k = ctx.trivial_module();
    if (be == Backend::zero) {
        CochainLayout lay =
            cochain_layout(ctx.resolution(), ctx.slice(sub), ctx.module(k), di + dj);
        return std::vector<fp_t>(lay.dim(), 0);
    }
    if (be == Backend::periodic) {
        std::vector<fp_t> fa = ctx.to_periodic(sub, k, di, f);
        std::vector<fp_t> fb = ctx.to_periodic(sub, k, dj, g);
        std::vector<fp_t> val = cup_periodic_cochain(ctx, sub, trivial_pairing, di, dj, fa, fb);
        return ctx.from_periodic(sub, k, di + dj, val);
    }
    return cup_bar_cochain(ctx, dia, sub, trivial_pairing, k, k, k, di, dj, f, g);
}

}  // namespace tatehh
