#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tatehh/cohomology.hpp"

namespace tatehh {

// Left coset representatives of W inside V (both subgroups of the ambient
// group): least-index c per coset cW, so V = union of c W.
inline std::vector<int> left_coset_reps_in(const FiniteGroup& h, const Subgroup& v,
                                           const Subgroup& w) {
    std::vector<bool> covered(h.order(), false);
    std::vector<int> reps;
    for (int x : v.members) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int m : w.members) covered[h.mul(x, m)] = true;
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Cochain-level operations. Everything here acts on bar cochains in the
// layout of cochain.hpp; class-level wrappers live in ClassOps below.
// ---------------------------------------------------------------------------

// cor^V_W f (W <= V): (cor f)(p) = sum_{c in reps} c f(c^{-1} p), evaluated on
// the kV-generators of X_d. A custom rep set can be supplied to check
// representative independence.
inline std::vector<fp_t> corestrict_cochain(TateContext& ctx, int sub_w, int sub_v, int mod,
                                            int d, const std::vector<fp_t>& f,
                                            const std::vector<int>* reps_override = nullptr) {
    const FiniteGroup& h = ctx.group();
    const BarResolution& res = ctx.resolution();
    const SubgroupSlice& sw = ctx.slice(sub_w);
    const SubgroupSlice& sv = ctx.slice(sub_v);
    const KGModule& mm = ctx.module(mod);
    std::vector<int> reps =
        reps_override ? *reps_override : left_coset_reps_in(h, sv.v, sw.v);
    CochainLayout lw = cochain_layout(res, sw, mm, d);
    CochainLayout lv = cochain_layout(res, sv, mm, d);
    std::vector<fp_t> out(lv.dim(), 0);
    std::vector<fp_t> inner(mm.dim(), 0), acted(mm.dim(), 0);
    for (basis_idx t = 0; t < lv.rank; ++t)
        for (int c = 0; c < lv.cosets; ++c) {
            std::size_t base = lv.block(t, c);
            for (int rep : reps) {
                std::fill(inner.begin(), inner.end(), 0);
                basis_idx x = t * res.m() + h.mul(h.inv(rep), sv.reps[c]);
                cochain_value_accum(f, lw, sw, mm, x, res.m(), 1, inner);
                std::fill(acted.begin(), acted.end(), 0);
                for (std::size_t mi = 0; mi < mm.dim(); ++mi)
                    if (inner[mi]) mm.act_accum(rep, mi, inner[mi], acted);
                for (std::size_t mi = 0; mi < mm.dim(); ++mi)
                    out[base + mi] = fp_add(out[base + mi], acted[mi], ctx.p());
            }
        }
    return out;
}

// g^* f: a cochain over V becomes one over gVg^{-1}; (g^*f)(p) = g f(g^{-1}p).
inline std::vector<fp_t> conjugate_cochain(TateContext& ctx, int sub_v, int sub_gv, int g,
                                           int mod, int d, const std::vector<fp_t>& f) {
    const FiniteGroup& h = ctx.group();
    const BarResolution& res = ctx.resolution();
    const SubgroupSlice& sv = ctx.slice(sub_v);
    const SubgroupSlice& sg = ctx.slice(sub_gv);
    const KGModule& mm = ctx.module(mod);
    CochainLayout lv = cochain_layout(res, sv, mm, d);
    CochainLayout lg = cochain_layout(res, sg, mm, d);
    std::vector<fp_t> out(lg.dim(), 0);
    std::vector<fp_t> inner(mm.dim(), 0), acted(mm.dim(), 0);
    for (basis_idx t = 0; t < lg.rank; ++t)
        for (int c = 0; c < lg.cosets; ++c) {
            std::fill(inner.begin(), inner.end(), 0);
            basis_idx x = t * res.m() + h.mul(h.inv(g), sg.reps[c]);
            cochain_value_accum(f, lv, sv, mm, x, res.m(), 1, inner);
            std::fill(acted.begin(), acted.end(), 0);
            for (std::size_t mi = 0; mi < mm.dim(); ++mi)
                if (inner[mi]) mm.act_accum(g, mi, inner[mi], acted);
            std::size_t base = lg.block(t, c);
            for (std::size_t mi = 0; mi < mm.dim(); ++mi) out[base + mi] = acted[mi];
        }
    return out;
}

// theta_g: postcompose a trivial-coefficient cochain with r -> r e_g.
inline std::vector<fp_t> theta_push_cochain(TateContext& ctx, int sub, int mod_kg, int d,
                                            int g_elt, const std::vector<fp_t>& f) {
    const BarResolution& res = ctx.resolution();
    const SubgroupSlice& sl = ctx.slice(sub);
    const KGModule& kg = ctx.module(mod_kg);
    CochainLayout lk = cochain_layout(res, sl, ctx.module(ctx.trivial_module()), d);
    CochainLayout lg = cochain_layout(res, sl, kg, d);
    std::vector<fp_t> out(lg.dim(), 0);
    for (basis_idx t = 0; t < lk.rank; ++t)
        for (int c = 0; c < lk.cosets; ++c) {
            fp_t v = f[lk.block(t, c)];
            if (v) out[lg.block(t, c) + g_elt] = v;
        }
    return out;
}

// pi_g: postcompose a kG-coefficient cochain with coefficient extraction at g.
inline std::vector<fp_t> pi_push_cochain(TateContext& ctx, int sub, int mod_kg, int d, int g_elt,
                                         const std::vector<fp_t>& f) {
    const BarResolution& res = ctx.resolution();
    const SubgroupSlice& sl = ctx.slice(sub);
    const KGModule& kg = ctx.module(mod_kg);
    CochainLayout lg = cochain_layout(res, sl, kg, d);
    CochainLayout lk = cochain_layout(res, sl, ctx.module(ctx.trivial_module()), d);
    std::vector<fp_t> out(lk.dim(), 0);
    for (basis_idx t = 0; t < lg.rank; ++t)
        for (int c = 0; c < lg.cosets; ++c) out[lk.block(t, c)] = f[lg.block(t, c) + g_elt];
    return out;
}

// ---------------------------------------------------------------------------
// Class-level wrappers. A class remembers which presentation its
// representative lives in (bar slice or periodic backend); operations pull it
// to the bar side, apply the cochain formula, and re-project.
// ---------------------------------------------------------------------------
class ClassOps {
public:
    explicit ClassOps(TateContext& ctx, const GroupAction* action = nullptr)
        : ctx_(&ctx), action_(action) {}

    TateContext& ctx() { return *ctx_; }

    void set_action(const GroupAction* a) { action_ = a; }

    // Project a bar cochain over `sub` into the subgroup's natural space.
    CohomologyClass make(int sub, int mod, int d, const std::vector<fp_t>& bar_cochain) {
        Backend be = ctx_->backend_for(sub);
        CohomologyClass cls;
        cls.degree = d;
        if (be == Backend::zero) {
            cls.space = SpaceKey{sub, mod, d, Backend::zero};
            return cls;
        }
        if (be == Backend::periodic) {
            std::vector<fp_t> val = ctx_->to_periodic(sub, mod, d, bar_cochain);
            const CohomologySpace& sp = ctx_->space(SpaceKey{sub, mod, d, Backend::periodic});
            cls.space = sp.key;
            cls.coords = sp.project(val);
            cls.rep = std::move(val);
            return cls;
        }
        const CohomologySpace& sp = ctx_->bar_space(sub, mod, d);
        cls.space = sp.key;
        cls.coords = sp.project(bar_cochain);
        cls.rep = bar_cochain;
        return cls;
    }

    // The i-th basis class of a space.
    CohomologyClass basis_class(SpaceKey key, std::size_t i) {
        const CohomologySpace& sp = ctx_->space(key);
        CohomologyClass cls;
        cls.space = key;
        cls.degree = key.degree;
        cls.rep = sp.representative(i);
        cls.coords.assign(sp.dim, 0);
        cls.coords[i] = 1;
        return cls;
    }

    // Representative as a bar cochain over the class's subgroup.
    std::vector<fp_t> bar_rep(const CohomologyClass& cls) {
        if (cls.space.backend == Backend::zero) {
            const SubgroupSlice& sl = ctx_->slice(cls.space.sub);
            CochainLayout lay =
                cochain_layout(ctx_->resolution(), sl, ctx_->module(cls.space.mod), cls.degree);
            return std::vector<fp_t>(lay.dim(), 0);
        }
        if (cls.space.backend == Backend::periodic)
            return ctx_->from_periodic(cls.space.sub, cls.space.mod, cls.degree, cls.rep);
        return cls.rep;
    }

    CohomologyClass restriction(const CohomologyClass& cls, const Subgroup& w) {
        int sub_w = ctx_->subgroup_id(w);
        std::vector<fp_t> f = bar_rep(cls);
        return make(sub_w, cls.space.mod,
                    cls.degree,
                    ctx_->restrict_cochain(cls.space.sub, sub_w, cls.space.mod, cls.degree, f));
    }

    CohomologyClass corestriction(const CohomologyClass& cls, const Subgroup& v) {
        int sub_v = ctx_->subgroup_id(v);
        std::vector<fp_t> f = bar_rep(cls);
        return make(sub_v, cls.space.mod, cls.degree,
                    corestrict_cochain(*ctx_, cls.space.sub, sub_v, cls.space.mod, cls.degree, f));
    }

    CohomologyClass conjugation(int g, const CohomologyClass& cls) {
        const SubgroupSlice& sl = ctx_->slice(cls.space.sub);
        Subgroup target = sl.v.conjugate(g);
        int sub_t = ctx_->subgroup_id(target);
        std::vector<fp_t> f = bar_rep(cls);
        return make(sub_t, cls.space.mod, cls.degree,
                    conjugate_cochain(*ctx_, cls.space.sub, sub_t, g, cls.space.mod, cls.degree, f));
    }

    CohomologyClass theta_push(int g_elt, int mod_kg, const CohomologyClass& cls) {
        check_stabilizes(cls.space.sub, g_elt);
        std::vector<fp_t> f = bar_rep(cls);
        return make(cls.space.sub, mod_kg, cls.degree,
                    theta_push_cochain(*ctx_, cls.space.sub, mod_kg, cls.degree, g_elt, f));
    }

    CohomologyClass pi_push(int g_elt, const CohomologyClass& cls) {
        check_stabilizes(cls.space.sub, g_elt);
        std::vector<fp_t> f = bar_rep(cls);
        return make(cls.space.sub, ctx_->trivial_module(), cls.degree,
                    pi_push_cochain(*ctx_, cls.space.sub, cls.space.mod, cls.degree, g_elt, f));
    }

    CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
        if (!(a.space == b.space)) throw std::invalid_argument("class add: different spaces");
        CohomologyClass out = a;
        for (std::size_t i = 0; i < out.coords.size(); ++i)
            out.coords[i] = fp_add(out.coords[i], b.coords[i], ctx_->p());
        for (std::size_t i = 0; i < out.rep.size(); ++i)
            out.rep[i] = fp_add(out.rep[i], b.rep[i], ctx_->p());
        return out;
    }

    CohomologyClass scale(fp_t c, const CohomologyClass& a) {
        CohomologyClass out = a;
        for (auto& x : out.coords) x = static_cast<fp_t>(x * c % ctx_->p());
        for (auto& x : out.rep) x = static_cast<fp_t>(x * c % ctx_->p());
        return out;
    }

    // Coordinate matrix of a class-level map between two built spaces; used
    // by the identity suite. Cached per (provenance, source, target).
    const FpMatrix& map_matrix(const std::string& provenance, SpaceKey source, SpaceKey target,
                               const std::function<CohomologyClass(const CohomologyClass&)>& op) {
        auto key = std::make_tuple(provenance, source, target);
        auto it = map_cache_.find(key);
        if (it != map_cache_.end()) return it->second;
        const CohomologySpace& src = ctx_->space(source);
        const CohomologySpace& tgt = ctx_->space(target);
        FpMatrix mat(ctx_->p(), tgt.dim, src.dim);
        for (std::size_t j = 0; j < src.dim; ++j) {
            CohomologyClass img = op(basis_class(source, j));
            if (!(img.space == target)) throw std::logic_error("map matrix: wrong target space");
            for (std::size_t i = 0; i < tgt.dim; ++i) mat.at(i, j) = img.coords[i];
        }
        return map_cache_.emplace(key, std::move(mat)).first->second;
    }

private:
    // theta_g / pi_g require V inside Stab(g) for the governing action
    void check_stabilizes(int sub, int g_elt) const {
        if (!action_) return;
        for (int v : ctx_->slice(sub).v.members)
            if (action_->apply(v, g_elt) != g_elt)
                throw std::invalid_argument("theta/pi: subgroup does not stabilize g");
    }

    TateContext* ctx_;
    const GroupAction* action_ = nullptr;
    std::map<std::tuple<std::string, SpaceKey, SpaceKey>, FpMatrix> map_cache_;
};

}  // namespace tatehh
