#include <catch2/catch_amalgamated.hpp>

#include "tatehh/cochain.hpp"
#include "tatehh/cohomology.hpp"
#include "tatehh/group_io.hpp"

using namespace tatehh;

namespace {

// k-expanded dense matrix of d_d, for small windows only.
FpMatrix expand_diff(const BarResolution& res, int d) {
    FpMatrix out(res.p(), res.dim(d - 1), res.dim(d));
    for (basis_idx flat = 0; flat < res.dim(d); ++flat)
        for (const SparseTerm& t : res.diff_at(d, flat))
            out.at(t.idx, flat) = fp_add(out.at(t.idx, flat), t.c, res.p());
    return out;
}

}  // namespace

TEST_CASE("bar terms have rank |G|^n and the splice hits the norm functional") {
    FiniteGroup g = builtin_group("S3");
    BarResolution res(g, 3, -3, 3);
    REQUIRE(res.rank(2) == 36);
    REQUIRE(res.rank(0) == 1);
    REQUIRE(res.rank(-1) == 1);
    REQUIRE(res.rank(-3) == 36);
    // d_0([]) = sum over g of (g[])^dual
    const EqMap& d0 = res.diff(0);
    REQUIRE(d0.cols[0].size() == 6);
}

TEST_CASE("d compose d vanishes across the whole window (C3)") {
    FiniteGroup g = builtin_group("C3");
    BarResolution res(g, 3, -4, 4);
    for (int d = -3; d <= 3; ++d) {
        FpMatrix prod = expand_diff(res, d) * expand_diff(res, d + 1);
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j) REQUIRE(prod.at(i, j) == 0);
    }
}

TEST_CASE("exactness: rank d_n + rank d_{n+1} = dim X_n in the window interior") {
    FiniteGroup g = builtin_group("C3");
    BarResolution res(g, 3, -4, 4);
    for (int n = -3; n <= 3; ++n) {
        std::size_t r1 = rank_of(expand_diff(res, n));
        std::size_t r2 = rank_of(expand_diff(res, n + 1));
        REQUIRE(r1 + r2 == static_cast<std::size_t>(res.dim(n)));
    }
}

TEST_CASE("equivariance of differentials") {
    FiniteGroup g = builtin_group("S3");
    BarResolution res(g, 3, -3, 3);
    for (int d : {-2, -1, 0, 1, 2}) {
        for (basis_idx t = 0; t < std::min<basis_idx>(res.rank(d), 12); ++t)
            for (int h = 0; h < 6; ++h) {
                // d(h . b_t) must equal h . d(b_t)
                SparseVec lhs = res.diff_at(d, res.act_idx(h, t * 6));
                SparseVec rhs = res.diff_at(d, t * 6);
                for (auto& term : rhs) term.idx = res.act_idx(h, term.idx);
                sparse_normalize(rhs, 3);
                REQUIRE(sparse_equal(lhs, rhs));
            }
    }
}

TEST_CASE("contraction identity d.sigma + sigma.d = 1 in every degree") {
    FiniteGroup g = builtin_group("S3");
    BarResolution res(g, 3, -4, 4);
    for (int d = -3; d <= 3; ++d) {
        for (basis_idx flat = 0; flat < res.dim(d); ++flat) {
            SparseVec total;
            {
                auto s = res.sigma(d, flat);
                if (s)
                    for (const SparseTerm& t : res.diff_at(d + 1, *s)) total.push_back(t);
            }
            for (const SparseTerm& t : res.diff_at(d, flat)) {
                auto s = res.sigma(d - 1, t.idx);
                if (s) total.push_back({*s, t.c});
            }
            sparse_normalize(total, 3);
            REQUIRE(total.size() == 1);
            REQUIRE(total[0].idx == flat);
            REQUIRE(total[0].c == 1);
        }
    }
}

TEST_CASE("Tate cohomology of C3 at p = 3 is one-dimensional in every degree") {
    FiniteGroup g = builtin_group("C3");
    TateContext ctx(g, 3, 3);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    for (int n = -3; n <= 3; ++n) {
        const CohomologySpace& sp = ctx.bar_space(whole, ctx.trivial_module(), n);
        REQUIRE(sp.dim == 1);
    }
}

TEST_CASE("cyclic periodic backend agrees with the bar backend for C3 and C2") {
    for (auto [name, p] : {std::pair<const char*, int>{"C3", 3}, {"C2", 2}}) {
        FiniteGroup g = builtin_group(name);
        TateContext ctx(g, p, 3);
        int whole = ctx.subgroup_id(Subgroup::whole(g));
        REQUIRE(ctx.backend_for(whole) == Backend::periodic);
        for (int n = -3; n <= 3; ++n) {
            std::size_t bar = ctx.bar_space(whole, ctx.trivial_module(), n).dim;
            std::size_t per = ctx.auto_space(whole, ctx.trivial_module(), n).dim;
            REQUIRE(bar == 1);
            REQUIRE(per == 1);
        }
    }
}

TEST_CASE("comparison chain maps commute with the differentials (C3 inside S3)") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 3);
    int n_id = ctx.subgroup_id(Subgroup::generated(g, {1}));
    PeriodicBackend& pb = ctx.periodic_backend(n_id);
    const SubgroupSlice& sl = ctx.slice(n_id);
    const BarResolution& res = ctx.resolution();

    // psi: d_X . psi_d == psi_{d-1} . d_Y on the generator e_d
    for (int d = -2; d <= 3; ++d) {
        SparseVec lhs;
        for (const SparseTerm& t : ctx.psi(n_id, d))
            for (const SparseTerm& u : res.diff_at(d, t.idx))
                lhs.push_back({u.idx, static_cast<fp_t>(u.c * t.c % 3)});
        sparse_normalize(lhs, 3);

        std::vector<fp_t> dy = pb.resolution().diff_coeffs(d);
        SparseVec rhs;
        for (int i = 0; i < pb.m; ++i) {
            if (!dy[i]) continue;
            for (const SparseTerm& t : ctx.psi(n_id, d - 1))
                rhs.push_back({res.act_idx(pb.pow_elt[i], t.idx),
                               static_cast<fp_t>(t.c * dy[i] % 3)});
        }
        sparse_normalize(rhs, 3);
        REQUIRE(sparse_equal(lhs, rhs));
    }

    // phi: phi_{d-1}(d_X x) == d_Y(phi_d(x)) on kV-generators x
    for (int d = -2; d <= 3; ++d) {
        const auto& ph = ctx.phi(n_id, d);
        for (basis_idx t = 0; t < res.rank(d); ++t)
            for (int c = 0; c < sl.cosets(); ++c) {
                std::vector<fp_t> rhs = pb.apply_diff(d, ph[t * sl.cosets() + c], 3);
                std::vector<fp_t> lhs(pb.m, 0);
                basis_idx x = t * 6 + sl.reps[c];
                for (const SparseTerm& term : res.diff_at(d, x)) {
                    basis_idx tt = term.idx / 6;
                    int gg = static_cast<int>(term.idx % 6);
                    int cc = sl.cidx_of[gg];
                    int lv = pb.dlog[sl.vpart_of[gg]];
                    const auto& phm1 = ctx.phi(n_id, d - 1);
                    std::vector<fp_t> val = pb.shift(lv, phm1[tt * sl.cosets() + cc]);
                    for (int i = 0; i < pb.m; ++i)
                        lhs[i] = static_cast<fp_t>((lhs[i] + term.c * val[i]) % 3);
                }
                REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("Tate dimensions of S3 at p = 3 have period four") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 4);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    // nonzero exactly in degrees = 0, 3 mod 4 (x of degree 3, z of degree 4)
    std::vector<std::size_t> expect{1, 0, 0, 1, 1, 0, 0, 1, 1};
    for (int n = -4; n <= 4; ++n) {
        const CohomologySpace& sp = ctx.bar_space(whole, ctx.trivial_module(), n);
        REQUIRE(sp.dim == expect[n + 4]);
    }
}

TEST_CASE("subgroups of order prime to p have zero Tate cohomology") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 3);
    int h3 = ctx.subgroup_id(Subgroup::generated(g, {2}));
    REQUIRE(ctx.backend_for(h3) == Backend::zero);
    for (int n = -2; n <= 2; ++n) REQUIRE(ctx.auto_space(h3, ctx.trivial_module(), n).dim == 0);
}

TEST_CASE("property (a): positive Tate dimensions match ordinary cohomology") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 4);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    for (int n = 1; n <= 4; ++n) {
        std::size_t tate = ctx.bar_space(whole, ctx.trivial_module(), n).dim;
        REQUIRE(tate == ordinary_cohomology_dim(ctx, ctx.trivial_module(), n));
    }
    REQUIRE(ordinary_cohomology_dim(ctx, ctx.trivial_module(), 0) == 1);
}

TEST_CASE("property (d): negative Tate dimensions match ordinary homology") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 4);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    REQUIRE(ordinary_homology_dim(ctx, ctx.trivial_module(), 0) == 1);
    for (int n = -4; n <= -2; ++n) {
        std::size_t tate = ctx.bar_space(whole, ctx.trivial_module(), n).dim;
        REQUIRE(tate == ordinary_homology_dim(ctx, ctx.trivial_module(), -(n + 1)));
    }
}

TEST_CASE("property (f): Tate cohomology is additive over direct sums") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 2);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    int kg = ctx.register_module(KGModule::conjugation(g, 3), "kG");
    int sum = ctx.register_module(
        KGModule::direct_sum(KGModule::trivial(g, 3), KGModule::conjugation(g, 3)), "k+kG");
    for (int n = -2; n <= 2; ++n) {
        std::size_t da = ctx.bar_space(whole, ctx.trivial_module(), n).dim;
        std::size_t db = ctx.bar_space(whole, kg, n).dim;
        std::size_t ds = ctx.bar_space(whole, sum, n).dim;
        REQUIRE(ds == da + db);
    }
}

TEST_CASE("Eckmann-Shapiro dimension identity for subgroups of S3") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 2);
    int whole = ctx.subgroup_id(Subgroup::whole(g));
    Subgroup n = Subgroup::generated(g, {1});
    Subgroup h3 = Subgroup::generated(g, {2});
    int n_id = ctx.subgroup_id(n);
    int h3_id = ctx.subgroup_id(h3);
    int ind_n = ctx.register_module(KGModule::induced(KGModule::trivial(g, 3), n, g, 3), "k^N");
    int ind_h3 = ctx.register_module(KGModule::induced(KGModule::trivial(g, 3), h3, g, 3), "k^H3");
    for (int deg = -2; deg <= 2; ++deg) {
        REQUIRE(ctx.bar_space(whole, ind_n, deg).dim ==
                ctx.bar_space(n_id, ctx.trivial_module(), deg).dim);
        REQUIRE(ctx.bar_space(whole, ind_h3, deg).dim ==
                ctx.auto_space(h3_id, ctx.trivial_module(), deg).dim);
    }
}

TEST_CASE("Tate cohomology of subgroup slices: N inside S3 via the bar side") {
    FiniteGroup g = builtin_group("S3");
    TateContext ctx(g, 3, 3);
    int n_id = ctx.subgroup_id(Subgroup::generated(g, {1}));
    for (int deg = -3; deg <= 3; ++deg) {
        REQUIRE(ctx.bar_space(n_id, ctx.trivial_module(), deg).dim == 1);
        REQUIRE(ctx.auto_space(n_id, ctx.trivial_module(), deg).dim == 1);
    }
}
