#include <catch2/catch_amalgamated.hpp>

#include "tatehh/group_io.hpp"
#include "tatehh/kg_module.hpp"

using namespace tatehh;

TEST_CASE("trivial module") {
    FiniteGroup g = builtin_group("S3");
    KGModule k = KGModule::trivial(g, 3);
    REQUIRE(k.dim() == 1);
    for (int e = 0; e < 6; ++e) REQUIRE(k.action(e) == FpMatrix::identity(3, 1));
}

TEST_CASE("conjugation module of an abelian group is trivial blockwise") {
    FiniteGroup g = builtin_group("C4");
    KGModule m = KGModule::conjugation(g, 2);
    for (int e = 0; e < 4; ++e) REQUIRE(m.action(e) == FpMatrix::identity(2, 4));
}

TEST_CASE("conjugation module of S3 against a pointwise oracle") {
    FiniteGroup g = builtin_group("S3");
    KGModule m = KGModule::conjugation(g, 3);
    REQUIRE(m.dim() == 6);
    for (int e = 0; e < 6; ++e)
        for (int x = 0; x < 6; ++x) {
            // action(e) e_x must be e_{e x e^-1}
            std::vector<fp_t> v(6, 0);
            v[x] = 1;
            std::vector<fp_t> img = m.act(e, v);
            for (int y = 0; y < 6; ++y) REQUIRE(img[y] == (y == g.conj(e, x) ? 1 : 0));
        }
    // fixed subspace = span of class sums; S3 has 3 classes
    REQUIRE(m.fixed_subspace_dim() == 3);
}

TEST_CASE("restriction keeps matrices, induction has coset-block structure") {
    FiniteGroup g = builtin_group("S3");
    Subgroup n = Subgroup::generated(g, {1});
    KGModule kn = KGModule::trivial(g, 3);

    // induce k from N to S3: dim 2 permutation module on cosets
    KGModule ind = KGModule::induced(KGModule::trivial(g, 3).restricted(n), n, g, 3);
    REQUIRE(ind.dim() == 2);
    // the action must permute the two coset blocks; element b swaps them
    REQUIRE(ind.action(2).at(0, 0) == 0);
    REQUIRE(ind.action(2).at(1, 0) == 1);

    // induce from the trivial subgroup: the regular module
    KGModule reg = KGModule::induced(KGModule::trivial(g, 3), Subgroup::trivial(g), g, 3);
    REQUIRE(reg.dim() == 6);
    // regular module has fixed space spanned by the all-ones vector
    REQUIRE(reg.fixed_subspace_dim() == 1);

    // induction from H = G is the identity construction
    KGModule same = KGModule::induced(KGModule::trivial(g, 3), Subgroup::whole(g), g, 3);
    REQUIRE(same.dim() == 1);
}

TEST_CASE("restricted conjugation module of S3 to N: the 3-cycle acts with order 3") {
    FiniteGroup g = builtin_group("S3");
    KGModule m = KGModule::conjugation(g, 3);
    const FpMatrix& a = m.action(1);
    FpMatrix a3 = a * a * a;
    REQUIRE(a3 == FpMatrix::identity(3, 6));
    REQUIRE(!(a * a == FpMatrix::identity(3, 6)));
}

TEST_CASE("dual and direct sum") {
    FiniteGroup g = builtin_group("S3");
    KGModule m = KGModule::conjugation(g, 3);
    KGModule d = m.dual();  // permutation modules are self-dual
    REQUIRE(d.dim() == 6);
    KGModule s = KGModule::direct_sum(m, KGModule::trivial(g, 3));
    REQUIRE(s.dim() == 7);
    REQUIRE(s.fixed_subspace_dim() == 4);
}

TEST_CASE("multiplication pairing is Cayley multiplication and equivariant") {
    FiniteGroup g = builtin_group("S3");
    KGModule kg = KGModule::conjugation(g, 3);
    ModulePairing mult = ModulePairing::multiplication(kg, g);  // ctor checks equivariance

    std::vector<fp_t> e1(6, 0), ea(6, 0), ea2(6, 0);
    e1[0] = 1;
    ea[1] = 1;
    int a2 = g.mul(1, 1);
    ea2[a2] = 1;
    REQUIRE(mult.pair(e1, e1) == e1);
    // a * a^2 = 1
    REQUIRE(mult.pair(ea, ea2) == e1);
}

TEST_CASE("equivariance is rejected when violated") {
    FiniteGroup g = builtin_group("S3");
    KGModule kg = KGModule::conjugation(g, 3);
    FpMatrix bad(3, 6, 36);
    bad.at(1, 0) = 1;  // e_1 (x) e_1 -> e_a is not fixed by conjugation
    REQUIRE_THROWS_AS(ModulePairing(kg, kg, kg, bad), std::invalid_argument);
}
