#include <catch2/catch_amalgamated.hpp>

#include "tatehh/group.hpp"
#include "tatehh/group_io.hpp"

using namespace tatehh;

namespace {
FiniteGroup s3() { return builtin_group("S3"); }
}  // namespace

TEST_CASE("permutation closure: S3, C3, Klein four") {
    REQUIRE(s3().order() == 6);
    REQUIRE(FiniteGroup::from_permutations({{1, 2, 0}}).order() == 3);
    // generators (0 1) and (2 3)
    FiniteGroup v4 = FiniteGroup::from_permutations({{1, 0, 2, 3}, {0, 1, 3, 2}});
    REQUIRE(v4.order() == 4);
    REQUIRE(v4.is_abelian());
    for (int x = 1; x < 4; ++x) REQUIRE(v4.element_order(x) == 2);
}

TEST_CASE("identity is index 0 and inverses are consistent") {
    FiniteGroup g = s3();
    for (int a = 0; a < g.order(); ++a) {
        REQUIRE(g.mul(a, 0) == a);
        REQUIRE(g.mul(0, a) == a);
        REQUIRE(g.mul(a, g.inv(a)) == 0);
    }
}

TEST_CASE("bad inputs are rejected") {
    // not a Latin square
    REQUIRE_THROWS_AS(FiniteGroup({{0, 0}, {0, 0}}), std::invalid_argument);
    // Latin square but not associative (order-5 quasigroup)
    std::vector<std::vector<int>> q{{0, 1, 2, 3, 4},
                                    {1, 0, 3, 4, 2},
                                    {2, 4, 0, 1, 3},
                                    {3, 2, 4, 0, 1},
                                    {4, 3, 1, 2, 0}};
    REQUIRE_THROWS_AS(FiniteGroup(q), std::invalid_argument);
    // generators that do not close within the bound
    REQUIRE_THROWS_AS(FiniteGroup::from_permutations({{1, 2, 3, 4, 0}}, "", 3),
                      std::invalid_argument);
}

TEST_CASE("conjugacy data of S3 matches the centralizer orders 6, 3, 2") {
    FiniteGroup g = s3();
    auto classes = conjugacy_data(g);
    REQUIRE(classes.size() == 3);
    REQUIRE(classes[0].rep == 0);
    REQUIRE(classes[0].centralizer.order() == 6);
    REQUIRE(classes[1].centralizer.order() == 3);
    REQUIRE(classes[2].centralizer.order() == 2);
    // classes partition G; centralizer order x class size = |G|
    std::size_t total = 0;
    for (auto& c : classes) {
        total += c.members.size();
        REQUIRE(c.members.size() * c.centralizer.order() == 6);
        REQUIRE(c.rep == c.members.front());
    }
    REQUIRE(total == 6);
}

TEST_CASE("abelian groups have singleton classes") {
    for (auto name : {"C4", "C2xC2"}) {
        FiniteGroup g = builtin_group(name);
        auto classes = conjugacy_data(g);
        REQUIRE(classes.size() == static_cast<std::size_t>(g.order()));
        for (auto& c : classes) {
            REQUIRE(c.members.size() == 1);
            REQUIRE(c.centralizer.order() == g.order());
        }
    }
}

TEST_CASE("orbit-stabilizer counting identity") {
    FiniteGroup g = s3();
    GroupAction conj = GroupAction::conjugation(g);
    for (int x = 0; x < g.order(); ++x) {
        auto orb = conj.orbit(x);
        auto stab = conj.stabilizer(x);
        REQUIRE(orb.size() * stab.order() == static_cast<std::size_t>(g.order()));
    }
    // at x = a (index 1): orbit {a, a^2}, stabilizer of order 3
    REQUIRE(conj.orbit(1).size() == 2);
    REQUIRE(conj.stabilizer(1).order() == 3);

    GroupAction triv = GroupAction::trivial(g, g);
    REQUIRE(triv.orbit(4) == std::vector<int>{4});
    REQUIRE(triv.stabilizer(4).order() == 6);

    FiniteGroup v4 = builtin_group("C2xC2");
    GroupAction c4 = GroupAction::conjugation(v4);
    for (int x = 0; x < 4; ++x) REQUIRE(c4.orbit(x).size() == 1);
}

TEST_CASE("coset representatives") {
    FiniteGroup g = s3();
    Subgroup whole = Subgroup::whole(g);
    Subgroup triv = Subgroup::trivial(g);
    REQUIRE(coset_reps(g, whole) == std::vector<int>{0});
    REQUIRE(coset_reps(g, triv).size() == 6);

    Subgroup n = Subgroup::generated(g, {1});
    REQUIRE(n.order() == 3);
    auto reps = coset_reps(g, n);
    REQUIRE(reps.size() == 2);
    REQUIRE(reps[0] == 0);
    // brute-force: the two cosets partition G
    std::vector<bool> hit(6, false);
    for (int r : reps)
        for (int m : n.members) {
            REQUIRE(!hit[g.mul(r, m)]);
            hit[g.mul(r, m)] = true;
        }
    for (bool h : hit) REQUIRE(h);
}

TEST_CASE("double coset representatives partition the group") {
    FiniteGroup g = s3();
    Subgroup whole = Subgroup::whole(g);
    Subgroup triv = Subgroup::trivial(g);
    Subgroup n = Subgroup::generated(g, {1});

    REQUIRE(double_coset_reps(g, whole, whole) == std::vector<int>{0});
    REQUIRE(double_coset_reps(g, triv, triv).size() == 6);

    // N normal of index 2: double cosets equal the two cosets {1, b}
    auto d = double_coset_reps(g, n, n);
    REQUIRE(d.size() == 2);
    REQUIRE(d[0] == 0);
    REQUIRE(d[1] == 2);
    // exhaustive partition check
    std::size_t total = 0;
    for (int x : d) {
        std::vector<bool> in(6, false);
        for (int a : n.members)
            for (int b : n.members) in[g.mul(g.mul(a, x), b)] = true;
        for (int e = 0; e < 6; ++e) total += in[e];
    }
    REQUIRE(total == 6);
}

TEST_CASE("orbit product data satisfy the defining identity") {
    FiniteGroup g = s3();
    GroupAction conj = GroupAction::conjugation(g);
    auto reps = conj.orbit_reps();
    REQUIRE(reps == std::vector<int>{0, 1, 2});
    std::vector<Subgroup> stabs;
    for (int r : reps) stabs.push_back(conj.stabilizer(r));

    // identity orbit: product with anything stays in the partner's orbit
    auto d11 = locate_product_datum(conj, reps, stabs, 0, 0, 0);
    REQUIRE(d11.k == 0);

    // a * a = a^2 lies in the class of a
    auto d22 = locate_product_datum(conj, reps, stabs, 1, 1, 0);
    REQUIRE(d22.k == 1);
    // a * b lies in the class of b
    auto d23 = locate_product_datum(conj, reps, stabs, 1, 2, 0);
    REQUIRE(d23.k == 2);

    // defining identity and its invariance under y -> h y for h in H_k
    for (auto& dat : {d11, d22, d23}) {
        int lhs = g.mul(conj.apply(dat.y, reps[dat.i]),
                        conj.apply(g.mul(dat.y, dat.x), reps[dat.j]));
        REQUIRE(lhs == reps[dat.k]);
        for (int h : stabs[dat.k].members) {
            int y2 = g.mul(h, dat.y);
            int lhs2 = g.mul(conj.apply(y2, reps[dat.i]),
                             conj.apply(g.mul(y2, dat.x), reps[dat.j]));
            REQUIRE(lhs2 == reps[dat.k]);
        }
        REQUIRE(stabs[dat.k].contains_subgroup(dat.v));
    }
}

TEST_CASE("subgroup enumeration of S3") {
    FiniteGroup g = s3();
    auto subs = all_subgroups(g);
    // 1 trivial + 3 of order 2 + 1 of order 3 + G
    REQUIRE(subs.size() == 6);
    REQUIRE(subs.front().order() == 1);
    REQUIRE(subs.back().order() == 6);
}

TEST_CASE("builtin library and json ingestion") {
    REQUIRE(builtin_group("C12").order() == 12);
    REQUIRE(builtin_group("D4").order() == 8);
    REQUIRE(builtin_group("Q8").order() == 8);
    REQUIRE(builtin_group("Q8").element_order(1) == 2);  // -1 squares to 1

    nlohmann::json doc = {{"name", "C2"}, {"order", 2}, {"cayley_table", {{0, 1}, {1, 0}}}};
    REQUIRE(group_from_json(doc).order() == 2);
    nlohmann::json bad = {{"name", "broken"}, {"cayley_table", {{0, 0}, {0, 0}}}};
    REQUIRE_THROWS(group_from_json(bad));
    nlohmann::json perms = {{"name", "S3"}, {"perm_generators", {{1, 2, 0}, {1, 0, 2}}}};
    REQUIRE(group_from_json(perms).order() == 6);
}
