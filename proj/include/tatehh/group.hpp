#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tatehh {

// Finite group as a dense Cayley table. Elements are indices 0..n-1 with the
// identity at index 0; everything downstream (cosets, classes, actions,
// double cosets) is evaluated pointwise against this table, per the
// desk-scale design: orders stay below ~64.
class FiniteGroup {
public:
    FiniteGroup() = default;

    // table[i][j] = index of element i*j. Validates Latin square property,
    // identity/inverses, and associativity (full check for n <= 64).
    explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "")
        : name_(std::move(name)) {
        build_from_table(std::move(table));
    }

    // Closure of permutation generators (one-line image notation on
    // 0..deg-1). Elements are ordered breadth-first from the identity, so the
    // indexing is deterministic; identity gets index 0.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                         std::string name = "", std::size_t max_order = 4096);

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    const std::string& name() const { return name_; }

    int element_order(int a) const {
        int x = a, k = 1;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    // Returns a generator c with <c> = G, or -1 if G is not cyclic.
    int cyclic_generator() const {
        for (int a = 0; a < n_; ++a)
            if (element_order(a) == n_) return a;
        return -1;
    }

private:
    void build_from_table(std::vector<std::vector<int>> table);

    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::string name_;
};

inline void FiniteGroup::build_from_table(std::vector<std::vector<int>> table) {
    n_ = static_cast<int>(table.size());
    if (n_ == 0) throw std::invalid_argument("group: empty table");
    table_.assign(n_ * n_, -1);
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(table[i].size()) != n_)
            throw std::invalid_argument("group: table is not square");
        for (int j = 0; j < n_; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= n_) throw std::invalid_argument("group: entry out of range");
            table_[i * n_ + j] = v;
        }
    }
    // Latin square
    for (int i = 0; i < n_; ++i) {
        std::vector<bool> seen_row(n_, false), seen_col(n_, false);
        for (int j = 0; j < n_; ++j) {
            if (seen_row[table_[i * n_ + j]] || seen_col[table_[j * n_ + i]])
                throw std::invalid_argument("group: table is not a Latin square");
            seen_row[table_[i * n_ + j]] = true;
            seen_col[table_[j * n_ + i]] = true;
        }
    }
    // Identity; re-index so it sits at 0.
    int id = -1;
    for (int e = 0; e < n_ && id < 0; ++e) {
        bool ok = true;
        for (int j = 0; j < n_; ++j) ok = ok && table_[e * n_ + j] == j && table_[j * n_ + e] == j;
        if (ok) id = e;
    }
    if (id < 0) throw std::invalid_argument("group: no identity element");
    if (id != 0) {
        std::vector<int> perm(n_);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[0], perm[id]);  // perm: new index -> old index
        std::vector<int> inv_perm(n_);
        for (int i = 0; i < n_; ++i) inv_perm[perm[i]] = i;
        std::vector<int> t2(n_ * n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t2[i * n_ + j] = inv_perm[table_[perm[i] * n_ + perm[j]]];
        table_ = std::move(t2);
    }
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (table_[a * n_ + b] == 0) inv_[a] = b;
    for (int a = 0; a < n_; ++a)
        if (inv_[a] < 0 || table_[inv_[a] * n_ + a] != 0)
            throw std::invalid_argument("group: inverses inconsistent");
    // Associativity. Full scan is ~n^3, fine at this scale.
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("group: table not associative");
}

inline FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                                  std::string name, std::size_t max_order) {
    if (gens.empty()) throw std::invalid_argument("group: no generators");
    std::size_t deg = gens[0].size();
    for (const auto& g : gens) {
        if (g.size() != deg) throw std::invalid_argument("group: generator degree mismatch");
        std::vector<bool> seen(deg, false);
        for (int im : g) {
            if (im < 0 || im >= static_cast<int>(deg) || seen[im])
                throw std::invalid_argument("group: generator is not a permutation");
            seen[im] = true;
        }
    }
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            std::vector<int> prod(deg);
            for (std::size_t k = 0; k < deg; ++k) prod[k] = g[elems[i][k]];
            if (!index.count(prod)) {
                if (elems.size() >= max_order)
                    throw std::invalid_argument("group: generators do not close within bound");
                index[prod] = static_cast<int>(elems.size());
                elems.push_back(prod);
            }
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(deg);
            for (std::size_t k = 0; k < deg; ++k) prod[k] = elems[a][elems[b][k]];
            table[a][b] = index.at(prod);
        }
    return FiniteGroup(std::move(table), std::move(name));
}

// Subgroup as a sorted member list within a parent group.
struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;  // sorted, contains 0

    Subgroup() = default;
    Subgroup(const FiniteGroup& g, std::vector<int> elems) : parent(&g), members(std::move(elems)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        validate();
    }

    static Subgroup whole(const FiniteGroup& g) {
        std::vector<int> all(g.order());
        std::iota(all.begin(), all.end(), 0);
        return Subgroup(g, std::move(all));
    }

    static Subgroup trivial(const FiniteGroup& g) { return Subgroup(g, {0}); }

    static Subgroup generated(const FiniteGroup& g, const std::vector<int>& gens) {
        std::vector<int> elems{0};
        std::vector<bool> in(g.order(), false);
        in[0] = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (int s : gens) {
                int x = g.mul(elems[i], s);
                if (!in[x]) {
                    in[x] = true;
                    elems.push_back(x);
                }
            }
        return Subgroup(g, std::move(elems));
    }

    int order() const { return static_cast<int>(members.size()); }
    int index_in_parent() const { return parent->order() / order(); }
    bool contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

    bool contains_subgroup(const Subgroup& other) const {
        for (int m : other.members)
            if (!contains(m)) return false;
        return true;
    }

    bool operator==(const Subgroup& o) const { return parent == o.parent && members == o.members; }
    bool operator<(const Subgroup& o) const { return members < o.members; }

    Subgroup conjugate(int g) const {
        std::vector<int> elems;
        elems.reserve(members.size());
        for (int m : members) elems.push_back(parent->conj(g, m));
        return Subgroup(*parent, std::move(elems));
    }

    Subgroup intersect(const Subgroup& other) const {
        std::vector<int> elems;
        std::set_intersection(members.begin(), members.end(), other.members.begin(),
                              other.members.end(), std::back_inserter(elems));
        return Subgroup(*parent, std::move(elems));
    }

    bool is_cyclic() const {
        for (int m : members) {
            int x = m, k = 1;
            while (x != 0) {
                x = parent->mul(x, m);
                ++k;
            }
            if (k == order()) return true;
        }
        return order() == 1;
    }

    // A generator realizing cyclicity (least index), or -1.
    int cyclic_generator() const {
        if (order() == 1) return 0;
        for (int m : members) {
            int x = m, k = 1;
            while (x != 0) {
                x = parent->mul(x, m);
                ++k;
            }
            if (k == order()) return m;
        }
        return -1;
    }

private:
    void validate() const {
        if (members.empty() || members[0] != 0)
            throw std::invalid_argument("subgroup: must contain identity");
        for (int a : members) {
            if (!contains(parent->inv(a))) throw std::invalid_argument("subgroup: not closed (inv)");
            for (int b : members)
                if (!contains(parent->mul(a, b)))
                    throw std::invalid_argument("subgroup: not closed (mul)");
        }
    }
};

// Left coset representatives of H in G: least-index member per coset gH,
// ascending. G = union of c*H over the returned c.
inline std::vector<int> coset_reps(const FiniteGroup& g, const Subgroup& h) {
    std::vector<bool> covered(g.order(), false);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int m : h.members) covered[g.mul(x, m)] = true;
    }
    return reps;
}

// Right coset representatives (cosets Hg), least-index per coset.
inline std::vector<int> right_coset_reps(const FiniteGroup& g, const Subgroup& h) {
    std::vector<bool> covered(g.order(), false);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int m : h.members) covered[g.mul(m, x)] = true;
    }
    return reps;
}

// Double coset representatives for H\G/K: least-index member per HxK,
// ascending. The union of the double cosets partitions G.
inline std::vector<int> double_coset_reps(const FiniteGroup& g, const Subgroup& h,
                                          const Subgroup& k) {
    std::vector<bool> covered(g.order(), false);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int a : h.members)
            for (int b : k.members) covered[g.mul(g.mul(a, x), b)] = true;
    }
    return reps;
}

struct ConjugacyClass {
    int rep;                   // least-index member
    std::vector<int> members;  // sorted
    Subgroup centralizer;
};

inline std::vector<ConjugacyClass> conjugacy_data(const FiniteGroup& g) {
    std::vector<bool> seen(g.order(), false);
    std::vector<ConjugacyClass> classes;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        ConjugacyClass cc;
        cc.rep = x;
        std::vector<int> cent;
        for (int a = 0; a < g.order(); ++a) {
            int y = g.conj(a, x);
            if (!seen[y]) {
                seen[y] = true;
                cc.members.push_back(y);
            }
            if (g.mul(a, x) == g.mul(x, a)) cent.push_back(a);
        }
        std::sort(cc.members.begin(), cc.members.end());
        cc.centralizer = Subgroup(g, std::move(cent));
        classes.push_back(std::move(cc));
    }
    return classes;
}

// Action of a group H on a group G by automorphisms: act[h] is a permutation
// of G's element indices.
struct GroupAction {
    const FiniteGroup* actor = nullptr;   // H
    const FiniteGroup* target = nullptr;  // G
    std::vector<std::vector<int>> act;    // act[h][x] = ^h x

    GroupAction() = default;
    GroupAction(const FiniteGroup& h, const FiniteGroup& g, std::vector<std::vector<int>> a)
        : actor(&h), target(&g), act(std::move(a)) {
        validate();
    }

    static GroupAction conjugation(const FiniteGroup& g) {
        std::vector<std::vector<int>> a(g.order(), std::vector<int>(g.order()));
        for (int h = 0; h < g.order(); ++h)
            for (int x = 0; x < g.order(); ++x) a[h][x] = g.conj(h, x);
        return GroupAction(g, g, std::move(a));
    }

    static GroupAction trivial(const FiniteGroup& h, const FiniteGroup& g) {
        std::vector<int> id(g.order());
        std::iota(id.begin(), id.end(), 0);
        return GroupAction(h, g, std::vector<std::vector<int>>(h.order(), id));
    }

    int apply(int h, int x) const { return act[h][x]; }

    std::vector<int> orbit(int x) const {
        std::vector<bool> in(target->order(), false);
        std::vector<int> orb;
        for (int h = 0; h < actor->order(); ++h) {
            int y = act[h][x];
            if (!in[y]) {
                in[y] = true;
                orb.push_back(y);
            }
        }
        std::sort(orb.begin(), orb.end());
        return orb;
    }

    Subgroup stabilizer(int x) const {
        std::vector<int> st;
        for (int h = 0; h < actor->order(); ++h)
            if (act[h][x] == x) st.push_back(h);
        return Subgroup(*actor, std::move(st));
    }

    // Orbit representatives, least index first.
    std::vector<int> orbit_reps() const {
        std::vector<bool> seen(target->order(), false);
        std::vector<int> reps;
        for (int x = 0; x < target->order(); ++x) {
            if (seen[x]) continue;
            reps.push_back(x);
            for (int y : orbit(x)) seen[y] = true;
        }
        return reps;
    }

private:
    void validate() const {
        int nh = actor->order(), ng = target->order();
        if (static_cast<int>(act.size()) != nh) throw std::invalid_argument("action: size mismatch");
        for (int h = 0; h < nh; ++h) {
            if (static_cast<int>(act[h].size()) != ng)
                throw std::invalid_argument("action: permutation size mismatch");
            std::vector<bool> seen(ng, false);
            for (int x = 0; x < ng; ++x) {
                int y = act[h][x];
                if (y < 0 || y >= ng || seen[y])
                    throw std::invalid_argument("action: not a permutation");
                seen[y] = true;
            }
            // each act[h] must be an automorphism of G
            for (int x = 0; x < ng; ++x)
                for (int y = 0; y < ng; ++y)
                    if (act[h][target->mul(x, y)] != target->mul(act[h][x], act[h][y]))
                        throw std::invalid_argument("action: not by automorphisms");
        }
        // act must be a homomorphism H -> Aut(G)
        for (int x = 0; x < ng; ++x)
            if (act[0][x] != x) throw std::invalid_argument("action: identity must act trivially");
        for (int h1 = 0; h1 < nh; ++h1)
            for (int h2 = 0; h2 < nh; ++h2)
                for (int x = 0; x < ng; ++x)
                    if (act[actor->mul(h1, h2)][x] != act[h1][act[h2][x]])
                        throw std::invalid_argument("action: not a homomorphism");
    }
};

// The bookkeeping of one double-coset summand of the product formula:
// g_k = (^y g_i)(^{yx} g_j) for the chosen x in H_i\H/H_j, with
// V = ^{yx}H_j meet ^y H_i contained in H_k.
struct OrbitProductDatum {
    int i, j;  // orbit indices
    int x;     // double coset representative in H
    int k;     // orbit index of the product
    int y;     // least-index y in H satisfying the identity
    Subgroup v;
};

inline OrbitProductDatum locate_product_datum(const GroupAction& action,
                                              const std::vector<int>& orbit_reps,
                                              const std::vector<Subgroup>& stabilizers, int i,
                                              int j, int x) {
    const FiniteGroup& h = *action.actor;
    const FiniteGroup& g = *action.target;
    if (x < 0 || x >= h.order()) throw std::invalid_argument("product datum: x out of range");
    int prod = g.mul(orbit_reps[i], action.apply(x, orbit_reps[j]));  // g_i * ^x g_j
    OrbitProductDatum d;
    d.i = i;
    d.j = j;
    d.x = x;
    d.k = -1;
    d.y = -1;
    for (std::size_t k = 0; k < orbit_reps.size(); ++k) {
        for (int y = 0; y < h.order(); ++y) {
            if (action.apply(y, prod) == orbit_reps[k]) {
                d.k = static_cast<int>(k);
                d.y = y;
                break;
            }
        }
        if (d.k >= 0) break;
    }
    if (d.k < 0) throw std::logic_error("product datum: no orbit matched");  // unreachable
    int yx = h.mul(d.y, x);
    d.v = stabilizers[j].conjugate(yx).intersect(stabilizers[i].conjugate(d.y));
    if (!stabilizers[d.k].contains_subgroup(d.v))
        throw std::logic_error("product datum: V not inside H_k");
    return d;
}

// All subgroups of G, deterministic order (by order, then member list).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    std::vector<Subgroup> subs{Subgroup::trivial(g)};
    std::vector<std::vector<int>> seen{subs[0].members};
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (int x = 0; x < g.order(); ++x) {
            if (subs[i].contains(x)) continue;
            std::vector<int> gens = subs[i].members;
            gens.push_back(x);
            Subgroup bigger = Subgroup::generated(g, gens);
            if (std::find(seen.begin(), seen.end(), bigger.members) == seen.end()) {
                seen.push_back(bigger.members);
                subs.push_back(std::move(bigger));
            }
        }
    }
    std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    return subs;
}

}  // namespace tatehh
