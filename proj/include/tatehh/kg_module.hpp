#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tatehh/fp_matrix.hpp"
#include "tatehh/group.hpp"

namespace tatehh {

// Finite-dimensional module over kG: one invertible action matrix per group
// element. Cochain formulas evaluate module actions pointwise over group
// elements, so per-element storage (not per-generator) is the right shape.
class KGModule {
public:
    KGModule() = default;

    KGModule(const FiniteGroup& g, int p, std::vector<FpMatrix> action, std::string name = "")
        : group_(&g), p_(p), action_(std::move(action)), name_(std::move(name)) {
        if (static_cast<int>(action_.size()) != g.order())
            throw std::invalid_argument("module: need one matrix per group element");
        dim_ = action_.empty() ? 0 : action_[0].rows();
        check_homomorphism();
    }

    const FiniteGroup& group() const { return *group_; }
    int p() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const FpMatrix& action(int g) const { return action_[g]; }

    std::vector<fp_t> act(int g, const std::vector<fp_t>& v) const { return action_[g].apply(v); }

    // g acting on basis vector e_i, accumulated into out with coefficient c.
    void act_accum(int g, std::size_t i, fp_t c, std::vector<fp_t>& out) const {
        const FpMatrix& m = action_[g];
        for (std::size_t r = 0; r < dim_; ++r) {
            fp_t a = m.at(r, i);
            if (a) out[r] = static_cast<fp_t>((out[r] + c * a) % p_);
        }
    }

    static KGModule trivial(const FiniteGroup& g, int p) {
        std::vector<FpMatrix> act(g.order(), FpMatrix::identity(p, 1));
        return KGModule(g, p, std::move(act), "k");
    }

    // kG as a module over the acting group H: basis indexed by G's elements,
    // h sending e_x to e_{^h x}. With H = G acting by conjugation this is the
    // conjugation module kG^conj.
    static KGModule group_algebra_under_action(const GroupAction& a, int p) {
        const FiniteGroup& g = *a.target;
        const FiniteGroup& h = *a.actor;
        std::vector<FpMatrix> act;
        act.reserve(h.order());
        for (int e = 0; e < h.order(); ++e) {
            FpMatrix m(p, g.order(), g.order());
            for (int x = 0; x < g.order(); ++x) m.at(a.apply(e, x), x) = 1;
            act.push_back(std::move(m));
        }
        return KGModule(h, p, std::move(act), "kG");
    }

    static KGModule conjugation(const FiniteGroup& g, int p) {
        return group_algebra_under_action(GroupAction::conjugation(g), p);
    }

    KGModule restricted(const Subgroup& h) const {
        if (h.parent != group_) throw std::invalid_argument("restrict: subgroup of another group");
        (void)h;  // same matrices; restriction is a view-by-construction
        return *this;
    }

    // Induced module kG (x)_{kH} M, dimension [G:H]*dim. Basis blocks are
    // indexed by left coset representatives c; g * (c (x) m) lands in block
    // c' where g c = c' h, carrying the h-action on m.
    static KGModule induced(const KGModule& m, const Subgroup& h, const FiniteGroup& g, int p) {
        auto reps = coset_reps(g, h);
        std::size_t blocks = reps.size(), d = m.dim();
        std::vector<int> block_of(g.order(), -1), twist_of(g.order(), -1);
        for (std::size_t b = 0; b < blocks; ++b)
            for (int x : h.members) {
                int e = g.mul(reps[b], x);
                block_of[e] = static_cast<int>(b);
                twist_of[e] = x;
            }
        std::vector<FpMatrix> act;
        act.reserve(g.order());
        for (int e = 0; e < g.order(); ++e) {
            FpMatrix mat(p, blocks * d, blocks * d);
            for (std::size_t b = 0; b < blocks; ++b) {
                int prod = g.mul(e, reps[b]);
                int b2 = block_of[prod], tw = twist_of[prod];
                const FpMatrix& hm = m.action(tw);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c) mat.at(b2 * d + r, b * d + c) = hm.at(r, c);
            }
            act.push_back(std::move(mat));
        }
        return KGModule(g, p, std::move(act), m.name() + "^ind");
    }

    static KGModule direct_sum(const KGModule& a, const KGModule& b) {
        if (a.group_ != b.group_ || a.p_ != b.p_)
            throw std::invalid_argument("direct sum: incompatible modules");
        std::vector<FpMatrix> act;
        for (int e = 0; e < a.group().order(); ++e) {
            FpMatrix m(a.p_, a.dim_ + b.dim_, a.dim_ + b.dim_);
            for (std::size_t r = 0; r < a.dim_; ++r)
                for (std::size_t c = 0; c < a.dim_; ++c) m.at(r, c) = a.action(e).at(r, c);
            for (std::size_t r = 0; r < b.dim_; ++r)
                for (std::size_t c = 0; c < b.dim_; ++c)
                    m.at(a.dim_ + r, a.dim_ + c) = b.action(e).at(r, c);
            act.push_back(std::move(m));
        }
        return KGModule(a.group(), a.p_, std::move(act), a.name() + "+" + b.name());
    }

    // Dual module with contragredient action (transpose of the inverse).
    KGModule dual() const {
        std::vector<FpMatrix> act;
        for (int e = 0; e < group().order(); ++e)
            act.push_back(action_[group().inv(e)].transposed());
        return KGModule(group(), p_, std::move(act), name_ + "^*");
    }

    // Dimension of the subspace fixed by every group element.
    std::size_t fixed_subspace_dim() const {
        FpMatrix stacked(p_, dim_ * group().order(), dim_);
        for (int e = 0; e < group().order(); ++e)
            for (std::size_t r = 0; r < dim_; ++r)
                for (std::size_t c = 0; c < dim_; ++c) {
                    fp_t v = action_[e].at(r, c);
                    if (r == c) v = fp_sub(v, 1, p_);
                    stacked.at(e * dim_ + r, c) = v;
                }
        return dim_ - rank_of(stacked);
    }

private:
    void check_homomorphism() const {
        const FiniteGroup& g = *group_;
        if (!(action_[0] == FpMatrix::identity(p_, dim_)))
            throw std::invalid_argument("module: identity must act as identity");
        // exhaustive for small groups, sampled diagonal beyond
        bool full = g.order() <= 16;
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b) {
                if (!full && a != b) continue;
                if (!(action_[g.mul(a, b)] == action_[a] * action_[b]))
                    throw std::invalid_argument("module: action is not a homomorphism");
            }
    }

    const FiniteGroup* group_ = nullptr;
    int p_ = 2;
    std::size_t dim_ = 0;
    std::vector<FpMatrix> action_;
    std::string name_;
};

// Equivariant bilinear pairing M (x) N -> L, given on basis pairs. The
// multiplication pairing of kG with itself is the one instance the ring
// structure needs; equivariance is checked on all basis triples at build.
class ModulePairing {
public:
    ModulePairing() = default;

    // map(i, j) = column vector of length dim(L) for e_i (x) e_j.
    ModulePairing(const KGModule& m, const KGModule& n, const KGModule& l, FpMatrix map)
        : left_(&m), right_(&n), out_(&l), map_(std::move(map)) {
        if (map_.rows() != l.dim() || map_.cols() != m.dim() * n.dim())
            throw std::invalid_argument("pairing: shape mismatch");
        check_equivariance();
    }

    const KGModule& left() const { return *left_; }
    const KGModule& right() const { return *right_; }
    const KGModule& out() const { return *out_; }

    // value on e_i (x) e_j accumulated into res with coefficient c
    void pair_basis_accum(std::size_t i, std::size_t j, fp_t c, std::vector<fp_t>& res) const {
        std::size_t col = i * right_->dim() + j;
        int p = out_->p();
        for (std::size_t r = 0; r < out_->dim(); ++r) {
            fp_t v = map_.at(r, col);
            if (v) res[r] = static_cast<fp_t>((res[r] + c * v) % p);
        }
    }

    std::vector<fp_t> pair(const std::vector<fp_t>& a, const std::vector<fp_t>& b) const {
        std::vector<fp_t> res(out_->dim(), 0);
        int p = out_->p();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                fp_t c = static_cast<fp_t>(a[i] * b[j] % p);
                if (c) pair_basis_accum(i, j, c, res);
            }
        }
        return res;
    }

    // k (x) k -> k multiplication, the pairing behind cup products with
    // trivial coefficients.
    static ModulePairing trivial(const KGModule& k) {
        FpMatrix m(k.p(), 1, 1);
        m.at(0, 0) = 1;
        return ModulePairing(k, k, k, std::move(m));
    }

    // kG (x) kG -> kG by Cayley-table multiplication; equivariant for any
    // action by automorphisms.
    static ModulePairing multiplication(const KGModule& kg, const FiniteGroup& g) {
        if (kg.dim() != static_cast<std::size_t>(g.order()))
            throw std::invalid_argument("multiplication pairing: module is not kG");
        FpMatrix m(kg.p(), g.order(), g.order() * g.order());
        for (int x = 0; x < g.order(); ++x)
            for (int y = 0; y < g.order(); ++y) m.at(g.mul(x, y), x * g.order() + y) = 1;
        return ModulePairing(kg, kg, kg, std::move(m));
    }

private:
    void check_equivariance() const {
        const FiniteGroup& g = left_->group();
        std::size_t dm = left_->dim(), dn = right_->dim();
        for (int e = 0; e < g.order(); ++e) {
            for (std::size_t i = 0; i < dm; ++i)
                for (std::size_t j = 0; j < dn; ++j) {
                    // pairing(e*m, e*n) vs e*pairing(m, n) on basis vectors
                    std::vector<fp_t> lhs(out_->dim(), 0);
                    const FpMatrix& am = left_->action(e);
                    const FpMatrix& an = right_->action(e);
                    for (std::size_t r = 0; r < dm; ++r) {
                        if (!am.at(r, i)) continue;
                        for (std::size_t s = 0; s < dn; ++s) {
                            fp_t c = static_cast<fp_t>(am.at(r, i) * an.at(s, j) % out_->p());
                            if (c) pair_basis_accum(r, s, c, lhs);
                        }
                    }
                    std::vector<fp_t> base(out_->dim(), 0);
                    pair_basis_accum(i, j, 1, base);
                    std::vector<fp_t> rhs = out_->act(e, base);
                    if (lhs != rhs) throw std::invalid_argument("pairing: not equivariant");
                }
        }
    }

    const KGModule* left_ = nullptr;
    const KGModule* right_ = nullptr;
    const KGModule* out_ = nullptr;
    FpMatrix map_;
};

}  // namespace tatehh
