#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tatehh/decomposition.hpp"

namespace tatehh {

struct RingGenerator {
    std::string name;
    int degree = 0;
    DecomposedClass cls;
};

struct RelationVerdict {
    std::string text;
    int degree = 0;
    bool holds = false;
    std::string witness;  // nonzero evidence when the relation fails
};

struct RadicalEntry {
    std::string name;
    int degree = 0;
    bool nilpotent = false;
    int exponent = 0;      // smallest verified vanishing power
    bool invertible = false;
    std::string note;
};

struct RingPresentation {
    int window = 0;
    std::vector<RingGenerator> generators;
    std::vector<std::string> relations;
    bool spans_window = false;  // every graded piece spanned by monomials
    std::string validity_note;
};

// ---------------------------------------------------------------------------
// Monomial bookkeeping: a monomial is a non-decreasing sequence of generator
// indices (graded-commutative normal form). Evaluation multiplies left to
// right through the product engine and is memoized.
// ---------------------------------------------------------------------------
class RingCalculator {
public:
    RingCalculator(DecompositionContext& dc, std::vector<RingGenerator> gens)
        : dc_(&dc), gens_(std::move(gens)) {}

    const std::vector<RingGenerator>& generators() const { return gens_; }

    std::size_t add_generator(RingGenerator g) {
        gens_.push_back(std::move(g));
        return gens_.size() - 1;
    }

    const DecomposedClass& evaluate(const std::vector<int>& monomial) {
        auto it = memo_.find(monomial);
        if (it != memo_.end()) return it->second;
        DecomposedClass val;
        if (monomial.empty()) {
            val = dc_->unit();
        } else {
            std::vector<int> head(monomial.begin(), monomial.end() - 1);
            const DecomposedClass& prefix = evaluate(head);
            val = dc_->product(prefix, gens_[monomial.back()].cls);
        }
        return memo_.emplace(monomial, std::move(val)).first->second;
    }

    int monomial_degree(const std::vector<int>& monomial) const {
        int d = 0;
        for (int i : monomial) d += gens_[i].degree;
        return d;
    }

    // All normal-form monomials of the given total degree with every prefix
    // degree inside [-bound, bound] and at most max_len factors.
    std::vector<std::vector<int>> monomials_of_degree(int degree, int bound, int max_len) const {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        enumerate(degree, bound, max_len, 0, 0, cur, out);
        return out;
    }

    std::string render(const std::vector<int>& monomial) const {
        if (monomial.empty()) return "1";
        std::ostringstream s;
        std::size_t t = 0;
        bool first = true;
        while (t < monomial.size()) {
            std::size_t u = t;
            while (u < monomial.size() && monomial[u] == monomial[t]) ++u;
            if (!first) s << "*";
            s << gens_[monomial[t]].name;
            if (u - t > 1) s << "^" << (u - t);
            first = false;
            t = u;
        }
        return s.str();
    }

private:
    void enumerate(int degree, int bound, int max_len, int min_gen, int partial,
                   std::vector<int>& cur, std::vector<std::vector<int>>& out) const {
        if (partial == degree && !cur.empty()) out.push_back(cur);
        if (static_cast<int>(cur.size()) >= max_len) return;
        for (int i = min_gen; i < static_cast<int>(gens_.size()); ++i) {
            int nd = partial + gens_[i].degree;
            if (nd > bound || nd < -bound) continue;
            cur.push_back(i);
            enumerate(degree, bound, max_len, i, nd, cur, out);
            cur.pop_back();
        }
    }

    DecompositionContext* dc_;
    std::vector<RingGenerator> gens_;
    std::map<std::vector<int>, DecomposedClass> memo_;
};

// ---------------------------------------------------------------------------
// Greedy generator extraction: walk degrees by ascending |degree|, and in
// each graded piece adjoin basis directions that products of the existing
// generators do not span. Relations are a spanning set of the kernel of the
// monomial evaluation map, degree by degree.
// ---------------------------------------------------------------------------
inline RingPresentation extract_presentation(DecompositionContext& dc, int window,
                                             int max_len = 3) {
    RingPresentation pres;
    pres.window = window;
    RingCalculator calc(dc, {});
    int zero_names = 1;   // C2, C3, ...
    int other_names = 0;  // g1, g2, ...

    std::vector<int> degree_order{0};
    for (int d = 1; d <= window; ++d) {
        degree_order.push_back(d);
        degree_order.push_back(-d);
    }

    for (int deg : degree_order) {
        std::size_t dim = dc.total_dim(deg);
        if (dim == 0) continue;
        bool added = true;
        while (added) {
            added = false;
            RowEchelon span(dc.p(), dim);
            for (const auto& mono : calc.monomials_of_degree(deg, window, max_len))
                span.insert(dc.coordinates(calc.evaluate(mono)));
            if (deg == 0) span.insert(dc.coordinates(dc.unit()));
            for (std::size_t l = 0; l < dim && !added; ++l) {
                DecomposedClass cand = dc.basis_element(deg, l);
                std::vector<fp_t> c = dc.coordinates(cand);
                if (span.is_in_span(c)) continue;
                RingGenerator g;
                g.degree = deg;
                g.cls = cand;
                if (deg == 0)
                    g.name = "C" + std::to_string(++zero_names);
                else
                    g.name = "g" + std::to_string(++other_names);
                calc.add_generator(std::move(g));
                added = true;
            }
        }
    }
    pres.generators = calc.generators();

    // relations: kernel of the evaluation map per degree
    pres.spans_window = true;
    for (int deg : degree_order) {
        std::size_t dim = dc.total_dim(deg);
        auto monos = calc.monomials_of_degree(deg, window, max_len);
        if (deg == 0) monos.insert(monos.begin(), {});
        if (monos.empty()) {
            if (dim != 0) pres.spans_window = false;
            continue;
        }
        FpMatrix eval(dc.p(), monos.size(), dim == 0 ? 1 : dim);
        for (std::size_t r = 0; r < monos.size(); ++r) {
            if (dim == 0) continue;
            std::vector<fp_t> c = dc.coordinates(calc.evaluate(monos[r]));
            for (std::size_t j = 0; j < dim; ++j) eval.at(r, j) = c[j];
        }
        if (dim != 0 && rank_of(eval) < dim) pres.spans_window = false;
        // kernel of the transpose-action: combinations of monomials mapping to 0
        auto rels = kernel_basis(eval.transposed());
        for (const auto& rel : rels) {
            std::ostringstream s;
            bool first = true;
            for (std::size_t r = 0; r < rel.size(); ++r) {
                if (!rel[r]) continue;
                if (!first) s << " + ";
                if (rel[r] != 1) s << int(rel[r]) << "*";
                s << calc.render(monos[r]);
                first = false;
            }
            if (!first) pres.relations.push_back(s.str());
        }
    }
    pres.validity_note =
        "valid within degrees [" + std::to_string(-window) + ", " + std::to_string(window) + "]";
    return pres;
}

// ---------------------------------------------------------------------------
// Relation verification: parse `W2^2 - z*C` style polynomials against named
// classes and expand them through the product engine.
// ---------------------------------------------------------------------------
class RelationParser {
public:
    RelationParser(DecompositionContext& dc, std::map<std::string, DecomposedClass> names)
        : dc_(&dc), names_(std::move(names)) {}

    // Returns the polynomial evaluated as a decomposed class.
    DecomposedClass evaluate(const std::string& text) {
        pos_ = 0;
        src_ = &text;
        std::optional<DecomposedClass> acc;
        fp_t sign = 1;
        skip_ws();
        if (peek() == '-') {
            sign = fp_neg(1, dc_->p());
            ++pos_;
        }
        while (true) {
            DecomposedClass term = parse_term();
            term = dc_->scale(sign, term);
            acc = acc ? dc_->add(*acc, term) : term;
            skip_ws();
            if (pos_ >= src_->size()) break;
            char c = peek();
            if (c == '+')
                sign = 1;
            else if (c == '-')
                sign = fp_neg(1, dc_->p());
            else
                throw std::invalid_argument("relation parse error at '" + std::string(1, c) + "'");
            ++pos_;
        }
        return *acc;
    }

    // LHS = RHS form or a bare polynomial (interpreted as = 0).
    DecomposedClass evaluate_equation(const std::string& line) {
        auto eq = line.find('=');
        if (eq == std::string::npos) return evaluate(line);
        DecomposedClass lhs = evaluate(line.substr(0, eq));
        DecomposedClass rhs = evaluate(line.substr(eq + 1));
        return dc_->sub(lhs, rhs);
    }

private:
    char peek() const { return (*src_)[pos_]; }
    void skip_ws() {
        while (pos_ < src_->size() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    DecomposedClass parse_term() {
        skip_ws();
        fp_t coeff = 1;
        bool have_factor = false;
        std::optional<DecomposedClass> acc;
        while (true) {
            skip_ws();
            if (pos_ >= src_->size()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                long long v = 0;
                while (pos_ < src_->size() && std::isdigit(static_cast<unsigned char>(peek())))
                    v = v * 10 + (*src_)[pos_++] - '0';
                coeff = static_cast<fp_t>(coeff * fp_of_int(v, dc_->p()) % dc_->p());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name;
                while (pos_ < src_->size() &&
                       (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    name.push_back((*src_)[pos_++]);
                int exp = 1;
                skip_ws();
                if (pos_ < src_->size() && peek() == '^') {
                    ++pos_;
                    skip_ws();
                    exp = 0;
                    while (pos_ < src_->size() && std::isdigit(static_cast<unsigned char>(peek())))
                        exp = exp * 10 + (*src_)[pos_++] - '0';
                }
                auto it = names_.find(name);
                if (it == names_.end())
                    throw std::invalid_argument("unresolvable generator name: " + name);
                for (int e = 0; e < exp; ++e)
                    acc = acc ? dc_->product(*acc, it->second) : it->second;
                have_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (pos_ < src_->size() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!have_factor && coeff != 0) {
            DecomposedClass u = dc_->unit();
            return dc_->scale(coeff, u);
        }
        if (!acc) throw std::invalid_argument("empty term in relation");
        return dc_->scale(coeff, *acc);
    }

    DecompositionContext* dc_;
    std::map<std::string, DecomposedClass> names_;
    std::size_t pos_ = 0;
    const std::string* src_ = nullptr;
};

inline RelationVerdict verify_relation(DecompositionContext& dc,
                                       std::map<std::string, DecomposedClass> names,
                                       const std::string& line) {
    RelationParser parser(dc, std::move(names));
    RelationVerdict v;
    v.text = line;
    DecomposedClass diff = parser.evaluate_equation(line);
    v.degree = diff.degree;
    v.holds = dc.is_zero(diff);
    if (!v.holds) {
        std::ostringstream w;
        w << "nonzero components:";
        for (std::size_t i = 0; i < diff.comps.size(); ++i) {
            if (diff.comps[i].empty()) continue;
            if (!dc.tate().cochain_class_is_zero(dc.stabilizer_id(i),
                                                 dc.tate().trivial_module(), diff.degree,
                                                 diff.comps[i]))
                w << " orbit " << i;
        }
        if (std::abs(diff.degree) <= dc.window()) {
            w << " coords [";
            for (fp_t c : dc.coordinates(diff)) w << " " << int(c);
            w << " ]";
        }
        v.witness = w.str();
    }
    return v;
}

// Smallest vanishing power within the verifiable degree range, plus an
// invertibility scan against partner generators of opposite degree.
inline std::vector<RadicalEntry> radical_report(DecompositionContext& dc,
                                                const std::vector<RingGenerator>& gens) {
    std::vector<RadicalEntry> out;
    int reach = dc.window() + 2;  // classes remain testable out to the resolution window
    for (const auto& g : gens) {
        RadicalEntry e;
        e.name = g.name;
        e.degree = g.degree;
        DecomposedClass power = g.cls;
        int k = 1;
        int cap = g.degree == 0 ? dc.p() + 2 : reach;
        while (true) {
            ++k;
            if (g.degree != 0 && std::abs(g.degree * k) > reach) break;
            if (g.degree == 0 && k > cap) break;
            power = dc.product(power, g.cls);
            if (dc.is_zero(power)) {
                e.nilpotent = true;
                e.exponent = k;
                break;
            }
        }
        if (!e.nilpotent) {
            // invertible if some partner of opposite degree multiplies to the unit
            for (const auto& h : gens) {
                if (h.degree != -g.degree) continue;
                DecomposedClass prod = dc.product(g.cls, h.cls);
                if (dc.equal(prod, dc.unit())) {
                    e.invertible = true;
                    e.note = "inverse: " + h.name;
                    break;
                }
            }
            if (!e.invertible) e.note = "not nilpotent within window";
        }
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Named generators for the S3 / F_3 demonstration, normalized the standard
// way: res_N x = w1 w2, res_N z = w2^2, res_N z^{-1} = w2^{-2}, w2 w2^{-1} = 1,
// E2 = psi_2(1), C = E2 + 1.
// ---------------------------------------------------------------------------
inline std::map<std::string, DecomposedClass> s3_demo_generators(DecompositionContext& dc) {
    if (dc.action().actor->order() != 6 || dc.p() != 3)
        throw std::invalid_argument("demo generators require S3 at p = 3");
    TateContext& ctx = dc.tate();
    int n_id = dc.stabilizer_id(1);
    int k = ctx.trivial_module();

    auto periodic_coords = [&](int deg, const std::vector<fp_t>& bar) {
        const CohomologySpace& sp = ctx.space(SpaceKey{n_id, k, deg, Backend::periodic});
        return sp.project(ctx.to_periodic(n_id, k, deg, bar));
    };

    DecomposedClass one = dc.unit();
    DecomposedClass e2 = dc.basis_element(0, 1);
    DecomposedClass c = dc.add(one, e2);
    DecomposedClass w1 = dc.basis_element(1, 0);
    DecomposedClass w2 = dc.basis_element(2, 0);

    ModulePairing triv = ModulePairing::trivial(ctx.module(k));
    auto n_cup = [&](const DecomposedClass& a, const DecomposedClass& b, int da, int db) {
        return cup_trivial_cochain(ctx, dc.diagonal(), n_id, triv, da, db, a.comps[1],
                                   b.comps[1]);
    };

    // normalize w2inv inside the ring of N: w2 cup w2inv = 1 there
    DecomposedClass w2inv = dc.basis_element(-2, 0);
    {
        std::vector<fp_t> coords = periodic_coords(0, n_cup(w2, w2inv, 2, -2));
        if (coords[0] == 0) throw std::logic_error("w2 * w2inv degenerate");
        w2inv = dc.scale(fp_inv(coords[0], dc.p()), w2inv);
    }
    auto match_restriction = [&](DecomposedClass cls, const std::vector<fp_t>& target_coords,
                                 int deg) {
        std::vector<fp_t> res =
            ctx.restrict_cochain(dc.whole_id(), n_id, k, deg, cls.comps[0]);
        std::vector<fp_t> have = periodic_coords(deg, res);
        if (have[0] == 0) throw std::logic_error("restriction unexpectedly zero");
        fp_t factor = static_cast<fp_t>(target_coords[0] * fp_inv(have[0], dc.p()) % dc.p());
        return dc.scale(factor, cls);
    };

    // w1 w2 and w2^2 and w2^{-2} in periodic coordinates over N
    std::vector<fp_t> w1w2 = periodic_coords(3, n_cup(w1, w2, 1, 2));
    std::vector<fp_t> w2sq = periodic_coords(4, n_cup(w2, w2, 2, 2));
    std::vector<fp_t> w2invsq = periodic_coords(-4, n_cup(w2inv, w2inv, -2, -2));

    DecomposedClass x = match_restriction(dc.basis_element(3, 0), w1w2, 3);
    DecomposedClass z = match_restriction(dc.basis_element(4, 0), w2sq, 4);
    DecomposedClass zinv = match_restriction(dc.basis_element(-4, 0), w2invsq, -4);

    std::map<std::string, DecomposedClass> names;
    names["x"] = x;
    names["z"] = z;
    names["zinv"] = zinv;
    names["C"] = c;
    names["E2"] = e2;
    names["W1"] = dc.basis_element(1, 0);
    names["W2"] = dc.basis_element(2, 0);
    names["W2inv"] = w2inv;
    names["one"] = one;
    return names;
}

// The full relation suite of the S3 demonstration.
inline std::vector<std::string> s3_demo_relations() {
    return {
        "x*W1 = 0",
        "x*W2 = z*W1",
        "zinv*W1 = x*zinv*W2inv",
        "C^2 = 0",
        "C*W1 = 0",
        "C*W2 = 0",
        "C*W2inv = 0",
        "W2^2 = z*C",
        "W2inv^2 = zinv*C",
        "W1*W2 = x*C",
        "W1*W2inv = x*zinv*C",
        "E2^2 = E2 - 1",
        "W1^2 = 0",
        "W2^3 = 0",
        "W2inv^3 = 0",
        "z*zinv = 1",
        "x^2 = 0",
    };
}

}  // namespace tatehh
