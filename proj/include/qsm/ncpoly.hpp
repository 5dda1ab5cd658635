#pragma once

// Noncommutative polynomials: finite F-linear combinations of words.
//
// The free product is sign-free concatenation; all Koszul signs live in the
// tensor-product structure (koszul_mul, which sorts generators by tensor
// factor) and in the operator calculus.  Canonical form: no zero
// coefficients, words ordered graded-lexicographically.

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "qsm/word.hpp"

namespace qsm {

template <class F>
class NcPoly {
public:
    using Terms = std::map<Word, F>;

    NcPoly() = default;
    static NcPoly constant(F c) {
        NcPoly p;
        p.add_term(Word(), std::move(c));
        return p;
    }
    static NcPoly generator(GenId g, F c) {
        NcPoly p;
        p.add_term(Word({g}), std::move(c));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Word w, F c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(std::move(w), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

    NcPoly& operator+=(const NcPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NcPoly& operator-=(const NcPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    NcPoly operator-() const {
        NcPoly p;
        for (const auto& [w, c] : terms_) p.terms_.emplace(w, -c);
        return p;
    }

    NcPoly scaled(const F& s) const {
        NcPoly p;
        if (s.is_zero()) return p;
        for (const auto& [w, c] : terms_) {
            F v = c * s;
            if (!v.is_zero()) p.terms_.emplace(w, std::move(v));
        }
        return p;
    }

    // Free-algebra product: bilinear concatenation, no signs.
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
        NcPoly p;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) p.add_term(wa.concat(wb), ca * cb);
        return p;
    }

    // Product in the super tensor product of algebras: concatenate, then move
    // every generator left past higher-factor generators, each adjacent swap
    // of generators u, v from distinct factors contributing (-1)^{|u||v|}.
    friend NcPoly koszul_mul(const NcPoly& a, const NcPoly& b) {
        NcPoly p;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                auto [w, sign] = factor_sort(wa.concat(wb));
                F c = ca * cb;
                if (sign < 0) c = -c;
                p.add_term(std::move(w), std::move(c));
            }
        return p;
    }

    // Stable sort of a word's generators by tensor factor with the Koszul
    // sign of the permutation; generator order within a factor is preserved.
    static std::pair<Word, int> factor_sort(Word w) {
        int sign = 1;
        auto& g = w.gens;
        for (std::size_t i = 1; i < g.size(); ++i)
            for (std::size_t j = i; j > 0 && g[j].factor < g[j - 1].factor; --j) {
                if (g[j].parity && g[j - 1].parity) sign = -sign;
                std::swap(g[j], g[j - 1]);
            }
        return {std::move(w), sign};
    }

    int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

    bool is_homogeneous_degree() const {
        if (terms_.empty()) return true;
        return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
    }

    bool has_definite_parity() const {
        if (terms_.empty()) return true;
        int p = terms_.begin()->first.parity();
        for (const auto& [w, c] : terms_)
            if (w.parity() != p) return false;
        return true;
    }
    int parity() const {
        if (!has_definite_parity()) throw NonHomogeneous();
        return terms_.empty() ? 0 : terms_.begin()->first.parity();
    }

    // Word-wise generator substitution; images multiply by free concatenation.
    NcPoly substitute(const std::function<NcPoly(const GenId&)>& image) const {
        NcPoly out;
        for (const auto& [w, c] : terms_) {
            NcPoly prod = NcPoly::constant(c);
            for (const GenId& g : w.gens) prod = prod * image(g);
            out += prod;
        }
        return out;
    }

    template <class G>
    NcPoly<G> map_coefficients(const std::function<G(const F&)>& f) const {
        NcPoly<G> out;
        for (const auto& [w, c] : terms_) out.add_term(w, f(c));
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [w, c] = *it;
            F a = c.display_negative() ? -c : c;
            if (out.empty())
                out += c.display_negative() ? "-" : "";
            else
                out += c.display_negative() ? " - " : " + ";
            std::string cs = a.str();
            bool need_coeff = !(a.is_one()) || w.empty();
            bool need_paren = cs.find_first_of("+-") != std::string::npos &&
                              !(cs.size() && cs[0] == '-');
            if (need_coeff) {
                out += need_paren ? "(" + cs + ")" : cs;
                if (!w.empty()) out += "*";
            }
            if (!w.empty()) out += w.str();
        }
        return out;
    }

private:
    Terms terms_;
};

} // namespace qsm
