#pragma once

// Expression grammar for generator-matrix polynomials:
//
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" UINT)?
//   atom   := "M[" UINT "," UINT "]" | "q" | UINT | "(" expr ")"
//
// Division is only defined by scalar (coefficient) values; it is what lets
// formatted output such as (q + 1)/(2*q) round-trip, since coefficients of
// Q(q) have no sign-free power notation for 1/q.

#include <cctype>
#include <string>

#include "qsm/ncpoly.hpp"
#include "qsm/qscalar.hpp"

namespace qsm {

template <class F>
class ExprParser {
public:
    ExprParser(std::string text, Grading grading, FieldCtx<F> fc)
        : text_(std::move(text)), grading_(grading), fc_(std::move(fc)) {}

    NcPoly<F> parse() {
        NcPoly<F> e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

private:
    NcPoly<F> parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (take() == '-');
        NcPoly<F> acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            take();
            NcPoly<F> t = parse_term();
            if (c == '+')
                acc += t;
            else
                acc -= t;
        }
        return acc;
    }

    NcPoly<F> parse_term() {
        NcPoly<F> acc = parse_factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') break;
            std::size_t at = pos_;
            take();
            NcPoly<F> f = parse_factor();
            if (c == '*') {
                acc = acc * f;
            } else {
                F s = as_scalar(f, at);
                if (s.is_zero()) throw ParseError("division by zero", at);
                acc = acc.scaled(s.inverse());
            }
        }
        return acc;
    }

    NcPoly<F> parse_factor() {
        NcPoly<F> a = parse_atom();
        skip_ws();
        if (peek() == '^') {
            std::size_t at = pos_;
            take();
            skip_ws();
            unsigned long e = parse_uint(at);
            NcPoly<F> r = NcPoly<F>::constant(fc_.one());
            for (unsigned long i = 0; i < e; ++i) r = r * a;
            return r;
        }
        return a;
    }

    NcPoly<F> parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            take();
            NcPoly<F> e = parse_expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            take();
            return e;
        }
        if (c == 'M') {
            take();
            expect('[');
            int i = static_cast<int>(parse_uint(pos_));
            expect(',');
            int j = static_cast<int>(parse_uint(pos_));
            expect(']');
            return NcPoly<F>::generator(gen_m(grading_, i, j), fc_.one());
        }
        if (c == 'q') {
            take();
            return NcPoly<F>::constant(fc_.q());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long v = parse_uint(pos_);
            return NcPoly<F>::constant(fc_.from_long(static_cast<long>(v)));
        }
        throw ParseError("expected atom", pos_);
    }

    F as_scalar(const NcPoly<F>& p, std::size_t at) {
        if (p.is_zero()) return fc_.zero();
        if (p.term_count() != 1 || !p.terms().begin()->first.empty())
            throw ParseError("divisor must be a scalar", at);
        return p.terms().begin()->second;
    }

    unsigned long parse_uint(std::size_t at) {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected unsigned integer", at);
        unsigned long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(take() - '0');
            if (v > 1000000) throw ParseError("integer too large", at);
        }
        return v;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        take();
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    std::string text_;
    std::size_t pos_ = 0;
    Grading grading_;
    FieldCtx<F> fc_;
};

template <class F>
NcPoly<F> parse_expr(const std::string& text, const Grading& g, const FieldCtx<F>& fc) {
    return ExprParser<F>(text, g, fc).parse();
}

// Formatting lives on NcPoly::str(); parse(format(p)) == p.
template <class F>
std::string format_expr(const NcPoly<F>& p) {
    return p.str();
}

} // namespace qsm
