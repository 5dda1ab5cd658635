#include <doctest.h>

#include "qsm/tensor_checks.hpp"

using namespace qsm;

namespace {
FieldCtx<QScalar> FC = FieldCtx<QScalar>::rational();
}

TEST_CASE("symmetrizer recursions") {
    // k = 2 base case reduces to 2 A_2 = 1 - P
    Grading g{1, 1};
    EndTensor<QScalar> a2 = antisymmetrizer(2, g, FC);
    EndTensor<QScalar> expect =
        EndTensor<QScalar>::identity(2, g, FC) - build_swap(g, FC);
    CHECK(a2.scaled(QScalar(2)) == expect);

    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 0}}) {
        for (int k = 2; k <= 3; ++k)
            for (int r = 1; r < k; ++r) {
                Outcome o = symmetrizer_recursions_check(k, r, Grading{m, n}, FC);
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(k);
                CAPTURE(r);
                CAPTURE(o.witness);
                CHECK(o.pass);
            }
    }
    Outcome o4 = symmetrizer_recursions_check(4, 2, Grading{1, 1}, FC);
    CHECK(o4.pass);
}

TEST_CASE("compression theorem") {
    for (auto [m, n, kmax] : std::vector<std::tuple<int, int, int>>{{1, 1, 3}, {2, 1, 2}, {1, 2, 2}}) {
        QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(m, n), FC);
        for (int k = 2; k <= kmax; ++k) {
            Outcome o = compression_check(k, ctx);
            CAPTURE(m);
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(o.witness);
            CHECK(o.pass);
        }
    }
}

TEST_CASE("macmahon master theorem sums vanish") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    for (int k = 1; k <= 4; ++k) {
        CAPTURE(k);
        CHECK(macmahon_sum(k, ctx, true).is_zero());
        CHECK(macmahon_sum(k, ctx, false).is_zero());
    }
}

TEST_CASE("star product powers") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    const Grading& g = ctx.grading();
    MatrixNc<QScalar> z = generator_matrix(g, FC);

    CHECK(star_power(0, ctx) == scalar_identity_matrix(g, FC));
    CHECK(star_power(1, ctx) == z); // M^{[1]} = M

    // 2 str A_2 M_1 M_2 = (str M)^2 - str M^{[2]} after reduction
    NcPoly<QScalar> a2 = str_antisym_power(2, ctx);
    NcPoly<QScalar> strm = supertrace_matrix(z);
    NcPoly<QScalar> lhs = ctx.normal_form(a2 + a2);
    NcPoly<QScalar> rhs = ctx.normal_form(strm * strm - str_star_power(2, ctx));
    CHECK(lhs == rhs);
}

TEST_CASE("explicit trace formulas agree with tensor computation") {
    QuotientContext<QScalar> ctx11(AlgebraSpec::right_quantum(1, 1), FC);
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        CHECK(explicit_trace_formula(k, ctx11, true) == tensor_trace_reference(k, ctx11, true));
        CHECK(explicit_trace_formula(k, ctx11, false) == tensor_trace_reference(k, ctx11, false));
    }
    // k = 1 is str M for both flavors
    MatrixNc<QScalar> z = generator_matrix(ctx11.grading(), FC);
    CHECK(explicit_trace_formula(1, ctx11, true) == supertrace_matrix(z));
    CHECK(explicit_trace_formula(1, ctx11, false) == supertrace_matrix(z));

    QuotientContext<QScalar> ctx21(AlgebraSpec::right_quantum(2, 1), FC);
    for (int k = 1; k <= 2; ++k) {
        CAPTURE(k);
        CHECK(explicit_trace_formula(k, ctx21, true) == tensor_trace_reference(k, ctx21, true));
        CHECK(explicit_trace_formula(k, ctx21, false) == tensor_trace_reference(k, ctx21, false));
    }
}

TEST_CASE("full supertrace is cyclic for the symmetrizer") {
    // str H_k M_1..M_k = str M_1..M_k H_k once reduced
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        CHECK(str_sym_power(k, ctx) == tensor_trace_reference(k, ctx, false));
    }
}

TEST_CASE("macmahon k = 1 cancels before any reduction") {
    Grading g{1, 1};
    MatrixNc<QScalar> z = generator_matrix(g, FC);
    EndTensor<QScalar> m1 = embed_matrix(z, 1, 1);
    // r = 0 term: str A_{1..1} M_1 = str M_1; r = 1 term: str H_1 M_1
    NcPoly<QScalar> raw = supertrace_all(antisymmetrizer(1, g, FC) * m1) -
                          supertrace_all(symmetrizer(1, g, FC) * m1);
    CHECK(raw.is_zero());
}

TEST_CASE("explicit trace formulas at the degree cap") {
    // the H-flavor carries no sign character; k = 4 exercises every multiset shape
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    CHECK(explicit_trace_formula(4, ctx, true) == tensor_trace_reference(4, ctx, true));
    CHECK(explicit_trace_formula(4, ctx, false) == tensor_trace_reference(4, ctx, false));
}
