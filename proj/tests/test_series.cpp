#include <doctest.h>

#include "qsm/series.hpp"

#include <random>

using namespace qsm;

namespace {

using P = NcPoly<QScalar>;
using TS = TruncSeries<QScalar>;
using SM = SeriesMatrix<QScalar>;

FieldCtx<QScalar> FC = FieldCtx<QScalar>::rational();
Grading G11{1, 1};

P m(int i, int j) { return P::generator(gen_m(G11, i, j), FC.one()); }

TS gen_series(const QuotientContext<QScalar>& ctx, int order, const P& first) {
    TS s = TS::one(&ctx, order);
    s.set_coeff(1, first);
    return s;
}

} // namespace

TEST_CASE("series inverses") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    int D = 3;

    // (1 + t M11)^{-1} is the alternating geometric series
    TS s = gen_series(ctx, D, m(1, 1));
    TS inv = s.inverse();
    CHECK(inv.coeff(0) == P::constant(FC.one()));
    CHECK(inv.coeff(1) == -m(1, 1));
    CHECK(inv.coeff(2) == ctx.normal_form(m(1, 1) * m(1, 1)));
    CHECK(inv.coeff(3) == ctx.normal_form(-(m(1, 1) * m(1, 1) * m(1, 1))));
    CHECK((s * inv) == TS::one(&ctx, D));
    CHECK((inv * s) == TS::one(&ctx, D));

    // (1 + t M21)^{-1} = 1 - t M21 exactly, because M21^2 = 0
    TS s2 = gen_series(ctx, D, m(2, 1));
    TS inv2 = s2.inverse();
    CHECK(inv2.coeff(1) == -m(2, 1));
    CHECK(inv2.coeff(2).is_zero());
    CHECK(inv2.coeff(3).is_zero());

    // t M11 is not a unit
    TS bad(&ctx, D);
    bad.set_coeff(1, m(1, 1));
    CHECK_THROWS_AS(bad.inverse(), NotAUnit);
}

TEST_CASE("series ring axioms and truncation consistency") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    std::mt19937_64 rng(17);
    auto random_series = [&](int order) {
        TS s(&ctx, order);
        for (int d = 0; d <= order; ++d) {
            P p;
            for (int e = 0; e < 2; ++e) {
                Word w;
                for (int i = 0; i < d; ++i)
                    w.gens.push_back(gen_m(G11, 1 + static_cast<int>(rng() % 2u),
                                           1 + static_cast<int>(rng() % 2u)));
                p.add_term(w, QScalar(static_cast<long>(rng() % 7) - 3));
            }
            s.set_coeff(d, p);
        }
        return s;
    };
    for (int t = 0; t < 10; ++t) {
        TS a = random_series(3), b = random_series(3), c = random_series(3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b).truncated(2) == a.truncated(2) * b.truncated(2));
    }
    // two-sided inverse on random unit series
    for (int t = 0; t < 6; ++t) {
        TS a = random_series(3);
        a.set_coeff(0, P::constant(QScalar(1 + static_cast<long>(t % 3))));
        TS inv = a.inverse();
        CHECK(a * inv == TS::one(&ctx, 3));
        CHECK(inv * a == TS::one(&ctx, 3));
    }
}

TEST_CASE("generic manin series and the q = 1 gate") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    SM mm = generic_manin_series(ctx, 2);
    CHECK(mm.at(1, 1).coeff(0) == P::constant(FC.one()));
    CHECK(mm.at(1, 1).coeff(1) == m(1, 1));
    CHECK(mm.at(1, 2).coeff(0).is_zero());
    CHECK(mm.at(1, 2).coeff(1) == m(1, 2));

    // at generic q the matrix 1 + tZ is NOT Manin: the t^1 polarization
    // leaves a (q - 1)-weighted witness
    Outcome o = series_manin_check(mm);
    CHECK_FALSE(o.pass);
    CHECK(o.witness.find("q - 1") != std::string::npos);

    // at q = 1 it is Manin, at every order and size
    FieldCtx<QScalar> fc1 = FieldCtx<QScalar>::rational_at(QScalar(1));
    QuotientContext<QScalar> u11(AlgebraSpec::right_quantum(1, 1), fc1);
    CHECK(series_manin_check(generic_manin_series(u11, 3)).pass);
    QuotientContext<QScalar> u21(AlgebraSpec::right_quantum(2, 1), fc1);
    CHECK(series_manin_check(generic_manin_series(u21, 2)).pass);
}

TEST_CASE("Z_2 = P Z_1 P holds only at q = 1") {
    FieldCtx<QScalar> fc1 = FieldCtx<QScalar>::rational_at(QScalar(1));
    for (auto [mn_m, mn_n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        Grading g{mn_m, mn_n};
        MatrixNc<QScalar> z1 = generator_matrix(g, fc1);
        EndTensor<QScalar> p1 = build_swap(g, fc1);
        CHECK(embed_matrix(z1, 2, 2) == p1 * embed_matrix(z1, 1, 2) * p1);

        MatrixNc<QScalar> z = generator_matrix(g, FC);
        EndTensor<QScalar> p = build_swap(g, FC);
        CHECK_FALSE(embed_matrix(z, 2, 2) == p * embed_matrix(z, 1, 2) * p);
    }
}

TEST_CASE("series matrix inverse") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    SM mm = generic_manin_series(ctx, 2);
    SM inv = mm.inverse();

    // (M^{-1})_{22} = 1 - t M22 + t^2 (M21 M12 + M22^2)
    CHECK(inv.at(2, 2).coeff(0) == P::constant(FC.one()));
    CHECK(inv.at(2, 2).coeff(1) == -m(2, 2));
    CHECK(inv.at(2, 2).coeff(2) == ctx.normal_form(m(2, 1) * m(1, 2) + m(2, 2) * m(2, 2)));

    SM id = SM::identity(&ctx, 2, mm.parities());
    CHECK(mm * inv == id);
    CHECK(inv * mm == id);

    // geometric series entrywise at the (1,1) entry, d = 2
    CHECK(inv.at(1, 1).coeff(2) == ctx.normal_form(m(1, 1) * m(1, 1) + m(1, 2) * m(2, 1)));

    // singular constant term is reported
    SM perm(&ctx, 2, {0, 1});
    perm.at(1, 2).set_coeff(0, P::constant(FC.one()));
    perm.at(2, 1).set_coeff(0, P::constant(FC.one()));
    SM sub = perm.submatrix({1}, {1}); // zero 1x1 block
    CHECK_THROWS_AS(sub.inverse(), NotAUnit);
    CHECK_NOTHROW(perm.inverse()); // the full permutation matrix is invertible
}

TEST_CASE("quasideterminants") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);

    // scalar numeric 2x2 [[1,2],[3,4]]: |A|_11 = 1 - 2 (1/4) 3 = -1/2
    SM a(&ctx, 0, {0, 0});
    a.at(1, 1).set_coeff(0, P::constant(QScalar(1)));
    a.at(1, 2).set_coeff(0, P::constant(QScalar(2)));
    a.at(2, 1).set_coeff(0, P::constant(QScalar(3)));
    a.at(2, 2).set_coeff(0, P::constant(QScalar(4)));
    auto q11 = quasideterminant(a, 1, 1);
    REQUIRE(q11.has_value());
    CHECK(q11->coeff(0) == P::constant(QScalar::ratio(-1, 2)));

    // 1x1
    SM one(&ctx, 0, {0});
    one.at(1, 1).set_coeff(0, P::constant(QScalar(7)));
    CHECK(quasideterminant(one, 1, 1)->coeff(0) == P::constant(QScalar(7)));

    // |M|_11 = (1 + t M11) - t M12 (1 + t M22)^{-1} t M21
    int D = 3;
    SM mm = generic_manin_series(ctx, D);
    auto q = quasideterminant(mm, 1, 1);
    REQUIRE(q.has_value());
    TS m12(&ctx, D), m21(&ctx, D);
    m12.set_coeff(1, m(1, 2));
    m21.set_coeff(1, m(2, 1));
    TS expect = mm.at(1, 1) - m12 * mm.at(2, 2).inverse() * m21;
    CHECK(*q == expect);

    // |M|_12 has no unit constant term anywhere: undefined, not fatal
    std::string why;
    auto q12 = quasideterminant(mm, 1, 2, &why);
    CHECK_FALSE(q12.has_value());
    CHECK(why.find("undefined-in-model") == 0);
}

TEST_CASE("submatrix heredity: block minors stay manin (q = 1)") {
    FieldCtx<QScalar> fc1 = FieldCtx<QScalar>::rational_at(QScalar(1));
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(2, 1), fc1);
    SM mm = generic_manin_series(ctx, 2);
    for (const auto& idx : std::vector<std::vector<int>>{{1}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}) {
        SM sub = mm.submatrix(idx, idx);
        Outcome o = series_manin_check(sub);
        CAPTURE(idx[0]);
        CAPTURE(o.witness);
        CHECK(o.pass);
    }
}

TEST_CASE("generating series and newton identities") {
    QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(1, 1), FC);
    int D = 3;
    GeneratingSeries<QScalar> gs = generating_series(ctx, D);

    MatrixNc<QScalar> z = generator_matrix(G11, FC);
    P strm = supertrace_matrix(z);
    CHECK(gs.A.coeff(0) == P::constant(FC.one()));
    CHECK(gs.A.coeff(1) == -strm);
    CHECK(gs.T.coeff(0) == strm);
    CHECK(gs.S.coeff(1) == strm);

    CHECK(gs.A * gs.S == TS::one(&ctx, D));
    CHECK(gs.S * gs.A == TS::one(&ctx, D));

    Outcome o = newton_check(ctx, D);
    CAPTURE(o.witness);
    CHECK(o.pass);
}

TEST_CASE("newton identities at (2|1), modular backend") {
    FieldCtx<ModScalar> fc = FieldCtx<ModScalar>::modular(kDefaultPrimes[1], 987654321);
    QuotientContext<ModScalar> ctx(AlgebraSpec::right_quantum(2, 1), fc);
    Outcome o = newton_check(ctx, 3);
    CAPTURE(o.witness);
    CHECK(o.pass);
}
