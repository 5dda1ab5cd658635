#pragma once

// Named verification suites.  Each suite appends CheckResult records for one
// (m|n) configuration; the driver handles backend selection and, on the
// modular backend, runs every check on all configured (prime, q-point) pairs
// and requires unanimity.
//
// Identity checks on the series model are hypothesis-gated: the model gates
// (Manin property of the generic series matrix, supertranspose-twisted
// invertibility) are themselves reported, and a failing check whose gates are
// down is downgraded to a skip naming the missing hypothesis — the identity
// is not false, the model cannot instantiate the theorem's premises there.
// Checks that pass anyway (ring-universal instances) report pass.  The same
// suites are also run at the sound specialization q = 1, where the Manin
// gate provably holds.

#include <chrono>
#include <functional>
#include <random>

#include "qsm/parser.hpp"
#include "qsm/report.hpp"

namespace qsm {

class SuiteRunner {
public:
    SuiteRunner(std::string suite, std::string variant, std::vector<CheckResult>& out)
        : suite_(std::move(suite)), variant_(std::move(variant)), out_(out) {}

    void add(const std::string& name, const std::string& params,
             const std::function<BerCheck()>& fn) {
        auto start = std::chrono::steady_clock::now();
        BerCheck c;
        try {
            c = fn();
        } catch (const DegreeOverflow& e) {
            c = BerCheck::skip(e.what());
        } catch (const Error& e) {
            c = BerCheck::fail(std::string("error: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        out_.push_back({suite_, variant_.empty() ? name : name + " " + variant_, params, c.status,
                        c.note, static_cast<long>(ms)});
    }

    void add_bool(const std::string& name, const std::string& params,
                  const std::function<bool()>& fn, const std::string& fail_note = "") {
        add(name, params, [&]() {
            return fn() ? BerCheck::pass() : BerCheck::fail(fail_note);
        });
    }

private:
    std::string suite_;
    std::string variant_;
    std::vector<CheckResult>& out_;
};

inline std::string mn_params(int m, int n) {
    return "m=" + std::to_string(m) + " n=" + std::to_string(n);
}

// ---- tensor: sign-convention gate and symmetrizer algebra ----

template <class F>
void suite_tensor(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                  std::vector<CheckResult>& out) {
    SuiteRunner run("tensor", variant, out);
    Grading g{cfg.m, cfg.n};
    std::string mn = mn_params(cfg.m, cfg.n);
    using T = EndTensor<F>;

    run.add_bool("P^2 = 1", mn, [&] {
        T p = build_swap(g, fc);
        return p * p == T::identity(2, g, fc);
    });
    run.add_bool("braid relation", mn, [&] {
        T p12 = swap_at(1, 3, g, fc), p23 = swap_at(2, 3, g, fc);
        return p12 * p23 * p12 == p23 * p12 * p23;
    });
    if (cfg.k_max >= 4) {
        run.add_bool("distant swaps commute", mn, [&] {
            return swap_at(1, 4, g, fc) * swap_at(3, 4, g, fc) ==
                   swap_at(3, 4, g, fc) * swap_at(1, 4, g, fc);
        });
    }
    run.add_bool("reduced-word independence", mn + " k=3", [&] {
        // two distinct reduced words of the longest element of S_3
        T w0 = swap_at(1, 3, g, fc) * swap_at(2, 3, g, fc) * swap_at(1, 3, g, fc);
        return perm_operator({3, 2, 1}, 3, g, fc) == w0;
    });
    run.add_bool("perm products compose", mn, [&] {
        std::mt19937_64 rng(cfg.seed);
        int k = std::min(4, std::max(3, cfg.k_max));
        int used = 0;
        for (int trial = 0; trial < 80 && used < 5; ++trial) {
            Perm s(static_cast<std::size_t>(k)), t(static_cast<std::size_t>(k));
            std::iota(s.begin(), s.end(), 1);
            std::iota(t.begin(), t.end(), 1);
            for (int i = k - 1; i > 0; --i) {
                std::swap(s[static_cast<std::size_t>(i)], s[rng() % static_cast<unsigned>(i + 1)]);
                std::swap(t[static_cast<std::size_t>(i)], t[rng() % static_cast<unsigned>(i + 1)]);
            }
            Perm st(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                st[static_cast<std::size_t>(i)] =
                    s[static_cast<std::size_t>(t[static_cast<std::size_t>(i)] - 1)];
            if (perm_length(st) != perm_length(s) + perm_length(t)) continue;
            ++used;
            if (!(perm_operator(s, k, g, fc) * perm_operator(t, k, g, fc) ==
                  perm_operator(st, k, g, fc)))
                return false;
        }
        return used > 0;
    });
    for (int k = 2; k <= cfg.k_max; ++k) {
        run.add_bool("A_k idempotent", mn + " k=" + std::to_string(k), [&] {
            T a = antisymmetrizer(k, g, fc);
            return a * a == a;
        });
        run.add_bool("H_k idempotent", mn + " k=" + std::to_string(k), [&] {
            T h = symmetrizer(k, g, fc);
            return h * h == h;
        });
        run.add_bool("sign twists", mn + " k=" + std::to_string(k), [&] {
            T a = antisymmetrizer(k, g, fc), h = symmetrizer(k, g, fc);
            for (int p = 1; p < k; ++p) {
                T sw = swap_at(p, k, g, fc);
                if (!(a * sw == -a) || !(sw * a == -a) || !(h * sw == h) || !(sw * h == h))
                    return false;
            }
            return true;
        });
    }
    run.add_bool("A2 + H2 = 1 and A2 H2 = 0", mn, [&] {
        T a = antisymmetrizer(2, g, fc), h = symmetrizer(2, g, fc);
        return a + h == T::identity(2, g, fc) && (a * h).is_zero() && (h * a).is_zero();
    });
    for (int k = 2; k <= cfg.k_max; ++k)
        for (int r = 1; r < k; ++r) {
            run.add("symmetrizer recursions", mn + " k=" + std::to_string(k) + " r=" + std::to_string(r), [&] {
                Outcome o = symmetrizer_recursions_check(k, r, g, fc);
                return o.pass ? BerCheck::pass() : BerCheck::fail(o.witness);
            });
        }
}

// ---- relations: equivalence, compression, comodule/bialgebra ----

template <class F>
void suite_relations(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                     std::vector<CheckResult>& out) {
    SuiteRunner run("relations", variant, out);
    std::string mn = mn_params(cfg.m, cfg.n);

    run.add("entrywise list spans the tensor relation", mn, [&] {
        SpanReport rep = relation_equivalence_check(cfg.m, cfg.n, fc);
        if (rep.equal) return BerCheck::pass();
        return BerCheck::fail(rep.discrepancy.empty() ? "span mismatch" : rep.discrepancy.front());
    });

    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    for (int k = 2; k <= std::min(cfg.k_max, ctx.degree_cap()); ++k) {
        run.add("compression theorem", mn + " k=" + std::to_string(k), [&] {
            Outcome o = compression_check(k, ctx);
            return o.pass ? BerCheck::pass() : BerCheck::fail(o.witness);
        });
    }
    run.add("comodule morphism delta", mn, [&] {
        MorphismReport r = comodule_morphism_check(cfg.m, cfg.n, true, fc);
        return r.pass ? BerCheck::pass() : BerCheck::fail(r.failures.front());
    });
    run.add("comodule morphism delta*", mn, [&] {
        MorphismReport r = comodule_morphism_check(cfg.m, cfg.n, false, fc);
        return r.pass ? BerCheck::pass() : BerCheck::fail(r.failures.front());
    });
    run.add("coproduct preserves relations; counit", mn, [&] {
        MorphismReport r = coproduct_morphism_check(cfg.m, cfg.n, fc);
        return r.pass ? BerCheck::pass() : BerCheck::fail(r.failures.front());
    });
}

// ---- macmahon ----

template <class F>
void suite_macmahon(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                    std::vector<CheckResult>& out) {
    SuiteRunner run("macmahon", variant, out);
    std::string mn = mn_params(cfg.m, cfg.n);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    for (int k = 1; k <= std::min(cfg.k_max, ctx.degree_cap()); ++k) {
        run.add("HA sum vanishes", mn + " k=" + std::to_string(k), [&] {
            NcPoly<F> s = macmahon_sum(k, ctx, true);
            return s.is_zero() ? BerCheck::pass() : BerCheck::fail(s.str());
        });
        run.add("AH sum vanishes", mn + " k=" + std::to_string(k), [&] {
            NcPoly<F> s = macmahon_sum(k, ctx, false);
            return s.is_zero() ? BerCheck::pass() : BerCheck::fail(s.str());
        });
    }
}

// ---- traces ----

template <class F>
void suite_traces(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                  std::vector<CheckResult>& out) {
    SuiteRunner run("traces", variant, out);
    std::string mn = mn_params(cfg.m, cfg.n);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    for (int k = 1; k <= std::min(cfg.k_max, ctx.degree_cap()); ++k) {
        run.add("explicit A-flavor formula", mn + " k=" + std::to_string(k), [&] {
            NcPoly<F> lhs = explicit_trace_formula(k, ctx, true);
            NcPoly<F> rhs = tensor_trace_reference(k, ctx, true);
            return lhs == rhs ? BerCheck::pass() : BerCheck::fail((lhs - rhs).str());
        });
        run.add("explicit H-flavor formula", mn + " k=" + std::to_string(k), [&] {
            NcPoly<F> lhs = explicit_trace_formula(k, ctx, false);
            NcPoly<F> rhs = tensor_trace_reference(k, ctx, false);
            return lhs == rhs ? BerCheck::pass() : BerCheck::fail((lhs - rhs).str());
        });
    }
}

// ---- newton: generating series ----

template <class F>
void suite_newton(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                  std::vector<CheckResult>& out) {
    SuiteRunner run("newton", variant, out);
    std::string mn = mn_params(cfg.m, cfg.n);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    int order = std::min(cfg.trunc, ctx.degree_cap());
    std::string params = mn + " D=" + std::to_string(order);

    GeneratingSeries<F> gs = generating_series(ctx, order);
    TruncSeries<F> one = TruncSeries<F>::one(&ctx, order);
    run.add_bool("A(t)S(t) = S(t)A(t) = 1", params,
                 [&] { return gs.A * gs.S == one && gs.S * gs.A == one; });
    run.add_bool("dA/dt = -A(t)T(t)", params, [&] {
        return gs.A.derivative() == (-(gs.A * gs.T)).truncated(order - 1);
    });
    run.add_bool("dS/dt = T(t)S(t)", params, [&] {
        return gs.S.derivative() == (gs.T * gs.S).truncated(order - 1);
    });
    for (int k = 1; k <= order; ++k) {
        run.add_bool("supertrace recursion", params + " k=" + std::to_string(k), [&] {
            NcPoly<F> lhs = str_antisym_power(k, ctx).scaled(fc.from_long(k));
            NcPoly<F> rhs;
            for (int i = 0; i < k; ++i) {
                NcPoly<F> term = str_antisym_power(i, ctx) * str_star_power(k - i, ctx);
                if ((k + i + 1) % 2)
                    rhs -= term;
                else
                    rhs += term;
            }
            return lhs == ctx.normal_form(rhs);
        });
    }
}

// ---- series-model gates and gating policy ----

template <class F>
struct ModelGates {
    bool manin = false;
    bool st_twist = false;
};

inline BerCheck gate_result(BerCheck c, bool hypotheses_ok, const std::string& missing) {
    if (c.status == Status::Fail && !hypotheses_ok)
        return BerCheck::skip("hypothesis unavailable in this model: " + missing +
                              (c.note.empty() ? "" : " [" + c.note + "]"));
    return c;
}

template <class F>
ModelGates<F> report_gates(SuiteRunner& run, const std::string& mn, const SeriesMatrix<F>& M) {
    ModelGates<F> gates;
    Outcome manin = series_manin_check(M);
    gates.manin = manin.pass;
    run.add("model gate: generic series matrix is Manin", mn, [&] {
        if (manin.pass) return BerCheck::pass();
        return BerCheck::skip("not Manin at this q (no q-Manin matrix is scalar + t generic); witness " +
                              manin.witness);
    });
    gates.st_twist = st_twist_gate(M);
    run.add("model gate: st-twisted inverse", mn, [&] {
        if (gates.st_twist) return BerCheck::pass();
        return BerCheck::skip("st(M^-1) st(M) = 1 is a Hopf-envelope relation, not implied by MN = NM = 1");
    });
    return gates;
}

// ---- berezinian core ----

template <class F>
void suite_berezinian(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                      std::vector<CheckResult>& out) {
    SuiteRunner run("berezinian", variant, out);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    int order = std::min(cfg.trunc, ctx.degree_cap());
    std::string mn = mn_params(cfg.m, cfg.n) + " D=" + std::to_string(order);
    SeriesMatrix<F> M = generic_manin_series(ctx, order);
    ModelGates<F> gates = report_gates(run, mn, M);

    run.add("Bere formula = leading quasidet decomposition", mn, [&] {
        return gate_result(quasidet_decomposition_check(M), gates.manin, "Manin model matrix");
    });
    for (int k = 0; k <= cfg.m + cfg.n; ++k) {
        run.add("schur complement", mn + " k=" + std::to_string(k), [&] {
            return gate_result(schur_complement_check(k, M), gates.manin, "Manin model matrix");
        });
    }
    run.add("pi-st relation (literal transform)", mn, [&] {
        return gate_result(pi_st_relation_check(M), gates.manin && gates.st_twist,
                           "Manin model matrix and st-twisted inverse");
    });
    run.add("pi-st relation (expanded form)", mn, [&] {
        return gate_result(pi_st_expanded_check(M), gates.manin, "Manin model matrix");
    });
    run.add("pi decomposition corollary (literal transform)", mn, [&] {
        return gate_result(pi_decomposition_check(M), gates.manin && gates.st_twist,
                           "Manin model matrix and st-twisted inverse");
    });
    run.add("trailing chain = Ber_{q^-1}(M^-1)", mn, [&] {
        return gate_result(trailing_vs_berinv_check(M), gates.manin, "Manin model matrix");
    });
    run.add_bool("st transpose has order dividing 4", mn, [&] {
        return supertranspose(supertranspose(supertranspose(supertranspose(M)))) == M;
    });
    // polynomial factor-reversal content of the pi-st relation, valid at
    // generic q in the abstract quotients
    run.add("odd-block reversal identity", mn_params(cfg.m, cfg.n),
            [&] { return odd_block_reversal_check(cfg.m, cfg.n, fc); });
    run.add("even-block reversal identity (q^-1 algebra)", mn_params(cfg.m, cfg.n),
            [&] { return even_block_reversal_check(cfg.m, cfg.n, fc); });
}

// Classical cofactor oracle: n = 0, q = 1, scalar rational matrices.
inline void suite_classical_oracle(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    SuiteRunner run("berezinian", "", out);
    FieldCtx<QScalar> fc = FieldCtx<QScalar>::rational_at(QScalar(1));
    run.add_bool("classical determinant oracle 2x2 exhaustive", "q=1 n=0 entries in [-2,2]", [&] {
        QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(2, 0), fc);
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (long c = -2; c <= 2; ++c)
                    for (long d = -2; d <= 2; ++d) {
                        if (a * d - b * c == 0) continue; // oracle needs invertibility
                        SeriesMatrix<QScalar> mat(&ctx, 0, {0, 0});
                        mat.at(1, 1).set_coeff(0, NcPoly<QScalar>::constant(QScalar(a)));
                        mat.at(1, 2).set_coeff(0, NcPoly<QScalar>::constant(QScalar(b)));
                        mat.at(2, 1).set_coeff(0, NcPoly<QScalar>::constant(QScalar(c)));
                        mat.at(2, 2).set_coeff(0, NcPoly<QScalar>::constant(QScalar(d)));
                        auto ber = ber_q(mat);
                        QScalar det = cofactor_det({{QScalar(a), QScalar(b)}, {QScalar(c), QScalar(d)}});
                        if (!ber || !(ber->coeff(0) == NcPoly<QScalar>::constant(det))) return false;
                    }
        return true;
    });
    run.add_bool("classical determinant oracle 3x3 random", "q=1 n=0 20 instances", [&] {
        QuotientContext<QScalar> ctx(AlgebraSpec::right_quantum(3, 0), fc);
        std::mt19937_64 rng(cfg.seed + 3);
        int done = 0;
        while (done < 20) {
            std::vector<std::vector<QScalar>> a(3, std::vector<QScalar>(3));
            SeriesMatrix<QScalar> mat(&ctx, 0, {0, 0, 0});
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    long v = static_cast<long>(rng() % 11) - 5;
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = QScalar(v);
                    mat.at(i + 1, j + 1).set_coeff(0, NcPoly<QScalar>::constant(QScalar(v)));
                }
            QScalar det = cofactor_det(a);
            if (det.is_zero()) continue;
            ++done;
            auto ber = ber_q(mat);
            if (!ber || !(ber->coeff(0) == NcPoly<QScalar>::constant(det))) return false;
        }
        return true;
    });
}

// ---- minors ----

template <class F>
void suite_minors(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                  std::vector<CheckResult>& out) {
    SuiteRunner run("minors", variant, out);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    int order = std::min(cfg.trunc, ctx.degree_cap());
    std::string mn = mn_params(cfg.m, cfg.n) + " D=" + std::to_string(order);
    SeriesMatrix<F> M = generic_manin_series(ctx, order);
    ModelGates<F> gates = report_gates(run, mn, M);
    int total = cfg.m + cfg.n;

    // jacobi ratio for every valid I
    for (int mask = 0; mask < (1 << total); ++mask) {
        std::vector<int> I;
        for (int i = 1; i <= total; ++i)
            if (mask & (1 << (i - 1))) I.push_back(i);
        bool inside = true, contains = true;
        for (int v : I) inside &= (v <= cfg.m);
        for (int v = 1; v <= cfg.m; ++v)
            contains &= (std::find(I.begin(), I.end(), v) != I.end());
        if (!inside && !contains) continue;
        std::string is = "I={";
        for (int v : I) is += std::to_string(v);
        is += "}";
        run.add("jacobi ratio", mn + " " + is, [&] {
            return gate_result(jacobi_ratio_check(I, M), gates.manin, "Manin model matrix");
        });
    }

    // permutation proposition: all (I, J) pairs when few, else a fixed list
    std::vector<std::vector<int>> Is, Js;
    {
        std::vector<int> cur;
        std::function<void(int)> genI = [&](int at) {
            if (at == cfg.m) {
                Is.push_back(cur);
                return;
            }
            for (int v = 1; v <= cfg.m; ++v) {
                cur.push_back(v);
                genI(at + 1);
                cur.pop_back();
            }
        };
        if (cfg.m > 0) genI(0);
        else Is.push_back({});
        std::function<void(int)> genJ = [&](int at) {
            if (at == cfg.n) {
                Js.push_back(cur);
                return;
            }
            for (int v = 1; v <= cfg.n; ++v) {
                cur.push_back(v);
                genJ(at + 1);
                cur.pop_back();
            }
        };
        if (cfg.n > 0) genJ(0);
        else Js.push_back({});
    }
    int emitted = 0;
    for (const auto& I : Is)
        for (const auto& J : Js) {
            if (emitted >= 16) break;
            ++emitted;
            std::string ps = mn + " I=(";
            for (int v : I) ps += std::to_string(v);
            ps += ") J=(";
            for (int v : J) ps += std::to_string(v);
            ps += ")";
            run.add("permutation proposition", ps, [&] {
                return gate_result(ber_permutation_check(I, J, M), gates.manin,
                                   "Manin model matrix");
            });
        }

    // permuted decomposition: identity and reversed-even-block rearrangements
    std::vector<int> id_even, id_odd;
    for (int i = 1; i <= cfg.m; ++i) id_even.push_back(i);
    for (int i = 1; i <= cfg.n; ++i) id_odd.push_back(i);
    run.add("permuted decomposition", mn + " identity order", [&] {
        return gate_result(permuted_decomposition_check(id_even, id_even, id_odd, id_odd, M),
                           gates.manin, "Manin model matrix");
    });
    if (cfg.m >= 2) {
        std::vector<int> rev(id_even.rbegin(), id_even.rend());
        run.add("permuted decomposition", mn + " reversed rows=cols", [&] {
            return gate_result(permuted_decomposition_check(rev, rev, id_odd, id_odd, M),
                               gates.manin, "Manin model matrix");
        });
        run.add("permuted decomposition", mn + " reversed rows only", [&] {
            return gate_result(permuted_decomposition_check(rev, id_even, id_odd, id_odd, M),
                               gates.manin, "Manin model matrix");
        });
    }

    // cayley and muir transforms of jacobi-style seeds
    std::vector<int> full;
    for (int i = 1; i <= total; ++i) full.push_back(i);
    std::vector<int> odd_block;
    for (int i = cfg.m + 1; i <= total; ++i) odd_block.push_back(i);

    run.add("cayley transform of a jacobi seed", mn, [&] {
        // Ber(M) - Ber(M_I) [Ber(M_I)^{-1} Ber(M)] = 0 with I the odd block
        MinorIdentity seed;
        seed.terms.push_back({QScalar(1), {{full, 1}}});
        seed.terms.push_back({QScalar(-1), {{odd_block, 1}, {odd_block, -1}, {full, 1}}});
        BerCheck before = minor_identity_check(seed, M);
        if (!before.passed()) return gate_result(before, gates.manin, "Manin model matrix");
        MinorIdentity transformed = cayley_transform(seed, cfg.m, cfg.n);
        return gate_result(minor_identity_check(transformed, M), gates.manin,
                           "Manin model matrix");
    });
    run.add("muir transform of the trivial seed", mn, [&] {
        MinorIdentity seed;
        std::vector<int> I = odd_block;
        seed.terms.push_back({QScalar(1), {{I, 1}}});
        seed.terms.push_back({QScalar(-1), {{I, 1}}});
        MinorIdentity transformed = muir_transform(seed, I, cfg.m, cfg.n);
        return gate_result(minor_identity_check(transformed, M), gates.manin,
                           "Manin model matrix");
    });
    if (cfg.n >= 2) {
        run.add("muir transform of a jacobi seed inside M_I", mn, [&] {
            // inside the (0|n) block: Ber(M_I) - Ber(M_J) Ber(M_J)^{-1} Ber(M_I) = 0
            std::vector<int> I = odd_block;
            std::vector<int> J{cfg.m + 1};
            MinorIdentity seed;
            seed.terms.push_back({QScalar(1), {{I, 1}}});
            seed.terms.push_back({QScalar(-1), {{J, 1}, {J, -1}, {I, 1}}});
            BerCheck before = minor_identity_check(seed, M);
            if (!before.passed()) return gate_result(before, gates.manin, "Manin model matrix");
            MinorIdentity transformed = muir_transform(seed, I, cfg.m, cfg.n);
            return gate_result(minor_identity_check(transformed, M), gates.manin,
                               "Manin model matrix");
        });
    }
}

// ---- sylvester ----

template <class F>
void suite_sylvester(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                     std::vector<CheckResult>& out) {
    SuiteRunner run("sylvester", variant, out);
    QuotientContext<F> ctx(AlgebraSpec::right_quantum(cfg.m, cfg.n), fc, cfg.degree_cap_override);
    int order = std::min(cfg.trunc, ctx.degree_cap());
    std::string mn = mn_params(cfg.m, cfg.n) + " D=" + std::to_string(order);

    {
        SeriesMatrix<F> M = generic_manin_series(ctx, order);
        ModelGates<F> gates = report_gates(run, mn, M);
        run.add("sylvester k=0 (identity map)", mn, [&] {
            return gate_result(sylvester_check(0, ctx, order), gates.manin, "Manin model matrix");
        });
    }
    if (cfg.m + cfg.n + 1 <= 4) {
        QuotientContext<F> ambient(AlgebraSpec::right_quantum(cfg.m + 1, cfg.n), fc,
                                   cfg.degree_cap_override);
        int aorder = std::min(order, ambient.degree_cap());
        std::string amn = "ambient m=" + std::to_string(cfg.m + 1) + " n=" + std::to_string(cfg.n) +
                          " D=" + std::to_string(aorder);
        SeriesMatrix<F> N = generic_manin_series(ambient, aorder);
        bool ambient_manin = series_manin_check(N).pass;
        run.add("sylvester k=1", amn, [&] {
            return gate_result(sylvester_check(1, ambient, aorder), ambient_manin,
                               "Manin model matrix");
        });
        run.add("bordered quasideterminant lemma k=1", amn, [&] {
            return gate_result(sylvester_lemma_check(1, ambient, aorder), ambient_manin,
                               "Manin model matrix");
        });
    }
    run.add("left quantum morphism", mn_params(cfg.m, cfg.n), [&] {
        return left_quantum_morphism_check(cfg.m, cfg.n, fc);
    });
}

// ---- driver ----

inline void validate_config(const SuiteConfig& cfg) {
    if (cfg.m < 0 || cfg.n < 0 || cfg.m + cfg.n < 1 || cfg.m + cfg.n > 4)
        throw Error("sizes out of range: need 1 <= m+n <= 4");
    int cap = cfg.degree_cap_override
                  ? *cfg.degree_cap_override
                  : default_degree_cap(cfg.m + cfg.n, cfg.modular);
    if (cfg.k_max < 1 || cfg.k_max > cap)
        throw Error("k out of range for the degree cap (" + std::to_string(cap) + ")");
    if (cfg.trunc < 1 || cfg.trunc > cap)
        throw Error("trunc out of range for the degree cap (" + std::to_string(cap) + ")");
    for (const auto& s : cfg.suites)
        if (s != "tensor" && s != "relations" && s != "macmahon" && s != "newton" &&
            s != "traces" && s != "berezinian" && s != "minors" && s != "sylvester")
            throw Error("unknown suite: " + s);
}

template <class F>
void run_suites_with(const SuiteConfig& cfg, const FieldCtx<F>& fc, const std::string& variant,
                     std::vector<CheckResult>& out) {
    for (const std::string& s : cfg.suites) {
        if (s == "tensor") suite_tensor(cfg, fc, variant, out);
        if (s == "relations") suite_relations(cfg, fc, variant, out);
        if (s == "macmahon") suite_macmahon(cfg, fc, variant, out);
        if (s == "newton") suite_newton(cfg, fc, variant, out);
        if (s == "traces") suite_traces(cfg, fc, variant, out);
        if (s == "berezinian") suite_berezinian(cfg, fc, variant, out);
        if (s == "minors") suite_minors(cfg, fc, variant, out);
        if (s == "sylvester") suite_sylvester(cfg, fc, variant, out);
    }
}

inline bool wants_series_suites(const SuiteConfig& cfg) {
    for (const auto& s : cfg.suites)
        if (s == "berezinian" || s == "minors" || s == "sylvester") return true;
    return false;
}

inline Report run_suites(const SuiteConfig& cfg) {
    validate_config(cfg);
    Report rep;
    rep.config = cfg;

    if (!cfg.modular) {
        run_suites_with<QScalar>(cfg, FieldCtx<QScalar>::rational(), "", rep.checks);
    } else {
        // unanimity over all (prime, q-point) pairs
        std::mt19937_64 rng(cfg.seed);
        std::vector<std::vector<CheckResult>> runs;
        for (std::uint64_t p : cfg.primes) {
            std::uint64_t q0 = 2 + rng() % (p - 3); // in [2, p-2]
            FieldCtx<ModScalar> fc = FieldCtx<ModScalar>::modular(p, q0);
            std::vector<CheckResult> checks;
            run_suites_with<ModScalar>(cfg, fc, "", checks);
            runs.push_back(std::move(checks));
        }
        for (std::size_t i = 0; i < runs[0].size(); ++i) {
            CheckResult merged = runs[0][i];
            for (std::size_t r = 1; r < runs.size(); ++r) {
                const CheckResult& other = runs[r][i];
                merged.ms += other.ms;
                if (other.status == Status::Fail && merged.status != Status::Fail) {
                    merged.status = Status::Fail;
                    merged.witness = other.witness;
                } else if (other.status == Status::Skip && merged.status == Status::Pass) {
                    merged.status = Status::Skip;
                    merged.witness = other.witness;
                }
            }
            merged.params += " [" + std::to_string(runs.size()) + " primes]";
            rep.checks.push_back(std::move(merged));
        }
    }

    // sound-specialization companion: the series-model suites again at q = 1,
    // where the Manin gate provably holds
    if (wants_series_suites(cfg)) {
        SuiteConfig sub = cfg;
        sub.suites.clear();
        for (const auto& s : cfg.suites)
            if (s == "berezinian" || s == "minors" || s == "sylvester") sub.suites.push_back(s);
        sub.modular = false;
        run_suites_with<QScalar>(sub, FieldCtx<QScalar>::rational_at(QScalar(1)), "[q=1]",
                                 rep.checks);
    }

    bool wants_ber = false;
    for (const auto& s : cfg.suites) wants_ber |= (s == "berezinian");
    if (wants_ber) suite_classical_oracle(cfg, rep.checks);

    rep.sort_stable();
    return rep;
}

} // namespace qsm
