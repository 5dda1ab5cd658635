#pragma once

// Operators on the k-fold tensor power of a Z2-graded vector space, with
// entries from a superalgebra.
//
// An EndTensor stores the coefficients c_{I,J} of an element
//     sum c_{I,J} (x) E_{i_1 j_1} (x) ... (x) E_{i_k j_k}
// of A (x) End(V)^{(x)k}, where A is the (free or quotient) superalgebra and
// the matrix unit E_{ij} has parity |i|+|j|.  Multiplication is the super
// tensor-product algebra product, so two Koszul sign sources appear:
//   * the left E-part crossing the right coefficient,
//   * slotwise recombination of the two E-products.
// Vectors carry basis parities; applying an operator to a vector uses
// (A (x) B)(v (x) w) = (-1)^{|B||v|} Av (x) Bw.  None of these conventions is
// stated by the source formulas; they are pinned by the executable facts
// P^2 = 1, the braid relation, and str_1 P = id (see the tests).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "qsm/ncpoly.hpp"
#include "qsm/qscalar.hpp"

namespace qsm {

using MIdx = std::uint32_t;

// Multi-index codec: k digits over [1, m+n], slot 1 stored in the lowest digit.
struct MIdxCodec {
    int k;
    int base;

    MIdx encode(const std::vector<int>& idx) const {
        MIdx code = 0;
        for (int t = k - 1; t >= 0; --t)
            code = code * static_cast<MIdx>(base) + static_cast<MIdx>(idx[t] - 1);
        return code;
    }
    std::vector<int> decode(MIdx code) const {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) {
            idx[t] = static_cast<int>(code % static_cast<MIdx>(base)) + 1;
            code /= static_cast<MIdx>(base);
        }
        return idx;
    }
    MIdx count() const {
        MIdx c = 1;
        for (int t = 0; t < k; ++t) c *= static_cast<MIdx>(base);
        return c;
    }
};

template <class F>
struct MatrixNc {
    Grading g;
    std::vector<NcPoly<F>> entries; // row-major, size (m+n)^2

    explicit MatrixNc(Grading gr) : g(gr), entries(static_cast<std::size_t>(gr.size() * gr.size())) {}

    NcPoly<F>& at(int i, int j) {
        return entries[static_cast<std::size_t>((i - 1) * g.size() + (j - 1))];
    }
    const NcPoly<F>& at(int i, int j) const {
        return entries[static_cast<std::size_t>((i - 1) * g.size() + (j - 1))];
    }
    friend bool operator==(const MatrixNc& a, const MatrixNc& b) {
        return a.g.m == b.g.m && a.g.n == b.g.n && a.entries == b.entries;
    }
};

// The generator matrix Z with Z_{ij} = M_{ij}.
template <class F>
MatrixNc<F> generator_matrix(const Grading& g, const FieldCtx<F>& fc) {
    MatrixNc<F> z(g);
    for (int i = 1; i <= g.size(); ++i)
        for (int j = 1; j <= g.size(); ++j)
            z.at(i, j) = NcPoly<F>::generator(gen_m(g, i, j), fc.one());
    return z;
}

template <class F>
MatrixNc<F> scalar_identity_matrix(const Grading& g, const FieldCtx<F>& fc) {
    MatrixNc<F> id(g);
    for (int i = 1; i <= g.size(); ++i) id.at(i, i) = NcPoly<F>::constant(fc.one());
    return id;
}

template <class F>
class EndTensor {
public:
    using Entry = NcPoly<F>;
    using Row = std::map<MIdx, Entry>;

    EndTensor(int k, Grading g) : k_(k), g_(g) {}

    static EndTensor identity(int k, Grading g, const FieldCtx<F>& fc) {
        EndTensor t(k, g);
        MIdxCodec codec = t.codec();
        for (MIdx c = 0; c < codec.count(); ++c) t.add(c, c, NcPoly<F>::constant(fc.one()));
        return t;
    }

    int arity() const { return k_; }
    const Grading& grading() const { return g_; }
    MIdxCodec codec() const { return MIdxCodec{k_, g_.size()}; }
    bool is_zero() const { return rows_.empty(); }

    void add(MIdx i, MIdx j, Entry c) {
        if (c.is_zero()) return;
        Entry& cur = rows_[i][j];
        cur += c;
        if (cur.is_zero()) {
            rows_[i].erase(j);
            if (rows_[i].empty()) rows_.erase(i);
        }
    }

    const std::map<MIdx, Row>& rows() const { return rows_; }

    Entry entry(MIdx i, MIdx j) const {
        auto r = rows_.find(i);
        if (r == rows_.end()) return Entry();
        auto c = r->second.find(j);
        return c == r->second.end() ? Entry() : c->second;
    }

    friend bool operator==(const EndTensor& a, const EndTensor& b) {
        return a.k_ == b.k_ && a.g_.m == b.g_.m && a.g_.n == b.g_.n && a.rows_ == b.rows_;
    }

    EndTensor& operator+=(const EndTensor& o) {
        if (k_ != o.k_ || g_.m != o.g_.m || g_.n != o.g_.n)
            throw Error("operator arity/grading mismatch");
        for (const auto& [i, row] : o.rows_)
            for (const auto& [j, c] : row) add(i, j, c);
        return *this;
    }
    friend EndTensor operator+(EndTensor a, const EndTensor& b) { return a += b; }
    friend EndTensor operator-(EndTensor a, const EndTensor& b) {
        for (const auto& [i, row] : b.rows_)
            for (const auto& [j, c] : row) a.add(i, j, -c);
        return a;
    }
    EndTensor operator-() const {
        EndTensor t(k_, g_);
        for (const auto& [i, row] : rows_)
            for (const auto& [j, c] : row) t.rows_[i][j] = -c;
        return t;
    }
    EndTensor scaled(const F& s) const {
        EndTensor t(k_, g_);
        if (s.is_zero()) return t;
        for (const auto& [i, row] : rows_)
            for (const auto& [j, c] : row) t.add(i, j, c.scaled(s));
        return t;
    }

    int index_parity(MIdx code) const {
        int p = 0;
        std::vector<int> idx = codec().decode(code);
        for (int v : idx) p ^= g_.parity(v);
        return p;
    }

    // Parity of E_{I,J} = sum over slots of |i_t| + |j_t|.
    int e_parity(MIdx i, MIdx j) const { return index_parity(i) ^ index_parity(j); }

    friend EndTensor operator*(const EndTensor& a, const EndTensor& b) {
        if (a.k_ != b.k_ || a.g_.m != b.g_.m || a.g_.n != b.g_.n)
            throw Error("operator arity/grading mismatch");
        EndTensor out(a.k_, a.g_);
        MIdxCodec codec = a.codec();
        for (const auto& [i, arow] : a.rows_) {
            std::vector<int> iv = codec.decode(i);
            for (const auto& [mid, ac] : arow) {
                auto brit = b.rows_.find(mid);
                if (brit == b.rows_.end()) continue;
                std::vector<int> kv = codec.decode(mid);
                int epar_left = 0;
                for (int t = 0; t < a.k_; ++t)
                    epar_left ^= a.g_.parity(iv[t]) ^ a.g_.parity(kv[t]);
                for (const auto& [j, bc] : brit->second) {
                    std::vector<int> jv = codec.decode(j);
                    // Slotwise recombination sign: sum_{s>t} |x_s||y_t| with
                    // x_s = E_{i_s k_s}, y_t = E_{k_t j_t}.
                    int kappa = 0;
                    int suffix = 0; // running sum of |x_s| over s > t
                    for (int t = a.k_ - 1; t >= 0; --t) {
                        int y = a.g_.parity(kv[t]) ^ a.g_.parity(jv[t]);
                        kappa ^= suffix & y;
                        suffix ^= a.g_.parity(iv[t]) ^ a.g_.parity(kv[t]);
                    }
                    Entry term;
                    for (const auto& [w, cw] : bc.terms()) {
                        int sign = kappa ^ (epar_left & w.parity());
                        Entry piece = ac.scaled(cw);
                        for (const auto& [aw, acw] : piece.terms())
                            term.add_term(aw.concat(w), sign ? -acw : acw);
                    }
                    out.add(i, j, std::move(term));
                }
            }
        }
        return out;
    }

private:
    int k_;
    Grading g_;
    std::map<MIdx, Row> rows_;
};

// P^q on two slots: coefficient of E_{ij} (x) E_{ji} is q^{eps(i-j)} (-1)^{|j|}.
template <class F>
EndTensor<F> build_swap(const Grading& g, const FieldCtx<F>& fc) {
    EndTensor<F> p(2, g);
    MIdxCodec codec = p.codec();
    for (int i = 1; i <= g.size(); ++i)
        for (int j = 1; j <= g.size(); ++j) {
            int eps = (i > j) - (i < j);
            F c = fc.q_pow(eps);
            if (g.parity(j)) c = -c;
            p.add(codec.encode({i, j}), codec.encode({j, i}), NcPoly<F>::constant(c));
        }
    return p;
}

// P^q_{a,a+1} inside arity k (identity on the other slots).
template <class F>
EndTensor<F> swap_at(int a, int k, const Grading& g, const FieldCtx<F>& fc) {
    EndTensor<F> p(k, g);
    MIdxCodec codec = p.codec();
    MIdxCodec rest{k - 2, g.size()};
    for (int i = 1; i <= g.size(); ++i)
        for (int j = 1; j <= g.size(); ++j) {
            int eps = (i > j) - (i < j);
            F c = fc.q_pow(eps);
            if (g.parity(j)) c = -c;
            for (MIdx dc = 0; dc < rest.count(); ++dc) {
                std::vector<int> d = rest.decode(dc);
                std::vector<int> iv, jv;
                iv.reserve(static_cast<std::size_t>(k));
                int di = 0;
                for (int t = 1; t <= k; ++t) {
                    if (t == a) {
                        iv.push_back(i);
                    } else if (t == a + 1) {
                        iv.push_back(j);
                    } else {
                        iv.push_back(d[static_cast<std::size_t>(di++)]);
                    }
                }
                jv = iv;
                jv[static_cast<std::size_t>(a - 1)] = j;
                jv[static_cast<std::size_t>(a)] = i;
                p.add(codec.encode(iv), codec.encode(jv), NcPoly<F>::constant(c));
            }
        }
    return p;
}

// sigma as images: sigma[i-1] = sigma(i), values 1..k.
using Perm = std::vector<int>;

inline int perm_length(const Perm& s) {
    int inv = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (s[a] > s[b]) ++inv;
    return inv;
}
inline int perm_sign(const Perm& s) { return perm_length(s) % 2 ? -1 : 1; }

// A reduced word for sigma: sigma = s_{w_1} ... s_{w_l} with l = l(sigma).
inline std::vector<int> reduced_word(Perm s) {
    std::vector<int> word;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t a = 0; a + 1 < s.size(); ++a) {
            if (s[a] > s[a + 1]) {
                // descent at a+1: sigma = sigma' s_{a+1} with sigma' shorter
                word.push_back(static_cast<int>(a) + 1);
                std::swap(s[a], s[a + 1]);
                moved = true;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;
}

template <class F>
EndTensor<F> perm_operator(const Perm& sigma, int k, const Grading& g, const FieldCtx<F>& fc) {
    EndTensor<F> p = EndTensor<F>::identity(k, g, fc);
    for (int a : reduced_word(sigma)) p = p * swap_at(a, k, g, fc);
    return p;
}

inline std::vector<Perm> all_perms(int r) {
    Perm s(static_cast<std::size_t>(r));
    std::iota(s.begin(), s.end(), 1);
    std::vector<Perm> out;
    do {
        out.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

// q-(anti)symmetrizer over the slot range [lo, hi] inside arity k.
template <class F>
EndTensor<F> symmetrizer_range(int lo, int hi, int k, const Grading& g, const FieldCtx<F>& fc,
                               bool antisym) {
    int r = hi - lo + 1;
    EndTensor<F> acc(k, g);
    if (r <= 0) return EndTensor<F>::identity(k, g, fc);
    long fact = 1;
    for (int i = 2; i <= r; ++i) fact *= i;
    for (const Perm& s : all_perms(r)) {
        Perm lifted(static_cast<std::size_t>(k));
        std::iota(lifted.begin(), lifted.end(), 1);
        for (int t = 0; t < r; ++t) lifted[static_cast<std::size_t>(lo - 1 + t)] = s[static_cast<std::size_t>(t)] + lo - 1;
        long num = (antisym && perm_sign(s) < 0) ? -1 : 1;
        acc += perm_operator(lifted, k, g, fc).scaled(fc.from_ratio(num, fact));
    }
    return acc;
}

template <class F>
EndTensor<F> antisymmetrizer(int k, const Grading& g, const FieldCtx<F>& fc) {
    return symmetrizer_range(1, k, k, g, fc, true);
}
template <class F>
EndTensor<F> symmetrizer(int k, const Grading& g, const FieldCtx<F>& fc) {
    return symmetrizer_range(1, k, k, g, fc, false);
}

// Embeds a matrix B into slot a of arity k:
//   B_a = sum (-1)^{|i||j| + |j|} B_{ij} (x) 1...E_{ij}...1.
template <class F>
EndTensor<F> embed_matrix(const MatrixNc<F>& b, int a, int k) {
    const Grading& g = b.g;
    EndTensor<F> t(k, g);
    MIdxCodec codec = t.codec();
    MIdxCodec rest{k - 1, g.size()};
    for (int i = 1; i <= g.size(); ++i)
        for (int j = 1; j <= g.size(); ++j) {
            const NcPoly<F>& bij = b.at(i, j);
            if (bij.is_zero()) continue;
            int sgn = (g.parity(i) & g.parity(j)) ^ g.parity(j);
            NcPoly<F> c = sgn ? -bij : bij;
            for (MIdx dc = 0; dc < rest.count(); ++dc) {
                std::vector<int> d = rest.decode(dc);
                std::vector<int> iv, jv;
                int di = 0;
                for (int t2 = 1; t2 <= k; ++t2) {
                    if (t2 == a) {
                        iv.push_back(i);
                        jv.push_back(j);
                    } else {
                        iv.push_back(d[static_cast<std::size_t>(di)]);
                        jv.push_back(d[static_cast<std::size_t>(di)]);
                        ++di;
                    }
                }
                t.add(codec.encode(iv), codec.encode(jv), c);
            }
        }
    return t;
}

// Reads an arity-1 operator back as a matrix (inverse of embed_matrix).
template <class F>
MatrixNc<F> unembed_matrix(const EndTensor<F>& t) {
    MatrixNc<F> b(t.grading());
    const Grading& g = t.grading();
    for (const auto& [i, row] : t.rows())
        for (const auto& [j, c] : row) {
            int ii = static_cast<int>(i) + 1, jj = static_cast<int>(j) + 1;
            int sgn = (g.parity(ii) & g.parity(jj)) ^ g.parity(jj);
            b.at(ii, jj) = sgn ? -c : c;
        }
    return b;
}

// M_1 M_2 ... M_k for the entries of a single matrix.
template <class F>
EndTensor<F> embedded_product(const MatrixNc<F>& m, int k, const FieldCtx<F>& fc) {
    EndTensor<F> acc = EndTensor<F>::identity(k, m.g, fc);
    for (int a = 1; a <= k; ++a) acc = acc * embed_matrix(m, a, k);
    return acc;
}

// str_a: contracts slot a with the sign (-1)^{|i_a|}; str is even, so no
// Koszul signs arise from its position.
template <class F>
EndTensor<F> partial_supertrace(const EndTensor<F>& t, int a) {
    const Grading& g = t.grading();
    int k = t.arity();
    EndTensor<F> out(k - 1, g);
    MIdxCodec codec = t.codec();
    for (const auto& [i, row] : t.rows()) {
        std::vector<int> iv = codec.decode(i);
        for (const auto& [j, c] : row) {
            std::vector<int> jv = codec.decode(j);
            if (iv[static_cast<std::size_t>(a - 1)] != jv[static_cast<std::size_t>(a - 1)]) continue;
            int sgn = g.parity(iv[static_cast<std::size_t>(a - 1)]);
            std::vector<int> iv2(iv), jv2(jv);
            iv2.erase(iv2.begin() + (a - 1));
            jv2.erase(jv2.begin() + (a - 1));
            MIdxCodec codec2{k - 1, g.size()};
            out.add(codec2.encode(iv2), codec2.encode(jv2), sgn ? -c : c);
        }
    }
    return out;
}

// Full supertrace over all slots; result is a polynomial.
template <class F>
NcPoly<F> supertrace_all(EndTensor<F> t) {
    while (t.arity() > 0) t = partial_supertrace(t, t.arity());
    return t.entry(0, 0);
}

// A-valued vector in V^{(x)k}: coefficients of basis tensors e_I.
template <class F>
using VecTensor = std::map<MIdx, NcPoly<F>>;

// (T v)_I = sum_J (-1)^{|E_{I,J}||w| + slotsign(I,J)} T_{I,J} w  per word w of v_J,
// slotsign(I,J) = sum_{s>t} (|i_s|+|j_s|) |j_t|.
template <class F>
VecTensor<F> apply_to_vector(const EndTensor<F>& t, const VecTensor<F>& v) {
    const Grading& g = t.grading();
    MIdxCodec codec = t.codec();
    VecTensor<F> out;
    for (const auto& [i, row] : t.rows()) {
        std::vector<int> iv = codec.decode(i);
        for (const auto& [j, c] : row) {
            auto vit = v.find(j);
            if (vit == v.end()) continue;
            std::vector<int> jv = codec.decode(j);
            int epar = 0, slotsign = 0, suffix = 0;
            for (int s = t.arity() - 1; s >= 0; --s) {
                slotsign ^= suffix & g.parity(jv[static_cast<std::size_t>(s)]);
                suffix ^= g.parity(iv[static_cast<std::size_t>(s)]) ^ g.parity(jv[static_cast<std::size_t>(s)]);
            }
            epar = suffix;
            NcPoly<F> acc;
            for (const auto& [w, cw] : vit->second.terms()) {
                int sign = slotsign ^ (epar & w.parity());
                NcPoly<F> piece = c.scaled(cw);
                for (const auto& [aw, ac] : piece.terms())
                    acc.add_term(aw.concat(w), sign ? -ac : ac);
            }
            if (acc.is_zero()) continue;
            NcPoly<F>& slot = out[i];
            slot += acc;
            if (slot.is_zero()) out.erase(i);
        }
    }
    return out;
}

// (w T)_J = sum_I w_I action(I,J); only valid when every E-term of T is even,
// which holds for the permutation-type operators this is used with.
template <class F>
VecTensor<F> apply_to_covector(const VecTensor<F>& w, const EndTensor<F>& t) {
    const Grading& g = t.grading();
    MIdxCodec codec = t.codec();
    VecTensor<F> out;
    for (const auto& [i, row] : t.rows()) {
        auto wit = w.find(i);
        std::vector<int> iv = codec.decode(i);
        for (const auto& [j, c] : row) {
            if (t.e_parity(i, j) != 0) throw NonHomogeneous();
            if (wit == w.end()) continue;
            std::vector<int> jv = codec.decode(j);
            int slotsign = 0, suffix = 0;
            for (int s = t.arity() - 1; s >= 0; --s) {
                slotsign ^= suffix & g.parity(jv[static_cast<std::size_t>(s)]);
                suffix ^= g.parity(iv[static_cast<std::size_t>(s)]) ^ g.parity(jv[static_cast<std::size_t>(s)]);
            }
            NcPoly<F> acc;
            for (const auto& [cw, cc] : c.terms())
                for (const auto& [vw, vc] : wit->second.terms())
                    acc.add_term(vw.concat(cw), slotsign ? -(vc * cc) : vc * cc);
            if (acc.is_zero()) continue;
            NcPoly<F>& slot = out[j];
            slot += acc;
            if (slot.is_zero()) out.erase(j);
        }
    }
    return out;
}

// B * C = str_1 P^q_12 B_1 C_2.
template <class F>
MatrixNc<F> star_product(const MatrixNc<F>& b, const MatrixNc<F>& c, const FieldCtx<F>& fc) {
    EndTensor<F> p = build_swap(b.g, fc);
    EndTensor<F> t = p * embed_matrix(b, 1, 2) * embed_matrix(c, 2, 2);
    return unembed_matrix(partial_supertrace(t, 1));
}

template <class F>
NcPoly<F> supertrace_matrix(const MatrixNc<F>& b) {
    NcPoly<F> s;
    for (int i = 1; i <= b.g.size(); ++i) {
        if (b.g.parity(i))
            s -= b.at(i, i);
        else
            s += b.at(i, i);
    }
    return s;
}

} // namespace qsm
