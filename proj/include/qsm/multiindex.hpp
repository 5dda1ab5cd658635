#pragma once

// Multi-index weights for the explicit supertrace formulas:
//
//   P_sigma (E_{i_1 j_1} (x) ... (x) E_{i_k j_k})
//       = eps(sigma, I, J) E_{i_{sigma^{-1}(1)} j_1} (x) ...
//   (E_{i_1 j_1} (x) ...) P_{sigma^{-1}}
//       = omega(sigma, I, J) E_{i_1 j_{sigma^{-1}(1)}} (x) ...
//
// The weights are evaluated by iterating the exact one-swap rule along a
// reduced word of sigma; well-definedness is inherited from the operator
// product, and the action equations above are property tests against the
// composition machinery.  A single adjacent swap at positions (a, a+1)
// contributes
//   rows:  q^{eps(r_{a+1} - r_a)} (-1)^{|r_a||r_{a+1}| + |c_a|(|r_a|+|r_{a+1}|)}
//   cols:  q^{eps(c_a - c_{a+1})} (-1)^{|c_a||c_{a+1}| + |r_{a+1}|(|c_a|+|c_{a+1}|)}
// which at k = 2 is the familiar pairwise inversion factor.

#include <vector>

#include "qsm/endtensor.hpp"

namespace qsm {

inline Perm perm_inverse(const Perm& s) {
    Perm inv(s.size());
    for (std::size_t a = 0; a < s.size(); ++a)
        inv[static_cast<std::size_t>(s[a] - 1)] = static_cast<int>(a) + 1;
    return inv;
}

// eps(sigma, I, J): I are the starting row indices, J the fixed columns.
template <class F>
F eps_weight(const Perm& sigma, const std::vector<int>& I, const std::vector<int>& J,
             const Grading& g, const FieldCtx<F>& fc) {
    std::vector<int> rows = I;
    F w = fc.one();
    std::vector<int> word = reduced_word(sigma);
    // P_sigma = P_{w_1} ... P_{w_l}; acting on a vector, the last letter acts first.
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        std::size_t a = static_cast<std::size_t>(*it - 1);
        int ra = rows[a], rb = rows[a + 1];
        int eps = (rb > ra) - (rb < ra);
        F f = fc.q_pow(eps);
        int sign = (g.parity(ra) & g.parity(rb)) ^
                   (g.parity(J[a]) & (g.parity(ra) ^ g.parity(rb)));
        if (sign) f = -f;
        w = w * f;
        std::swap(rows[a], rows[a + 1]);
    }
    return w;
}

// omega(sigma, I, J): I are the fixed rows, J the starting column indices.
template <class F>
F omega_weight(const Perm& sigma, const std::vector<int>& I, const std::vector<int>& J,
               const Grading& g, const FieldCtx<F>& fc) {
    std::vector<int> cols = J;
    F w = fc.one();
    std::vector<int> word = reduced_word(perm_inverse(sigma));
    // right multiplication: the first letter of P_{sigma^{-1}} acts first
    for (int wa : word) {
        std::size_t a = static_cast<std::size_t>(wa - 1);
        int ca = cols[a], cb = cols[a + 1];
        int eps = (ca > cb) - (ca < cb);
        F f = fc.q_pow(eps);
        int sign = (g.parity(ca) & g.parity(cb)) ^
                   (g.parity(I[a + 1]) & (g.parity(ca) ^ g.parity(cb)));
        if (sign) f = -f;
        w = w * f;
        std::swap(cols[a], cols[a + 1]);
    }
    return w;
}

// gamma(I, J) = sum_a |i_a||j_a| + sum_{a<b} (|i_a|+|j_a|)(|i_b|+|j_b|)  (mod 2).
inline int gamma_weight(const std::vector<int>& I, const std::vector<int>& J, const Grading& g) {
    int acc = 0;
    int k = static_cast<int>(I.size());
    for (int a = 0; a < k; ++a)
        acc ^= g.parity(I[static_cast<std::size_t>(a)]) & g.parity(J[static_cast<std::size_t>(a)]);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            acc ^= (g.parity(I[static_cast<std::size_t>(a)]) ^ g.parity(J[static_cast<std::size_t>(a)])) &
                   (g.parity(I[static_cast<std::size_t>(b)]) ^ g.parity(J[static_cast<std::size_t>(b)]));
    return acc;
}

} // namespace qsm
