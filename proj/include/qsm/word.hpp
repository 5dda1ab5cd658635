#pragma once

// Z2-graded generator alphabet and words of the free superalgebra.
//
// Generators carry the tensor factor they live in (factor 0 for a single
// algebra).  The total order sorts by factor first, then by family
// (x, then psi, then M), then by row and column index; words compare by
// degree and then lexicographically.  Deterministic pivots in the reduction
// engine depend on this order being total and fixed.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

// (m|n) grading of the index set [m+n]: indices 1..m are even, m+1..m+n odd.
struct Grading {
    int m = 0;
    int n = 0;

    int size() const { return m + n; }
    int parity(int i) const { return i > m ? 1 : 0; } // \bar i
    void check_index(int i) const {
        if (i < 1 || i > m + n)
            throw IndexError("index " + std::to_string(i) + " out of range for (" +
                             std::to_string(m) + "|" + std::to_string(n) + ")");
    }
};

enum class Gen : std::uint8_t { X = 0, Psi = 1, M = 2 };

struct GenId {
    std::uint8_t factor = 0;
    Gen kind = Gen::M;
    std::uint8_t row = 1; // index i
    std::uint8_t col = 0; // index j (unused for x, psi)
    std::uint8_t parity = 0;

    std::uint64_t key() const {
        return (std::uint64_t(factor) << 32) | (std::uint64_t(kind) << 24) |
               (std::uint64_t(row) << 8) | col;
    }
    friend bool operator==(const GenId& a, const GenId& b) { return a.key() == b.key(); }
    friend std::strong_ordering operator<=>(const GenId& a, const GenId& b) {
        return a.key() <=> b.key();
    }

    std::string str() const {
        switch (kind) {
        case Gen::X: return "x[" + std::to_string(row) + "]";
        case Gen::Psi: return "psi[" + std::to_string(row) + "]";
        default: return "M[" + std::to_string(row) + "," + std::to_string(col) + "]";
        }
    }
};

// Parity conventions of the three generator families.
inline GenId gen_m(const Grading& g, int i, int j, std::uint8_t factor = 0) {
    g.check_index(i);
    g.check_index(j);
    return GenId{factor, Gen::M, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                 static_cast<std::uint8_t>((g.parity(i) + g.parity(j)) % 2)};
}
inline GenId gen_x(const Grading& g, int i, std::uint8_t factor = 0) {
    g.check_index(i);
    return GenId{factor, Gen::X, static_cast<std::uint8_t>(i), 0,
                 static_cast<std::uint8_t>(g.parity(i))};
}
inline GenId gen_psi(const Grading& g, int i, std::uint8_t factor = 0) {
    g.check_index(i);
    return GenId{factor, Gen::Psi, static_cast<std::uint8_t>(i), 0,
                 static_cast<std::uint8_t>(1 - g.parity(i))};
}

struct Word {
    std::vector<GenId> gens;

    Word() = default;
    explicit Word(std::vector<GenId> g) : gens(std::move(g)) {}

    int degree() const { return static_cast<int>(gens.size()); }
    int parity() const {
        int p = 0;
        for (const GenId& g : gens) p ^= g.parity;
        return p;
    }
    bool empty() const { return gens.empty(); }

    Word concat(const Word& o) const {
        Word w = *this;
        w.gens.insert(w.gens.end(), o.gens.begin(), o.gens.end());
        return w;
    }

    // Degree of the word in each tensor factor, indexed by factor tag.
    std::vector<int> multidegree() const {
        std::vector<int> d;
        for (const GenId& g : gens) {
            if (g.factor >= d.size()) d.resize(g.factor + 1, 0);
            ++d[g.factor];
        }
        return d;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.gens == b.gens; }
    friend bool operator<(const Word& a, const Word& b) {
        if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
        for (std::size_t i = 0; i < a.gens.size(); ++i) {
            if (a.gens[i] != b.gens[i]) return a.gens[i] < b.gens[i];
        }
        return false;
    }

    std::string str() const {
        if (gens.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < gens.size();) {
            std::size_t j = i;
            while (j < gens.size() && gens[j] == gens[i]) ++j;
            if (!out.empty()) out += "*";
            out += gens[i].str();
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }
};

} // namespace qsm
