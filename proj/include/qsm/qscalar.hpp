#pragma once

// Coefficient fields.
//
// QScalar is an exact element of Q(q): a quotient of integer-coefficient
// polynomials in the deformation parameter q, kept in a unique canonical form
// (gcd 1, denominator with positive leading coefficient).  There is no
// Laurent representation; negative powers of q live in the denominator, so
// one canonical form covers everything division can produce.
//
// ModScalar is the probabilistic backend: residues modulo a fixed 62-bit
// prime, with q evaluated at a chosen point q0.  Evaluation QScalar ->
// ModScalar is a ring homomorphism wherever the denominator does not vanish
// at q0 (Schwartz-Zippel gives the soundness bound).

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

using Int = mpz_class;

// Dense integer polynomial in q; coeffs[i] is the coefficient of q^i,
// trailing zeros stripped (zero polynomial has empty coeffs).
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Int constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }
    explicit QPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    static QPoly monomial(Int c, int deg) {
        QPoly p;
        if (c != 0) {
            p.coeffs_.assign(static_cast<std::size_t>(deg) + 1, Int(0));
            p.coeffs_.back() = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Int& coeff(int i) const {
        static const Int zero(0);
        return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : zero;
    }
    const Int& leading() const { return coeffs_.back(); }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return QPoly(std::move(c));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return QPoly(std::move(c));
    }
    QPoly operator-() const {
        std::vector<Int> c = coeffs_;
        for (Int& x : c) x = -x;
        return QPoly(std::move(c));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return QPoly(std::move(c));
    }

    // Exact division; the caller guarantees divisibility in Z[q].
    QPoly divide_exact(const QPoly& d) const {
        if (d.is_zero()) throw DivisionByZero();
        if (is_zero()) return QPoly();
        std::vector<Int> rem = coeffs_;
        std::vector<Int> quot(coeffs_.size() - d.coeffs_.size() + 1, Int(0));
        for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
            Int top = rem[static_cast<std::size_t>(i) + d.coeffs_.size() - 1];
            if (top == 0) continue;
            Int qc = top / d.leading();
            quot[static_cast<std::size_t>(i)] = qc;
            for (std::size_t j = 0; j < d.coeffs_.size(); ++j)
                rem[static_cast<std::size_t>(i) + j] -= qc * d.coeffs_[j];
        }
        return QPoly(std::move(quot));
    }

    Int content() const {
        Int g(0);
        for (const Int& c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    QPoly primitive_part() const {
        if (is_zero()) return QPoly();
        Int c = content();
        std::vector<Int> out = coeffs_;
        for (Int& x : out) x /= c;
        return QPoly(std::move(out));
    }

    // gcd with positive leading coefficient (primitive PRS on primitive parts).
    static QPoly gcd(QPoly a, QPoly b) {
        if (a.is_zero()) return normalize_sign(std::move(b));
        if (b.is_zero()) return normalize_sign(std::move(a));
        Int cg;
        mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
        a = a.primitive_part();
        b = b.primitive_part();
        while (!b.is_zero()) {
            QPoly r = pseudo_rem(a, b);
            a = std::move(b);
            b = r.is_zero() ? QPoly() : r.primitive_part();
        }
        QPoly g = QPoly(cg) * a;
        return normalize_sign(std::move(g));
    }

    // q |-> 1/q, returned as (reversed coefficients, power shift).  For p of
    // degree d: p(1/q) = q^{-d} * reverse(p).
    QPoly reversed() const {
        std::vector<Int> c(coeffs_.rbegin(), coeffs_.rend());
        return QPoly(std::move(c));
    }

    std::uint64_t eval_mod(std::uint64_t p, std::uint64_t q0) const;

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Int& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            Int a = abs(c);
            if (out.empty())
                out += (c < 0) ? "-" : "";
            else
                out += (c < 0) ? " - " : " + ";
            bool show_coeff = (a != 1) || (i == 0);
            if (show_coeff) out += a.get_str();
            if (i > 0) {
                if (show_coeff) out += "*";
                out += "q";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    static QPoly normalize_sign(QPoly p) {
        if (!p.is_zero() && p.leading() < 0) return -p;
        return p;
    }
    static QPoly pseudo_rem(const QPoly& a, const QPoly& b) {
        // lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
        QPoly r = a;
        int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            int shift = r.degree() - db;
            QPoly scaled = QPoly(b.leading()) * r - QPoly::monomial(r.leading(), shift) * b;
            r = std::move(scaled);
        }
        return r;
    }

    std::vector<Int> coeffs_;
};

namespace detail {
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    __extension__ typedef unsigned __int128 u128; // moduli sit below 2^62
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}
inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw DivisionByZero();
    return pow_mod(a, p - 2, p); // p prime
}
} // namespace detail

inline std::uint64_t QPoly::eval_mod(std::uint64_t p, std::uint64_t q0) const {
    std::uint64_t acc = 0;
    for (int i = degree(); i >= 0; --i) {
        acc = detail::mul_mod(acc, q0, p);
        Int c = coeffs_[static_cast<std::size_t>(i)] % Int(static_cast<unsigned long>(p));
        if (c < 0) c += Int(static_cast<unsigned long>(p));
        acc = detail::add_mod(acc, c.get_ui(), p);
    }
    return acc;
}

class ModScalar;

class QScalar {
public:
    QScalar() : num_(), den_(Int(1)) {}
    explicit QScalar(long v) : num_(Int(v)), den_(Int(1)) {}
    explicit QScalar(Int v) : num_(std::move(v)), den_(Int(1)) {}
    QScalar(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static QScalar q_power(long e) {
        if (e >= 0) return QScalar(QPoly::monomial(Int(1), static_cast<int>(e)), QPoly(Int(1)));
        return QScalar(QPoly(Int(1)), QPoly::monomial(Int(1), static_cast<int>(-e)));
    }
    static QScalar ratio(long n, long d) {
        if (d == 0) throw DivisionByZero();
        return QScalar(QPoly(Int(n)), QPoly(Int(d)));
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    friend bool operator==(const QScalar& a, const QScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_; // canonical form is unique
    }

    friend QScalar operator+(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QScalar operator-(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    QScalar operator-() const {
        QScalar r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend QScalar operator*(const QScalar& a, const QScalar& b) {
        return QScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QScalar operator/(const QScalar& a, const QScalar& b) {
        if (b.is_zero()) throw DivisionByZero();
        return QScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
    QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
    QScalar& operator*=(const QScalar& o) { return *this = *this * o; }

    QScalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        return QScalar(den_, num_);
    }

    QScalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QScalar r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // q |-> 1/q.
    QScalar subst_q_inverse() const {
        if (is_zero()) return QScalar();
        int dn = num_.degree(), dd = den_.degree();
        QPoly n = num_.reversed(), d = den_.reversed();
        if (dd > dn)
            n = n * QPoly::monomial(Int(1), dd - dn);
        else if (dn > dd)
            d = d * QPoly::monomial(Int(1), dn - dd);
        return QScalar(std::move(n), std::move(d));
    }

    // "Negative" is a display convention: negative leading numerator
    // coefficient (the denominator's leading coefficient is positive).
    bool display_negative() const { return !num_.is_zero() && num_.leading() < 0; }

    ModScalar eval_mod(std::uint64_t prime, std::uint64_t q0) const;

    std::string str() const {
        if (is_zero()) return "0";
        bool num_simple = num_.degree() <= 0 || (num_.degree() >= 1 && num_is_monomial());
        std::string n = num_.str();
        if (den_ == QPoly(Int(1))) return n;
        if (!num_simple) n = "(" + n + ")";
        std::string d = den_.str();
        bool den_simple = den_.degree() <= 0 || den_is_monomial_unit();
        if (!den_simple) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    bool num_is_monomial() const {
        for (int i = 0; i < num_.degree(); ++i)
            if (num_.coeff(i) != 0) return false;
        return true;
    }
    bool den_is_monomial_unit() const {
        if (den_.leading() != 1) return false;
        for (int i = 0; i < den_.degree(); ++i)
            if (den_.coeff(i) != 0) return false;
        return true;
    }
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = QPoly(Int(1));
            return;
        }
        QPoly g = QPoly::gcd(num_, den_);
        num_ = num_.divide_exact(g);
        den_ = den_.divide_exact(g);
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    QPoly num_, den_;
};

// Residue field element; the prime travels with the value.
class ModScalar {
public:
    ModScalar() : v_(0), p_(0) {}
    ModScalar(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend bool operator==(const ModScalar& a, const ModScalar& b) {
        return a.v_ == b.v_ && a.p_ == b.p_;
    }
    friend ModScalar operator+(const ModScalar& a, const ModScalar& b) {
        return ModScalar(detail::add_mod(a.v_, b.v_, a.p_), a.p_);
    }
    friend ModScalar operator-(const ModScalar& a, const ModScalar& b) {
        return ModScalar(detail::add_mod(a.v_, a.p_ - b.v_, a.p_), a.p_);
    }
    ModScalar operator-() const { return ModScalar(v_ == 0 ? 0 : p_ - v_, p_); }
    friend ModScalar operator*(const ModScalar& a, const ModScalar& b) {
        return ModScalar(detail::mul_mod(a.v_, b.v_, a.p_), a.p_);
    }
    friend ModScalar operator/(const ModScalar& a, const ModScalar& b) {
        return ModScalar(detail::mul_mod(a.v_, detail::inv_mod(b.v_, a.p_), a.p_), a.p_);
    }
    ModScalar& operator+=(const ModScalar& o) { return *this = *this + o; }
    ModScalar& operator-=(const ModScalar& o) { return *this = *this - o; }
    ModScalar& operator*=(const ModScalar& o) { return *this = *this * o; }

    ModScalar inverse() const { return ModScalar(detail::inv_mod(v_, p_), p_); }
    ModScalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        return ModScalar(detail::pow_mod(v_, static_cast<std::uint64_t>(e), p_), p_);
    }
    bool display_negative() const { return false; }

    std::string str() const { return std::to_string(v_); }

private:
    std::uint64_t v_, p_;
};

inline ModScalar QScalar::eval_mod(std::uint64_t prime, std::uint64_t q0) const {
    std::uint64_t d = den_.eval_mod(prime, q0);
    if (d == 0) throw BadEvaluationPoint();
    std::uint64_t n = num_.eval_mod(prime, q0);
    return ModScalar(detail::mul_mod(n, detail::inv_mod(d, prime), prime), prime);
}

// The three fixed moduli: the largest primes below 2^62 (products fit in
// unsigned __int128 with room to spare).
inline constexpr std::uint64_t kDefaultPrimes[3] = {
    4611686018427387847ull, // 2^62 - 57
    4611686018427387817ull, // 2^62 - 87
    4611686018427387787ull, // 2^62 - 117
};

// Mints constants of a coefficient field.  For the exact field q is the
// rational-function generator (or a specialization such as q = 1); for the
// modular field q is the chosen evaluation point q0, with q0 not in
// {0, 1, p-1}.
template <class F>
struct FieldCtx;

template <>
struct FieldCtx<QScalar> {
    QScalar q_value;

    static FieldCtx rational() { return FieldCtx{QScalar::q_power(1)}; }
    static FieldCtx rational_at(QScalar q0) { return FieldCtx{std::move(q0)}; }

    QScalar zero() const { return QScalar(); }
    QScalar one() const { return QScalar(1); }
    QScalar from_long(long v) const { return QScalar(v); }
    QScalar from_ratio(long n, long d) const { return QScalar::ratio(n, d); }
    QScalar q() const { return q_value; }
    QScalar q_pow(long e) const { return q_value.pow(e); }
};

template <>
struct FieldCtx<ModScalar> {
    std::uint64_t prime;
    std::uint64_t q_point;

    static FieldCtx modular(std::uint64_t p, std::uint64_t q0) {
        if (q0 == 0 || q0 == 1 || q0 == p - 1)
            throw Error("q0 must avoid {0, 1, p-1}");
        return FieldCtx{p, q0 % p};
    }

    ModScalar zero() const { return ModScalar(0, prime); }
    ModScalar one() const { return ModScalar(1, prime); }
    ModScalar from_long(long v) const {
        if (v >= 0) return ModScalar(static_cast<std::uint64_t>(v), prime);
        return -ModScalar(static_cast<std::uint64_t>(-v), prime);
    }
    ModScalar from_ratio(long n, long d) const { return from_long(n) / from_long(d); }
    ModScalar q() const { return ModScalar(q_point, prime); }
    ModScalar q_pow(long e) const { return q().pow(e); }
};

inline std::ostream& operator<<(std::ostream& os, const QScalar& s) { return os << s.str(); }
inline std::ostream& operator<<(std::ostream& os, const ModScalar& s) { return os << s.str(); }

} // namespace qsm
