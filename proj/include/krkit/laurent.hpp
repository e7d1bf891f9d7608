/**
 * @file laurent.hpp
 * @brief Laurent polynomials in q_s with exact rational coefficients.
 *
 * Exponents are integers (powers of q_s = q^{1/D}; the global denominator D
 * is owned by the root datum, not by the polynomial). Coefficients are
 * arbitrary-precision rationals. No zero coefficient is ever stored.
 */
#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace krkit {

using Rational = mpq_class;
using BigInt = mpz_class;

class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly constant(const Rational& c) {
        LaurentPoly p;
        if (c != 0) p.coeffs_[0] = c;
        return p;
    }

    static LaurentPoly monomial(const Rational& c, int exp) {
        LaurentPoly p;
        if (c != 0) p.coeffs_[exp] = c;
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Lowest exponent carrying a nonzero coefficient. Requires nonzero.
    int lo() const {
        if (is_zero()) throw std::domain_error("LaurentPoly::lo on zero");
        return coeffs_.begin()->first;
    }

    /// Highest exponent carrying a nonzero coefficient. Requires nonzero.
    int hi() const {
        if (is_zero()) throw std::domain_error("LaurentPoly::hi on zero");
        return coeffs_.rbegin()->first;
    }

    Rational coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& terms() const { return coeffs_; }

    void set_coeff(int exp, const Rational& c) {
        if (c == 0)
            coeffs_.erase(exp);
        else
            coeffs_[exp] = c;
    }

    void add_to_coeff(int exp, const Rational& c) {
        auto it = coeffs_.find(exp);
        if (it == coeffs_.end()) {
            if (c != 0) coeffs_[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_to_coeff(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_to_coeff(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly p;
        for (const auto& [e, c] : coeffs_) p.coeffs_[e] = -c;
        return p;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly p;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) p.add_to_coeff(ea + eb, ca * cb);
        return p;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Rational& c) const {
        LaurentPoly p;
        if (c == 0) return p;
        for (const auto& [e, k] : coeffs_) p.coeffs_[e] = k * c;
        return p;
    }

    /// Multiply by q_s^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly p;
        for (const auto& [e, c] : coeffs_) p.coeffs_[e + k] = c;
        return p;
    }

    /// Substitute q_s -> q_s^{-1}.
    LaurentPoly bar() const {
        LaurentPoly p;
        for (const auto& [e, c] : coeffs_) p.coeffs_[-e] = c;
        return p;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    bool operator<(const LaurentPoly& o) const { return coeffs_ < o.coeffs_; }

private:
    std::map<int, Rational> coeffs_;
};

namespace detail {

/// Dense ordinary polynomial (index = exponent), trailing zeros trimmed.
using DensePoly = std::vector<Rational>;

inline DensePoly to_dense(const LaurentPoly& p, int shift) {
    DensePoly d;
    if (p.is_zero()) return d;
    d.assign(static_cast<size_t>(p.hi() + shift) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<size_t>(e + shift)] = c;
    return d;
}

inline LaurentPoly from_dense(const DensePoly& d, int shift) {
    LaurentPoly p;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) p.set_coeff(static_cast<int>(i) - shift, d[i]);
    return p;
}

inline void trim(DensePoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact division; throws if the remainder is nonzero.
inline DensePoly divide_exact(DensePoly a, DensePoly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::domain_error("inexact polynomial division");
    const int db = static_cast<int>(b.size()) - 1;
    DensePoly q(a.size() - b.size() + 1, Rational(0));
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        Rational c = a[static_cast<size_t>(i)] / b.back();
        q[static_cast<size_t>(i - db)] = c;
        if (c != 0)
            for (int j = 0; j <= db; ++j) a[static_cast<size_t>(i - db + j)] -= c * b[static_cast<size_t>(j)];
    }
    for (const Rational& r : a)
        if (r != 0) throw std::domain_error("inexact polynomial division");
    return q;
}

/// GCD over Q via primitive pseudo-remainder Euclid on integerized polynomials.
inline DensePoly gcd_poly(DensePoly a, DensePoly b) {
    trim(a);
    trim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;

    auto integerize = [](const DensePoly& p) {
        BigInt lcm = 1;
        for (const Rational& c : p)
            if (c != 0) lcm = lcm / gcd(lcm, c.get_den()) * c.get_den();
        std::vector<BigInt> z(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            Rational t = p[i] * Rational(lcm);
            t.canonicalize();
            z[i] = t.get_num();
        }
        return z;
    };
    auto primitive = [](std::vector<BigInt>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        if (p.empty()) return;
        BigInt g = 0;
        for (const BigInt& c : p) g = gcd(g, c);
        if (g > 1)
            for (BigInt& c : p) c /= g;
    };

    std::vector<BigInt> x = integerize(a), y = integerize(b);
    primitive(x);
    primitive(y);
    while (!y.empty()) {
        // pseudo-remainder of x by y, kept primitive to control growth
        std::vector<BigInt> r = x;
        const BigInt lead = y.back();
        const size_t dy = y.size() - 1;
        while (r.size() >= y.size()) {
            BigInt c = r.back();
            size_t off = r.size() - 1 - dy;
            for (BigInt& t : r) t *= lead;
            for (size_t i = 0; i <= dy; ++i) r[off + i] -= c * y[i];
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
    DensePoly g(x.size());
    for (size_t i = 0; i < x.size(); ++i) g[i] = Rational(x[i]);
    return g;
}

}  // namespace detail

}  // namespace krkit
