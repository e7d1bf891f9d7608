/**
 * @file qrat.hpp
 * @brief Exact elements of Q(q_s) with valuation at q_s = 0 and the total order
 *        defined via leading series coefficients.
 *
 * Canonical form: num/den with den an ordinary polynomial in q_s, den(0) = 1,
 * and gcd(num, den) = 1 up to units. Any monomial unit q_s^k lives in num.
 * With that normalization the subring A of functions regular at q_s = 0 is
 * recognized in O(1): f is in A iff the lowest exponent of num is >= 0.
 */
#pragma once

#include <optional>
#include <sstream>

#include "laurent.hpp"

namespace krkit {

enum class Ord { less, equal, greater };

class QRat {
public:
    QRat() : num_(), den_(LaurentPoly::constant(1)) {}
    QRat(long v) : num_(LaurentPoly::constant(Rational(static_cast<long>(v)))), den_(LaurentPoly::constant(1)) {}
    QRat(int v) : QRat(static_cast<long>(v)) {}
    QRat(const Rational& v) : num_(LaurentPoly::constant(v)), den_(LaurentPoly::constant(1)) {}
    QRat(const LaurentPoly& p) : num_(p), den_(LaurentPoly::constant(1)) {}
    QRat(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("QRat: zero denominator");
        normalize();
    }

    /// q_s^k
    static QRat qs_power(int k) { return QRat(LaurentPoly::monomial(1, k)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    friend QRat operator+(const QRat& a, const QRat& b) {
        return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRat operator-(const QRat& a, const QRat& b) {
        return QRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRat operator*(const QRat& a, const QRat& b) { return QRat(a.num_ * b.num_, a.den_ * b.den_); }
    friend QRat operator/(const QRat& a, const QRat& b) {
        if (b.is_zero()) throw std::domain_error("QRat: division by zero");
        return QRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    QRat operator-() const {
        QRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    QRat& operator/=(const QRat& o) { return *this = *this / o; }

    friend bool operator==(const QRat& a, const QRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

    /// Order of vanishing at q_s = 0; empty optional encodes +infinity (the zero element).
    std::optional<int> val0() const {
        if (is_zero()) return std::nullopt;
        return num_.lo();  // den(0) = 1 by normalization
    }

    /// Leading coefficient of the power-series expansion at q_s = 0. Requires nonzero.
    Rational lead0() const {
        if (is_zero()) throw std::domain_error("QRat::lead0 on zero");
        return num_.coeff(num_.lo());
    }

    /// Membership in A = { f regular at q_s = 0 }.
    bool in_A() const { return is_zero() || num_.lo() >= 0; }
    /// Membership in q_s^k A.
    bool in_qs_pow_A(int k) const { return is_zero() || num_.lo() >= k; }
    /// Membership in 1 + q_s A.
    bool in_one_plus_qsA() const { return (*this - QRat(1)).in_qs_pow_A(1); }

    /// Substitute q_s -> q_s^{-1}.
    QRat bar() const { return QRat(num_.bar(), den_.bar()); }

    /**
     * Render with exponents of q when D divides the q_s-exponent, q_s otherwise,
     * e.g. "q + q^-1".
     */
    std::string str(int D = 1) const;

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(1);
            return;
        }
        // move the unit q_s^{den.lo()} of den into num
        int s = den_.lo();
        if (s != 0) {
            den_ = den_.shifted(-s);
            num_ = num_.shifted(-s);
        }
        int a = num_.lo();
        if (den_ != LaurentPoly::constant(den_.coeff(0))) {
            detail::DensePoly n = detail::to_dense(num_.shifted(-a), 0);
            detail::DensePoly d = detail::to_dense(den_, 0);
            detail::DensePoly g = detail::gcd_poly(n, d);
            if (g.size() > 1) {
                n = detail::divide_exact(n, g);
                d = detail::divide_exact(d, g);
                num_ = detail::from_dense(n, 0).shifted(a);
                den_ = detail::from_dense(d, 0);
            }
        }
        Rational c = den_.coeff(0);
        if (c != 1) {
            Rational inv = 1 / c;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

/**
 * The total order on Q(q_s): f > g iff f - g = q_s^n (c + q_s A) with c a
 * positive rational, detected from the sign of the leading series coefficient.
 */
inline Ord order_cmp(const QRat& f, const QRat& g) {
    QRat d = f - g;
    if (d.is_zero()) return Ord::equal;
    return d.lead0() > 0 ? Ord::greater : Ord::less;
}

inline bool order_positive(const QRat& f) { return order_cmp(f, QRat(0)) == Ord::greater; }

namespace detail {

inline std::string render_poly(const LaurentPoly& p, int D) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest power first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Rational c = it->second;
        int e = it->first;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational ac = abs(c);
        std::string var;
        if (e != 0) {
            if (D != 0 && e % D == 0) {
                int k = e / D;
                var = (k == 1) ? "q" : "q^" + std::to_string(k);
            } else {
                var = (e == 1) ? "q_s" : "q_s^" + std::to_string(e);
            }
        }
        if (var.empty())
            os << ac.get_str();
        else if (ac == 1)
            os << var;
        else
            os << ac.get_str() << "*" << var;
    }
    return os.str();
}

}  // namespace detail

inline std::string QRat::str(int D) const {
    if (is_zero()) return "0";
    if (den_ == LaurentPoly::constant(1)) return detail::render_poly(num_, D);
    return "(" + detail::render_poly(num_, D) + ")/(" + detail::render_poly(den_, D) + ")";
}

}  // namespace krkit
