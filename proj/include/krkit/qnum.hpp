/**
 * @file qnum.hpp
 * @brief q-integers, q-factorials and Gaussian binomials per node.
 *
 * All quantities are taken in q_i = q_s^{node_power}. Negative upper
 * arguments of the binomial are handled through the defining product
 * [m][m-1]...[m-n+1]/[n]!.
 */
#pragma once

#include "qrat.hpp"

namespace krkit {

/// [m]_i = (q_i^m - q_i^{-m})/(q_i - q_i^{-1}), as a Laurent polynomial.
inline QRat qint(int m, int node_power = 1) {
    if (m == 0) return QRat(0);
    bool neg = m < 0;
    int a = neg ? -m : m;
    LaurentPoly p;
    for (int j = 0; j < a; ++j) p.add_to_coeff(node_power * (a - 1 - 2 * j), 1);
    QRat r{p};
    return neg ? -r : r;
}

/// [n]_i!
inline QRat qfact(int n, int node_power = 1) {
    if (n < 0) throw std::domain_error("qfact: negative argument");
    QRat r(1);
    for (int k = 2; k <= n; ++k) r *= qint(k, node_power);
    return r;
}

/// Gaussian binomial [m over n]_i for m in Z, n >= 0.
inline QRat qbinom(int m, int n, int node_power = 1) {
    if (n < 0) throw std::domain_error("qbinom: negative lower argument");
    if (n == 0) return QRat(1);
    QRat num(1);
    for (int j = 0; j < n; ++j) {
        num *= qint(m - j, node_power);
        if (num.is_zero()) return num;
    }
    return num / qfact(n, node_power);
}

}  // namespace krkit
