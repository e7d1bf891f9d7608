/**
 * @file branching.hpp
 * @brief Index sets S_l and T_l, the weight maps wt and wt_T, the fiber map
 *        phi between them, the classical-decomposition consistency checks,
 *        and the Weyl dimension formula for the classical subalgebra.
 */
#pragma once

#include <cstdint>

#include "cartan.hpp"

namespace krkit {

using ExpVec6 = std::array<int, 6>;   // exponents p_1..p_6 at indices 0..5
using ExpVec5 = std::array<int, 5>;
using RiggedTuple = std::array<int, 5>;

inline ExpVec6 embed6(const ExpVec5& p) { return ExpVec6{p[0], p[1], p[2], p[3], p[4], 0}; }

/// Membership in S_l: p6 <= p5 <= p4 <= p3 <= p2 and p2+p3+p4-p5 <= p1 <= p4+l.
inline bool in_S(const ExpVec6& p, int ell) {
    for (int v : p)
        if (v < 0) return false;
    bool chain = p[5] <= p[4] && p[4] <= p[3] && p[3] <= p[2] && p[2] <= p[1];
    bool window = p[1] + p[2] + p[3] - p[4] <= p[0] && p[0] <= p[3] + ell;
    return chain && window;
}

/// Membership in T_l: r1+r2+r3+r4 <= l and r4+2 r5 <= r2.
inline bool in_T(const RiggedTuple& r, int ell) {
    for (int v : r)
        if (v < 0) return false;
    return r[0] + r[1] + r[2] + r[3] <= ell && r[3] + 2 * r[4] <= r[1];
}

/// Exhaustive, duplicate-free, lexicographically sorted enumeration of S_l.
inline std::vector<ExpVec6> enum_S(int ell) {
    if (ell < 1) throw std::domain_error("enum_S: ell must be positive");
    std::vector<ExpVec6> out;
    for (int p2 = 0; p2 <= ell; ++p2)
        for (int p3 = 0; p3 <= p2; ++p3)
            for (int p4 = 0; p4 <= p3; ++p4)
                for (int p5 = 0; p5 <= p4; ++p5)
                    for (int p6 = 0; p6 <= p5; ++p6) {
                        int lo = std::max(0, p2 + p3 + p4 - p5);
                        for (int p1 = lo; p1 <= p4 + ell; ++p1) out.push_back(ExpVec6{p1, p2, p3, p4, p5, p6});
                    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<RiggedTuple> enum_T(int ell) {
    if (ell < 1) throw std::domain_error("enum_T: ell must be positive");
    std::vector<RiggedTuple> out;
    for (int r1 = 0; r1 <= ell; ++r1)
        for (int r2 = 0; r1 + r2 <= ell; ++r2)
            for (int r3 = 0; r1 + r2 + r3 <= ell; ++r3)
                for (int r4 = 0; r1 + r2 + r3 + r4 <= ell && r4 <= r2; ++r4)
                    for (int r5 = 0; r4 + 2 * r5 <= r2; ++r5) out.push_back(RiggedTuple{r1, r2, r3, r4, r5});
    std::sort(out.begin(), out.end());
    return out;
}

/// wt(p) = (p1-p2-p3-p4+2p5-p6) varpi_1 + (-p1+2p4-p5) varpi_2 + (p2-p3) gamma_1 + (p3-p4) gamma_2.
inline Weight wt(const CartanData& cd, const ExpVec6& p) {
    Weight w = cd.zero_P0();
    auto acc = [&](int coeff, const Weight& v) {
        for (size_t t = 0; t < w.lambda.size(); ++t) w.lambda[t] += coeff * v.lambda[t];
    };
    acc(p[0] - p[1] - p[2] - p[3] + 2 * p[4] - p[5], cd.varpi(1));
    acc(-p[0] + 2 * p[3] - p[4], cd.varpi(2));
    acc(p[1] - p[2], cd.gamma(1));
    acc(p[2] - p[3], cd.gamma(2));
    return w;
}

/// wt_T(r) = (r2-r4-2r5) varpi_1 + (-r1-r2-r3-r4+r5) varpi_2 + r3 gamma_1 + r4 gamma_2.
inline Weight wt_T(const CartanData& cd, const RiggedTuple& r) {
    Weight w = cd.zero_P0();
    auto acc = [&](int coeff, const Weight& v) {
        for (size_t t = 0; t < w.lambda.size(); ++t) w.lambda[t] += coeff * v.lambda[t];
    };
    acc(r[1] - r[3] - 2 * r[4], cd.varpi(1));
    acc(-r[0] - r[1] - r[2] - r[3] + r[4], cd.varpi(2));
    acc(r[2], cd.gamma(1));
    acc(r[3], cd.gamma(2));
    return w;
}

/// phi(p) = (p6, p1-p2-p6, p2-p3, p3-p4, p4-p5); components may be negative for p outside S_l.
inline RiggedTuple phi(const ExpVec6& p) {
    return RiggedTuple{p[5], p[0] - p[1] - p[5], p[1] - p[2], p[2] - p[3], p[3] - p[4]};
}

/// The base point of the fiber of phi over r.
inline ExpVec6 fiber_base(const RiggedTuple& r) {
    return ExpVec6{r[0] + r[1] + r[2] + r[3] + r[4], r[2] + r[3] + r[4], r[3] + r[4], r[4], 0, r[0]};
}

/**
 * wt_T . phi = wt as a formal identity: both sides are linear maps from Z^6
 * to the free module on {varpi_1, varpi_2, gamma_1, gamma_2}; returns true
 * iff the two 4x6 coefficient matrices agree (type-uniform statement).
 */
inline bool wt_identity_formal() {
    // columns: e_1..e_6; rows: coefficients of varpi_1, varpi_2, gamma_1, gamma_2
    auto wt_cols = [](int j) {
        ExpVec6 p{};
        p[static_cast<size_t>(j)] = 1;
        return std::array<int, 4>{p[0] - p[1] - p[2] - p[3] + 2 * p[4] - p[5], -p[0] + 2 * p[3] - p[4],
                                  p[1] - p[2], p[2] - p[3]};
    };
    auto wtT_of = [](const RiggedTuple& r) {
        return std::array<int, 4>{r[1] - r[3] - 2 * r[4], -r[0] - r[1] - r[2] - r[3] + r[4], r[2], r[3]};
    };
    for (int j = 0; j < 6; ++j) {
        ExpVec6 p{};
        p[static_cast<size_t>(j)] = 1;
        if (wt_cols(j) != wtT_of(phi(p))) return false;
    }
    return true;
}

struct C1Report {
    bool ok = true;
    std::vector<std::string> failures;
    long total_dim_terms = 0;  // |S_l|

    void fail(const std::string& msg) {
        ok = false;
        if (failures.size() < 32) failures.push_back(msg);
    }
};

namespace detail {
inline std::string tuple_str(const int* v, size_t k) {
    std::string s = "(";
    for (size_t i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}
}  // namespace detail

/**
 * Checks, for one l and one type: phi(S_l) = T_l; each fiber is the stated
 * arithmetic progression of cardinality 1 + r2 - r4 - 2 r5; wt_T . phi = wt
 * on S_l; and wt(p) + l varpi_2 is dominant.
 */
inline C1Report verify_C1(const CartanData& cd, int ell) {
    C1Report rep;
    std::vector<ExpVec6> S = enum_S(ell);
    std::vector<RiggedTuple> T = enum_T(ell);
    rep.total_dim_terms = static_cast<long>(S.size());

    std::map<RiggedTuple, std::vector<ExpVec6>> fibers;
    for (const ExpVec6& p : S) {
        RiggedTuple r = phi(p);
        if (!in_T(r, ell)) rep.fail("phi(p) outside T for p=" + detail::tuple_str(p.data(), 6));
        fibers[r].push_back(p);
        if (wt(cd, p) != wt_T(cd, r)) rep.fail("wt_T(phi(p)) != wt(p) at p=" + detail::tuple_str(p.data(), 6));
        Weight w = add(wt(cd, p), scale(ell, cd.varpi(2)));
        if (!cd.dominant_P0(w)) rep.fail("wt(p)+l varpi_2 not dominant at p=" + detail::tuple_str(p.data(), 6));
    }
    for (const RiggedTuple& r : T) {
        auto it = fibers.find(r);
        size_t expect = static_cast<size_t>(1 + r[1] - r[3] - 2 * r[4]);
        if (it == fibers.end()) {
            rep.fail("empty fiber over r=" + detail::tuple_str(r.data(), 5));
            continue;
        }
        if (it->second.size() != expect)
            rep.fail("fiber cardinality mismatch over r=" + detail::tuple_str(r.data(), 5));
        // arithmetic-progression form r_0 + k(1,1,1,1,1,0), r1 <= k <= r1+r2-r4-2r5
        ExpVec6 base = fiber_base(r);
        for (int k = r[0]; k <= r[0] + r[1] - r[3] - 2 * r[4]; ++k) {
            ExpVec6 q = base;
            for (int t = 0; t < 5; ++t) q[static_cast<size_t>(t)] += k;
            bool found = std::find(it->second.begin(), it->second.end(), q) != it->second.end();
            if (!found) rep.fail("fiber misses progression point over r=" + detail::tuple_str(r.data(), 5));
        }
    }
    if (fibers.size() != T.size()) rep.fail("phi(S_l) != T_l as sets");
    return rep;
}

/**
 * Weyl dimension formula for the simple g_0-module with dominant highest
 * weight in P_0: prod over positive roots of (lambda + rho, alpha)/(rho, alpha).
 */
inline BigInt weyl_dim(const CartanData& cd, const Weight& lambda) {
    if (!cd.dominant_P0(lambda)) throw std::domain_error("weyl_dim: weight not dominant");
    // (mu, alpha) for mu in P_0: sum_j alpha_j d_j mu_j
    auto form = [&](const std::vector<int>& varpi_coords, const Root& a) {
        Rational s = 0;
        for (int j = 1; j <= cd.n; ++j)
            if (a.alpha[static_cast<size_t>(j)] != 0)
                s += Rational(a.alpha[static_cast<size_t>(j)]) * cd.d(j) * Rational(varpi_coords[static_cast<size_t>(j)]);
        return s;
    };
    std::vector<int> lam(lambda.lambda.begin(), lambda.lambda.end());
    std::vector<int> lam_rho = lam;
    for (int j = 1; j <= cd.n; ++j) lam_rho[static_cast<size_t>(j)] += 1;
    std::vector<int> rho(static_cast<size_t>(cd.n + 1), 1);
    rho[0] = 0;

    Rational prod = 1;
    for (const Root& a : cd.positive_roots_g0()) prod *= form(lam_rho, a) / form(rho, a);
    prod.canonicalize();
    if (prod.get_den() != 1) throw std::domain_error("weyl_dim: non-integral result");
    return prod.get_num();
}

}  // namespace krkit
