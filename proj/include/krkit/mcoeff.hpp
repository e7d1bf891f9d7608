/**
 * @file mcoeff.hpp
 * @brief The two-factor coproduct exponent m(p_1, p_2) for the split of
 *        E^{p_1+p_2} acting on w_1 (x) w_1^{(x) l}: the closed formula, the
 *        quantity x(p), the shift identities used downstream, and an
 *        independent oracle that recomputes the exponent letter-by-letter
 *        from the coproduct rule and the root data.
 */
#pragma once

#include "branching.hpp"
#include "weylseq.hpp"

#include <thread>

namespace krkit {

/// The constant vector a = (1,1,1,0,1).
inline const ExpVec5& avec() {
    static const ExpVec5 a{1, 1, 1, 0, 1};
    return a;
}

inline ExpVec5 eps5(int i) {
    ExpVec5 e{};
    e[static_cast<size_t>(i - 1)] = 1;
    return e;
}

inline ExpVec5 add5(const ExpVec5& a, const ExpVec5& b) {
    ExpVec5 r;
    for (size_t i = 0; i < 5; ++i) r[i] = a[i] + b[i];
    return r;
}

inline ExpVec5 sub5(const ExpVec5& a, const ExpVec5& b) {
    ExpVec5 r;
    for (size_t i = 0; i < 5; ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool nonneg5(const ExpVec5& a) {
    for (int v : a)
        if (v < 0) return false;
    return true;
}

/**
 * Closed formula:
 * m(p1, p2) = -sum_j p1j p2j + (p12+p13+p14) p21 + p15 (-p21+p22+p23+p24)
 *             + l (3 p11 - p12 - p13 - p14).
 */
inline long m_pair(const ExpVec5& p1, const ExpVec5& p2, int ell) {
    long s = 0;
    for (size_t j = 0; j < 5; ++j) s -= static_cast<long>(p1[j]) * p2[j];
    s += static_cast<long>(p1[1] + p1[2] + p1[3]) * p2[0];
    s += static_cast<long>(p1[4]) * (-p2[0] + p2[1] + p2[2] + p2[3]);
    s += static_cast<long>(ell) * (3L * p1[0] - p1[1] - p1[2] - p1[3]);
    return s;
}

/// x(p) = -<h_2, wt(E^p w_l)> = p1 - 2 p4 + p5 - l.
inline long x_of(const ExpVec5& p, int ell) { return p[0] - 2L * p[3] + p[4] - ell; }

/**
 * Independent recomputation of m(p1, p2) by walking the word
 * e_1 e_2 E_j E_i e_1 e_0 factor-by-factor through the two-factor coproduct
 * e_i^{(p)}(u1 (x) u2) = sum q_i^{-a(<h_i, wt u2> + b)} e_i^{(a)} u1 (x) e_i^{(b)} u2,
 * tracking only weights. Exponent bookkeeping is exact in q_s units.
 */
class CoproductOracle {
public:
    explicit CoproductOracle(const CartanData& cd)
        : cd_(cd),
          seq_i_(find_sequences(cd, SeqKind::I).at(0)),
          seq_j_(find_sequences(cd, SeqKind::J).at(0)) {}

    long eval(const ExpVec5& p1, const ExpVec5& p2, int ell) const {
        struct Letter {
            int node;
            long a, b;
        };
        std::vector<Letter> word;
        auto push_plain = [&](int node, int a, int b) { word.push_back({node, a, b}); };
        auto push_seq = [&](const WeylWord& w, int a, int b) {
            for (int node : w.letters) {
                int mult = (cd_.tag == TypeTag::F4a1 && cd_.node_power[static_cast<size_t>(node)] == 1) ? 2 : 1;
                word.push_back({node, static_cast<long>(mult) * a, static_cast<long>(mult) * b});
            }
        };
        push_plain(0, p1[0], p2[0]);
        push_plain(1, p1[0], p2[0]);
        push_seq(seq_i_, p1[1], p2[1]);
        push_seq(seq_j_, p1[2], p2[2]);
        push_plain(2, p1[3], p2[3]);
        push_plain(1, p1[4], p2[4]);

        const Weight varpi2 = cd_.varpi(2);
        std::vector<long> cnt(static_cast<size_t>(cd_.n + 1), 0);  // simple-root exponents applied to the right factor
        long exp_qs = 0;
        for (const Letter& L : word) {
            long h = static_cast<long>(ell) * varpi2.lambda[static_cast<size_t>(L.node)];
            for (int j = 0; j <= cd_.n; ++j) h += static_cast<long>(cd_.cij(L.node, j)) * cnt[static_cast<size_t>(j)];
            exp_qs += static_cast<long>(cd_.node_power[static_cast<size_t>(L.node)]) * (-L.a * (h + L.b));
            cnt[static_cast<size_t>(L.node)] += L.b;
        }
        if (exp_qs % cd_.D != 0) throw std::domain_error("coproduct oracle: exponent not a power of q");
        return exp_qs / cd_.D;
    }

private:
    const CartanData& cd_;
    WeylWord seq_i_, seq_j_;
};

struct MIdentityReport {
    bool ok = true;
    long checked = 0;
    std::string counterexample;

    void fail(const std::string& msg) {
        if (ok) counterexample = msg;
        ok = false;
    }
};

namespace detail {
inline std::string p5_str(const ExpVec5& p) {
    std::string s = "(";
    for (size_t i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}
}  // namespace detail

namespace detail {
inline std::vector<ExpVec5> exp5_grid(int bound) {
    std::vector<ExpVec5> grid;
    ExpVec5 p{};
    std::function<void(size_t)> gen = [&](size_t k) {
        if (k == 5) {
            grid.push_back(p);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            p[k] = v;
            gen(k + 1);
        }
    };
    gen(0);
    return grid;
}
}  // namespace detail

/**
 * The five shift identities, verified exhaustively on [0..B]^5 x [0..B]^5
 * for each l in [ell_lo, ell_hi]; points where a shifted argument leaves
 * Z_{>=0}^5 are skipped rather than clamped. The p1 grid is sharded over
 * `threads` workers; reports are merged in shard order.
 */
inline MIdentityReport verify_m_identities_shard(const std::vector<ExpVec5>& p1s, int bound, int ell_lo, int ell_hi) {
    MIdentityReport rep;
    std::vector<ExpVec5> grid = detail::exp5_grid(bound);
    const ExpVec5& a = avec();
    for (int ell = ell_lo; ell <= ell_hi && rep.ok; ++ell) {
        for (const ExpVec5& p1 : p1s) {
            for (const ExpVec5& p2 : grid) {
                long m = m_pair(p1, p2, ell);
                ExpVec6 tot{};
                for (int t = 0; t < 5; ++t) tot[static_cast<size_t>(t)] = p1[static_cast<size_t>(t)] + p2[static_cast<size_t>(t)];
                auto report = [&](const char* name) {
                    rep.fail(std::string(name) + " fails at p1=" + detail::p5_str(p1) + " p2=" + detail::p5_str(p2) +
                             " ell=" + std::to_string(ell));
                };
                // m(p1,p2) + x(p2) = m(p1-a, p2+a) + p_1 - p_4 - 1  (p = p1+p2)
                if (nonneg5(sub5(p1, a))) {
                    if (m + x_of(p2, ell) != m_pair(sub5(p1, a), add5(p2, a), ell) + tot[0] - tot[3] - 1)
                        report("identity(shift by a on both)");
                }
                // m(p1,p2) = m(p1+e4, p2) - p21 + p24 + l
                if (m != m_pair(add5(p1, eps5(4)), p2, ell) - p2[0] + p2[3] + ell) report("identity(e4 up)");
                // m(p1,p2) = m(p1, p2-e4) - p14 + p15
                if (p2[3] >= 1) {
                    if (m != m_pair(p1, sub5(p2, eps5(4)), ell) - p1[3] + p1[4]) report("identity(e4 down)");
                }
                // m(p1,p2) = m(p1, p2+e5) + p15
                if (m != m_pair(p1, add5(p2, eps5(5)), ell) + p1[4]) report("identity(e5 up)");
                // m(p1,p2) + x(p2) = m(p1-a, p2) + p21 - p24
                if (nonneg5(sub5(p1, a))) {
                    if (m + x_of(p2, ell) != m_pair(sub5(p1, a), p2, ell) + p2[0] - p2[3]) report("identity(shift by a left)");
                }
                ++rep.checked;
                if (!rep.ok) return rep;
            }
        }
    }
    return rep;
}

inline MIdentityReport verify_m_identities(int bound, int ell_lo, int ell_hi, int threads = 1) {
    std::vector<ExpVec5> grid = detail::exp5_grid(bound);
    if (threads <= 1) return verify_m_identities_shard(grid, bound, ell_lo, ell_hi);
    threads = std::min<int>(threads, static_cast<int>(grid.size()));
    std::vector<std::vector<ExpVec5>> shards(static_cast<size_t>(threads));
    for (size_t k = 0; k < grid.size(); ++k) shards[k % static_cast<size_t>(threads)].push_back(grid[k]);
    std::vector<MIdentityReport> results(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() { results[static_cast<size_t>(t)] = verify_m_identities_shard(shards[static_cast<size_t>(t)], bound, ell_lo, ell_hi); });
    for (std::thread& th : pool) th.join();
    MIdentityReport merged;
    for (const MIdentityReport& r : results) {
        merged.checked += r.checked;
        if (!r.ok && merged.ok) merged.fail(r.counterexample);
    }
    return merged;
}

/// Oracle vs closed formula on [0..B]^5 x [0..B]^5 for each l in range, one type.
inline MIdentityReport verify_m_oracle(const CartanData& cd, int bound, int ell_lo, int ell_hi) {
    MIdentityReport rep;
    CoproductOracle oracle(cd);
    std::vector<ExpVec5> grid = detail::exp5_grid(bound);
    for (int ell = ell_lo; ell <= ell_hi; ++ell)
        for (const ExpVec5& p1 : grid)
            for (const ExpVec5& p2 : grid) {
                if (oracle.eval(p1, p2, ell) != m_pair(p1, p2, ell)) {
                    rep.fail("oracle mismatch at p1=" + detail::p5_str(p1) + " p2=" + detail::p5_str(p2) +
                             " ell=" + std::to_string(ell) + " type=" + type_name(cd.tag));
                    return rep;
                }
                ++rep.checked;
            }
    return rep;
}

}  // namespace krkit
