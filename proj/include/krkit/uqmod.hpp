/**
 * @file uqmod.hpp
 * @brief Explicit finite-dimensional quantum-group modules at small rank:
 *        divided-power action matrices, coproduct tensor products, Kashiwara
 *        operators, admissible (Shapovalov-type) forms, Lusztig braid
 *        operators on modules, and the rank-1 affine Kirillov-Reshetikhin
 *        fixture with its tensor-product prepolarization.
 *
 * Modules carry exact matrices for e_i^{(n)}, f_i^{(n)} up to a fixed cap
 * and the diagonal q^h data through per-vector coroot pairings.
 */
#pragma once

#include "linalg.hpp"
#include "qnum.hpp"

#include <functional>
#include <optional>
#include <string>

namespace krkit {

/// Minimal symmetrizable Cartan datum for the module engine.
struct AlgebraData {
    std::string name;
    int nodes = 0;
    std::vector<std::vector<int>> c;
    std::vector<int> node_power;  // q_i = q_s^{node_power[i]}
    int D = 1;

    int cij(int i, int j) const { return c[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    static AlgebraData sl2() { return AlgebraData{"sl2", 1, {{2}}, {1}, 1}; }
    /// A2: both nodes of square length 2.
    static AlgebraData a2() { return AlgebraData{"A2", 2, {{2, -1}, {-1, 2}}, {1, 1}, 1}; }
    /// C2: node 0 short, node 1 long (q_1 = q^2).
    static AlgebraData c2() { return AlgebraData{"C2", 2, {{2, -2}, {-1, 2}}, {1, 2}, 1}; }
    /// Affine rank-1 datum with nodes {0, 1}.
    static AlgebraData a1_affine() { return AlgebraData{"A1a1", 2, {{2, -2}, {-2, 2}}, {1, 1}, 1}; }
};

class ModuleRep {
public:
    AlgebraData alg;
    int cap = 6;
    std::vector<std::vector<int>> hweights;               // per basis vector: <h_i, wt>
    std::vector<std::vector<SparseMat>> e_ops, f_ops;     // [node][n-1], n = 1..cap

    int dim() const { return static_cast<int>(hweights.size()); }

    const SparseMat& e(int node, int n) const {
        if (n < 1 || n > cap) throw std::domain_error("ModuleRep::e: exponent outside stored range");
        return e_ops[static_cast<size_t>(node)][static_cast<size_t>(n - 1)];
    }
    const SparseMat& f(int node, int n) const {
        if (n < 1 || n > cap) throw std::domain_error("ModuleRep::f: exponent outside stored range");
        return f_ops[static_cast<size_t>(node)][static_cast<size_t>(n - 1)];
    }

    SparseVec apply_e(int node, int n, const SparseVec& v) const { return n == 0 ? v : e(node, n).apply(v); }
    SparseVec apply_f(int node, int n, const SparseVec& v) const { return n == 0 ? v : f(node, n).apply(v); }

    SparseMat e_mat(int node, int n) const { return n == 0 ? SparseMat::identity(dim()) : e(node, n); }
    SparseMat f_mat(int node, int n) const { return n == 0 ? SparseMat::identity(dim()) : f(node, n); }

    /// e_{i1}^{(n1)} e_{i2}^{(n2)} e_{i3}^{(n3)} as a matrix (zero exponents collapse).
    SparseMat apply3(int i1, int n1, int i2, int n2, int i3, int n3) const {
        return e_mat(i1, n1) * e_mat(i2, n2) * e_mat(i3, n3);
    }

    int hw(int b, int node) const { return hweights[static_cast<size_t>(b)][static_cast<size_t>(node)]; }

    /// t_i^m as a diagonal matrix (q_i^{m <h_i, wt>}).
    SparseMat t_pow(int node, int m) const {
        SparseMat d(dim());
        for (int b = 0; b < dim(); ++b)
            d.set(b, b, QRat::qs_power(alg.node_power[static_cast<size_t>(node)] * m * hw(b, node)));
        return d;
    }

    /// q^h for h given by integer coefficients over the h_i (diagonal action).
    SparseMat qh(const std::vector<int>& h_coeffs) const {
        SparseMat d(dim());
        for (int b = 0; b < dim(); ++b) {
            long s = 0;
            for (int i = 0; i < alg.nodes; ++i)
                s += static_cast<long>(h_coeffs[static_cast<size_t>(i)]) * alg.node_power[static_cast<size_t>(i)] * hw(b, i);
            d.set(b, b, QRat::qs_power(static_cast<int>(s)));
        }
        return d;
    }

    /// weight-grading sanity: e_i^{(n)} maps the lambda slice into lambda + n alpha_i
    bool weight_graded() const {
        for (int i = 0; i < alg.nodes; ++i)
            for (int n = 1; n <= cap; ++n)
                for (int j = 0; j < dim(); ++j) {
                    for (const auto& [r, v] : e(i, n).col(j).e)
                        for (int k = 0; k < alg.nodes; ++k)
                            if (hw(r, k) != hw(j, k) + n * alg.cij(k, i)) return false;
                    for (const auto& [r, v] : f(i, n).col(j).e)
                        for (int k = 0; k < alg.nodes; ++k)
                            if (hw(r, k) != hw(j, k) - n * alg.cij(k, i)) return false;
                }
        return true;
    }
};

/// (n+1)-dimensional irreducible with basis f^{(k)} v_0 and q-binomial divided-power entries.
inline ModuleRep sl2_irrep(int n, int cap = 6) {
    if (n < 0) throw std::domain_error("sl2_irrep: negative highest weight");
    ModuleRep m;
    m.alg = AlgebraData::sl2();
    m.cap = cap;
    for (int k = 0; k <= n; ++k) m.hweights.push_back({n - 2 * k});
    m.e_ops.assign(1, std::vector<SparseMat>());
    m.f_ops.assign(1, std::vector<SparseMat>());
    for (int p = 1; p <= cap; ++p) {
        SparseMat E(n + 1), F(n + 1);
        for (int k = 0; k <= n; ++k) {
            if (k - p >= 0) E.set(k - p, k, qbinom(n - k + p, p));
            if (k + p <= n) F.set(k + p, k, qbinom(k + p, p));
        }
        m.e_ops[0].push_back(E);
        m.f_ops[0].push_back(F);
    }
    return m;
}

/// One-dimensional trivial module.
inline ModuleRep trivial_module(const AlgebraData& alg, int cap = 6) {
    ModuleRep m;
    m.alg = alg;
    m.cap = cap;
    m.hweights.push_back(std::vector<int>(static_cast<size_t>(alg.nodes), 0));
    m.e_ops.assign(static_cast<size_t>(alg.nodes), std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(1)));
    m.f_ops.assign(static_cast<size_t>(alg.nodes), std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(1)));
    return m;
}

/**
 * Tensor product with the action matrices built from the coproduct
 *   e^{(m)} -> sum_k q_i^{k(m-k)} e^{(k)} (x) t_i^{-k} e^{(m-k)},
 *   f^{(m)} -> sum_k q_i^{k(m-k)} t_i^{m-k} f^{(k)} (x) f^{(m-k)}.
 * Basis index of (b1, b2) is b1 * dim2 + b2.
 */
inline ModuleRep tensor(const ModuleRep& m1, const ModuleRep& m2) {
    if (m1.alg.name != m2.alg.name) throw std::domain_error("tensor: mismatched algebras");
    ModuleRep m;
    m.alg = m1.alg;
    m.cap = std::min(m1.cap, m2.cap);
    const int d1 = m1.dim(), d2 = m2.dim();
    for (int b1 = 0; b1 < d1; ++b1)
        for (int b2 = 0; b2 < d2; ++b2) {
            std::vector<int> h(static_cast<size_t>(m.alg.nodes));
            for (int i = 0; i < m.alg.nodes; ++i) h[static_cast<size_t>(i)] = m1.hw(b1, i) + m2.hw(b2, i);
            m.hweights.push_back(std::move(h));
        }
    m.e_ops.assign(static_cast<size_t>(m.alg.nodes), std::vector<SparseMat>());
    m.f_ops.assign(static_cast<size_t>(m.alg.nodes), std::vector<SparseMat>());
    for (int i = 0; i < m.alg.nodes; ++i) {
        const int np = m.alg.node_power[static_cast<size_t>(i)];
        for (int n = 1; n <= m.cap; ++n) {
            SparseMat E(d1 * d2), F(d1 * d2);
            for (int b1 = 0; b1 < d1; ++b1)
                for (int b2 = 0; b2 < d2; ++b2) {
                    const int src = b1 * d2 + b2;
                    for (int k = 0; k <= n; ++k) {
                        // e-part
                        {
                            const SparseVec& u1 = (k == 0) ? SparseVec::unit(b1) : m1.e(i, k).col(b1);
                            const SparseVec& u2 = (n - k == 0) ? SparseVec::unit(b2) : m2.e(i, n - k).col(b2);
                            for (const auto& [r1, v1] : u1.e)
                                for (const auto& [r2, v2] : u2.e) {
                                    QRat coef = v1 * v2 *
                                                QRat::qs_power(np * (k * (n - k) - k * m2.hw(r2, i)));
                                    if (!coef.is_zero())
                                        E.col(src).add_scaled(SparseVec::unit(r1 * d2 + r2), coef);
                                }
                        }
                        // f-part
                        {
                            const SparseVec& u1 = (k == 0) ? SparseVec::unit(b1) : m1.f(i, k).col(b1);
                            const SparseVec& u2 = (n - k == 0) ? SparseVec::unit(b2) : m2.f(i, n - k).col(b2);
                            for (const auto& [r1, v1] : u1.e)
                                for (const auto& [r2, v2] : u2.e) {
                                    QRat coef = v1 * v2 *
                                                QRat::qs_power(np * (k * (n - k) + (n - k) * m1.hw(r1, i)));
                                    if (!coef.is_zero())
                                        F.col(src).add_scaled(SparseVec::unit(r1 * d2 + r2), coef);
                                }
                        }
                    }
                }
            m.e_ops[static_cast<size_t>(i)].push_back(std::move(E));
            m.f_ops[static_cast<size_t>(i)].push_back(std::move(F));
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// cyclic hulls and restriction
// ---------------------------------------------------------------------------

struct GenStep {
    bool lowering;  // true: f, false: e
    int node;
};

struct Hull {
    std::vector<SparseVec> basis;             // vectors in the ambient module
    std::vector<std::vector<GenStep>> words;  // generator word producing each basis vector (applied left to right)
    SpanSolver solver;
};

/// Breadth-first cyclic hull of v0 under the chosen single-power generators.
inline Hull cyclic_hull(const ModuleRep& amb, const SparseVec& v0, bool use_e, bool use_f, int max_dim = 4096) {
    Hull h;
    if (!h.solver.add(v0, 0)) throw std::domain_error("cyclic_hull: zero start vector");
    h.basis.push_back(v0);
    h.words.push_back({});
    size_t head = 0;
    while (head < h.basis.size()) {
        SparseVec cur = h.basis[head];
        std::vector<GenStep> word = h.words[head];
        ++head;
        for (int i = 0; i < amb.alg.nodes; ++i) {
            for (int pass = 0; pass < 2; ++pass) {
                bool lowering = pass == 1;
                if (lowering && !use_f) continue;
                if (!lowering && !use_e) continue;
                SparseVec img = lowering ? amb.f(i, 1).apply(cur) : amb.e(i, 1).apply(cur);
                if (img.is_zero()) continue;
                if (h.solver.add(img, static_cast<int>(h.basis.size()))) {
                    h.basis.push_back(img);
                    std::vector<GenStep> w = word;
                    w.push_back(GenStep{lowering, i});
                    h.words.push_back(std::move(w));
                    if (static_cast<int>(h.basis.size()) > max_dim) throw std::domain_error("cyclic_hull: dimension cap exceeded");
                }
            }
        }
    }
    return h;
}

/// Restrict the ambient action to the span of a hull (must be invariant).
inline ModuleRep restrict_to_hull(const ModuleRep& amb, const Hull& h) {
    ModuleRep m;
    m.alg = amb.alg;
    m.cap = amb.cap;
    const int d = static_cast<int>(h.basis.size());
    for (const SparseVec& b : h.basis) {
        int amb_index = b.e.begin()->first;
        std::vector<int> hwv(static_cast<size_t>(amb.alg.nodes));
        for (int i = 0; i < amb.alg.nodes; ++i) hwv[static_cast<size_t>(i)] = amb.hw(amb_index, i);
        m.hweights.push_back(std::move(hwv));
    }
    m.e_ops.assign(static_cast<size_t>(amb.alg.nodes), std::vector<SparseMat>());
    m.f_ops.assign(static_cast<size_t>(amb.alg.nodes), std::vector<SparseMat>());
    for (int i = 0; i < amb.alg.nodes; ++i)
        for (int n = 1; n <= amb.cap; ++n) {
            SparseMat E(d), F(d);
            for (int j = 0; j < d; ++j) {
                auto ce = h.solver.solve(amb.e(i, n).apply(h.basis[static_cast<size_t>(j)]));
                auto cf = h.solver.solve(amb.f(i, n).apply(h.basis[static_cast<size_t>(j)]));
                if (!ce || !cf) throw std::domain_error("restrict_to_hull: span is not invariant");
                for (const auto& [k, v] : *ce) E.set(k, j, v);
                for (const auto& [k, v] : *cf) F.set(k, j, v);
            }
            m.e_ops[static_cast<size_t>(i)].push_back(std::move(E));
            m.f_ops[static_cast<size_t>(i)].push_back(std::move(F));
        }
    return m;
}

enum class Rank2 { A2, C2 };

namespace detail {

/// 3-dimensional vector module of A2.
inline ModuleRep a2_seed(int cap) {
    ModuleRep m;
    m.alg = AlgebraData::a2();
    m.cap = cap;
    m.hweights = {{1, 0}, {-1, 1}, {0, -1}};
    m.e_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(3)));
    m.f_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(3)));
    m.e_ops[0][0].set(0, 1, QRat(1));
    m.f_ops[0][0].set(1, 0, QRat(1));
    m.e_ops[1][0].set(1, 2, QRat(1));
    m.f_ops[1][0].set(2, 1, QRat(1));
    return m;
}

/// 4-dimensional vector module of C2 (node 0 short).
inline ModuleRep c2_seed(int cap) {
    ModuleRep m;
    m.alg = AlgebraData::c2();
    m.cap = cap;
    m.hweights = {{1, 0}, {-1, 1}, {1, -1}, {-1, 0}};
    m.e_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(4)));
    m.f_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(4)));
    m.e_ops[0][0].set(0, 1, QRat(1));
    m.e_ops[0][0].set(2, 3, QRat(1));
    m.f_ops[0][0].set(1, 0, QRat(1));
    m.f_ops[0][0].set(3, 2, QRat(1));
    m.e_ops[1][0].set(1, 2, QRat(1));
    m.f_ops[1][0].set(2, 1, QRat(1));
    return m;
}

/// Weyl dimension for the rank-2 data used here.
inline long rank2_weyl_dim(Rank2 tag, int m1, int m2) {
    long a = m1, b = m2;
    if (tag == Rank2::A2) return (a + 1) * (b + 1) * (a + b + 2) / 2;
    return (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) / 6;
}

/// Highest-weight vector of the given weight inside a module (kernel of all e_i).
inline SparseVec find_highest_vector(const ModuleRep& m, const std::vector<int>& hw_target) {
    std::vector<int> slice;
    for (int b = 0; b < m.dim(); ++b) {
        bool match = true;
        for (int i = 0; i < m.alg.nodes; ++i) match = match && m.hw(b, i) == hw_target[static_cast<size_t>(i)];
        if (match) slice.push_back(b);
    }
    // assemble the e-constraint columns over the slice, rows indexed by (node, image index)
    int row_id = 0;
    std::map<std::pair<int, int>, int> row_index;
    std::vector<SparseVec> cols(slice.size());
    for (int bidx = 0; bidx < static_cast<int>(slice.size()); ++bidx) {
        int b = slice[static_cast<size_t>(bidx)];
        for (int i = 0; i < m.alg.nodes; ++i)
            for (const auto& [r, v] : m.e(i, 1).col(b).e) {
                auto key = std::make_pair(i, r);
                if (!row_index.count(key)) row_index[key] = row_id++;
                cols[static_cast<size_t>(bidx)].set(row_index[key], v);
            }
    }
    // a dependent column yields a kernel combination
    SpanSolver ech;
    for (int bidx = 0; bidx < static_cast<int>(slice.size()); ++bidx) {
        if (!ech.add(cols[static_cast<size_t>(bidx)], bidx)) {
            auto coeffs = ech.solve(cols[static_cast<size_t>(bidx)]);
            SparseVec v = SparseVec::unit(slice[static_cast<size_t>(bidx)]);
            if (coeffs)
                for (const auto& [k, c] : *coeffs) v.add_scaled(SparseVec::unit(slice[static_cast<size_t>(k)]), -c);
            return v;
        }
    }
    throw std::domain_error("find_highest_vector: no highest-weight vector in the slice");
}

}  // namespace detail

/**
 * Irreducible rank-2 module with highest weight m1 varpi_1 + m2 varpi_2,
 * realized as the cyclic hull of a highest vector inside tensor powers of
 * the vector module; the dimension is cross-checked against the Weyl
 * formula and capped at 200.
 */
inline ModuleRep rank2_module(Rank2 tag, int m1, int m2, int cap = 6) {
    if (m1 < 0 || m2 < 0) throw std::domain_error("rank2_module: weight must be dominant");
    long expected = detail::rank2_weyl_dim(tag, m1, m2);
    if (expected > 200) throw std::domain_error("rank2_module: dimension cap exceeded");
    ModuleRep seed = (tag == Rank2::A2) ? detail::a2_seed(cap) : detail::c2_seed(cap);

    // the second fundamental module as a hull inside seed (x) seed
    ModuleRep fund2;
    {
        ModuleRep square = tensor(seed, seed);
        SparseVec top = detail::find_highest_vector(square, {0, 1});
        Hull h = cyclic_hull(square, top, false, true);
        fund2 = restrict_to_hull(square, h);
    }

    ModuleRep amb = trivial_module(seed.alg, cap);
    for (int k = 0; k < m1; ++k) amb = tensor(amb, seed);
    for (int k = 0; k < m2; ++k) amb = tensor(amb, fund2);
    SparseVec top = SparseVec::unit(0);  // product of the factor highest vectors
    Hull h = cyclic_hull(amb, top, false, true, 2048);
    ModuleRep out = restrict_to_hull(amb, h);
    if (out.dim() != expected) throw std::domain_error("rank2_module: hull dimension disagrees with the Weyl formula");
    return out;
}

// ---------------------------------------------------------------------------
// commutation identities
// ---------------------------------------------------------------------------

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg) {
        ok = false;
        if (failures.size() < 16) failures.push_back(msg);
    }
};

/**
 * Checks on one module: the two-node divided-power relation (via the
 * r,s,t-sum with q-binomial coefficients) for all adjacent pairs with
 * c_ij = c_ji = -1; the e/f straightening pair on every basis vector; mixed
 * commuting for i != j; the kernel form of the Serre-derived vanishing; and
 * e_i^{(m)} e_i^{(n)} = [m+n over n]_i e_i^{(m+n)}.
 */
inline CheckReport verify_commutations(const ModuleRep& m, int bound = 3, int ef_bound = 4) {
    CheckReport rep;
    const AlgebraData& A = m.alg;
    // divided-power consistency
    for (int i = 0; i < A.nodes; ++i)
        for (int a = 1; a <= m.cap; ++a)
            for (int b = 1; a + b <= m.cap; ++b) {
                if (m.e(i, a) * m.e(i, b) != m.e(i, a + b).scaled(qbinom(a + b, b, A.node_power[static_cast<size_t>(i)])))
                    rep.fail("divided-power product rule fails at node " + std::to_string(i));
                if (m.f(i, a) * m.f(i, b) != m.f(i, a + b).scaled(qbinom(a + b, b, A.node_power[static_cast<size_t>(i)])))
                    rep.fail("divided-power product rule (f) fails at node " + std::to_string(i));
            }
    // rank-2 simply-laced braid-type relation
    for (int i = 0; i < A.nodes; ++i)
        for (int j = 0; j < A.nodes; ++j) {
            if (i == j || A.cij(i, j) != -1 || A.cij(j, i) != -1) continue;
            int np = A.node_power[static_cast<size_t>(i)];
            for (int r = 0; r <= bound; ++r)
                for (int s = 0; s <= bound; ++s)
                    for (int t = 0; t <= bound; ++t) {
                        if (r + t < s) continue;
                        if (std::max({r, s, t, r + t}) > m.cap) continue;
                        SparseMat lhs = m.apply3(i, r, j, s, i, t);
                        SparseMat rhs(m.dim());
                        for (int k = 0; k <= r - s + t; ++k) {
                            if (t - k < 0 || s - t + k < 0) continue;
                            SparseMat term = m.apply3(j, t - k, i, r + t, j, s - t + k);
                            rhs = rhs + term.scaled(qbinom(r - s + t, k, np));
                        }
                        if (lhs != rhs)
                            rep.fail("two-node relation fails at (i,j,r,s,t)=(" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(r) + "," + std::to_string(s) + "," +
                                     std::to_string(t) + ")");
                    }
        }
    // e/f straightening on weight vectors
    for (int i = 0; i < A.nodes; ++i) {
        int np = A.node_power[static_cast<size_t>(i)];
        for (int r = 0; r <= ef_bound && r <= m.cap; ++r)
            for (int s = 0; s <= ef_bound && s <= m.cap; ++s)
                for (int b = 0; b < m.dim(); ++b) {
                    SparseVec v = SparseVec::unit(b);
                    int h = m.hw(b, i);
                    SparseVec lhs = m.apply_e(i, r, m.apply_f(i, s, v));
                    SparseVec rhs;
                    for (int k = 0; k <= std::min(r, s); ++k)
                        rhs.add_scaled(m.apply_f(i, s - k, m.apply_e(i, r - k, v)), qbinom(r - s + h, k, np));
                    if (lhs != rhs) rep.fail("ef straightening fails at node " + std::to_string(i));
                    SparseVec lhs2 = m.apply_f(i, r, m.apply_e(i, s, v));
                    SparseVec rhs2;
                    for (int k = 0; k <= std::min(r, s); ++k)
                        rhs2.add_scaled(m.apply_e(i, s - k, m.apply_f(i, r - k, v)), qbinom(r - s - h, k, np));
                    if (lhs2 != rhs2) rep.fail("fe straightening fails at node " + std::to_string(i));
                }
    }
    // mixed-index commuting
    for (int i = 0; i < A.nodes; ++i)
        for (int j = 0; j < A.nodes; ++j) {
            if (i == j) continue;
            for (int r = 1; r <= std::min(bound, m.cap); ++r)
                for (int s = 1; s <= std::min(bound, m.cap); ++s)
                    if (m.e(i, r) * m.f(j, s) != m.f(j, s) * m.e(i, r))
                        rep.fail("mixed commuting fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    // Serre-derived vanishing on top-of-string vectors
    for (int i = 0; i < A.nodes; ++i)
        for (int j = 0; j < A.nodes; ++j) {
            if (i == j) continue;
            for (int b = 0; b < m.dim(); ++b) {
                if (!m.e(i, 1).col(b).is_zero()) continue;
                for (int r = 1; r <= std::min(bound, m.cap); ++r)
                    for (int s = 0; s <= std::min(bound, m.cap); ++s) {
                        if (r + A.cij(i, j) * s <= 0) continue;
                        SparseVec w = m.apply_e(i, r, m.apply_e(j, s, SparseVec::unit(b)));
                        if (!w.is_zero()) rep.fail("Serre-derived vanishing fails at nodes (" + std::to_string(i) +
                                                   "," + std::to_string(j) + ")");
                    }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// admissible pairings
// ---------------------------------------------------------------------------

/**
 * Checks the three adjunction equations of an admissible pairing
 * G: M x N -> Q(q_s) as matrix identities for m = 1..m_max:
 *   (q^h u, v) = (u, q^h v),
 *   (e_i^{(m)} u, v) = (u, q_i^{-m^2} t_i^{-m} f_i^{(m)} v),
 *   (f_i^{(m)} u, v) = (u, q_i^{-m^2} t_i^{m} e_i^{(m)} v).
 */
inline CheckReport check_admissible_pair(const ModuleRep& M, const ModuleRep& N, const SparseMat& G, int m_max = 3) {
    CheckReport rep;
    // weight compatibility: G_{ab} = 0 unless wt_M(a) = wt_N(b)
    for (int b = 0; b < N.dim(); ++b)
        for (const auto& [a, v] : G.col(b).e)
            for (int i = 0; i < M.alg.nodes; ++i)
                if (M.hw(a, i) != N.hw(b, i)) rep.fail("pairing couples different weights");
    for (int i = 0; i < M.alg.nodes; ++i) {
        int np = M.alg.node_power[static_cast<size_t>(i)];
        for (int mm = 1; mm <= std::min(m_max, std::min(M.cap, N.cap)); ++mm) {
            QRat q_factor = QRat::qs_power(-np * mm * mm);
            SparseMat lhs_e = M.e(i, mm).transpose() * G;
            SparseMat rhs_e = G * (N.t_pow(i, -mm) * N.f(i, mm)).scaled(q_factor);
            if (lhs_e != rhs_e) rep.fail("e-adjunction fails at node " + std::to_string(i) + ", m=" + std::to_string(mm));
            SparseMat lhs_f = M.f(i, mm).transpose() * G;
            SparseMat rhs_f = G * (N.t_pow(i, mm) * N.e(i, mm)).scaled(q_factor);
            if (lhs_f != rhs_f) rep.fail("f-adjunction fails at node " + std::to_string(i) + ", m=" + std::to_string(mm));
        }
    }
    return rep;
}

inline CheckReport check_prepolarization(const ModuleRep& M, const SparseMat& G, int m_max = 3) {
    CheckReport rep = check_admissible_pair(M, M, G, m_max);
    if (G != G.transpose()) rep.fail("form is not symmetric");
    return rep;
}

/**
 * The unique admissible symmetric form with ||v_0||^2 = 1 on a module that
 * is cyclic over its highest vector (basis vector 0, with one-dimensional
 * top weight space), computed by transposing each generating word across
 * the pairing and expressed in the module's own basis.
 */
inline SparseMat shapovalov(const ModuleRep& M) {
    const int d = M.dim();
    int top_count = 0;
    for (int b = 0; b < d; ++b) {
        bool same = true;
        for (int i = 0; i < M.alg.nodes; ++i) same = same && M.hw(b, i) == M.hw(0, i);
        if (same) ++top_count;
    }
    if (top_count != 1) throw std::domain_error("shapovalov: top weight space is not one-dimensional");
    for (int i = 0; i < M.alg.nodes; ++i)
        if (!M.e(i, 1).col(0).is_zero()) throw std::domain_error("shapovalov: basis vector 0 is not highest");
    Hull h = cyclic_hull(M, SparseVec::unit(0), false, true);
    if (static_cast<int>(h.basis.size()) != d) throw std::domain_error("shapovalov: module is not cyclic over v_0");

    // (X_a v_0, e_b) by transposing the word of X_a; sigma(f_i) = q_i^{-1} t_i e_i
    SparseMat pairings(d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            SparseVec z = SparseVec::unit(b);
            const std::vector<GenStep>& word = h.words[static_cast<size_t>(a)];
            for (auto it = word.rbegin(); it != word.rend() && !z.is_zero(); ++it) {
                int i = it->node;
                int np = M.alg.node_power[static_cast<size_t>(i)];
                if (it->lowering)
                    z = M.t_pow(i, 1).apply(M.e(i, 1).apply(z)).scaled(QRat::qs_power(-np));
                else
                    z = M.t_pow(i, -1).apply(M.f(i, 1).apply(z)).scaled(QRat::qs_power(-np));
            }
            QRat val = z.at(0);
            if (!val.is_zero()) pairings.set(a, b, val);
        }
    }
    // pairings = P^T G with P the matrix of hull vectors; recover G in module coordinates
    SparseMat P(d);
    for (int a = 0; a < d; ++a) P.col(a) = h.basis[static_cast<size_t>(a)];
    return P.inverse().transpose() * pairings;
}

/// Kronecker product of forms; admissible whenever the factors are.
inline SparseMat tensor_form(const SparseMat& g1, int dim2, const SparseMat& g2) {
    SparseMat g(g1.dim() * dim2);
    for (int j1 = 0; j1 < g1.dim(); ++j1)
        for (const auto& [i1, v1] : g1.col(j1).e)
            for (int j2 = 0; j2 < dim2; ++j2)
                for (const auto& [i2, v2] : g2.col(j2).e) g.set(i1 * dim2 + i2, j1 * dim2 + j2, v1 * v2);
    return g;
}

// ---------------------------------------------------------------------------
// Kashiwara operators
// ---------------------------------------------------------------------------

/**
 * String decomposition along node i: a basis of ker e_i refined by weight,
 * with every module vector expressed as sum of f_i^{(n)} u for string tops u.
 */
class StringDecomposition {
public:
    StringDecomposition(const ModuleRep& m, int node) : m_(&m), node_(node) {
        const int d = m.dim();
        // kernel of e_i, per weight slice
        std::map<std::vector<int>, std::vector<int>> slices;
        for (int b = 0; b < d; ++b) slices[m.hweights[static_cast<size_t>(b)]].push_back(b);
        for (const auto& [w, slice] : slices) {
            SpanSolver ech;
            std::vector<SparseVec> cols;
            for (size_t k = 0; k < slice.size(); ++k) cols.push_back(m.e(node, 1).col(slice[k]));
            for (size_t k = 0; k < slice.size(); ++k) {
                if (!ech.add(cols[k], static_cast<int>(k))) {
                    auto coeffs = ech.solve(cols[k]);
                    SparseVec u = SparseVec::unit(slice[k]);
                    if (coeffs)
                        for (const auto& [t, c] : *coeffs) u.add_scaled(SparseVec::unit(slice[static_cast<size_t>(t)]), -c);
                    tops_.push_back(u);
                }
            }
        }
        // assemble the full string basis f^{(n)} u
        for (size_t t = 0; t < tops_.size(); ++t) {
            int amb = tops_[t].e.begin()->first;
            int len = m.hw(amb, node);
            if (len < 0) throw std::domain_error("string top with negative pairing");
            for (int n = 0; n <= len; ++n) {
                SparseVec v = m.apply_f(node, n, tops_[t]);
                if (v.is_zero()) throw std::domain_error("string shorter than its weight pairing");
                int id = static_cast<int>(members_.size());
                if (!solver_.add(v, id)) throw std::domain_error("string basis is dependent");
                members_.push_back(Member{static_cast<int>(t), n});
            }
        }
        if (static_cast<int>(members_.size()) != d) throw std::domain_error("string basis does not span");
    }

    /// f~ (dir=+1) or e~ (dir=-1) applied through the string decomposition.
    SparseVec kashiwara(const SparseVec& v, int dir) const {
        auto coords = solver_.solve(v);
        if (!coords) throw std::domain_error("kashiwara: vector outside module span");
        SparseVec out;
        for (const auto& [id, c] : *coords) {
            const Member& mem = members_[static_cast<size_t>(id)];
            int n2 = mem.n + dir;
            if (n2 < 0) continue;
            int amb = tops_[static_cast<size_t>(mem.top)].e.begin()->first;
            if (n2 > m_->hw(amb, node_)) continue;
            out.add_scaled(m_->apply_f(node_, n2, tops_[static_cast<size_t>(mem.top)]), c);
        }
        return out;
    }

    const std::vector<SparseVec>& tops() const { return tops_; }

private:
    struct Member {
        int top;
        int n;
    };
    const ModuleRep* m_;
    int node_;
    std::vector<SparseVec> tops_;
    std::vector<Member> members_;
    SpanSolver solver_;
};

inline SparseVec kashiwara_f(const ModuleRep& m, int node, const SparseVec& v) {
    return StringDecomposition(m, node).kashiwara(v, +1);
}

inline SparseVec kashiwara_e(const ModuleRep& m, int node, const SparseVec& v) {
    return StringDecomposition(m, node).kashiwara(v, -1);
}

// ---------------------------------------------------------------------------
// braid operators on modules
// ---------------------------------------------------------------------------

/**
 * The module braid operator, built string-by-string from the bottom of each
 * i-string (f_i m = 0):
 *   T~(e_i^{(p)} m) = (-1)^p q_i^{p(-l_i - p + 1)} e_i^{(-l_i - p)} m,
 * extended by linearity.
 */
inline SparseMat braid_T(const ModuleRep& m, int node) {
    const int d = m.dim();
    // bottoms: kernel of f_i per weight slice
    std::map<std::vector<int>, std::vector<int>> slices;
    for (int b = 0; b < d; ++b) slices[m.hweights[static_cast<size_t>(b)]].push_back(b);
    std::vector<SparseVec> bottoms;
    for (const auto& [w, slice] : slices) {
        SpanSolver ech;
        std::vector<SparseVec> cols;
        for (size_t k = 0; k < slice.size(); ++k) cols.push_back(m.f(node, 1).col(slice[k]));
        for (size_t k = 0; k < slice.size(); ++k) {
            if (!ech.add(cols[k], static_cast<int>(k))) {
                auto coeffs = ech.solve(cols[k]);
                SparseVec u = SparseVec::unit(slice[k]);
                if (coeffs)
                    for (const auto& [t, c] : *coeffs) u.add_scaled(SparseVec::unit(slice[static_cast<size_t>(t)]), -c);
                bottoms.push_back(u);
            }
        }
    }
    SpanSolver solver;
    std::vector<SparseVec> string_vecs, images;
    for (const SparseVec& u : bottoms) {
        int amb = u.e.begin()->first;
        int li = m.hw(amb, node);  // <= 0 at a string bottom
        int np = m.alg.node_power[static_cast<size_t>(node)];
        for (int p = 0; p <= -li; ++p) {
            SparseVec v = m.apply_e(node, p, u);
            if (v.is_zero()) throw std::domain_error("braid_T: broken string");
            int id = static_cast<int>(string_vecs.size());
            if (!solver.add(v, id)) throw std::domain_error("braid_T: dependent string basis");
            string_vecs.push_back(v);
            SparseVec img = m.apply_e(node, -li - p, u).scaled(QRat::qs_power(np * p * (-li - p + 1)));
            if (p % 2 == 1) img = img.scaled(QRat(-1));
            images.push_back(img);
        }
    }
    if (static_cast<int>(string_vecs.size()) != d) throw std::domain_error("braid_T: string basis does not span");
    SparseMat T(d);
    for (int b = 0; b < d; ++b) {
        auto coords = solver.solve(SparseVec::unit(b));
        if (!coords) throw std::domain_error("braid_T: basis vector outside span");
        for (const auto& [id, c] : *coords) T.col(b).add_scaled(images[static_cast<size_t>(id)], c);
    }
    return T;
}

/// T_i(e_j) = e_i e_j - q_i^{-1} e_j e_i for c_ij = c_ji = -1, as a matrix.
inline SparseMat braid_on_ej(const ModuleRep& m, int i, int j) {
    int np = m.alg.node_power[static_cast<size_t>(i)];
    return m.e(i, 1) * m.e(j, 1) - (m.e(j, 1) * m.e(i, 1)).scaled(QRat::qs_power(-np));
}

/**
 * Module-level checks of the braid-operator identities: weight twisting,
 * the conjugation formula for T_i(e_j^{(p)}), the two mixed product
 * identities for an adjacent simply-laced pair, and the rank-2 braid
 * relation itself.
 */
inline CheckReport verify_braid(const ModuleRep& m, int pmax = 3) {
    CheckReport rep;
    const AlgebraData& A = m.alg;
    std::vector<SparseMat> T, Tinv;
    for (int i = 0; i < A.nodes; ++i) {
        T.push_back(braid_T(m, i));
        Tinv.push_back(T.back().inverse());
    }
    // (a) weight twisting: T_i maps the lambda slice to the s_i(lambda) slice
    for (int i = 0; i < A.nodes; ++i)
        for (int b = 0; b < m.dim(); ++b)
            for (const auto& [r, v] : T[static_cast<size_t>(i)].col(b).e)
                for (int k = 0; k < A.nodes; ++k) {
                    int expect = m.hw(b, k) - m.hw(b, i) * A.cij(k, i);
                    if (m.hw(r, k) != expect) rep.fail("braid operator does not twist weights by s_i");
                }
    // (b) conjugation formula for e_j^{(p)}
    for (int i = 0; i < A.nodes; ++i)
        for (int j = 0; j < A.nodes; ++j) {
            if (i == j) continue;
            int np = A.node_power[static_cast<size_t>(i)];
            for (int p = 1; p <= pmax && p <= m.cap; ++p) {
                if (-A.cij(i, j) * p > m.cap) continue;
                SparseMat lhs = T[static_cast<size_t>(i)] * m.e(j, p) * Tinv[static_cast<size_t>(i)];
                SparseMat rhs(m.dim());
                for (int k = 0; k <= -A.cij(i, j) * p; ++k) {
                    SparseMat term = m.e_mat(i, -A.cij(i, j) * p - k) * m.e(j, p) * m.e_mat(i, k);
                    QRat c = QRat::qs_power(-np * k);
                    if (k % 2 == 1) c = -c;
                    rhs = rhs + term.scaled(c);
                }
                if (lhs != rhs)
                    rep.fail("conjugation formula fails at (i,j,p)=(" + std::to_string(i) + "," + std::to_string(j) +
                             "," + std::to_string(p) + ")");
            }
        }
    // (e) and (c) for adjacent simply-laced pairs
    for (int i = 0; i < A.nodes; ++i)
        for (int j = 0; j < A.nodes; ++j) {
            if (i == j || A.cij(i, j) != -1 || A.cij(j, i) != -1) continue;
            int np = A.node_power[static_cast<size_t>(i)];
            SparseMat Tiej = braid_on_ej(m, i, j);
            for (int p = 1; p <= pmax && p <= m.cap; ++p) {
                SparseMat lhs = m.e(i, 1) * m.e(j, p);
                SparseMat rhs = m.e_mat(j, p - 1) * Tiej + (m.e(j, p) * m.e(i, 1)).scaled(QRat::qs_power(-np * p));
                if (lhs != rhs) rep.fail("product identity fails at p=" + std::to_string(p));
            }
            SparseMat ab = Tiej * m.e(j, 1);
            SparseMat ba = (m.e(j, 1) * Tiej).scaled(QRat::qs_power(np));
            if (ab != ba) rep.fail("q-commutation of T_i(e_j) with e_j fails");
            SparseMat b1 = T[static_cast<size_t>(i)] * T[static_cast<size_t>(j)] * T[static_cast<size_t>(i)];
            SparseMat b2 = T[static_cast<size_t>(j)] * T[static_cast<size_t>(i)] * T[static_cast<size_t>(j)];
            if (b1 != b2) rep.fail("braid relation fails");
        }
    return rep;
}

// ---------------------------------------------------------------------------
// rank-1 affine KR fixture
// ---------------------------------------------------------------------------

/**
 * Evaluation module of the two-dimensional fundamental module at parameter
 * a: e_0 acts by a times the f_1 matrix, f_0 by a^{-1} times the e_1 matrix.
 * (The evaluation-parameter convention is a choice; see the README.)
 */
inline ModuleRep a1_evaluation_module(const QRat& a, int cap = 6) {
    ModuleRep m;
    m.alg = AlgebraData::a1_affine();
    m.cap = cap;
    m.hweights = {{-1, 1}, {1, -1}};
    m.e_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(2)));
    m.f_ops.assign(2, std::vector<SparseMat>(static_cast<size_t>(cap), SparseMat(2)));
    m.e_ops[1][0].set(0, 1, QRat(1));
    m.f_ops[1][0].set(1, 0, QRat(1));
    m.e_ops[0][0].set(1, 0, a);
    m.f_ops[0][0].set(0, 1, QRat(1) / a);
    return m;
}

struct A1KRFixture {
    int ell = 0;
    ModuleRep module;       // W^{1,l} restricted to its cyclic basis
    SparseMat gram;         // prepolarization in that basis
    std::vector<SparseVec> string_basis;  // f_1^{(k)} w_l in module coordinates
    CheckReport factor_admissible;        // the 2-dim factor pairing
    CheckReport product_admissible;       // tensor pairing from the product rule
    CheckReport form_admissible;          // the form on W^{1,l}
    bool norm_one = false;                // ||w_l||^2 = 1
    bool symmetric = false;
    bool positive_definite = false;
    bool almost_orthonormal = false;      // (u_k, u_l) in delta_{kl} + q_s A
    bool hw_condition = false;            // ||e_1 u||^2 containment for the highest vector
};

/**
 * The rank-1 affine toy: the l-fold tensor of evaluation modules at
 * parameters q^{1-l}, q^{3-l}, ..., q^{l-1}, the cyclic submodule of the
 * ordered product of highest vectors, and the prepolarization obtained by
 * pairing against the reversed-parameter tensor product via the product
 * rule. All axioms are checked exactly.
 */
inline A1KRFixture a1_kr_fixture(int ell) {
    if (ell < 1 || ell > 6) throw std::domain_error("a1_kr_fixture: ell out of range");
    A1KRFixture fx;
    fx.ell = ell;
    int cap = std::max(6, ell + 1);

    // single-factor pairing W_a x W_{a^{-1}}: identity in the common basis
    {
        ModuleRep w_q = a1_evaluation_module(QRat::qs_power(2), cap);
        ModuleRep w_qinv = a1_evaluation_module(QRat::qs_power(-2), cap);
        fx.factor_admissible = check_admissible_pair(w_q, w_qinv, SparseMat::identity(2), 1);
    }

    ModuleRep N = a1_evaluation_module(QRat::qs_power(2 * 1 - 1 - ell), cap);
    ModuleRep M = a1_evaluation_module(QRat::qs_power(ell + 1 - 2 * 1), cap);
    for (int j = 2; j <= ell; ++j) {
        N = tensor(N, a1_evaluation_module(QRat::qs_power(2 * j - 1 - ell), cap));
        M = tensor(M, a1_evaluation_module(QRat::qs_power(ell + 1 - 2 * j), cap));
    }
    fx.product_admissible = check_admissible_pair(M, N, SparseMat::identity(N.dim()), std::min(3, cap));

    // cyclic submodule generated by w_l = (x) of highest vectors (index 0)
    Hull h = cyclic_hull(N, SparseVec::unit(0), true, true);
    fx.module = restrict_to_hull(N, h);
    const int d = fx.module.dim();

    // Gram entries: pair the same generator word applied on the M side
    std::vector<SparseVec> m_side;
    for (const std::vector<GenStep>& word : h.words) {
        SparseVec v = SparseVec::unit(0);
        for (const GenStep& g : word) v = g.lowering ? M.f(g.node, 1).apply(v) : M.e(g.node, 1).apply(v);
        m_side.push_back(v);
    }
    fx.gram = SparseMat(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            QRat val = m_side[static_cast<size_t>(a)].dot(h.basis[static_cast<size_t>(b)]);
            if (!val.is_zero()) fx.gram.set(a, b, val);
        }

    fx.norm_one = fx.gram.at(0, 0) == QRat(1);
    fx.symmetric = fx.gram == fx.gram.transpose();
    fx.form_admissible = check_prepolarization(fx.module, fx.gram, std::min(3, cap));

    fx.positive_definite = true;
    for (int k = 1; k <= d; ++k)
        if (!order_positive(fx.gram.leading_minor(k))) fx.positive_definite = false;

    // string basis f_1^{(k)} w_l, k = 0..l
    fx.almost_orthonormal = true;
    for (int k = 0; k <= ell; ++k) {
        SparseVec u = fx.module.apply_f(1, k, SparseVec::unit(0));
        if (u.is_zero()) throw std::domain_error("a1_kr_fixture: broken highest string");
        fx.string_basis.push_back(u);
    }
    for (size_t a = 0; a < fx.string_basis.size(); ++a)
        for (size_t b = 0; b < fx.string_basis.size(); ++b) {
            QRat val(0);
            for (const auto& [i, ci] : fx.string_basis[a].e)
                for (const auto& [j, cj] : fx.string_basis[b].e) val += ci * cj * fx.gram.at(i, j);
            QRat target = (a == b) ? QRat(1) : QRat(0);
            if (!(val - target).in_qs_pow_A(1)) fx.almost_orthonormal = false;
        }

    // highest-vector condition: ||e_1 w_l||^2 lies in q_1^{-2<h_1,wt>-2} q_s A (it vanishes)
    {
        SparseVec eu = fx.module.apply_e(1, 1, SparseVec::unit(0));
        QRat val(0);
        for (const auto& [i, ci] : eu.e)
            for (const auto& [j, cj] : eu.e) val += ci * cj * fx.gram.at(i, j);
        fx.hw_condition = val.is_zero() || val.in_qs_pow_A(-2 * ell - 2 + 1);
    }
    return fx;
}

}  // namespace krkit
