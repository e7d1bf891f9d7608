/**
 * @file cartan.hpp
 * @brief Affine Cartan/root/weight data for types E6(1), E7(1), E8(1), F4(1),
 *        E6(2) in the node labeling of the source diagrams (0 - 1 - 2 - ...,
 *        with 2 the near adjoint node), plus root enumeration for the
 *        classical subalgebra and the distinguished weights gamma_1, gamma_2.
 *
 * Conventions: the bilinear form is normalized by (alpha_0, alpha_0) = 2;
 * q_i = q_s^{node_power(i)} with q_s = q^{1/D}. Weight-lattice elements are
 * stored in fundamental-weight coordinates; P_cl drops the delta coefficient
 * and P_0 consists of the level-zero classes spanned by the varpi_i.
 *
 * A translation table to the Bourbaki/Kac labelings is in the repository
 * documentation; all formulas here assume the labeling above.
 */
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "qrat.hpp"

namespace krkit {

enum class TypeTag { E6a1, E7a1, E8a1, F4a1, E6a2 };

inline const std::array<TypeTag, 5>& all_types() {
    static const std::array<TypeTag, 5> t = {TypeTag::E6a1, TypeTag::E7a1, TypeTag::E8a1,
                                             TypeTag::F4a1, TypeTag::E6a2};
    return t;
}

inline std::string type_name(TypeTag t) {
    switch (t) {
        case TypeTag::E6a1: return "E6a1";
        case TypeTag::E7a1: return "E7a1";
        case TypeTag::E8a1: return "E8a1";
        case TypeTag::F4a1: return "F4a1";
        case TypeTag::E6a2: return "E6a2";
    }
    throw std::domain_error("unknown type tag");
}

inline TypeTag type_from_name(const std::string& s) {
    for (TypeTag t : all_types())
        if (type_name(t) == s) return t;
    throw std::domain_error("unknown type tag: " + s);
}

enum class Lattice { P, Pcl, P0 };

/**
 * A weight, stored in fundamental-weight coordinates over I = {0..n}.
 * P carries an explicit delta coefficient; P_cl drops it; P_0 elements are
 * the level-zero P_cl classes (coordinates over varpi_i are lambda[i], i >= 1).
 */
struct Weight {
    Lattice lat = Lattice::Pcl;
    std::vector<int> lambda;  // Lambda_i coordinates, size n+1
    int delta = 0;            // meaningful only for lat == P

    friend bool operator==(const Weight& a, const Weight& b) {
        return a.lat == b.lat && a.lambda == b.lambda && (a.lat != Lattice::P || a.delta == b.delta);
    }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
};

/// A root, in simple-root coordinates over I = {0..n}; classical roots have coordinate 0 at node 0.
struct Root {
    std::vector<int> alpha;

    bool is_classical() const { return alpha.empty() || alpha[0] == 0; }
    friend bool operator==(const Root& a, const Root& b) { return a.alpha == b.alpha; }
    friend bool operator!=(const Root& a, const Root& b) { return !(a == b); }
    bool operator<(const Root& o) const { return alpha < o.alpha; }

    int height() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
};

inline Weight add(const Weight& a, const Weight& b) {
    if (a.lat != b.lat || a.lambda.size() != b.lambda.size())
        throw std::domain_error("Weight::add: lattice mismatch");
    Weight r = a;
    for (size_t i = 0; i < r.lambda.size(); ++i) r.lambda[i] += b.lambda[i];
    r.delta += b.delta;
    return r;
}

inline Weight sub(const Weight& a, const Weight& b) {
    if (a.lat != b.lat || a.lambda.size() != b.lambda.size())
        throw std::domain_error("Weight::sub: lattice mismatch");
    Weight r = a;
    for (size_t i = 0; i < r.lambda.size(); ++i) r.lambda[i] -= b.lambda[i];
    r.delta -= b.delta;
    return r;
}

inline Weight scale(int c, const Weight& a) {
    Weight r = a;
    for (int& x : r.lambda) x *= c;
    r.delta *= c;
    return r;
}

inline Root add(const Root& a, const Root& b) {
    if (a.alpha.size() != b.alpha.size()) throw std::domain_error("Root::add: rank mismatch");
    Root r = a;
    for (size_t i = 0; i < r.alpha.size(); ++i) r.alpha[i] += b.alpha[i];
    return r;
}

inline Root sub(const Root& a, const Root& b) {
    if (a.alpha.size() != b.alpha.size()) throw std::domain_error("Root::sub: rank mismatch");
    Root r = a;
    for (size_t i = 0; i < r.alpha.size(); ++i) r.alpha[i] -= b.alpha[i];
    return r;
}

class CartanData {
public:
    TypeTag tag;
    int n = 0;                            // rank of g_0; I = {0..n}
    std::vector<std::vector<int>> c;      // Cartan matrix c_{ij} over I
    std::vector<int> node_power;          // q_i = q_s^{node_power[i]}
    int D = 1;                            // q_s = q^{1/D}
    int c_g = 1;                          // 2 for F4(1), else 1
    std::vector<int> marks;               // delta = sum marks[i] alpha_i
    std::vector<int> dual_marks;          // K = sum dual_marks[i] h_i
    std::vector<int> J;                   // shaded nodes of the diagram
    std::vector<int> I0;                  // {1..n}
    std::vector<int> I01;                 // I0 minus {1}

    static const CartanData& get(TypeTag tag);

    int size() const { return n + 1; }
    int cij(int i, int j) const { return c[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    /// d_i = (alpha_i, alpha_i)/2, normalized so that d_0 = 1.
    Rational d(int i) const {
        Rational r(node_power[static_cast<size_t>(i)], D);
        r.canonicalize();
        return r;
    }

    Root simple_root(int i) const {
        Root r;
        r.alpha.assign(static_cast<size_t>(n + 1), 0);
        r.alpha[static_cast<size_t>(i)] = 1;
        return r;
    }

    Root zero_root() const {
        Root r;
        r.alpha.assign(static_cast<size_t>(n + 1), 0);
        return r;
    }

    /// (alpha, beta) for roots in simple-root coordinates.
    Rational bilinear(const Root& a, const Root& b) const {
        Rational s = 0;
        for (int i = 0; i <= n; ++i) {
            if (a.alpha[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j <= n; ++j)
                if (b.alpha[static_cast<size_t>(j)] != 0)
                    s += d(i) * Rational(cij(i, j)) * Rational(a.alpha[static_cast<size_t>(i)] * b.alpha[static_cast<size_t>(j)]);
        }
        return s;
    }

    /// <h_i, alpha> for a root.
    int pairing_h(int i, const Root& a) const {
        int s = 0;
        for (int j = 0; j <= n; ++j) s += cij(i, j) * a.alpha[static_cast<size_t>(j)];
        return s;
    }

    /// <h_i, lambda> for a weight (delta pairs to zero).
    int pairing_h(int i, const Weight& w) const { return w.lambda[static_cast<size_t>(i)]; }

    /// <K, lambda> (the level).
    int pairing_K(const Weight& w) const {
        int s = 0;
        for (int i = 0; i <= n; ++i) s += dual_marks[static_cast<size_t>(i)] * w.lambda[static_cast<size_t>(i)];
        return s;
    }

    /// <h_alpha, lambda> for the coroot of a classical root alpha.
    Rational pairing_coroot(const Root& alpha, const Weight& w) const {
        Rational nn = bilinear(alpha, alpha);
        if (nn == 0) throw std::domain_error("pairing_coroot: isotropic vector");
        Rational s = 0;
        for (int i = 0; i <= n; ++i)
            if (alpha.alpha[static_cast<size_t>(i)] != 0)
                s += Rational(alpha.alpha[static_cast<size_t>(i)]) * d(i) * Rational(pairing_h(i, w));
        return s * 2 / nn;
    }

    Rational pairing_coroot(const Root& alpha, const Root& beta) const {
        Rational nn = bilinear(alpha, alpha);
        if (nn == 0) throw std::domain_error("pairing_coroot: isotropic vector");
        return bilinear(alpha, beta) * 2 / nn;
    }

    /// <Lambda_i^vee, beta>: the coefficient of alpha_i.
    int pairing_fundamental_coweight(int i, const Root& beta) const { return beta.alpha[static_cast<size_t>(i)]; }

    // ---- weight constructors ----

    Weight weight_P(std::vector<int> lambda_coords, int delta_coeff) const {
        check_size(lambda_coords);
        return Weight{Lattice::P, std::move(lambda_coords), delta_coeff};
    }

    Weight weight_Pcl(std::vector<int> lambda_coords) const {
        check_size(lambda_coords);
        return Weight{Lattice::Pcl, std::move(lambda_coords), 0};
    }

    /// Element of P_0 from varpi-coordinates (index 0 of the argument is ignored).
    Weight weight_P0(const std::vector<int>& varpi_coords) const {
        std::vector<int> lam(static_cast<size_t>(n + 1), 0);
        int lvl = 0;
        for (int i = 1; i <= n; ++i) {
            lam[static_cast<size_t>(i)] = varpi_coords[static_cast<size_t>(i)];
            lvl += varpi_coords[static_cast<size_t>(i)] * dual_marks[static_cast<size_t>(i)];
        }
        lam[0] = -lvl;
        return Weight{Lattice::P0, std::move(lam), 0};
    }

    /// varpi_i as an element of P_0.
    Weight varpi(int i) const {
        std::vector<int> v(static_cast<size_t>(n + 1), 0);
        v[static_cast<size_t>(i)] = 1;
        return weight_P0(v);
    }

    Weight zero_P0() const { return weight_P0(std::vector<int>(static_cast<size_t>(n + 1), 0)); }

    /// varpi_i coordinate of a level-zero weight.
    int varpi_coord(const Weight& w, int i) const { return w.lambda[static_cast<size_t>(i)]; }

    Weight as_Pcl(const Weight& w) const { return Weight{Lattice::Pcl, w.lambda, 0}; }

    /// cl of a root expressed in P_cl (level-zero) coordinates; classical roots land in P_0.
    Weight cl_root(const Root& r) const {
        std::vector<int> lam(static_cast<size_t>(n + 1), 0);
        for (int i = 0; i <= n; ++i) {
            int s = 0;
            for (int j = 0; j <= n; ++j) s += cij(i, j) * r.alpha[static_cast<size_t>(j)];
            lam[static_cast<size_t>(i)] = s;
        }
        return Weight{r.is_classical() ? Lattice::P0 : Lattice::Pcl, std::move(lam), 0};
    }

    bool dominant_P0(const Weight& w) const {
        for (int i = 1; i <= n; ++i)
            if (w.lambda[static_cast<size_t>(i)] < 0) return false;
        return true;
    }

    // ---- root enumeration ----

    /**
     * Positive roots of the subsystem R_L generated by the simple roots in
     * L, by breadth-first closure along root strings.
     */
    std::vector<Root> positive_roots(const std::vector<int>& L) const {
        if (L.empty()) throw std::domain_error("positive_roots: empty node set");
        for (int l : L)
            if (l < 1 || l > n) throw std::domain_error("positive_roots: node outside I0");
        std::vector<Root> roots;
        std::map<std::vector<int>, bool> seen;
        std::vector<Root> layer;
        for (int l : L) {
            Root r = simple_root(l);
            roots.push_back(r);
            seen[r.alpha] = true;
            layer.push_back(r);
        }
        while (!layer.empty()) {
            std::vector<Root> next;
            for (const Root& beta : layer) {
                for (int i : L) {
                    Root ai = simple_root(i);
                    // depth of the alpha_i-string below beta
                    int p = 0;
                    Root down = sub(beta, ai);
                    while (seen.count(down.alpha)) {
                        ++p;
                        down = sub(down, ai);
                    }
                    int q = p - pairing_h(i, beta);
                    if (q >= 1) {
                        Root up = add(beta, ai);
                        if (!seen.count(up.alpha)) {
                            seen[up.alpha] = true;
                            roots.push_back(up);
                            next.push_back(up);
                        }
                    }
                }
            }
            layer = std::move(next);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    /// Positive roots of g_0 (cached).
    const std::vector<Root>& positive_roots_g0() const { return pos_roots_g0_; }

    // ---- distinguished roots and weights ----

    enum class Which { theta1, thetaJ };

    struct Theta {
        Root root;
        Weight varpi_expansion;  // cl(theta) in P_0
    };

    /**
     * theta_1 (resp. theta_J): the highest root of R_{I01} (resp. R_J), the
     * highest short root instead for E6(2). Computed from root enumeration.
     */
    Theta theta(Which which) const { return which == Which::theta1 ? theta1_ : thetaJ_; }

    /// gamma_1 = varpi_1 + cl(theta_1); gamma_2 = varpi_1 + gamma_1 + cl(theta_J).
    Weight gamma(int k) const {
        if (k == 1) return gamma1_;
        if (k == 2) return gamma2_;
        throw std::domain_error("gamma: k must be 1 or 2");
    }

    /// Highest root / highest short root data of g_0 itself (marks-based).
    Root highest_root_g0() const {
        Root r = zero_root();
        for (int i = 1; i <= n; ++i) r.alpha[static_cast<size_t>(i)] = marks[static_cast<size_t>(i)];
        return r;
    }

private:
    std::vector<Root> pos_roots_g0_;
    Theta theta1_, thetaJ_;
    Weight gamma1_, gamma2_;

    void check_size(const std::vector<int>& v) const {
        if (static_cast<int>(v.size()) != n + 1) throw std::domain_error("weight coordinate size mismatch");
    }

    Theta compute_theta(const std::vector<int>& L) const {
        std::vector<Root> rl = positive_roots(L);
        // target length class: short for E6(2), longest otherwise
        Rational target;
        if (tag == TypeTag::E6a2) {
            target = Rational(2);
        } else {
            target = 0;
            for (const Root& r : rl) target = std::max(target, bilinear(r, r));
        }
        const Root* best = nullptr;
        for (const Root& r : rl) {
            if (bilinear(r, r) != target) continue;
            if (!best || r.height() > best->height()) best = &r;
        }
        if (!best) throw std::domain_error("theta: no root of target length");
        Theta t;
        t.root = *best;
        t.varpi_expansion = cl_root(*best);
        return t;
    }

    friend CartanData build_cartan(TypeTag tag);
};

namespace detail {

/// Rational kernel vector of the map x -> M x (resp. x -> x M), scaled to integers with first entry 1.
inline std::vector<int> integer_kernel(const std::vector<std::vector<int>>& m, bool column_kernel) {
    const int N = static_cast<int>(m.size());
    // Solve sum_j m[i][j] x_j = 0 (column_kernel) or sum_i x_i m[i][j] = 0 (row kernel)
    std::vector<std::vector<Rational>> a(static_cast<size_t>(N), std::vector<Rational>(static_cast<size_t>(N), 0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = column_kernel ? m[static_cast<size_t>(i)][static_cast<size_t>(j)] : m[static_cast<size_t>(j)][static_cast<size_t>(i)];
    // Gaussian elimination
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < N && rank < N; ++col) {
        int piv = -1;
        for (int r = rank; r < N; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(rank)]);
        Rational p = a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int j = 0; j < N; ++j) a[static_cast<size_t>(rank)][static_cast<size_t>(j)] /= p;
        for (int r = 0; r < N; ++r) {
            if (r == rank) continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f != 0)
                for (int j = 0; j < N; ++j)
                    a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(rank)][static_cast<size_t>(j)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank != N - 1) throw std::domain_error("affine Cartan matrix must have corank 1");
    // free column is the one not pivotal
    std::vector<bool> is_pivot(static_cast<size_t>(N), false);
    for (int cidx : pivot_col) is_pivot[static_cast<size_t>(cidx)] = true;
    int free_col = 0;
    while (is_pivot[static_cast<size_t>(free_col)]) ++free_col;
    std::vector<Rational> x(static_cast<size_t>(N), 0);
    x[static_cast<size_t>(free_col)] = 1;
    for (int r = 0; r < rank; ++r) {
        int pc = pivot_col[static_cast<size_t>(r)];
        x[static_cast<size_t>(pc)] = -a[static_cast<size_t>(r)][static_cast<size_t>(free_col)];
    }
    // scale so x[0] = 1, then verify integrality
    if (x[0] == 0) throw std::domain_error("kernel vector has zero node-0 entry");
    std::vector<int> out(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) {
        Rational v = x[static_cast<size_t>(i)] / x[0];
        v.canonicalize();
        if (v.get_den() != 1) throw std::domain_error("marks are not integral");
        out[static_cast<size_t>(i)] = static_cast<int>(v.get_num().get_si());
    }
    return out;
}

}  // namespace detail

inline CartanData build_cartan(TypeTag tag) {
    CartanData cd;
    cd.tag = tag;
    struct Edge {
        int i, j, cij, cji;
    };
    std::vector<Edge> edges;
    auto single = [](int i, int j) { return Edge{i, j, -1, -1}; };
    switch (tag) {
        case TypeTag::E6a1:
            cd.n = 6;
            edges = {single(0, 1), single(1, 2), single(2, 3), single(2, 4), single(3, 5), single(4, 6)};
            cd.node_power.assign(7, 1);
            cd.D = 1;
            cd.c_g = 1;
            cd.J = {2, 3, 4};
            break;
        case TypeTag::E7a1:
            cd.n = 7;
            edges = {single(0, 1), single(1, 2), single(2, 3), single(3, 4),
                     single(3, 5), single(5, 6), single(6, 7)};
            cd.node_power.assign(8, 1);
            cd.D = 1;
            cd.c_g = 1;
            cd.J = {2, 3, 4, 5};
            break;
        case TypeTag::E8a1:
            cd.n = 8;
            edges = {single(0, 1), single(1, 2), single(2, 3), single(3, 4),
                     single(4, 5), single(5, 6), single(5, 7), single(7, 8)};
            cd.node_power.assign(9, 1);
            cd.D = 1;
            cd.c_g = 1;
            cd.J = {2, 3, 4, 5, 6, 7};
            break;
        case TypeTag::F4a1:
            // 0 - 1 - 2 => 3 - 4; alpha_3, alpha_4 short, q_i = q^{1/2} there
            cd.n = 4;
            edges = {single(0, 1), single(1, 2), Edge{2, 3, -1, -2}, single(3, 4)};
            cd.node_power = {2, 2, 2, 1, 1};
            cd.D = 2;
            cd.c_g = 2;
            cd.J = {2, 3};
            break;
        case TypeTag::E6a2:
            // 0 - 1 - 2 <= 3 - 4; alpha_3, alpha_4 have q_i = q^2
            cd.n = 4;
            edges = {single(0, 1), single(1, 2), Edge{2, 3, -2, -1}, single(3, 4)};
            cd.node_power = {1, 1, 1, 2, 2};
            cd.D = 1;
            cd.c_g = 1;
            cd.J = {2, 3};
            break;
    }
    const size_t N = static_cast<size_t>(cd.n + 1);
    cd.c.assign(N, std::vector<int>(N, 0));
    for (size_t i = 0; i < N; ++i) cd.c[i][i] = 2;
    for (const Edge& e : edges) {
        cd.c[static_cast<size_t>(e.i)][static_cast<size_t>(e.j)] = e.cij;
        cd.c[static_cast<size_t>(e.j)][static_cast<size_t>(e.i)] = e.cji;
    }
    cd.marks = detail::integer_kernel(cd.c, true);
    cd.dual_marks = detail::integer_kernel(cd.c, false);
    for (int i = 1; i <= cd.n; ++i) cd.I0.push_back(i);
    for (int i = 2; i <= cd.n; ++i) cd.I01.push_back(i);

    cd.pos_roots_g0_ = cd.positive_roots(cd.I0);
    cd.theta1_ = cd.compute_theta(cd.I01);
    cd.thetaJ_ = cd.compute_theta(cd.J);
    cd.gamma1_ = add(cd.varpi(1), cd.theta1_.varpi_expansion);
    cd.gamma2_ = add(add(cd.varpi(1), cd.gamma1_), cd.thetaJ_.varpi_expansion);
    return cd;
}

inline const CartanData& CartanData::get(TypeTag tag) {
    static const CartanData e6a1 = build_cartan(TypeTag::E6a1);
    static const CartanData e7a1 = build_cartan(TypeTag::E7a1);
    static const CartanData e8a1 = build_cartan(TypeTag::E8a1);
    static const CartanData f4a1 = build_cartan(TypeTag::F4a1);
    static const CartanData e6a2 = build_cartan(TypeTag::E6a2);
    switch (tag) {
        case TypeTag::E6a1: return e6a1;
        case TypeTag::E7a1: return e7a1;
        case TypeTag::E8a1: return e8a1;
        case TypeTag::F4a1: return f4a1;
        case TypeTag::E6a2: return e6a2;
    }
    throw std::domain_error("unknown type tag");
}

}  // namespace krkit
