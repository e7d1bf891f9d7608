/**
 * @file linalg.hpp
 * @brief Sparse vectors/matrices over Q(q_s) and exact span bookkeeping.
 *
 * Matrices are column-major maps from basis index to (index, value) lists;
 * weight-graded operators are band-sparse so this is the natural layout.
 */
#pragma once

#include "qrat.hpp"

namespace krkit {

class SparseVec {
public:
    std::map<int, QRat> e;

    bool is_zero() const { return e.empty(); }

    QRat at(int i) const {
        auto it = e.find(i);
        return it == e.end() ? QRat(0) : it->second;
    }

    void set(int i, const QRat& v) {
        if (v.is_zero())
            e.erase(i);
        else
            e[i] = v;
    }

    void add_scaled(const SparseVec& o, const QRat& c) {
        if (c.is_zero()) return;
        for (const auto& [i, v] : o.e) {
            auto it = e.find(i);
            if (it == e.end()) {
                QRat nv = v * c;
                if (!nv.is_zero()) e[i] = nv;
            } else {
                it->second += v * c;
                if (it->second.is_zero()) e.erase(it);
            }
        }
    }

    SparseVec scaled(const QRat& c) const {
        SparseVec r;
        if (c.is_zero()) return r;
        for (const auto& [i, v] : e) r.e[i] = v * c;
        return r;
    }

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e == b.e; }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

    static SparseVec unit(int i) {
        SparseVec v;
        v.e[i] = QRat(1);
        return v;
    }

    /// plain coordinate dot product
    QRat dot(const SparseVec& o) const {
        QRat s(0);
        const SparseVec& small = e.size() <= o.e.size() ? *this : o;
        const SparseVec& big = e.size() <= o.e.size() ? o : *this;
        for (const auto& [i, v] : small.e) {
            auto it = big.e.find(i);
            if (it != big.e.end()) s += v * it->second;
        }
        return s;
    }
};

class SparseMat {
public:
    SparseMat() = default;
    explicit SparseMat(int dim) : cols_(static_cast<size_t>(dim)) {}

    int dim() const { return static_cast<int>(cols_.size()); }

    const SparseVec& col(int j) const { return cols_[static_cast<size_t>(j)]; }
    SparseVec& col(int j) { return cols_[static_cast<size_t>(j)]; }

    QRat at(int i, int j) const { return cols_[static_cast<size_t>(j)].at(i); }
    void set(int i, int j, const QRat& v) { cols_[static_cast<size_t>(j)].set(i, v); }

    bool is_zero() const {
        for (const SparseVec& c : cols_)
            if (!c.is_zero()) return false;
        return true;
    }

    static SparseMat identity(int dim) {
        SparseMat m(dim);
        for (int i = 0; i < dim; ++i) m.set(i, i, QRat(1));
        return m;
    }

    static SparseMat zero(int dim) { return SparseMat(dim); }

    SparseVec apply(const SparseVec& v) const {
        SparseVec r;
        for (const auto& [j, c] : v.e) r.add_scaled(cols_[static_cast<size_t>(j)], c);
        return r;
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        SparseMat r(b.dim());
        for (int j = 0; j < b.dim(); ++j) r.col(j) = a.apply(b.col(j));
        return r;
    }

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        SparseMat r = a;
        for (int j = 0; j < b.dim(); ++j) r.col(j).add_scaled(b.col(j), QRat(1));
        return r;
    }

    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
        SparseMat r = a;
        for (int j = 0; j < b.dim(); ++j) r.col(j).add_scaled(b.col(j), QRat(-1));
        return r;
    }

    SparseMat scaled(const QRat& c) const {
        SparseMat r(dim());
        for (int j = 0; j < dim(); ++j) r.col(j) = col(j).scaled(c);
        return r;
    }

    SparseMat transpose() const {
        SparseMat r(dim());
        for (int j = 0; j < dim(); ++j)
            for (const auto& [i, v] : col(j).e) r.set(j, i, v);
        return r;
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) { return a.cols_ == b.cols_; }
    friend bool operator!=(const SparseMat& a, const SparseMat& b) { return !(a == b); }

    /// exact inverse by Gauss-Jordan elimination; throws if singular
    SparseMat inverse() const {
        int n = dim();
        std::vector<std::vector<QRat>> a(static_cast<size_t>(n), std::vector<QRat>(static_cast<size_t>(2 * n), QRat(0)));
        for (int j = 0; j < n; ++j)
            for (const auto& [i, v] : col(j).e) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = QRat(1);
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::domain_error("SparseMat::inverse: singular matrix");
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(c)]);
            QRat inv = QRat(1) / a[static_cast<size_t>(c)][static_cast<size_t>(c)];
            for (int j = c; j < 2 * n; ++j) a[static_cast<size_t>(c)][static_cast<size_t>(j)] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == c) continue;
                QRat f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
                if (f.is_zero()) continue;
                for (int j = c; j < 2 * n; ++j)
                    a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(c)][static_cast<size_t>(j)];
            }
        }
        SparseMat out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!a[static_cast<size_t>(i)][static_cast<size_t>(n + j)].is_zero())
                    out.set(i, j, a[static_cast<size_t>(i)][static_cast<size_t>(n + j)]);
        return out;
    }

    /// determinant of the leading k x k block by exact Gaussian elimination
    QRat leading_minor(int k) const {
        std::vector<std::vector<QRat>> a(static_cast<size_t>(k), std::vector<QRat>(static_cast<size_t>(k), QRat(0)));
        for (int j = 0; j < k; ++j)
            for (const auto& [i, v] : col(j).e)
                if (i < k) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        QRat det(1);
        for (int c = 0; c < k; ++c) {
            int piv = -1;
            for (int r = c; r < k; ++r)
                if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return QRat(0);
            if (piv != c) {
                std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(c)]);
                det = -det;
            }
            det *= a[static_cast<size_t>(c)][static_cast<size_t>(c)];
            QRat inv = QRat(1) / a[static_cast<size_t>(c)][static_cast<size_t>(c)];
            for (int r = c + 1; r < k; ++r) {
                QRat f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] * inv;
                if (f.is_zero()) continue;
                for (int j = c; j < k; ++j)
                    a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(c)][static_cast<size_t>(j)];
            }
        }
        return det;
    }

private:
    std::vector<SparseVec> cols_;
};

/**
 * Incremental exact row reduction: tracks a growing independent family and
 * expresses new vectors as combinations of the registered ones.
 */
class SpanSolver {
public:
    /// Register v under the given id; returns false (and registers nothing) if dependent.
    bool add(const SparseVec& v, int id) {
        SparseVec red = v;
        std::map<int, QRat> expr;
        expr[id] = QRat(1);
        reduce(red, expr);
        if (red.is_zero()) return false;
        int piv = red.e.begin()->first;
        QRat inv = QRat(1) / red.e.begin()->second;
        red = red.scaled(inv);
        std::map<int, QRat> scaled_expr;
        for (auto& [k, c] : expr) {
            QRat sc = c * inv;
            if (!sc.is_zero()) scaled_expr[k] = sc;
        }
        rows_.push_back(Row{red, scaled_expr, piv});
        return true;
    }

    /// Coordinates of v over the registered ids, or nullopt if outside the span.
    std::optional<std::map<int, QRat>> solve(const SparseVec& v) const {
        SparseVec red = v;
        std::map<int, QRat> expr;
        reduce(red, expr);
        if (!red.is_zero()) return std::nullopt;
        std::map<int, QRat> out;
        for (auto& [k, c] : expr) {
            QRat neg = -c;
            if (!neg.is_zero()) out[k] = neg;
        }
        return out;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    struct Row {
        SparseVec v;               // echelon vector, leading coefficient 1
        std::map<int, QRat> expr;  // expansion of v over registered ids
        int pivot;
    };
    std::vector<Row> rows_;

    // subtract multiples of echelon rows; expr accumulates the used combination
    void reduce(SparseVec& red, std::map<int, QRat>& expr) const {
        for (const Row& row : rows_) {
            QRat c = red.at(row.pivot);
            if (c.is_zero()) continue;
            red.add_scaled(row.v, -c);
            for (const auto& [k, rc] : row.expr) {
                auto it = expr.find(k);
                QRat delta = -(c * rc);
                if (it == expr.end()) {
                    if (!delta.is_zero()) expr[k] = delta;
                } else {
                    it->second += delta;
                    if (it->second.is_zero()) expr.erase(it);
                }
            }
        }
    }
};

}  // namespace krkit
