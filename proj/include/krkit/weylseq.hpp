/**
 * @file weylseq.hpp
 * @brief Weyl-word calculus on the classical root/weight lattices and the
 *        search for the sequences i and j: paths of simple reflections from
 *        alpha_2 to theta_1 (resp. theta_J) whose pairing at every step is
 *        -c_g, together with the verification of their fundamental
 *        properties and the commuting-swap normalization.
 *
 * Words are stored with index 0 = first letter applied (sequences are read
 * right to left).
 */
#pragma once

#include <functional>
#include <optional>
#include <set>

#include "cartan.hpp"

namespace krkit {

struct WeylWord {
    std::vector<int> letters;  // letters[0] acts first

    size_t size() const { return letters.size(); }
    friend bool operator==(const WeylWord& a, const WeylWord& b) { return a.letters == b.letters; }
    friend bool operator!=(const WeylWord& a, const WeylWord& b) { return !(a == b); }
    bool operator<(const WeylWord& o) const { return letters < o.letters; }

    /// Rendering in the source convention, rightmost letter acts first: (i_l ... i_1 i_0).
    std::string str() const {
        std::string s = "(";
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            if (it != letters.rbegin()) s += ",";
            s += std::to_string(*it);
        }
        return s + ")";
    }
};

inline Root reflect(const CartanData& cd, int i, const Root& r) {
    Root out = r;
    int p = cd.pairing_h(i, r);
    out.alpha[static_cast<size_t>(i)] -= p;
    return out;
}

inline Weight reflect(const CartanData& cd, int i, const Weight& w) {
    int p = cd.pairing_h(i, w);
    if (p == 0) return w;
    Weight ai = cd.cl_root(cd.simple_root(i));
    Weight out = w;
    for (size_t t = 0; t < out.lambda.size(); ++t) out.lambda[t] -= p * ai.lambda[t];
    return out;
}

/// s_{r_l} ... s_{r_1} applied right to left; the empty word is the identity.
template <typename V>
inline V apply(const CartanData& cd, const WeylWord& w, V v) {
    for (int i : w.letters) v = reflect(cd, i, v);
    return v;
}

inline WeylWord inverse(const WeylWord& w) {
    WeylWord r = w;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

inline WeylWord subword(const WeylWord& w, int k2, int k1) {
    WeylWord r;
    if (k2 < k1) return r;
    for (int t = k1; t <= k2; ++t) r.letters.push_back(w.letters[static_cast<size_t>(t)]);
    return r;
}

/**
 * Reducedness by inversion counting inside the finite subsystem spanned by
 * `ambient` (a subset of I0): the word is reduced iff its length equals the
 * number of positive roots it sends to negative roots.
 */
inline bool is_reduced(const CartanData& cd, const WeylWord& w, const std::vector<int>& ambient) {
    std::set<int> amb(ambient.begin(), ambient.end());
    if (amb.count(0)) throw std::domain_error("is_reduced: ambient must be a finite (classical) subsystem");
    for (int l : w.letters)
        if (!amb.count(l)) throw std::domain_error("is_reduced: letter outside ambient subsystem");
    std::vector<Root> pos = cd.positive_roots(ambient);
    WeylWord winv = inverse(w);
    int inversions = 0;
    for (const Root& a : pos) {
        Root img = apply(cd, winv, a);
        bool neg = true;
        for (int c : img.alpha) neg = neg && c <= 0;
        if (neg) ++inversions;
    }
    return inversions == static_cast<int>(w.size());
}

enum class SeqKind { I, J };

/**
 * Exhaustive depth-first search for all sequences satisfying the defining
 * conditions: first letter 2, every step pairs to -c_g, endpoint theta_1
 * (kind I, letters in I01) or theta_J (kind J, letters in J). Candidate
 * letters are tried in ascending node order, so the first word returned is
 * the canonical choice.
 */
inline std::vector<WeylWord> find_sequences(const CartanData& cd, SeqKind kind) {
    const std::vector<int>& allowed = (kind == SeqKind::I) ? cd.I01 : cd.J;
    Root target = cd.theta(kind == SeqKind::I ? CartanData::Which::theta1 : CartanData::Which::thetaJ).root;
    std::vector<WeylWord> out;
    WeylWord word;
    word.letters.push_back(2);
    Root cur = cd.simple_root(2);

    std::function<void()> dfs = [&]() {
        if (cur == target) {
            out.push_back(word);
            return;
        }
        for (int i : allowed) {
            if (cd.pairing_h(i, cur) != -cd.c_g) continue;
            Root next = reflect(cd, i, cur);
            word.letters.push_back(i);
            std::swap(cur, next);
            dfs();
            std::swap(cur, next);
            word.letters.pop_back();
        }
    };
    dfs();
    return out;
}

/// Checks the defining conditions of a candidate sequence.
inline bool check_sequence_conditions(const CartanData& cd, const WeylWord& w, SeqKind kind) {
    if (w.letters.empty() || w.letters[0] != 2) return false;
    const std::vector<int>& allowed = (kind == SeqKind::I) ? cd.I01 : cd.J;
    std::set<int> amb(allowed.begin(), allowed.end());
    for (size_t t = 1; t < w.letters.size(); ++t)
        if (!amb.count(w.letters[t])) return false;
    Root cur = cd.simple_root(2);
    for (size_t t = 1; t < w.letters.size(); ++t) {
        if (cd.pairing_h(w.letters[t], cur) != -cd.c_g) return false;
        cur = reflect(cd, w.letters[t], cur);
    }
    Root target = cd.theta(kind == SeqKind::I ? CartanData::Which::theta1 : CartanData::Which::thetaJ).root;
    return cur == target;
}

struct LemmaReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg) {
        ok = false;
        failures.push_back(msg);
    }
};

/**
 * The weight of E^{(p)} over the prefix i[k,0]: sum of p * alpha_{i_t} with
 * the exponent doubled on short nodes for F4(1) (where E uses e^{(2p)}).
 */
inline Root monomial_weight(const CartanData& cd, const WeylWord& w, int k, int p) {
    Root r = cd.zero_root();
    for (int t = 0; t <= k; ++t) {
        int node = w.letters[static_cast<size_t>(t)];
        int mult = (cd.tag == TypeTag::F4a1 && cd.node_power[static_cast<size_t>(node)] == 1) ? 2 : 1;
        r.alpha[static_cast<size_t>(node)] += p * mult;
    }
    return r;
}

/**
 * Verification of the five structural claims for a found sequence:
 * (1) node 2 absent from the tail; (2) <h_i, theta_1> = 0 for i in J;
 * (3) the prefix weight identity wt(E^{(p)}_{r[k,0]}) = p s_{r[k,1]}(alpha_2);
 * (4) reducedness in the finite system; (5) every positive root inverted by
 * the tail pairs strictly positively with the endpoint.
 */
inline LemmaReport verify_fundamental_properties(const CartanData& cd, const WeylWord& w, SeqKind kind) {
    LemmaReport rep;
    if (!check_sequence_conditions(cd, w, kind)) rep.fail("sequence conditions violated");
    int ell = static_cast<int>(w.size()) - 1;

    for (int t = 1; t <= ell; ++t)
        if (w.letters[static_cast<size_t>(t)] == 2) rep.fail("claim 1: node 2 occurs in the tail at position " + std::to_string(t));

    for (int i : cd.J)
        if (cd.pairing_h(i, cd.theta(CartanData::Which::theta1).root) != 0)
            rep.fail("claim 2: <h_" + std::to_string(i) + ", theta_1> != 0");

    for (int p = 1; p <= 2; ++p)
        for (int k = 0; k <= ell; ++k) {
            Root lhs = monomial_weight(cd, w, k, p);
            Root rhs = apply(cd, subword(w, k, 1), cd.simple_root(2));
            for (int& cc : rhs.alpha) cc *= p;
            if (lhs != rhs) rep.fail("claim 3: prefix weight identity fails at k=" + std::to_string(k));
        }

    if (!is_reduced(cd, w, cd.I0)) rep.fail("claim 4: word is not reduced");

    Root theta = cd.theta(kind == SeqKind::I ? CartanData::Which::theta1 : CartanData::Which::thetaJ).root;
    WeylWord tail_inv = inverse(subword(w, ell, 1));
    for (const Root& a : cd.positive_roots_g0()) {
        Root img = apply(cd, tail_inv, a);
        bool neg = true;
        for (int c : img.alpha) neg = neg && c <= 0;
        if (neg && !(cd.pairing_coroot(a, theta) > 0))
            rep.fail("claim 5: inverted positive root with nonpositive coroot pairing against the endpoint");
    }
    return rep;
}

/**
 * Transform b into a by transposing adjacent letters whose simple roots are
 * orthogonal, following the uniqueness argument: locate the first mismatch,
 * find the next occurrence of the required letter, check orthogonality over
 * the gap, and bubble it down. Returns the swap list ((pos, pos+1) pairs in
 * order of application) or nullopt if some required swap is non-commuting.
 */
inline std::optional<std::vector<std::pair<int, int>>> normalize_by_commuting_swaps(const CartanData& cd,
                                                                                    const WeylWord& a,
                                                                                    const WeylWord& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<int> cur = b.letters;
    std::vector<std::pair<int, int>> swaps;
    for (size_t r = 0; r < cur.size(); ++r) {
        if (cur[r] == a.letters[r]) continue;
        size_t s = r + 1;
        while (s < cur.size() && cur[s] != a.letters[r]) ++s;
        if (s == cur.size()) return std::nullopt;
        for (size_t k = r; k < s; ++k)
            if (cd.cij(cur[s], cur[k]) != 0) return std::nullopt;
        for (size_t t = s; t > r; --t) {
            std::swap(cur[t - 1], cur[t]);
            swaps.emplace_back(static_cast<int>(t - 1), static_cast<int>(t));
        }
    }
    if (cur != a.letters) return std::nullopt;
    return swaps;
}

/**
 * Lexicographically least representative of the commutation class: greedily
 * emit the smallest letter that commutes with everything before it. Two
 * words are related by commuting swaps iff their normal forms coincide.
 */
inline WeylWord lex_normal_form(const CartanData& cd, const WeylWord& w) {
    std::vector<int> rem = w.letters;
    WeylWord out;
    while (!rem.empty()) {
        size_t best = rem.size();
        for (size_t k = 0; k < rem.size(); ++k) {
            bool movable = true;
            for (size_t t = 0; t < k && movable; ++t) movable = cd.cij(rem[k], rem[t]) == 0;
            if (movable && (best == rem.size() || rem[k] < rem[best])) best = k;
        }
        out.letters.push_back(rem[best]);
        rem.erase(rem.begin() + static_cast<long>(best));
    }
    return out;
}

}  // namespace krkit
