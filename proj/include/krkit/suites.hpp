/**
 * @file suites.hpp
 * @brief The registered verification suites: each one runs a batch of exact
 *        checks and returns a deterministic report. Shared between the
 *        command-line front end and the acceptance runner.
 */
#pragma once

#include "branching.hpp"
#include "mcoeff.hpp"
#include "straighten.hpp"
#include "uqmod.hpp"

#include <chrono>

namespace krkit {

struct Report {
    std::string suite;
    std::string status = "pass";  // pass | fail | partial
    long checks = 0;
    std::vector<std::string> counterexamples;
    double wall_ms = 0.0;

    bool ok() const { return status == "pass"; }

    void fail(const std::string& msg) {
        status = "fail";
        if (counterexamples.size() < 16) counterexamples.push_back(msg);
    }

    void merge_check(bool good, const std::string& msg) {
        ++checks;
        if (!good) fail(msg);
    }
};

namespace detail {

class Stopwatch {
public:
    Stopwatch(Report& rep) : rep_(rep), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        rep_.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    Report& rep_;
    std::chrono::steady_clock::time_point start_;
};

struct ThetaReference {
    TypeTag tag;
    std::vector<std::pair<int, int>> t1_alpha, t1_varpi, tJ_alpha, tJ_varpi;
};

/// The tabulated explicit forms of theta_1 and theta_J for the five types.
inline const std::vector<ThetaReference>& theta_table() {
    static const std::vector<ThetaReference> table = {
        {TypeTag::E6a1,
         {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}},
         {{1, -1}, {5, 1}, {6, 1}},
         {{2, 1}, {3, 1}, {4, 1}},
         {{1, -1}, {3, 1}, {4, 1}, {5, -1}, {6, -1}}},
        {TypeTag::E7a1,
         {{2, 1}, {3, 2}, {4, 1}, {5, 2}, {6, 2}, {7, 1}},
         {{1, -1}, {6, 1}},
         {{2, 1}, {3, 2}, {4, 1}, {5, 1}},
         {{1, -1}, {3, 1}, {6, -1}}},
        {TypeTag::E8a1,
         {{2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 2}, {7, 3}, {8, 2}},
         {{1, -1}, {8, 1}},
         {{2, 1}, {3, 2}, {4, 2}, {5, 2}, {6, 1}, {7, 1}},
         {{1, -1}, {3, 1}, {8, -1}}},
        {TypeTag::F4a1,
         {{2, 1}, {3, 2}, {4, 2}},
         {{1, -1}, {4, 2}},
         {{2, 1}, {3, 2}},
         {{1, -1}, {3, 2}, {4, -2}}},
        {TypeTag::E6a2,
         {{2, 1}, {3, 1}, {4, 1}},
         {{1, -1}, {4, 1}},
         {{2, 1}, {3, 1}},
         {{1, -1}, {3, 1}, {4, -1}}},
    };
    return table;
}

inline Root make_root(const CartanData& cd, const std::vector<std::pair<int, int>>& coords) {
    Root r = cd.zero_root();
    for (auto [i, c] : coords) r.alpha[static_cast<size_t>(i)] = c;
    return r;
}

inline Weight make_p0(const CartanData& cd, const std::vector<std::pair<int, int>>& varpi_coords) {
    std::vector<int> v(static_cast<size_t>(cd.n + 1), 0);
    for (auto [i, c] : varpi_coords) v[static_cast<size_t>(i)] = c;
    return cd.weight_P0(v);
}

}  // namespace detail

inline std::vector<TypeTag> default_types() {
    return std::vector<TypeTag>(all_types().begin(), all_types().end());
}

/// Criterion: computed theta_1 / theta_J match the tabulated expansions exactly.
inline Report suite_table1(const std::vector<TypeTag>& types = default_types()) {
    Report rep;
    rep.suite = "table1";
    detail::Stopwatch sw(rep);
    for (const auto& row : detail::theta_table()) {
        if (std::find(types.begin(), types.end(), row.tag) == types.end()) continue;
        const CartanData& cd = CartanData::get(row.tag);
        auto t1 = cd.theta(CartanData::Which::theta1);
        auto tJ = cd.theta(CartanData::Which::thetaJ);
        rep.merge_check(t1.root == detail::make_root(cd, row.t1_alpha), type_name(row.tag) + ": theta_1 alpha-expansion");
        rep.merge_check(t1.varpi_expansion == detail::make_p0(cd, row.t1_varpi),
                        type_name(row.tag) + ": theta_1 varpi-expansion");
        rep.merge_check(tJ.root == detail::make_root(cd, row.tJ_alpha), type_name(row.tag) + ": theta_J alpha-expansion");
        rep.merge_check(tJ.varpi_expansion == detail::make_p0(cd, row.tJ_varpi),
                        type_name(row.tag) + ": theta_J varpi-expansion");
    }
    return rep;
}

/// Criterion: sequence existence, the unique twisted case, all structural claims, swap-relatedness.
inline Report suite_sequences(const std::vector<TypeTag>& types = default_types()) {
    Report rep;
    rep.suite = "sequences";
    detail::Stopwatch sw(rep);
    for (TypeTag t : types) {
        const CartanData& cd = CartanData::get(t);
        for (SeqKind kind : {SeqKind::I, SeqKind::J}) {
            std::vector<WeylWord> seqs = find_sequences(cd, kind);
            std::string label = type_name(t) + (kind == SeqKind::I ? " i" : " j");
            rep.merge_check(!seqs.empty(), label + ": no sequence found");
            if (seqs.empty()) continue;
            for (const WeylWord& w : seqs) {
                LemmaReport lr = verify_fundamental_properties(cd, w, kind);
                rep.merge_check(lr.ok, label + " " + w.str() + ": " + (lr.ok ? "" : lr.failures[0]));
            }
            WeylWord canon = lex_normal_form(cd, seqs[0]);
            for (const WeylWord& w : seqs) {
                rep.merge_check(lex_normal_form(cd, w) == canon, label + ": commutation class split");
                rep.merge_check(normalize_by_commuting_swaps(cd, seqs[0], w).has_value(),
                                label + ": swap normalization failed");
            }
            if (seqs.size() <= 30) {
                for (const WeylWord& a : seqs)
                    for (const WeylWord& b : seqs)
                        rep.merge_check(normalize_by_commuting_swaps(cd, a, b).has_value(),
                                        label + ": pairwise swap normalization failed");
            }
        }
        if (t == TypeTag::E6a2) {
            std::vector<WeylWord> si = find_sequences(cd, SeqKind::I);
            rep.merge_check(si.size() == 1 && si[0].letters == std::vector<int>{2, 3, 4},
                            "E6a2: i-sequence is not exactly (4,3,2)");
        }
    }
    return rep;
}

/// Criterion: the full (C1) combinatorics for l = 1..ell_max on all types.
inline Report suite_branching(int ell_max = 6, const std::vector<TypeTag>& types = default_types()) {
    Report rep;
    rep.suite = "branching";
    detail::Stopwatch sw(rep);
    rep.merge_check(wt_identity_formal(), "formal identity wt_T . phi = wt fails");
    std::vector<ExpVec6> s1 = enum_S(1);
    rep.merge_check(s1.size() == 5, "|S_1| != 5");
    std::vector<ExpVec6> bar1;
    for (const ExpVec6& p : s1)
        if (p[5] == 0) bar1.push_back(p);
    const std::vector<ExpVec6> expected_bar1 = {
        {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {2, 1, 1, 1, 1, 0}};
    rep.merge_check(bar1 == expected_bar1, "S_1 restricted to Z^5 is not the four-element list");
    for (TypeTag t : types) {
        const CartanData& cd = CartanData::get(t);
        for (int ell = 1; ell <= ell_max; ++ell) {
            C1Report c1 = verify_C1(cd, ell);
            rep.merge_check(c1.ok, type_name(t) + " ell=" + std::to_string(ell) + ": " +
                                       (c1.ok ? "" : c1.failures[0]));
        }
    }
    return rep;
}

/// Criterion: oracle agreement and the five shift identities on the stated grids.
inline Report suite_m_identities(int bound = 4, int ell_max = 3, int oracle_bound = 2, int oracle_ell_max = 2,
                                 int threads = 1, const std::vector<TypeTag>& types = default_types()) {
    Report rep;
    rep.suite = "m-identities";
    detail::Stopwatch sw(rep);
    MIdentityReport ids = verify_m_identities(bound, 1, ell_max, threads);
    rep.checks += ids.checked;
    if (!ids.ok) rep.fail(ids.counterexample);
    for (TypeTag t : types) {
        MIdentityReport orc = verify_m_oracle(CartanData::get(t), oracle_bound, 1, oracle_ell_max);
        rep.checks += orc.checked;
        if (!orc.ok) rep.fail(orc.counterexample);
    }
    return rep;
}

/// Criterion: divided-power commutation identities on the stated modules.
inline Report suite_commutation() {
    Report rep;
    rep.suite = "commutation";
    detail::Stopwatch sw(rep);
    for (int n = 0; n <= 8; ++n) {
        CheckReport cr = verify_commutations(sl2_irrep(n), 3, 4);
        rep.merge_check(cr.ok, "sl2 n=" + std::to_string(n) + ": " + (cr.ok ? "" : cr.failures[0]));
    }
    for (auto [m1, m2] : {std::pair<int, int>{1, 0}, {1, 1}, {2, 1}}) {
        ModuleRep m = rank2_module(Rank2::A2, m1, m2);
        CheckReport cr = verify_commutations(m, 3, 4);
        rep.merge_check(cr.ok, "A2 dim " + std::to_string(m.dim()) + ": " + (cr.ok ? "" : cr.failures[0]));
    }
    {
        ModuleRep m = rank2_module(Rank2::C2, 1, 0);
        CheckReport cr = verify_commutations(m, 3, 4);
        rep.merge_check(cr.ok, "C2 dim 4: " + (cr.ok ? "" : cr.failures[0]));
    }
    return rep;
}

/// The rank-1 affine fixture on its own.
inline Report suite_a1kr(int ell_max = 4) {
    Report rep;
    rep.suite = "a1kr";
    detail::Stopwatch sw(rep);
    for (int ell = 1; ell <= ell_max; ++ell) {
        A1KRFixture fx = a1_kr_fixture(ell);
        std::string label = "A1 fixture ell=" + std::to_string(ell);
        rep.merge_check(fx.module.dim() == ell + 1, label + ": wrong dimension");
        rep.merge_check(fx.factor_admissible.ok, label + ": factor pairing not admissible");
        rep.merge_check(fx.product_admissible.ok, label + ": product pairing not admissible");
        rep.merge_check(fx.form_admissible.ok, label + ": form not admissible");
        rep.merge_check(fx.norm_one, label + ": ||w_l||^2 != 1");
        rep.merge_check(fx.symmetric, label + ": form not symmetric");
        rep.merge_check(fx.positive_definite, label + ": form not positive definite");
        rep.merge_check(fx.almost_orthonormal, label + ": string basis not almost orthonormal");
        rep.merge_check(fx.hw_condition, label + ": highest-vector norm containment fails");
        rep.merge_check(fx.module.weight_graded(), label + ": action not weight graded");
        rep.merge_check(verify_commutations(fx.module, 2, 3).ok, label + ": commutation identities fail");
    }
    return rep;
}

/// Criterion: Shapovalov admissibility, product pairings, and the rank-1 affine fixture.
inline Report suite_pairing(int ell_max = 4) {
    Report rep;
    rep.suite = "pairing";
    detail::Stopwatch sw(rep);
    for (int n : {1, 2, 3, 4, 6}) {
        ModuleRep m = sl2_irrep(n);
        SparseMat g = shapovalov(m);
        CheckReport cr = check_prepolarization(m, g, 3);
        rep.merge_check(cr.ok, "sl2 Shapovalov n=" + std::to_string(n));
        for (int k = 0; k <= n; ++k)
            rep.merge_check(g.at(k, k).in_one_plus_qsA(), "sl2 norm outside 1+q_sA");
    }
    for (auto mk : {std::pair<Rank2, std::pair<int, int>>{Rank2::A2, {1, 1}}, {Rank2::C2, {1, 0}}}) {
        ModuleRep m = rank2_module(mk.first, mk.second.first, mk.second.second);
        SparseMat g = shapovalov(m);
        CheckReport cr = check_prepolarization(m, g, 3);
        rep.merge_check(cr.ok, "rank-2 Shapovalov");
    }
    {
        ModuleRep a = sl2_irrep(2), b = sl2_irrep(3);
        ModuleRep t = tensor(a, b);
        SparseMat gt = tensor_form(shapovalov(a), b.dim(), shapovalov(b));
        rep.merge_check(check_prepolarization(t, gt, 3).ok, "product pairing on sl2 (x) sl2 not admissible");
        ModuleRep a2 = rank2_module(Rank2::A2, 1, 0);
        ModuleRep t2 = tensor(a2, a2);
        SparseMat gt2 = tensor_form(shapovalov(a2), a2.dim(), shapovalov(a2));
        rep.merge_check(check_prepolarization(t2, gt2, 3).ok, "product pairing on A2 (x) A2 not admissible");
    }
    Report a1 = suite_a1kr(ell_max);
    rep.checks += a1.checks;
    if (!a1.ok()) {
        rep.status = "fail";
        for (const std::string& ce : a1.counterexamples)
            if (rep.counterexamples.size() < 16) rep.counterexamples.push_back(ce);
    }
    return rep;
}

/// Criterion: braid-operator identities on modules of dimension <= 64.
inline Report suite_braid() {
    Report rep;
    rep.suite = "braid";
    detail::Stopwatch sw(rep);
    // string formula termwise on sl2 strings
    for (int n : {1, 2, 4}) {
        ModuleRep m = sl2_irrep(n, std::max(6, n));
        SparseMat T = braid_T(m, 0);
        bool ok = true;
        for (int p = 0; p <= n && ok; ++p) {
            SparseVec src = m.apply_e(0, p, SparseVec::unit(n));
            SparseVec expect = m.apply_e(0, n - p, SparseVec::unit(n)).scaled(QRat::qs_power(p * (n - p + 1)));
            if (p % 2 == 1) expect = expect.scaled(QRat(-1));
            ok = T.apply(src) == expect;
        }
        rep.merge_check(ok, "sl2 string formula fails at n=" + std::to_string(n));
    }
    for (auto mk : {std::pair<int, int>{1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        ModuleRep m = rank2_module(Rank2::A2, mk.first, mk.second);
        CheckReport cr = verify_braid(m, 3);
        rep.merge_check(cr.ok, "A2 dim " + std::to_string(m.dim()) + ": " + (cr.ok ? "" : cr.failures[0]));
    }
    return rep;
}

/// Criterion: the straightening engine reproduces the worked computations and module forms.
inline Report suite_straighten(int max_len = 5, const std::vector<TypeTag>& types = default_types()) {
    Report rep;
    rep.suite = "straighten";
    detail::Stopwatch sw(rep);

    auto all_words = [](int nodes, int len) {
        std::vector<Word> out{Word{}};
        std::vector<Word> layer{Word{}};
        for (int l = 0; l < len; ++l) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (int i = 0; i < nodes; ++i)
                    for (LKind k : {LKind::E, LKind::F}) {
                        Word w2 = w;
                        w2.push_back(Letter{k, i, 1});
                        next.push_back(std::move(w2));
                    }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    };
    auto apply_word = [](const ModuleRep& m, const Word& w, SparseVec v) {
        for (auto it = w.rbegin(); it != w.rend() && !v.is_zero(); ++it)
            v = it->kind == LKind::E ? m.apply_e(it->node, it->exp, v) : m.apply_f(it->node, it->exp, v);
        return v;
    };
    auto gram_value = [](const SparseMat& g, const SparseVec& u, const SparseVec& v) {
        QRat s(0);
        for (const auto& [i, ci] : u.e)
            for (const auto& [j, cj] : v.e) s += ci * cj * g.at(i, j);
        return s;
    };

    // || e_2 e_1 e_0 w_1 ||^2 = q [2] in every type
    for (TypeTag t : types) {
        const CartanData& cd = CartanData::get(t);
        AxiomSet ax = AxiomSet::kr(cd, 1);
        InnerEngine eng(ax);
        Word x{eL(2), eL(1), eL(0)};
        InnerValue v = eng.inner(x, x);
        rep.merge_check(v.reduced() && v.value == QRat::qs_power(cd.D) * qint(2, cd.D),
                        type_name(t) + ": worked norm != q[2]");
    }

    // the f0 f1 display and the first appendix step via prove_equal
    for (TypeTag t : types) {
        const CartanData& cd = CartanData::get(t);
        WeylWord si = find_sequences(cd, SeqKind::I).at(0);
        WeylWord sj = find_sequences(cd, SeqKind::J).at(0);
        for (int ell : {1, 2}) {
            AxiomSet ax = AxiomSet::kr(cd, ell);
            for (std::array<int, 5> p : {std::array<int, 5>{1, 0, 0, 0, 0}, {2, 1, 1, 1, 1}, {3, 1, 1, 1, 0}}) {
                if (p[0] > 3 * ell) continue;
                Word lhs = epow_word(cd, si, sj, p);
                lhs.insert(lhs.begin(), fL(1));
                lhs.insert(lhs.begin(), fL(0));
                std::array<int, 5> pm = p;
                pm[0] -= 1;
                FormalExpr rhs{Monomial{qint(3 * ell - p[0] + 1, cd.D), epow_word(cd, si, sj, pm)}};
                auto eq = prove_equal(FormalExpr{Monomial{QRat(1), lhs}}, rhs, ax);
                rep.merge_check(eq.has_value() && *eq,
                                type_name(t) + " ell=" + std::to_string(ell) + ": f0 f1 display fails");
            }
        }
        {
            AxiomSet kr1 = AxiomSet::kr(cd, 1);
            AxiomSet ax = AxiomSet::free(kr1.alg, kr1.base_h);
            std::array<int, 5> p{2, 1, 1, 1, 1};
            Word lhs = epow_word(cd, si, sj, p);
            lhs.insert(lhs.begin(), eL(2));
            Word tail = epow_word(cd, si, sj, std::array<int, 5>{p[0], p[1], p[2], 0, 0});
            Word w1{eL(2, p[3] + 1), eL(1, 1)};
            for (const Letter& l : tail) w1.push_back(l);
            std::array<int, 5> p4up = p;
            p4up[3] += 1;
            FormalExpr rhs{Monomial{QRat(1), w1}, Monomial{qint(p[3] - p[4] + 1, cd.D), epow_word(cd, si, sj, p4up)}};
            auto eq = prove_equal(FormalExpr{Monomial{QRat(1), lhs}}, rhs, ax);
            rep.merge_check(eq.has_value() && *eq, type_name(t) + ": appendix first step fails");
        }
    }

    // oracle equivalence: formal inner vs concrete module forms
    {
        ModuleRep m = sl2_irrep(3);
        SparseMat g = shapovalov(m);
        AxiomSet ax = AxiomSet::highest_weight(m.alg, {3});
        for (const Word& x : all_words(1, max_len)) {
            InnerEngine eng(ax);
            InnerValue v = eng.inner(x, x);
            bool ok = v.reduced() &&
                      v.value == gram_value(g, apply_word(m, x, SparseVec::unit(0)), apply_word(m, x, SparseVec::unit(0)));
            rep.merge_check(ok, "sl2 oracle equivalence fails at " + word_str(x));
            if (!ok) break;
        }
    }
    {
        ModuleRep m = rank2_module(Rank2::A2, 1, 1);
        SparseMat g = shapovalov(m);
        AxiomSet ax = AxiomSet::highest_weight(m.alg, {1, 1});
        for (const Word& x : all_words(2, max_len)) {
            InnerEngine eng(ax);
            InnerValue v = eng.inner(x, x);
            bool ok = v.reduced() &&
                      v.value == gram_value(g, apply_word(m, x, SparseVec::unit(0)), apply_word(m, x, SparseVec::unit(0)));
            rep.merge_check(ok, "A2 oracle equivalence fails at " + word_str(x));
            if (!ok) break;
        }
    }
    for (int ell : {1, 2}) {
        A1KRFixture fx = a1_kr_fixture(ell);
        AxiomSet ax = AxiomSet::kr_a1(ell);
        long reduced_count = 0;
        for (const Word& x : all_words(2, max_len)) {
            InnerEngine eng(ax);
            InnerValue v = eng.inner(x, x);
            if (!v.reduced()) continue;  // evaluation-parameter-dependent pairings stay symbolic
            ++reduced_count;
            bool ok = v.value == gram_value(fx.gram, apply_word(fx.module, x, SparseVec::unit(0)),
                                            apply_word(fx.module, x, SparseVec::unit(0)));
            rep.merge_check(ok, "A1 fixture oracle equivalence fails at " + word_str(x));
            if (!ok) break;
        }
        rep.merge_check(reduced_count >= 100, "A1 fixture: too few pairings reduced");
    }
    return rep;
}

inline std::vector<Report> run_all_suites(int ell_max = 6, int threads = 1,
                                          const std::vector<TypeTag>& types = default_types()) {
    return {suite_table1(types),
            suite_sequences(types),
            suite_branching(ell_max, types),
            suite_m_identities(4, 3, 2, 2, threads, types),
            suite_commutation(),
            suite_pairing(std::min(ell_max, 4)),
            suite_braid(),
            suite_straighten(5, types)};
}

}  // namespace krkit
