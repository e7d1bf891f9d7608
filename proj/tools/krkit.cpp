// krkit: exact verification toolkit for the near-adjoint level-l module
// combinatorics over the five exceptional affine types. Subcommands dump
// root data, search the reflection sequences, tabulate the classical
// branching, run the verification suites, and evaluate formal norms.
//
// Exit codes: 0 all requested checks pass, 1 any failure, 2 usage error.
#include <krkit/suites.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace krkit;
using nlohmann::json;

namespace {

int env_threads() {
    const char* v = std::getenv("KRKIT_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

std::vector<TypeTag> parse_types(const std::string& names) {
    if (names == "all") return default_types();
    std::vector<TypeTag> out;
    std::string cur;
    std::stringstream ss(names);
    while (std::getline(ss, cur, ',')) out.push_back(type_from_name(cur));
    if (out.empty()) throw std::domain_error("empty type list");
    return out;
}

std::string weight_str(const CartanData& cd, const Weight& w) {
    std::string s;
    for (int i = 1; i <= cd.n; ++i) {
        int c = cd.varpi_coord(w, i);
        if (c == 0) continue;
        if (!s.empty() || c < 0) s += (c < 0 ? "-" : "+");
        if (std::abs(c) != 1) s += std::to_string(std::abs(c)) + "*";
        s += "w" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::string root_str(const CartanData& cd, const Root& r) {
    std::string s;
    for (int i = 0; i <= cd.n; ++i) {
        int c = r.alpha[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!s.empty() || c < 0) s += (c < 0 ? "-" : "+");
        if (std::abs(c) != 1) s += std::to_string(std::abs(c)) + "*";
        s += "a" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

json weight_json(const CartanData& cd, const Weight& w) {
    json coords = json::object();
    for (int i = 1; i <= cd.n; ++i)
        if (cd.varpi_coord(w, i) != 0) coords[std::to_string(i)] = cd.varpi_coord(w, i);
    return json{{"varpi_coords", coords}, {"display", weight_str(cd, w)}};
}

json root_json(const CartanData& cd, const Root& r) {
    json coords = json::object();
    for (int i = 0; i <= cd.n; ++i)
        if (r.alpha[static_cast<size_t>(i)] != 0) coords[std::to_string(i)] = r.alpha[static_cast<size_t>(i)];
    return json{{"alpha_coords", coords}, {"display", root_str(cd, r)}};
}

json report_json(const Report& rep) {
    return json{{"suite", rep.suite},
                {"status", rep.status},
                {"checks", rep.checks},
                {"counterexamples", rep.counterexamples}};
}

int emit_reports(const std::vector<Report>& reps) {
    json out = json::array();
    bool all_ok = true;
    for (const Report& r : reps) {
        out.push_back(report_json(r));
        all_ok = all_ok && r.ok();
    }
    std::cout << out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int cmd_cartan(const std::string& type_name_arg) {
    const CartanData& cd = CartanData::get(type_from_name(type_name_arg));
    json j;
    j["type"] = type_name(cd.tag);
    j["rank"] = cd.n;
    j["D"] = cd.D;
    j["c_g"] = cd.c_g;
    j["cartan_matrix"] = cd.c;
    j["node_power"] = cd.node_power;  // q_i = q_s^{node_power[i]}
    j["marks"] = cd.marks;
    j["dual_marks"] = cd.dual_marks;
    j["J"] = cd.J;
    j["theta1"] = {{"root", root_json(cd, cd.theta(CartanData::Which::theta1).root)},
                   {"varpi", weight_json(cd, cd.theta(CartanData::Which::theta1).varpi_expansion)}};
    j["thetaJ"] = {{"root", root_json(cd, cd.theta(CartanData::Which::thetaJ).root)},
                   {"varpi", weight_json(cd, cd.theta(CartanData::Which::thetaJ).varpi_expansion)}};
    j["gamma1"] = weight_json(cd, cd.gamma(1));
    j["gamma2"] = weight_json(cd, cd.gamma(2));
    j["positive_roots_g0"] = cd.positive_roots_g0().size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_seq(const std::string& type_name_arg) {
    const CartanData& cd = CartanData::get(type_from_name(type_name_arg));
    json j;
    j["type"] = type_name(cd.tag);
    bool all_ok = true;
    for (SeqKind kind : {SeqKind::I, SeqKind::J}) {
        json list = json::array();
        for (const WeylWord& w : find_sequences(cd, kind)) {
            LemmaReport lr = verify_fundamental_properties(cd, w, kind);
            all_ok = all_ok && lr.ok;
            list.push_back(json{{"word", w.str()},
                                {"letters_first_applied_first", w.letters},
                                {"length", w.size()},
                                {"checks", lr.ok ? "pass" : "fail"},
                                {"failures", lr.failures}});
        }
        j[kind == SeqKind::I ? "i_sequences" : "j_sequences"] = list;
    }
    std::cout << j.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int cmd_branch(const std::string& type_name_arg, int ell, const std::string& format) {
    const CartanData& cd = CartanData::get(type_from_name(type_name_arg));
    std::vector<ExpVec6> S = enum_S(ell);
    BigInt total = 0;
    json rows = json::array();
    std::string csv;
    for (const ExpVec6& p : S) {
        Weight w = add(wt(cd, p), scale(ell, cd.varpi(2)));
        BigInt dim = weyl_dim(cd, w);
        total += dim;
        RiggedTuple r = phi(p);
        if (format == "csv") {
            std::string line;
            for (int v : p) line += std::to_string(v) + ",";
            line += "\"" + weight_str(cd, w) + "\"," + dim.get_str() + ",";
            for (size_t k = 0; k < 5; ++k) line += std::to_string(r[k]) + (k + 1 < 5 ? ";" : "");
            csv += line + "\n";
        } else {
            rows.push_back(json{{"p", p}, {"weight", weight_str(cd, w)}, {"dim", dim.get_str()}, {"phi", r}});
        }
    }
    if (format == "csv") {
        std::cout << "p1,p2,p3,p4,p5,p6,weight,dim,phi\n" << csv;
        std::cout << "# |S_l| = " << S.size() << ", total dim = " << total.get_str() << "\n";
    } else {
        json j;
        j["type"] = type_name(cd.tag);
        j["ell"] = ell;
        j["rows"] = rows;
        j["summary"] = json{{"count", S.size()}, {"total_dim", total.get_str()}};
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_norm(const std::string& expr, const std::string& type_name_arg, int ell, const std::string& axioms,
             long fuel) {
    const CartanData& cd = CartanData::get(type_from_name(type_name_arg));
    if (axioms != "kr") throw std::domain_error("only the 'kr' axiom set is registered");
    AxiomSet ax = AxiomSet::kr(cd, ell);
    Word w = parse_word(expr);
    InnerEngine eng(ax, fuel);
    InnerValue v = eng.inner(w, w);
    json j;
    j["expression"] = (w.empty() ? std::string() : word_str(w) + " ") + "w";
    j["type"] = type_name(cd.tag);
    j["ell"] = ell;
    j["norm_squared"] = v.value.str(cd.D);
    if (!v.reduced()) {
        json res = json::array();
        for (const auto& [c, a] : v.residuals)
            res.push_back(json{{"coefficient", c.str(cd.D)},
                               {"left", word_str(a.x) + " w"},
                               {"right", word_str(a.y) + " w"}});
        j["residuals"] = res;
        j["status"] = "partial";
    } else {
        j["status"] = "reduced";
    }
    j["trace"] = eng.trace().steps;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for near-adjoint level-l module combinatorics"};
    app.require_subcommand(1);
    app.set_config("--config");
    int threads = env_threads();

    std::string cartan_type, seq_type, branch_type = "E6a1", branch_format = "json";
    int branch_ell = 1;
    auto* c_cartan = app.add_subcommand("cartan", "dump the root datum of one type as JSON");
    c_cartan->add_option("type", cartan_type, "one of E6a1,E7a1,E8a1,F4a1,E6a2")->required();
    auto* c_seq = app.add_subcommand("seq", "list the i/j sequences with their verification report");
    c_seq->add_option("type", seq_type)->required();
    auto* c_branch = app.add_subcommand("branch", "tabulate S_l with weights, dimensions and fibers");
    c_branch->add_option("type", branch_type)->required();
    c_branch->add_option("--ell", branch_ell, "level")->check(CLI::PositiveNumber);
    c_branch->add_option("--format", branch_format)->check(CLI::IsMember({"json", "csv"}));

    auto* c_verify = app.add_subcommand("verify", "run verification suites");
    c_verify->require_subcommand(1);
    int vb_bound = 4, vb_ellmax = 3;
    auto* v_mid = c_verify->add_subcommand("m-identities", "split-exponent identities and the coproduct oracle");
    v_mid->add_option("--bound", vb_bound)->check(CLI::Range(2, 6));
    v_mid->add_option("--ell-max", vb_ellmax)->check(CLI::PositiveNumber);
    std::string vm_suite = "all";
    auto* v_mod = c_verify->add_subcommand("modules", "module-level identity suites");
    v_mod->add_option("--suite", vm_suite)->check(CLI::IsMember({"commutation", "pairing", "braid", "a1kr", "all"}));
    auto* v_str = c_verify->add_subcommand("straighten", "the formal rewriting suite");
    std::string va_types = "all";
    int va_ellmax = 6;
    auto* v_all = c_verify->add_subcommand("all", "every registered suite");
    v_all->add_option("--types", va_types, "comma-separated type tags or 'all'");
    v_all->add_option("--ell-max", va_ellmax)->check(CLI::PositiveNumber);

    std::string norm_expr, norm_type = "E6a1", norm_axioms = "kr";
    int norm_ell = 1;
    long norm_fuel = 100000;
    auto* c_norm = app.add_subcommand("norm", "evaluate the squared norm of a monomial applied to w");
    c_norm->add_option("expression", norm_expr, "e.g. \"e2 e1 e0 w\"")->required();
    c_norm->add_option("--type", norm_type);
    c_norm->add_option("--ell", norm_ell)->check(CLI::PositiveNumber);
    c_norm->add_option("--axioms", norm_axioms);
    c_norm->add_option("--fuel", norm_fuel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (c_cartan->parsed()) return cmd_cartan(cartan_type);
        if (c_seq->parsed()) return cmd_seq(seq_type);
        if (c_branch->parsed()) return cmd_branch(branch_type, branch_ell, branch_format);
        if (c_norm->parsed()) return cmd_norm(norm_expr, norm_type, norm_ell, norm_axioms, norm_fuel);
        if (v_mid->parsed()) return emit_reports({suite_m_identities(vb_bound, vb_ellmax, 2, 2, threads)});
        if (v_str->parsed()) return emit_reports({suite_straighten()});
        if (v_mod->parsed()) {
            std::vector<Report> reps;
            if (vm_suite == "commutation" || vm_suite == "all") reps.push_back(suite_commutation());
            if (vm_suite == "pairing" || vm_suite == "all") reps.push_back(suite_pairing());
            if (vm_suite == "braid" || vm_suite == "all") reps.push_back(suite_braid());
            if (vm_suite == "a1kr" || vm_suite == "all") reps.push_back(suite_a1kr());
            return emit_reports(reps);
        }
        if (v_all->parsed()) return emit_reports(run_all_suites(va_ellmax, threads, parse_types(va_types)));
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json j = json::array();
        j.push_back(json{{"status", "partial"}, {"diagnostic", e.what()}});
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return 2;
}
