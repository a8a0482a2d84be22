#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "redform/io.hpp"
#include "redform/redform.hpp"

#ifndef REDFORM_DATA_DIR
#define REDFORM_DATA_DIR "data"
#endif

namespace redform::cli {

enum ExitCode : int { kOk = 0, kMathFailure = 1, kInputError = 2 };

struct Options {
    std::string system_path;
    std::vector<std::string> constructions;
    std::string bounds;
    std::string z0;
    std::size_t order = 8;
    std::size_t subst = 0;
    bool expect_reduced = false;
    std::string out_path;
    std::string p_path;
    std::string example;
    std::string data_dir = REDFORM_DATA_DIR;
};

inline BoundConfig parse_bounds(const std::string& text) {
    BoundConfig cfg;
    if (text.empty()) return cfg;
    std::vector<std::size_t> vals;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            part.size() > 6)
            throw InputError("--bounds expects three nonnegative integers w,s,c; got '" + text + "'");
        vals.push_back(std::stoul(part));
    }
    if (vals.size() != 3) throw InputError("--bounds expects three nonnegative integers w,s,c; got '" + text + "'");
    cfg.pole_exponent_window = vals[0];
    cfg.extra_denominator_slack = vals[1];
    cfg.numerator_degree_cap = vals[2];
    return cfg;
}

inline GaussRational parse_constant(const std::string& text, const std::string& flag) {
    RatFunc f;
    try {
        f = parse_ratfunc(text, "x");
    } catch (const ParseError& e) {
        throw ParseError(flag + ": " + e.reason(), e.line(), e.column());
    }
    if (!f.is_constant()) throw InputError(flag + " expects a constant, got '" + text + "'");
    return f.constant_value();
}

inline std::vector<ConstructionExpr> parse_constructions(const std::vector<std::string>& texts) {
    std::vector<ConstructionExpr> out;
    for (const auto& t : texts) {
        try {
            out.push_back(parse_construction(t));
        } catch (const ParseError& e) {
            throw ParseError("--construction '" + t + "': " + e.reason(), e.line(), e.column());
        }
    }
    if (out.empty()) out.push_back(ConstructionExpr::sym(2, ConstructionExpr::id()));
    return out;
}

/// P file in the system format; must be square of the system's dimension
/// and nonsingular.
inline FieldMatrix read_gauge(const std::string& path, const LinearDiffSystem& sys) {
    if (path.empty()) throw InputError("--p <matrix file> is required");
    LinearDiffSystem p = read_system(path);
    if (p.var != sys.var) throw InputError(path + ": variable '" + p.var + "' differs from the system's '" + sys.var + "'");
    if (p.dim() != sys.dim())
        throw InputError(path + ": gauge matrix is " + std::to_string(p.dim()) + "x" + std::to_string(p.dim()) +
                         ", system is " + std::to_string(sys.dim()) + "x" + std::to_string(sys.dim()));
    RatFunc det = determinant(p.A);
    if (det.is_zero()) throw InputError(path + ": gauge matrix is singular (determinant " + det.str(sys.var) + ")");
    return p.A;
}

inline LinearDiffSystem load_system(const Options& o) {
    if (o.system_path.empty()) throw InputError("a system file is required");
    LinearDiffSystem sys = read_system(o.system_path);
    if (o.subst > 0) sys = substitute_power(sys, o.subst, sys.var == "t" ? "s" : "t");
    return sys;
}

inline std::optional<GaussRational> load_z0(const Options& o, const LinearDiffSystem& sys) {
    if (o.z0.empty()) return std::nullopt;
    GaussRational z = parse_constant(o.z0, "--z0");
    if (common_denominator(sys.A).eval(z).is_zero())
        throw InputError("--z0 " + z.str() + " is a singular point of the system");
    return z;
}

/// Writes JSON to --out (with a one-line note on `out`) or to `out`.
inline void emit(const Options& o, const json& j, std::ostream& out, const std::string& summary) {
    if (o.out_path.empty()) {
        out << j.dump(2) << "\n";
    } else {
        write_text_file(o.out_path, j.dump(2) + "\n");
        out << summary << " (written to " << o.out_path << ")\n";
    }
}

inline json basis_report(const ConstructionExpr& e, const RationalSolutionBasis& b, const std::string& var) {
    json j;
    j["construction"] = e.str();
    json body = to_json(b, var);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

inline json export_report(const PolySystemExport& s) {
    json j = sidecar_json(s);
    json eqs = json::array();
    for (const auto& e : s.equations) eqs.push_back(e.str(s.unknowns, s.var));
    j["equations"] = std::move(eqs);
    return j;
}

inline json singular_report(const LinearDiffSystem& sys) {
    json a = json::array();
    for (const auto& sp : singular_points(sys)) a.push_back({{"factor", sp.factor.str(sys.var)}, {"pole_order", sp.pole_order}});
    return a;
}

/// The worked example with the dihedral Galois group: invariants, system (S),
/// and the reduction over x = t^2.
inline json dihedral_workflow(const std::string& data_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(data_dir);
    LinearDiffSystem sys = read_system((dir / "dihedral.json").string());
    const auto sym2 = ConstructionExpr::sym(2, ConstructionExpr::id());
    const auto sym2det = ConstructionExpr::sym(2, ConstructionExpr::ext(2, ConstructionExpr::id()));
    json r;
    r["example"] = "dihedral";
    r["system"] = system_json(sys);
    r["singular_points"] = singular_report(sys);
    const GaussRational z0 = pick_ordinary_point(sys);
    r["z0"] = z0.str();
    std::vector<InvariantSolution> invariants;
    json inv_json = json::array();
    for (const auto& e : {sym2, sym2det}) {
        auto b = rational_solutions(apply_algebra(e, sys.A));
        inv_json.push_back(basis_report(e, b, sys.var));
        for (auto& phi : b.vectors) invariants.push_back(make_invariant(e, std::move(phi), z0));
    }
    r["invariants"] = std::move(inv_json);
    r["original"] = to_json(is_reduced(sys, {sym2}), sys.var);
    r["system_S"] = export_report(build_system_S(invariants, sys.dim(), sys.var));
    LinearDiffSystem t = substitute_power(sys, 2, "t");
    r["substituted"] = system_json(t);
    LinearDiffSystem pt = read_system((dir / "dihedral_gauge_t.json").string());
    auto first = verify_reduction(t, pt.A, {sym2});
    r["reduction"] = to_json(first, t.var);
    LinearDiffSystem pd = read_system((dir / "dihedral_gauge_diag.json").string());
    auto second = verify_reduction(first.transformed, pd.A, {sym2});
    r["diagonal_reduction"] = to_json(second, t.var);
    return r;
}

/// The worked example with Galois group SO(3): trace normalization, the
/// degree-2 invariant as a quadratic form, system (S), and the reduction.
inline json so3_workflow(const std::string& data_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(data_dir);
    LinearDiffSystem sys = read_system((dir / "so3.json").string());
    const auto sym2 = ConstructionExpr::sym(2, ConstructionExpr::id());
    json r;
    r["example"] = "so3";
    r["system"] = system_json(sys);
    r["singular_points"] = singular_report(sys);
    const GaussRational z0 = pick_ordinary_point(sys);
    r["z0"] = z0.str();
    auto tn = normalize_trace(sys);
    r["trace_normalization"] = {{"ok", tn.ok}, {"P", tn.ok ? to_json(tn.P, sys.var) : json()}, {"message", tn.message}};
    auto b = rational_solutions(apply_algebra(sym2, sys.A));
    r["invariants"] = json::array({basis_report(sym2, b, sys.var)});
    r["original"] = to_json(is_reduced(sys, {sym2}), sys.var);
    std::vector<InvariantSolution> invariants;
    for (const auto& phi : b.vectors) invariants.push_back(make_invariant(sym2, phi, z0));
    if (!b.vectors.empty()) {
        FieldMatrix S = quadform_from_invariant(b.vectors[0], sys.dim());
        auto qd = gauss_diagonalize(S);
        RatVector diag;
        for (std::size_t k = 0; k < sys.dim(); ++k) diag.push_back(qd.D(k, k));
        r["quadratic_form"] = {{"S", to_json(S, sys.var)}, {"Q", to_json(qd.Q, sys.var)}, {"diagonal", to_json(diag, sys.var)}};
        r["system_S"] = export_report(build_system_S(invariants, sys.dim(), sys.var));
    }
    LinearDiffSystem p = read_system((dir / "so3_gauge.json").string());
    r["reduction"] = to_json(verify_reduction(sys, p.A, {sym2}), sys.var);
    return r;
}

inline int run_example(const Options& o, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    json report;
    if (o.example == "dihedral") report = dihedral_workflow(o.data_dir);
    else if (o.example == "so3") report = so3_workflow(o.data_dir);
    else throw InputError("unknown example '" + o.example + "' (expected dihedral or so3)");
    const std::string text = report.dump(2) + "\n";
    if (!o.out_path.empty()) write_text_file(o.out_path, text);
    const std::string golden_path = (fs::path(o.data_dir) / "golden" / (o.example + ".json")).string();
    const std::string golden = read_text_file(golden_path);
    const json& red = report["reduction"];
    out << o.example << ": reduced matrix " << red["reduced_matrix"].dump() << "\n";
    out << o.example << ": verdict " << (red["certificate"]["verdict"].get<bool>() ? "true" : "false")
        << ", invariant transport " << (red["transport_ok"].get<bool>() ? "ok" : "failed") << "\n";
    if (text == golden) {
        out << o.example << ": report matches " << golden_path << "\n";
        return red["passed"].get<bool>() ? kOk : kMathFailure;
    }
    std::istringstream a(text), g(golden);
    std::string la, lg;
    for (std::size_t line = 1;; ++line) {
        bool ha = static_cast<bool>(std::getline(a, la));
        bool hg = static_cast<bool>(std::getline(g, lg));
        if (!ha && !hg) break;
        if (!ha || !hg || la != lg) {
            err << o.example << ": report differs from " << golden_path << " at line " << line << "\n"
                << "  expected: " << (hg ? lg : "<end of file>") << "\n"
                << "  actual:   " << (ha ? la : "<end of file>") << "\n";
            break;
        }
    }
    return kMathFailure;
}

/// Runs one command line (without the program name). Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Reduced-form decisions for linear differential systems Y' = A Y over Q(i)(x)", "redform"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    auto add_system = [&](CLI::App* s) { s->add_option("system", o.system_path, "system file (JSON)")->required(); };
    auto add_constructions = [&](CLI::App* s) {
        s->add_option("--construction", o.constructions, "construction DSL, repeatable (default sym(2,id))");
    };
    auto add_bounds = [&](CLI::App* s) { s->add_option("--bounds", o.bounds, "window,slack,cap for the ansatz"); };
    auto add_subst = [&](CLI::App* s) {
        s->add_option("--subst", o.subst, "replace x by t^k before running")->check(CLI::Range(1, 64));
    };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "output file"); };

    std::map<std::string, std::function<int()>> handlers;
    auto sub = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

    auto* wn = sub("wei-norman", "Wei-Norman decomposition of the system matrix");
    add_system(wn), add_subst(wn), add_out(wn);
    handlers["wei-norman"] = [&] {
        auto sys = load_system(o);
        auto d = decompose(sys);
        json j = to_json(d, sys.var);
        auto span = bracket_closure(d.mats);
        j["lie_span_dimension"] = span.dim();
        emit(o, j, out, "r = " + std::to_string(d.size()));
        return kOk;
    };

    auto* cons = sub("construct", "matrices of constructions: const(A), and Const(P) with --p");
    add_system(cons), add_constructions(cons), add_subst(cons), add_out(cons);
    cons->add_option("--p", o.p_path, "matrix file for the group action");
    handlers["construct"] = [&] {
        auto sys = load_system(o);
        std::optional<FieldMatrix> P;
        if (!o.p_path.empty()) P = read_gauge(o.p_path, sys);
        json arr = json::array();
        for (const auto& e : parse_constructions(o.constructions)) {
            json j;
            j["construction"] = e.str();
            j["dimension"] = dimension(e, sys.dim());
            j["algebra"] = system_json(LinearDiffSystem(apply_algebra(e, sys.A), sys.var));
            if (P) j["group"] = to_json(apply_group(e, *P), sys.var);
            arr.push_back(std::move(j));
        }
        emit(o, arr, out, std::to_string(arr.size()) + " construction(s)");
        return kOk;
    };

    auto* rs = sub("ratsols", "rational solutions of constructed systems");
    add_system(rs), add_constructions(rs), add_bounds(rs), add_subst(rs), add_out(rs);
    handlers["ratsols"] = [&] {
        auto sys = load_system(o);
        auto cfg = parse_bounds(o.bounds);
        json arr = json::array();
        std::string summary;
        for (const auto& e : parse_constructions(o.constructions)) {
            auto b = rational_solutions(apply_algebra(e, sys.A), cfg);
            summary += (summary.empty() ? "" : ", ") + e.str() + ": dimension " + std::to_string(b.dim());
            arr.push_back(basis_report(e, b, sys.var));
        }
        emit(o, arr, out, summary);
        return kOk;
    };

    auto* cr = sub("check-reduced", "certificate for reduced form relative to the constructions");
    add_system(cr), add_constructions(cr), add_bounds(cr), add_subst(cr), add_out(cr);
    cr->add_option("--z0", o.z0, "evaluation point (ordinary)");
    cr->add_flag("--expect-reduced", o.expect_reduced, "exit 1 unless the verdict is true");
    handlers["check-reduced"] = [&] {
        auto sys = load_system(o);
        auto cert = is_reduced(sys, parse_constructions(o.constructions), parse_bounds(o.bounds), load_z0(o, sys));
        emit(o, to_json(cert, sys.var), out, std::string("verdict ") + (cert.verdict ? "true" : "false"));
        return o.expect_reduced && !cert.verdict ? kMathFailure : kOk;
    };

    auto* ga = sub("gauge", "P^-1 (A P - P')");
    add_system(ga), add_subst(ga), add_out(ga);
    ga->add_option("--p", o.p_path, "gauge matrix file")->required();
    handlers["gauge"] = [&] {
        auto sys = load_system(o);
        auto res = gauge_transform(read_gauge(o.p_path, sys), sys);
        emit(o, system_json(res), out, "gauged system");
        return kOk;
    };

    auto* se = sub("series", "canonical fundamental series matrix at z0");
    add_system(se), add_subst(se), add_out(se);
    se->add_option("--z0", o.z0, "expansion point (default: smallest ordinary nonnegative integer)");
    se->add_option("--order", o.order, "truncation order")->check(CLI::Range(0, 500));
    handlers["series"] = [&] {
        auto sys = load_system(o);
        auto z = load_z0(o, sys);
        auto s = series_solution(sys, z ? *z : pick_ordinary_point(sys), o.order);
        emit(o, to_json(s), out, "series to order " + std::to_string(o.order));
        return kOk;
    };

    auto* su = sub("subst", "the system in t with x = t^k");
    add_system(su), add_out(su);
    su->add_option("--subst", o.subst, "exponent k")->required()->check(CLI::Range(1, 64));
    handlers["subst"] = [&] {
        auto sys = load_system(o);
        emit(o, system_json(sys), out, "substituted system");
        return kOk;
    };

    auto* ex = sub("export-s", "polynomial system for the reduction matrix");
    add_system(ex), add_constructions(ex), add_bounds(ex), add_subst(ex), add_out(ex);
    ex->add_option("--z0", o.z0, "evaluation point (ordinary)");
    handlers["export-s"] = [&] {
        auto sys = load_system(o);
        auto z = load_z0(o, sys);
        const GaussRational z0 = z ? *z : pick_ordinary_point(sys);
        auto cfg = parse_bounds(o.bounds);
        std::vector<InvariantSolution> invs;
        for (const auto& e : parse_constructions(o.constructions))
            for (auto& phi : rational_solutions(apply_algebra(e, sys.A), cfg).vectors)
                invs.push_back(make_invariant(e, std::move(phi), z0));
        if (invs.empty()) {
            err << "export-s: the constructions have no rational invariants\n";
            return kMathFailure;
        }
        auto s = build_system_S(invs, sys.dim(), sys.var);
        if (o.out_path.empty()) {
            out << s.text();
        } else {
            write_text_file(o.out_path, s.text());
            write_text_file(o.out_path + ".json", sidecar_json(s).dump(2) + "\n");
            out << s.equations.size() << " equations (written to " << o.out_path << " and " << o.out_path << ".json)\n";
        }
        return kOk;
    };

    auto* vr = sub("verify-reduction", "gauge by P, certify, and check invariant transport");
    add_system(vr), add_constructions(vr), add_bounds(vr), add_subst(vr), add_out(vr);
    vr->add_option("--p", o.p_path, "reduction matrix file")->required();
    handlers["verify-reduction"] = [&] {
        auto sys = load_system(o);
        auto rep = verify_reduction(sys, read_gauge(o.p_path, sys), parse_constructions(o.constructions),
                                    parse_bounds(o.bounds));
        emit(o, to_json(rep, sys.var), out, std::string("verification ") + (rep.passed() ? "passed" : "failed"));
        return rep.passed() ? kOk : kMathFailure;
    };

    auto* eg = sub("example", "run a worked example and compare with its golden report");
    eg->add_option("name", o.example, "dihedral | so3")->required();
    eg->add_option("--data", o.data_dir, "directory with example inputs and golden reports");
    add_out(eg);
    handlers["example"] = [&] { return run_example(o, out, err); };

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "redform: " << e.what() << "\n";
        return kInputError;
    }

    try {
        for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())();
    } catch (const InputError& e) {
        err << "redform: " << e.what() << "\n";
        return kInputError;
    } catch (const MathError& e) {
        err << "redform: " << e.what() << "\n";
        return kMathFailure;
    }
    return kInputError;
}

}  // namespace redform::cli
