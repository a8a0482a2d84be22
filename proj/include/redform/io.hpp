#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "redform/diffsys.hpp"
#include "redform/error.hpp"
#include "redform/expr.hpp"
#include "redform/reduction.hpp"

namespace redform {

using json = nlohmann::ordered_json;

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

namespace detail {

inline std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// Position of the quoted literal in the source text, searching from `from`.
inline std::size_t find_literal(std::string_view text, const std::string& literal, std::size_t from) {
    std::string quoted = json(literal).dump();
    std::size_t at = text.find(quoted, from);
    return at == std::string_view::npos ? text.find(quoted) : at;
}

}  // namespace detail

/// Parses a system file { "var": "x", "matrix": [[expr, ...], ...] }.
/// Errors carry the line and column in `text`.
inline LinearDiffSystem parse_system(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        auto cut = msg.find("syntax error");
        throw ParseError("invalid JSON: " + (cut == std::string::npos ? msg : msg.substr(cut)), line, col);
    }
    auto fail = [&](const std::string& what) { throw ParseError(what, 1, 1); };
    if (!doc.is_object()) fail("system file must be a JSON object");
    std::string var = "x";
    if (doc.contains("var")) {
        if (!doc["var"].is_string()) fail("\"var\" must be a string");
        var = doc["var"].get<std::string>();
        if (var.empty() || var == "i" || !std::isalpha(static_cast<unsigned char>(var[0])))
            fail("\"var\" must be an identifier other than i");
        for (char c : var)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') fail("\"var\" must be an identifier other than i");
    }
    if (!doc.contains("matrix") || !doc["matrix"].is_array()) fail("missing \"matrix\" array");
    const auto& rows = doc["matrix"];
    const std::size_t n = rows.size();
    if (n == 0) fail("matrix must be nonempty");
    FieldMatrix A(n, n);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            fail("matrix row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = rows[i][j];
            std::string expr;
            if (cell.is_string()) expr = cell.get<std::string>();
            else if (cell.is_number_integer()) expr = cell.dump();
            else fail("matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must be a string");
            std::size_t at = cell.is_string() ? detail::find_literal(text, expr, cursor) : std::string_view::npos;
            if (at != std::string_view::npos) cursor = at + 1;
            try {
                A(i, j) = parse_ratfunc(expr, var);
            } catch (const ParseError& e) {
                auto [line, col] = at == std::string_view::npos ? std::pair<int, int>{1, 1}
                                                                 : detail::line_column(text, at + 1);
                throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + e.reason(),
                                 line, col + e.column() - 1);
            }
        }
    }
    return LinearDiffSystem(std::move(A), var);
}

inline LinearDiffSystem read_system(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return parse_system(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.reason(), e.line(), e.column());
    }
}

inline json to_json(const RatVector& v, const std::string& var) {
    json a = json::array();
    for (const auto& f : v) a.push_back(f.str(var));
    return a;
}

inline json to_json(const ConstVector& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(c.str());
    return a;
}

inline json to_json(const FieldMatrix& m, const std::string& var) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str(var));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const ConstMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

/// The system file format; parse_system(dump) reproduces the system.
inline json system_json(const LinearDiffSystem& sys) {
    json j;
    j["var"] = sys.var;
    j["matrix"] = to_json(sys.A, sys.var);
    return j;
}

inline std::string format_system(const LinearDiffSystem& sys) { return system_json(sys).dump(2) + "\n"; }

inline json to_json(const WeiNormanDecomposition& d, const std::string& var) {
    json j;
    j["r"] = d.size();
    json coeffs = json::array(), mats = json::array();
    for (std::size_t k = 0; k < d.size(); ++k) {
        coeffs.push_back(d.coeffs[k].str(var));
        mats.push_back(to_json(d.mats[k]));
    }
    j["coeffs"] = std::move(coeffs);
    j["mats"] = std::move(mats);
    return j;
}

inline json to_json(const RationalSolutionBasis& b, const std::string& var) {
    json j;
    j["dimension"] = b.dim();
    json vecs = json::array();
    for (const auto& v : b.vectors) vecs.push_back(to_json(v, var));
    j["vectors"] = std::move(vecs);
    json bounds;
    json factors = json::array();
    for (const auto& f : b.bounds.finite)
        factors.push_back({{"factor", f.factor.str(var)},
                           {"pole_order", f.pole_order},
                           {"exponent_bound", f.exponent_bound},
                           {"flagged", f.flagged}});
    bounds["finite"] = std::move(factors);
    bounds["infinity_pole_order"] = b.bounds.infinity_pole_order;
    bounds["degree_bound"] = b.bounds.degree_bound;
    j["bounds"] = std::move(bounds);
    j["warnings"] = b.warnings;
    return j;
}

inline json to_json(const InvariantSolution& inv, const std::string& var) {
    return {{"construction", inv.construction.str()},
            {"phi", to_json(inv.phi, var)},
            {"z0", inv.z0.str()},
            {"v", to_json(inv.v)},
            {"constant", inv.is_constant()}};
}

inline json to_json(const ReductionCertificate& c, const std::string& var) {
    json j;
    j["verdict"] = c.verdict;
    json cons = json::array();
    for (const auto& e : c.constructions) cons.push_back(e.str());
    j["constructions"] = std::move(cons);
    j["z0"] = c.z0.str();
    j["decomposition"] = to_json(c.decomposition, var);
    json invs = json::array();
    for (const auto& inv : c.invariants) invs.push_back(to_json(inv, var));
    j["invariants"] = std::move(invs);
    json wit = json::array();
    for (const auto& w : c.witnesses)
        wit.push_back({{"matrix", w.matrix}, {"invariant", w.invariant}, {"value", to_json(w.value)}});
    j["witnesses"] = std::move(wit);
    j["warnings"] = c.warnings;
    return j;
}

inline json to_json(const VerificationReport& r, const std::string& var) {
    json j;
    j["passed"] = r.passed();
    j["reduced_matrix"] = to_json(r.transformed.A, var);
    j["certificate"] = to_json(r.certificate, var);
    json tr = json::array();
    for (const auto& t : r.transport)
        tr.push_back({{"invariant", to_json(t.invariant, var)}, {"residual", to_json(t.residual, var)}, {"ok", t.ok}});
    j["transport"] = std::move(tr);
    j["transport_ok"] = r.transport_ok;
    return j;
}

inline json to_json(const SeriesFundamentalMatrix& s) {
    json j;
    j["z0"] = s.z0.str();
    j["order"] = s.order;
    json cs = json::array();
    for (const auto& U : s.coeffs) cs.push_back(to_json(U));
    j["coeffs"] = std::move(cs);
    return j;
}

/// JSON sidecar for an exported polynomial system.
inline json sidecar_json(const PolySystemExport& s) {
    return {{"unknowns", s.unknowns}, {"base_field", s.base_field}, {"var", s.var}, {"equations", s.equations.size()}};
}

}  // namespace redform
