// INI-style scenario files:
//
//   [dimensions]      m = 3, n = 2 (one key per line)
//   [domain]          M = lo,hi, lo,hi, ...   (2m numbers)   N = ... (2n)
//   [metric_g]        g12 = expression  (unset entries default to the
//   [metric_h]        h11 = expression   Kronecker delta; symmetric fill)
//   [map]             pi1 = expression
//   [spinor]          psi1 = ..., alpha1 = ...  (complex allowed)
//   [numerics]        h, order, richardson, grid, tol_conformality,
//                     tol_condition, tol_harmonic, tol_cr
//
// Expression strings use the grammar of expr.hpp with coordinates x1..x9
// (or y1..y9 on the target chart).
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spingeo/scenario.hpp"

namespace spingeo {

struct ScenarioFileError : Error {
    ScenarioFileError(const std::string& file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what) {}
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct IniEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct IniFile {
    std::string path;
    // section -> key -> entry
    std::map<std::string, std::map<std::string, IniEntry>> sections;

    const IniEntry* find(const std::string& sec, const std::string& key) const {
        auto s = sections.find(sec);
        if (s == sections.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        return &k->second;
    }
};

inline IniFile parse_ini(const std::string& path, std::istream& in) {
    IniFile f;
    f.path = path;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ScenarioFileError(path, lineno, "malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw ScenarioFileError(path, lineno, "empty section name");
            f.sections[section];
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) throw ScenarioFileError(path, lineno, "expected key = value");
        if (section.empty()) throw ScenarioFileError(path, lineno, "key outside any section");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ScenarioFileError(path, lineno, "empty key");
        if (f.sections[section].count(key))
            throw ScenarioFileError(path, lineno, "duplicate key '" + key + "'");
        f.sections[section][key] = IniEntry{val, lineno, false};
    }
    return f;
}

inline double parse_number(const IniFile& f, const std::string& sec, const std::string& key,
                           const IniEntry& e) {
    try {
        size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (trim(e.value.substr(used)).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ScenarioFileError(f.path, e.line, "malformed number for " + sec + "." + key);
    }
}

inline std::vector<double> parse_numbers(const IniFile& f, const std::string& sec,
                                         const std::string& key, const IniEntry& e) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ScenarioFileError(f.path, e.line, "empty number in " + sec + "." + key);
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ScenarioFileError(f.path, e.line, "malformed number list for " + sec + "." + key);
        }
    }
    return out;
}

inline Expr parse_entry_expr(const IniFile& f, const std::string& sec, const std::string& key,
                             const IniEntry& e) {
    try {
        return parse_expr(e.value);
    } catch (const ParseError& pe) {
        throw ScenarioFileError(f.path, e.line, sec + "." + key + ": " + pe.what());
    }
}

}  // namespace detail

inline Scenario scenario_from_ini(const std::string& path, std::istream& in) {
    using detail::IniEntry;
    detail::IniFile f = detail::parse_ini(path, in);

    auto require = [&](const std::string& sec, const std::string& key) -> const IniEntry& {
        const IniEntry* e = f.find(sec, key);
        if (!e) throw ScenarioFileError(path, 0, "missing required entry " + sec + "." + key);
        return *e;
    };

    Scenario s;
    s.name = path;
    s.m = static_cast<int>(detail::parse_number(f, "dimensions", "m", require("dimensions", "m")));
    s.n = static_cast<int>(detail::parse_number(f, "dimensions", "n", require("dimensions", "n")));
    if (s.n < 2 || s.n % 2 != 0) throw ScenarioFileError(path, 0, "target dimension n must be even and >= 2");
    if (s.m <= s.n || s.m > 9) throw ScenarioFileError(path, 0, "need n < m <= 9");

    auto read_box = [&](const std::string& key, int dim) {
        const IniEntry& e = require("domain", key);
        const std::vector<double> v = detail::parse_numbers(f, "domain", key, e);
        if (static_cast<int>(v.size()) != 2 * dim)
            throw ScenarioFileError(path, e.line, "domain " + key + " needs " +
                                        std::to_string(2 * dim) + " numbers (lo,hi per axis)");
        Box b;
        for (int a = 0; a < dim; ++a) {
            b.lo.push_back(v[2 * a]);
            b.hi.push_back(v[2 * a + 1]);
            if (!(b.lo[a] < b.hi[a]))
                throw ScenarioFileError(path, e.line, "domain " + key + ": lo must be below hi");
        }
        return b;
    };
    s.box_M = read_box("M", s.m);
    s.box_N = read_box("N", s.n);

    // metrics: unset entries default to the Kronecker delta, symmetric fill
    auto read_metric = [&](const std::string& sec, char letter, int dim, int domain_dim) {
        std::vector<Expr> es(static_cast<size_t>(dim) * dim);
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j) {
                const std::string key = std::string(1, letter) + std::to_string(i) + std::to_string(j);
                const IniEntry* e = f.find(sec, key);
                if (!e) continue;
                es[(i - 1) * dim + (j - 1)] = detail::parse_entry_expr(f, sec, key, *e);
            }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (es[i * dim + j]) continue;
                if (es[j * dim + i]) {
                    es[i * dim + j] = es[j * dim + i];  // symmetric fill
                } else {
                    es[i * dim + j] = parse_expr(i == j ? "1" : "0");
                }
            }
        return Field::matrix(std::move(es), dim, dim, domain_dim);
    };
    s.g = read_metric("metric_g", 'g', s.m, s.m);
    s.h = read_metric("metric_h", 'h', s.n, s.n);

    std::vector<Expr> pis;
    for (int i = 1; i <= s.n; ++i) {
        const IniEntry& e = require("map", "pi" + std::to_string(i));
        pis.push_back(detail::parse_entry_expr(f, "map", "pi" + std::to_string(i), e));
    }
    s.pi = Field::vector(std::move(pis), s.m);

    auto read_spinor = [&](const std::string& stem, int dim, int domain_dim) -> std::optional<Field> {
        std::vector<Expr> es;
        bool any = false;
        for (int i = 1; i <= dim; ++i)
            if (f.find("spinor", stem + std::to_string(i))) any = true;
        if (!any) return std::nullopt;
        for (int i = 1; i <= dim; ++i) {
            const std::string key = stem + std::to_string(i);
            const IniEntry* e = f.find("spinor", key);
            es.push_back(e ? detail::parse_entry_expr(f, "spinor", key, *e) : parse_expr("0"));
        }
        return Field::spinor(std::move(es), domain_dim);
    };
    s.psi = read_spinor("psi", s.base_spinor_dim(), s.n);
    if (s.k() >= 2) s.alpha = read_spinor("alpha", s.fibre_spinor_dim(), s.m);

    s.fd.h = 1e-4 * s.box_M.diameter();
    s.fd.order = 4;
    if (const IniEntry* e = f.find("numerics", "h")) s.fd.h = detail::parse_number(f, "numerics", "h", *e);
    if (const IniEntry* e = f.find("numerics", "order")) {
        const int o = static_cast<int>(detail::parse_number(f, "numerics", "order", *e));
        if (o != 2 && o != 4) throw ScenarioFileError(path, e->line, "order must be 2 or 4");
        s.fd.order = o;
    }
    if (const IniEntry* e = f.find("numerics", "richardson")) {
        const std::string v = detail::trim(e->value);
        if (v == "true" || v == "1") s.fd.richardson = true;
        else if (v == "false" || v == "0") s.fd.richardson = false;
        else throw ScenarioFileError(path, e->line, "richardson must be true or false");
    }
    if (const IniEntry* e = f.find("numerics", "grid"))
        s.grid_per_axis = static_cast<int>(detail::parse_number(f, "numerics", "grid", *e));
    if (s.grid_per_axis < 1 || s.grid_per_axis > 9)
        throw ScenarioFileError(path, 0, "grid points per axis must be in 1..9");
    if (const IniEntry* e = f.find("numerics", "tol_conformality"))
        s.tol.conformality = detail::parse_number(f, "numerics", "tol_conformality", *e);
    if (const IniEntry* e = f.find("numerics", "tol_condition"))
        s.tol.condition = detail::parse_number(f, "numerics", "tol_condition", *e);
    if (const IniEntry* e = f.find("numerics", "tol_harmonic"))
        s.tol.harmonicity = detail::parse_number(f, "numerics", "tol_harmonic", *e);

    s.validate_shapes();
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file '" + path + "'");
    return scenario_from_ini(path, in);
}

}  // namespace spingeo
