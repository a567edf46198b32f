// Deterministic JSON reports for the command-line tool. Keys keep insertion
// order and floats print with 12 significant digits, so identical inputs
// yield byte-identical output.
#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "spingeo/corpus.hpp"
#include "spingeo/morphism.hpp"

namespace spingeo {

class Json {
  public:
    enum class Kind { Null, Bool, Int, Num, Str, Arr, Obj };

    Json() : kind_(Kind::Null) {}
    Json(bool b) : kind_(Kind::Bool), bool_(b) {}
    Json(int v) : kind_(Kind::Int), int_(v) {}
    Json(long v) : kind_(Kind::Int), int_(v) {}
    Json(double v) : kind_(Kind::Num), num_(v) {}
    Json(const char* s) : kind_(Kind::Str), str_(s) {}
    Json(std::string s) : kind_(Kind::Str), str_(std::move(s)) {}

    static Json array() {
        Json j;
        j.kind_ = Kind::Arr;
        return j;
    }
    static Json object() {
        Json j;
        j.kind_ = Kind::Obj;
        return j;
    }

    Json& push(Json v) {
        arr_.push_back(std::move(v));
        return *this;
    }
    Json& set(const std::string& key, Json v) {
        obj_.emplace_back(key, std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out.push_back('\n');
        return out;
    }

  private:
    static std::string fmt_double(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent) const {
        const std::string pad(static_cast<size_t>(indent) * 2, ' ');
        const std::string pad1(static_cast<size_t>(indent + 1) * 2, ' ');
        switch (kind_) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool: out += bool_ ? "true" : "false"; break;
            case Kind::Int: out += std::to_string(int_); break;
            case Kind::Num: out += fmt_double(num_); break;
            case Kind::Str: escape(out, str_); break;
            case Kind::Arr: {
                if (arr_.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (size_t i = 0; i < arr_.size(); ++i) {
                    out += pad1;
                    arr_[i].write(out, indent + 1);
                    if (i + 1 < arr_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += pad + "]";
                break;
            }
            case Kind::Obj: {
                if (obj_.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (size_t i = 0; i < obj_.size(); ++i) {
                    out += pad1;
                    escape(out, obj_[i].first);
                    out += ": ";
                    obj_[i].second.write(out, indent + 1);
                    if (i + 1 < obj_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += pad + "}";
                break;
            }
        }
    }

    Kind kind_;
    bool bool_ = false;
    long int_ = 0;
    double num_ = 0.0;
    std::string str_;
    std::vector<Json> arr_;
    std::vector<std::pair<std::string, Json>> obj_;
};

// ---------------------------------------------------------------------------
// report assembly

namespace detail {

// complex numbers as compact strings: "0", "-1", "i", "2.5-1i"
inline std::string complex_str(cd v) {
    char buf[80];
    if (v.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12g", v.real());
    } else if (v.real() == 0.0) {
        if (v.imag() == 1.0) return "i";
        if (v.imag() == -1.0) return "-i";
        std::snprintf(buf, sizeof buf, "%.12gi", v.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real(), v.imag());
    }
    return buf;
}

inline Json spinor_json(const VecC& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push(complex_str(c));
    return arr;
}

inline Json matrix_json(const MatC& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push(complex_str(m(i, j)));
        rows.push(std::move(row));
    }
    return rows;
}

inline Json report_skeleton(const std::string& command, const Scenario& s) {
    Json j = Json::object();
    j.set("command", command);
    j.set("scenario", s.name);
    Json grid = Json::object();
    const auto pts = sample_grid(s);
    grid.set("per_axis", s.grid_per_axis).set("points", static_cast<long>(pts.size()));
    j.set("grid", std::move(grid));
    Json fd = Json::object();
    fd.set("h", s.fd.h).set("order", static_cast<long>(s.fd.order));
    j.set("fd", std::move(fd));
    Json tol = Json::object();
    tol.set("conformality", s.tol.conformality)
        .set("condition", s.tol.condition)
        .set("harmonicity", s.tol.harmonicity);
    j.set("tolerances", std::move(tol));
    return j;
}

}  // namespace detail

struct CommandResult {
    Json json;
    int exit_code = 0;
    std::string summary;  // one-line text for --json=false
};

inline PullbackSpec spec_for_scenario(const SpinGeometry& geo, const ChartSpinorField& psi) {
    if (geo.s->alpha)
        return make_pullback_spec(geo, psi,
                                  ChartSpinorField::from_field(*geo.s->alpha, "adapted-M"));
    return make_pullback_spec(geo, psi);
}

inline ChartSpinorField psi_for_scenario(const SpinGeometry& geo) {
    if (geo.s->psi) return ChartSpinorField::from_field(*geo.s->psi, "orthonormal-N");
    // generic smooth default with a nonvanishing target Dirac image
    ChartSpinorField f;
    f.dim = geo.nrep().spinor_dim;
    f.frame_tag = "orthonormal-N";
    f.eval = [dim = f.dim](const VecR& q) {
        VecC v(dim);
        for (int t = 0; t < dim; ++t)
            v[t] = cd(std::exp(0.3 * q[0]) * std::cos(q[1]) + 0.1 * t, q[0] * q[1] + 0.2 * t);
        return v;
    };
    return f;
}

inline CommandResult run_check(const Scenario& s, int witness_count, unsigned seed) {
    const SpinGeometry geo(s);
    validate_metrics(s);
    const PullbackSpec spec = spec_for_scenario(geo, psi_for_scenario(geo));
    std::vector<ChartSpinorField> witnesses;
    if (s.n == 2) {
        try {
            witnesses = make_harmonic_witnesses(geo, witness_count, seed);
        } catch (const Error&) {
            // curved target: no generated witnesses
        }
    }
    if (s.psi) {
        // a scenario-supplied spinor joins the witness list when it is harmonic
        const ChartSpinorField own = ChartSpinorField::from_field(*s.psi, "orthonormal-N");
        auto piM = s.map();
        double dn = 0.0;
        for (const auto& p : sample_grid(s)) dn = std::max(dn, norm2(dirac_n(geo, own, piM(p))));
        if (dn <= s.tol.harmonicity) witnesses.push_back(own);
    }
    const MorphismReport rep = classify(geo, spec, witnesses);

    Json j = detail::report_skeleton("check", s);
    Json res = Json::object();
    res.set("conformality_max", rep.max_conformality_residual);
    res.set("fundamental_eq", rep.fundamental_eq_residual);
    res.set("mu_H", rep.mu_H_residual);
    res.set("integrability", rep.integrability_residual);
    res.set("alpha_dirac", rep.alpha_dirac_residual);
    res.set("alpha_parallel", rep.alpha_parallel_residual);
    Json w = Json::array();
    double wmax = 0.0;
    for (double r : rep.witness_residuals) {
        w.push(r);
        wmax = std::max(wmax, r);
    }
    res.set("witness_max", wmax);
    res.set("witness", std::move(w));
    j.set("residuals", std::move(res));
    j.set("verdict", to_string(rep.verdict));
    j.set("internal_inconsistency", rep.internal_inconsistency);

    CommandResult out;
    out.exit_code = (rep.verdict == Verdict::Yes) ? 0 : 1;
    out.summary = "check " + s.name + ": verdict " + to_string(rep.verdict);
    out.json = std::move(j);
    return out;
}

inline CommandResult run_chain(const Scenario& s, bool hsweep) {
    const SpinGeometry geo(s);
    validate_metrics(s);
    const PullbackSpec spec = spec_for_scenario(geo, psi_for_scenario(geo));

    double max_resid = 0.0, max_term_sum = 0.0, ih_max = 0.0;
    std::array<double, 5> step_max{};
    for (const auto& p : sample_grid(s)) {
        const ChainRuleBreakdown br = chain_rule(geo, spec, p);
        max_resid = std::max(max_resid, br.residual);
        max_term_sum = std::max(max_term_sum, br.term_sum_residual);
        ih_max = std::max(ih_max, br.I_H_norm);
        for (int t = 0; t < 5; ++t) step_max[t] = std::max(step_max[t], br.step_residuals[t]);
    }

    Json j = detail::report_skeleton("chain", s);
    Json res = Json::object();
    res.set("max_residual", max_resid);
    res.set("term_sum_max", max_term_sum);
    Json steps = Json::array();
    for (double r : step_max) steps.push(r);
    res.set("step_residuals", std::move(steps));
    res.set("I_H_norm", ih_max);

    if (hsweep) {
        // order-2 residual at h and h/2: the ratio probes the h^2 scaling
        auto sweep_resid = [&](double h) {
            Scenario sw = s;
            sw.fd = FDConfig{h, 2, false};
            const SpinGeometry g2(sw);
            const PullbackSpec sp2 = spec_for_scenario(g2, psi_for_scenario(g2));
            double r = 0.0;
            for (const auto& p : sample_grid(sw, 2)) r = std::max(r, chain_rule(g2, sp2, p).residual);
            return r;
        };
        const double h0 = 4e-3;
        const double r1 = sweep_resid(h0), r2 = sweep_resid(h0 / 2.0);
        Json sw = Json::object();
        sw.set("h", h0).set("residual_h", r1).set("residual_h_half", r2);
        sw.set("ratio", r2 > 0.0 ? r1 / r2 : 0.0);
        res.set("hsweep", std::move(sw));
    }
    j.set("residuals", std::move(res));

    const bool pass = max_resid <= 1e-5;
    j.set("verdict", pass ? "pass" : "fail");
    j.set("internal_inconsistency", false);

    CommandResult out;
    out.exit_code = pass ? 0 : 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", max_resid);
    out.summary = "chain " + s.name + ": max residual " + buf;
    out.json = std::move(j);
    return out;
}

inline CommandResult run_dirac(const Scenario& s) {
    const SpinGeometry geo(s);
    validate_metrics(s);
    const ChartSpinorField psi = psi_for_scenario(geo);
    const PullbackSpec spec = spec_for_scenario(geo, psi);
    const ChartSpinorField pb = pullback_field(geo, spec);

    Json probes = Json::array();
    double dn_max = 0.0, dm_max = 0.0;
    auto piM = s.map();
    const auto grid = sample_grid(s);
    const size_t shown = std::min<size_t>(grid.size(), 3);
    for (size_t t = 0; t < grid.size(); ++t) {
        const VecR& p = grid[t];
        const VecC dn = dirac_n(geo, psi, piM(p));
        const VecC dm = dirac_m(geo, pb, p);
        dn_max = std::max(dn_max, norm2(dn));
        dm_max = std::max(dm_max, norm2(dm));
        if (t < shown) {
            Json probe = Json::object();
            Json pt = Json::array();
            for (double c : p) pt.push(c);
            probe.set("point", std::move(pt));
            probe.set("dirac_N_psi", detail::spinor_json(dn));
            probe.set("dirac_M_pullback", detail::spinor_json(dm));
            probes.push(std::move(probe));
        }
    }

    Json j = detail::report_skeleton("dirac", s);
    Json res = Json::object();
    res.set("dirac_N_max", dn_max);
    res.set("dirac_M_max", dm_max);
    j.set("residuals", std::move(res));
    j.set("verdict", "n/a");
    j.set("internal_inconsistency", false);
    j.set("data", Json::object().set("probes", std::move(probes)));

    CommandResult out;
    out.exit_code = 0;
    out.summary = "dirac " + s.name + ": evaluated on " + std::to_string(grid.size()) + " probes";
    out.json = std::move(j);
    return out;
}

inline CommandResult run_gamma(int d, int n, int k) {
    Json data = Json::object();
    std::string label;
    if (n > 0) {
        const AdaptedRep rep = build_adapted_rep(n, k);
        label = "adapted(" + std::to_string(n) + "," + std::to_string(k) + ")";
        Json gs = Json::array();
        for (const auto& g : rep.total_gammas) gs.push(detail::matrix_json(g));
        data.set("spinor_dim", static_cast<long>(rep.spinor_dim));
        data.set("gammas", std::move(gs));
        data.set("conjugation", detail::matrix_json(rep.conjugation));
    } else {
        const GammaRep rep = build_gamma(d);
        label = "gamma(" + std::to_string(d) + ")";
        Json gs = Json::array();
        for (const auto& g : rep.gammas) gs.push(detail::matrix_json(g));
        data.set("spinor_dim", static_cast<long>(rep.spinor_dim));
        data.set("convention", rep.convention_id);
        data.set("gammas", std::move(gs));
        if (rep.has_chirality) data.set("chirality", detail::matrix_json(rep.chirality));
    }

    Json j = Json::object();
    j.set("command", "gamma");
    j.set("scenario", label);
    j.set("grid", Json::object().set("per_axis", 0L).set("points", 0L));
    j.set("fd", Json::object().set("h", 0.0).set("order", 0L));
    j.set("tolerances", Json::object());
    j.set("residuals", Json::object());
    j.set("verdict", "n/a");
    j.set("internal_inconsistency", false);
    j.set("data", std::move(data));

    CommandResult out;
    out.exit_code = 0;
    out.summary = "gamma: " + label;
    out.json = std::move(j);
    return out;
}

inline CommandResult run_corpus(int witness_count, unsigned seed) {
    Json rows = Json::array();
    int mismatches = 0;
    for (const auto& name : list_fixtures()) {
        const Fixture f = fixture(name);
        const SpinGeometry geo(f.scenario);
        const PullbackSpec spec = spec_for_scenario(geo, psi_for_scenario(geo));
        const auto witnesses = make_harmonic_witnesses(geo, witness_count, seed);
        const MorphismReport rep = classify(geo, spec, witnesses);
        const bool match = rep.verdict == f.expected.verdict;
        if (!match) ++mismatches;
        Json row = Json::object();
        row.set("name", name);
        row.set("verdict", to_string(rep.verdict));
        row.set("expected", to_string(f.expected.verdict));
        row.set("match", match);
        row.set("fundamental_eq", rep.fundamental_eq_residual);
        row.set("integrability", rep.integrability_residual);
        row.set("mu_H", rep.mu_H_residual);
        rows.push(std::move(row));
    }

    Json j = Json::object();
    j.set("command", "corpus");
    j.set("scenario", "builtin");
    j.set("grid", Json::object().set("per_axis", 3L).set("points", 0L));
    j.set("fd", Json::object().set("h", 0.0).set("order", 4L));
    Json tol = Json::object();
    const Tolerances t;
    tol.set("conformality", t.conformality).set("condition", t.condition).set("harmonicity", t.harmonicity);
    j.set("tolerances", std::move(tol));
    Json res = Json::object();
    res.set("mismatches", static_cast<long>(mismatches));
    j.set("residuals", std::move(res));
    j.set("verdict", mismatches == 0 ? "yes" : "no");
    j.set("internal_inconsistency", false);
    j.set("data", Json::object().set("fixtures", std::move(rows)));

    CommandResult out;
    out.exit_code = mismatches == 0 ? 0 : 1;
    out.summary = "corpus: " + std::to_string(7 - mismatches) + "/7 matches";
    out.json = std::move(j);
    return out;
}

}  // namespace spingeo
