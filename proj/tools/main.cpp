// Command-line front end: scenario ingestion, command dispatch, JSON output.
//
//   spingeo check  (--fixture NAME | scenario.ini) [--grid N] [--h H] ...
//   spingeo chain  (--fixture NAME | scenario.ini) [--hsweep]
//   spingeo dirac  (--fixture NAME | scenario.ini)
//   spingeo gamma  (--d D | --n N --k K)
//   spingeo corpus
//
// Exit codes: 0 verdict yes / expected, 1 verdict no / mismatch, 2 input error.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "spingeo/report.hpp"
#include "spingeo/scenario_file.hpp"

namespace {

struct CommonOpts {
    std::string fixture_name;
    std::string scenario_path;
    int grid = 0;
    double h = 0.0;
    int order = 0;
    double tol = 0.0;
    int seed = 0;
    bool json = true;
};

void add_scenario_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print help");  // keep --h free for the step size
    cmd->add_option("scenario", o.scenario_path, "scenario file (INI format)");
    cmd->add_option("--fixture", o.fixture_name, "built-in fixture name");
    cmd->add_option("--grid", o.grid, "sample grid points per axis");
    cmd->add_option("--h", o.h, "finite-difference step");
    cmd->add_option("--order", o.order, "finite-difference order (2 or 4)")
        ->check(CLI::IsMember({2, 4}));
    cmd->add_option("--tol", o.tol, "condition residual tolerance");
    cmd->add_option("--seed", o.seed, "seed for witness spinors");
    cmd->add_flag("--json,!--no-json", o.json, "emit JSON (default on)");
}

spingeo::Scenario resolve_scenario(const CommonOpts& o) {
    using namespace spingeo;
    if (!o.fixture_name.empty() && !o.scenario_path.empty())
        throw Error("give either a scenario file or --fixture, not both");
    Scenario s;
    if (!o.fixture_name.empty()) {
        s = fixture(o.fixture_name).scenario;
    } else if (!o.scenario_path.empty()) {
        s = load_scenario(o.scenario_path);
    } else {
        throw Error("a scenario file or --fixture is required");
    }
    if (o.grid > 0) s.grid_per_axis = o.grid;
    if (o.h > 0.0) s.fd.h = o.h;
    if (o.order > 0) s.fd.order = o.order;
    if (o.tol > 0.0) s.tol.condition = o.tol;
    return s;
}

int emit(const spingeo::CommandResult& r, bool json) {
    if (json) {
        std::fputs(r.json.dump().c_str(), stdout);
    } else {
        std::puts(r.summary.c_str());
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical spin-geometry checks for horizontally conformal submersions"};
    app.require_subcommand(1);

    CommonOpts check_o, chain_o, dirac_o;
    bool hsweep = false;

    CLI::App* check = app.add_subcommand("check", "classify a submersion as a Dirac morphism");
    add_scenario_opts(check, check_o);

    CLI::App* chain = app.add_subcommand("chain", "verify the Dirac chain rule term by term");
    add_scenario_opts(chain, chain_o);
    chain->add_flag("--hsweep", hsweep, "probe the order-2 step scaling");

    CLI::App* dirac = app.add_subcommand("dirac", "evaluate Dirac operators at probe points");
    add_scenario_opts(dirac, dirac_o);

    int gamma_d = 0, gamma_n = 0, gamma_k = 1;
    bool gamma_json = true;
    CLI::App* gamma = app.add_subcommand("gamma", "dump gamma-matrix representations");
    gamma->add_option("--d", gamma_d, "plain representation dimension");
    gamma->add_option("--n", gamma_n, "adapted representation: base dimension");
    gamma->add_option("--k", gamma_k, "adapted representation: fibre dimension");
    gamma->add_flag("--json,!--no-json", gamma_json, "emit JSON (default on)");

    int corpus_seed = 0;
    bool corpus_json = true;
    CLI::App* corpus = app.add_subcommand("corpus", "run all fixtures against expected verdicts");
    corpus->add_option("--seed", corpus_seed, "seed for witness spinors");
    corpus->add_flag("--json,!--no-json", corpus_json, "emit JSON (default on)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed())
            return emit(spingeo::run_check(resolve_scenario(check_o), 5,
                                           static_cast<unsigned>(check_o.seed)),
                        check_o.json);
        if (chain->parsed())
            return emit(spingeo::run_chain(resolve_scenario(chain_o), hsweep), chain_o.json);
        if (dirac->parsed()) return emit(spingeo::run_dirac(resolve_scenario(dirac_o)), dirac_o.json);
        if (gamma->parsed()) {
            if (gamma_n == 0 && gamma_d == 0)
                throw spingeo::Error("gamma needs --d or --n/--k");
            return emit(spingeo::run_gamma(gamma_d, gamma_n, gamma_k), gamma_json);
        }
        if (corpus->parsed())
            return emit(spingeo::run_corpus(5, static_cast<unsigned>(corpus_seed)), corpus_json);
    } catch (const spingeo::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
