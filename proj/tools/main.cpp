// mimostab: small-signal stability and robustness analysis of MIMO LTI
// systems given as rational transfer matrices.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "corpus.hpp"
#include "mimostab/errors.hpp"
#include "report.hpp"

using namespace mimostab;
using namespace mimostab::cli;

int main(int argc, char** argv) {
    CLI::App app{"MIMO LTI stability, robustness, and passivity analysis"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string json_path, curves_dir, corpus_dir;
    double tol_root = opt.tol.root_match;
    double tol_marginal = opt.tol.marginal_band;
    int grid_points = opt.grid.base_points;
    double omega_max = 0.0;

    app.add_option("--tol-root", tol_root, "root matching tolerance")
        ->envname("MIMOSTAB_TOL_ROOT");
    app.add_option("--tol-marginal", tol_marginal, "marginal band half-width");
    app.add_option("--grid-points", grid_points, "one-sided base frequency-grid size");
    app.add_option("--omega-max", omega_max, "frequency sweep bound (rad/s; 0 = automatic)");
    app.add_option("--json", json_path, "write the machine-readable report here");
    app.add_option("--curves", curves_dir, "write curve CSVs into this directory");

    struct Sub {
        CLI::App* cmd;
        std::vector<std::string> files;
        int n_systems;
    };
    std::vector<Sub> subs;
    subs.reserve(16);  // CLI11 binds references into the elements
    auto add_sub = [&](const std::string& name, const std::string& desc, int n_systems) {
        CLI::App* c = app.add_subcommand(name, desc);
        c->fallthrough();  // global options may follow the subcommand
        subs.push_back({c, {}, n_systems});
        Sub& s = subs.back();
        if (n_systems > 0)
            c->add_option("files", s.files, "system description JSON file(s)")
                ->required()
                ->expected(n_systems);
        return c;
    };

    add_sub("stability", "direct pole check plus the determinant test", 1);
    add_sub("nyquist", "determinant Nyquist test with curve export", 1);
    add_sub("gnc", "generalized Nyquist on merged eigenvalue loci", 1);
    add_sub("margins", "uniform gain/phase margins (U = kI, e^{j theta} I)", 1);
    add_sub("smallgain", "small-gain certificate for a feedback pair", 2);
    add_sub("bounds", "additive/multiplicative uncertainty bounds", 1);
    add_sub("passivity", "positive-real classification", 1);
    add_sub("mixed", "mixed small-gain/positive-real interconnection test", 2);
    CLI::App* suite = add_sub("paper-suite", "run the built-in corpus against its expectations", 0);
    suite->add_option("--corpus", corpus_dir, "load corpus items from this directory instead");
    std::string dump_dir;
    suite->add_option("--corpus-dump", dump_dir, "write the built-in corpus out and exit");

    CLI11_PARSE(app, argc, argv);

    opt.tol.root_match = tol_root;
    opt.tol.marginal_band = tol_marginal;
    opt.grid.base_points = grid_points;
    if (omega_max > 0.0) opt.grid.omega_max = omega_max;
    if (!json_path.empty()) opt.json_path = json_path;
    if (!curves_dir.empty()) opt.curves_dir = curves_dir;
    if (!corpus_dir.empty()) opt.corpus_dir = corpus_dir;

    try {
        for (const Sub& s : subs) {
            if (!s.cmd->parsed()) continue;
            if (s.cmd->get_name() == "paper-suite") {
                if (!dump_dir.empty()) {
                    dump_corpus(dump_dir);
                    std::cout << "corpus written to " << dump_dir << "\n";
                    return kOk;
                }
                return run_paper_suite(opt, std::cout);
            }
            std::vector<SystemDescription> systems;
            for (const auto& f : s.files) systems.push_back(parse_system(f));
            return run_command(s.cmd->get_name(), systems, opt, std::cout);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAnalysisError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAnalysisError;
    }
    return kOk;
}
