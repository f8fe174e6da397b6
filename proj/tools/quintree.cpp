// quintree: check quintet/quartet axioms, amalgamate 5-leaf trees,
// extract induced systems from a tree, and run the brute-force oracle.
//
// Exit codes: 0 success, 1 axiom violation, 2 input error,
// 3 incomplete coverage.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quintree/io.hpp"
#include "quintree/oracle.hpp"
#include "quintree/pipeline.hpp"

using namespace quintree;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;
constexpr int exit_incomplete = 3;

unsigned worker_count() {
    if (const char* env = std::getenv("QUINTREE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

int run_check(const std::string& quintet_path, const std::string& quartet_path, bool all) {
    CheckMode mode = all ? CheckMode::exhaustive : CheckMode::first_violation;
    CheckResult res;
    try {
        if (!quintet_path.empty())
            res = check_tts(parse_quintet_file(quintet_path), mode);
        else
            res = check_tts_q4(parse_quartet_file(quartet_path), mode);
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    if (res.ok()) {
        std::cout << "OK\n";
        return exit_ok;
    }
    for (const Certificate& c : res.certificates) std::cout << c.to_string() << "\n";
    return exit_violation;
}

int run_amalgamate(const std::vector<std::string>& tree_paths) {
    std::vector<PhyloTree> trees;
    try {
        for (const std::string& p : tree_paths) {
            std::vector<PhyloTree> batch = parse_newick_file(p);
            trees.insert(trees.end(), batch.begin(), batch.end());
        }
    } catch (const newick_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        AmalgamationResult res = amalgamate_trees(trees);
        if (res.ok()) {
            std::cout << to_newick(*res.tree) << "\n";
            return exit_ok;
        }
        std::cout << res.certificate->to_string() << "\n";
        return exit_violation;
    } catch (const amalgamation_input_error& e) {
        if (e.kind() == amalgamation_input_error::Kind::incomplete_coverage) {
            std::cerr << "error: " << e.what() << "\n";
            for (const auto& sup : e.missing()) {
                std::cout << "MISSING";
                for (const auto& t : sup) std::cout << " " << t;
                std::cout << "\n";
            }
            std::cout << "MISSING_TOTAL " << e.missing_total() << "\n";
            return exit_incomplete;
        }
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}

int run_extract(const std::string& tree_path, const std::string& mode) {
    std::vector<PhyloTree> trees;
    try {
        trees = parse_newick_file(tree_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    if (trees.size() != 1) {
        std::cerr << "error: expected exactly one tree, got " << trees.size() << "\n";
        return exit_input;
    }
    if (mode == "quintets") {
        if (trees[0].leaf_count() < 5) {
            std::cerr << "error: tree has fewer than 5 leaves\n";
            return exit_input;
        }
        print_quintet_system(std::cout, quintet_system_of(trees[0]));
    } else {
        if (trees[0].leaf_count() < 4) {
            std::cerr << "error: tree has fewer than 4 leaves\n";
            return exit_input;
        }
        print_quartet_system(std::cout, quartet_system_of(trees[0]));
    }
    return exit_ok;
}

int run_oracle(int n, uint64_t budget, uint64_t seed) {
    OracleReport rep;
    try {
        rep = exhaustive_theorem_check(n, budget, seed, worker_count());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    std::cout << rep.summary_line() << "\n";
    for (const OracleDisagreement& d : rep.disagreements)
        std::cout << "DISAGREE tts=" << (d.tts_verdict ? 1 : 0)
                  << " oracle=" << (d.oracle_verdict ? 1 : 0) << " system=" << d.system
                  << "\n";
    return rep.disagree_count == 0 ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treelike quintet systems: axiom checking and tree amalgamation"};
    app.require_subcommand(1);

    std::string quintet_path, quartet_path;
    bool all = false;
    CLI::App* check = app.add_subcommand("check", "check the thin/transitive/saturated axioms");
    auto* opt_q5 = check->add_option("--quintets", quintet_path, "quintet system file");
    auto* opt_q4 = check->add_option("--quartets", quartet_path, "quartet system file");
    opt_q5->excludes(opt_q4);
    check->add_flag("--all", all, "report every violating instantiation");

    std::vector<std::string> tree_paths;
    CLI::App* amal = app.add_subcommand("amalgamate", "amalgamate 5-leaf trees into a supertree");
    amal->add_option("--trees", tree_paths, "Newick files of 5-leaf trees")->required();

    std::string tree_path, mode = "quintets";
    CLI::App* extract = app.add_subcommand("extract", "extract the induced system of a tree");
    extract->add_option("--tree", tree_path, "Newick file with one tree")->required();
    extract->add_option("--mode", mode, "quintets or quartets")
        ->check(CLI::IsMember({"quintets", "quartets"}));

    int n = 6;
    uint64_t budget = 100000, seed = 0;
    CLI::App* oracle = app.add_subcommand("oracle", "compare axioms against brute force");
    oracle->add_option("--n", n, "taxon count (5-7)");
    oracle->add_option("--budget", budget, "sample count (0 = full enumeration)");
    oracle->add_option("--seed", seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) {
        if (quintet_path.empty() == quartet_path.empty()) {
            std::cerr << "error: exactly one of --quintets/--quartets is required\n";
            return exit_input;
        }
        return run_check(quintet_path, quartet_path, all);
    }
    if (amal->parsed()) return run_amalgamate(tree_paths);
    if (extract->parsed()) return run_extract(tree_path, mode);
    return run_oracle(n, budget, seed);
}
