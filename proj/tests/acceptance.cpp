// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero when
// any criterion fails. argv[1] is the path of the quintree CLI binary,
// used by the end-to-end criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "quintree/io.hpp"
#include "quintree/oracle.hpp"
#include "quintree/pipeline.hpp"
#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

using namespace quintree;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::string cli_path;

void verdict(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
        std::cout << "PASS " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    } else {
        std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
        ++failures;
    }
    std::cout.flush();
}

std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, char('a' + i)));
    return out;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned workers() {
    if (const char* env = std::getenv("QUINTREE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    namespace fs = std::filesystem;
    fs::path errfile = fs::temp_directory_path() / "quintree_acceptance_stderr.txt";
    std::string cmd = cli_path + " " + args + " 2>" + errfile.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "", ""};
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    std::ifstream ein(errfile);
    std::stringstream ess;
    ess << ein.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out, ess.str()};
}

// ---------------------------------------------------------------------------

void forward_theorem_exhaustive() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (int n = 5; n <= 6 && ok; ++n) {
        std::vector<std::string> taxa = letters(n);
        for (const PhyloTree& t : enumerate_trees(taxa)) {
            QuintetSystem q = quintet_system_of(t);
            if (!check_tts(q).ok()) {
                ok = false;
                detail = "tree system failed TTS: " + to_newick(t);
                break;
            }
            if (!lemma_violations(q).empty()) {
                ok = false;
                detail = "lemma violation on tree system: " + to_newick(t);
                break;
            }
            bool ext = true;
            for (size_t a = 0; a < taxa.size() && ext; ++a)
                for (size_t b = a + 1; b < taxa.size() && ext; ++b)
                    for (size_t c = b + 1; c < taxa.size() && ext; ++c)
                        for (size_t d = c + 1; d < taxa.size() && ext; ++d) {
                            ext = check_exists_iff_forall(q, taxa[a], taxa[b], taxa[c],
                                                          taxa[d]) &&
                                  check_exists_iff_forall(q, taxa[a], taxa[c], taxa[b],
                                                          taxa[d]) &&
                                  check_exists_iff_forall(q, taxa[a], taxa[d], taxa[b],
                                                          taxa[c]);
                        }
            if (!ext) {
                ok = false;
                detail = "extension property failed on tree system: " + to_newick(t);
                break;
            }
        }
    }
    double dt = seconds_since(t0);
    if (ok && dt > 60.0) {
        ok = false;
        detail = "exceeded 60s budget";
    }
    char buf[64];
    snprintf(buf, sizeof buf, "%.1fs", dt);
    verdict("forward-theorem-exhaustive-n5-n6", ok, ok ? buf : detail);
}

void n5_all_systems() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    std::array<std::string, 5> sup{"a", "b", "c", "d", "e"};
    for (const Quintet& q5 : all_quintets_on(sup)) {
        QuintetSystem q(letters(5));
        q.add(q5);
        if (!check_tts(q).ok()) {
            ok = false;
            detail = "not TTS: " + q5.to_string();
            break;
        }
        auto oracle_tree = realizable_by_tree(q);
        if (!oracle_tree) {
            ok = false;
            detail = "oracle found no tree: " + q5.to_string();
            break;
        }
        AmalgamationResult res = is_treelike(q);
        if (!res.ok() || !same_topology(*res.tree, *oracle_tree)) {
            ok = false;
            detail = "pipeline disagreed with oracle: " + q5.to_string();
            break;
        }
    }
    double dt = seconds_since(t0);
    if (ok && dt > 1.0) {
        ok = false;
        detail = "exceeded 1s budget";
    }
    char buf[64];
    snprintf(buf, sizeof buf, "26 systems, %.2fs", dt);
    verdict("n5-all-systems-treelike", ok, ok ? buf : detail);
}

void n6_sampled_oracle() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    OracleReport rep;
    try {
        rep = exhaustive_theorem_check(6, 100000, 20260823, workers());
    } catch (const std::exception& e) {
        verdict("n6-sampled-oracle-agreement", false, e.what());
        return;
    }
    if (rep.disagree_count != 0) {
        ok = false;
        detail = rep.summary_line();
        if (!rep.disagreements.empty())
            detail += " first: " + rep.disagreements.front().system;
    }
    double dt = seconds_since(t0);
    if (ok && dt > 600.0) {
        ok = false;
        detail = "exceeded 600s budget";
    }
    char buf[160];
    snprintf(buf, sizeof buf, "%s, %.1fs", rep.summary_line().c_str(), dt);
    verdict("n6-sampled-oracle-agreement", ok, ok ? buf : detail);
}

void quartet_round_trip() {
    bool ok = true;
    std::string detail;
    for (int n = 4; n <= 6 && ok; ++n) {
        for (const PhyloTree& t : enumerate_trees(letters(n))) {
            if (!same_topology(reconstruct_from_quartets(quartet_system_of(t)), t)) {
                ok = false;
                detail = "n=" + std::to_string(n) + ": " + to_newick(t);
                break;
            }
        }
    }
    if (ok) {
        std::vector<PhyloTree> trees7 = enumerate_trees(letters(7));
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<size_t> pick(0, trees7.size() - 1);
        for (int i = 0; i < 500; ++i) {
            const PhyloTree& t = trees7[pick(rng)];
            if (!same_topology(reconstruct_from_quartets(quartet_system_of(t)), t)) {
                ok = false;
                detail = "n=7: " + to_newick(t);
                break;
            }
        }
    }
    verdict("quartet-reconstruction-round-trip", ok, ok ? "all n<=6 plus 500 at n=7" : detail);
}

void derived_system_round_trip() {
    bool ok = true;
    std::string detail;
    for (int n = 5; n <= 6 && ok; ++n) {
        for (const PhyloTree& t : enumerate_trees(letters(n))) {
            QuintetSystem q = quintet_system_of(t);
            if (!(derived_quintet_system(derived_quartet_system(q)) == q)) {
                ok = false;
                detail = to_newick(t);
                break;
            }
        }
    }
    verdict("derived-system-round-trip", ok, ok ? "all tree systems, n=5,6" : detail);
}

void derived_quartet_tts() {
    bool ok = true;
    std::string detail;
    for (int n = 5; n <= 6 && ok; ++n) {
        for (const PhyloTree& t : enumerate_trees(letters(n))) {
            if (!check_tts_q4(derived_quartet_system(quintet_system_of(t))).ok()) {
                ok = false;
                detail = to_newick(t);
                break;
            }
        }
    }
    verdict("derived-quartet-system-tts", ok, ok ? "all tree systems, n=5,6" : detail);
}

void cli_amalgamation_round_trip() {
    namespace fs = std::filesystem;
    bool ok = true;
    std::string detail;
    for (const char* nwk : {"((a,b),((c,d),e),(f,g));", "(a,(b,c),(d,e),(f,g));",
                            "(a,b,c,d,e,f,g);"}) {
        PhyloTree t = parse_newick(nwk);
        const auto& X = t.taxa();
        fs::path file = fs::temp_directory_path() / "quintree_acceptance_parts.nwk";
        std::ofstream out(file);
        size_t n = X.size();
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                for (size_t c = b + 1; c < n; ++c)
                    for (size_t d = c + 1; d < n; ++d)
                        for (size_t e = d + 1; e < n; ++e)
                            out << to_newick(
                                       restrict_tree(t, {X[a], X[b], X[c], X[d], X[e]}))
                                << "\n";
        out.close();
        RunResult r = run_cli("amalgamate --trees " + file.string());
        if (r.exit_code != 0) {
            ok = false;
            detail = std::string(nwk) + " -> exit " + std::to_string(r.exit_code);
            break;
        }
        if (!same_topology(parse_newick(r.out), t)) {
            ok = false;
            detail = std::string(nwk) + " -> " + r.out;
            break;
        }
    }
    verdict("cli-amalgamation-round-trip", ok, ok ? "3 trees at n=7" : detail);
}

void negative_certificates() {
    auto pp = Quintet::pair_pair;
    auto pt = Quintet::pair_triple;
    struct Case {
        const char* rule;
        std::vector<Quintet> entries;
        std::function<CheckResult(const QuintetSystem&)> checker;
    };
    auto thin = [](const QuintetSystem& q) { return is_thin_q5(q); };
    auto trans = [](const QuintetSystem& q) { return is_transitive_q5(q); };
    auto sat = [](const QuintetSystem& q) { return is_saturated_q5(q); };
    const std::vector<Case> cases{
        {"thin.i", {pp("a", "b", "c", "e", "d"), pp("a", "c", "b", "f", "d")}, thin},
        {"thin.ii", {pt("a", "b", "c", "d", "e"), pt("a", "f", "b", "c", "d")}, thin},
        {"thin.iii", {pp("a", "b", "c", "e", "d"), pt("b", "f", "a", "c", "d")}, thin},
        {"thin.iv", {pt("a", "e", "b", "c", "d"), pp("a", "d", "b", "c", "f")}, thin},
        {"trans.i", {pp("a", "b", "c", "f", "d"), pp("a", "b", "c", "f", "e")}, trans},
        {"trans.ii", {pp("a", "b", "c", "f", "e"), pp("a", "b", "d", "f", "e")}, trans},
        {"trans.iii", {pt("a", "f", "c", "d", "e"), pt("b", "f", "c", "d", "e")}, trans},
        {"trans.iv", {pt("a", "b", "c", "e", "f"), pt("a", "b", "d", "e", "f")}, trans},
        {"trans.v", {pt("a", "b", "c", "f", "d"), pp("a", "b", "c", "f", "e")}, trans},
        {"trans.vi", {pp("a", "b", "c", "d", "f"), pt("a", "b", "c", "e", "f")}, trans},
        {"sat.i", {pp("a", "b", "c", "d", "e")}, sat},
        {"sat.ii", {pt("a", "b", "c", "d", "e")}, sat},
        {"sat.iii", {Quintet::star("a", "b", "c", "d", "e")}, sat},
    };
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        QuintetSystem q(letters(6));
        for (const Quintet& e : c.entries) q.add(e);
        CheckResult r = c.checker(q);
        if (r.ok()) {
            ok = false;
            detail = std::string(c.rule) + ": no violation reported";
            break;
        }
        if (r.first().rule != c.rule) {
            ok = false;
            detail = std::string(c.rule) + ": got " + r.first().rule;
            break;
        }
        if (!reevaluate(r.first(), q)) {
            ok = false;
            detail = std::string(c.rule) + ": certificate does not re-evaluate";
            break;
        }
    }
    verdict("negative-certificates-all-rules", ok, ok ? "13 rules certified" : detail);
}

void newick_round_trip_and_cli_errors() {
    namespace fs = std::filesystem;
    bool ok = true;
    std::string detail;
    for (int n = 3; n <= 6 && ok; ++n) {
        for (const PhyloTree& t : enumerate_trees(letters(n))) {
            if (!same_topology(parse_newick(to_newick(t)), t)) {
                ok = false;
                detail = "round trip failed: " + to_newick(t);
                break;
            }
        }
    }
    if (ok) {
        fs::path file = fs::temp_directory_path() / "quintree_acceptance_bad.nwk";
        std::ofstream out(file);
        out << "((a,b),(c,d),e);\n((a,b),\n(c,,d),e);\n";
        out.close();
        RunResult r = run_cli("amalgamate --trees " + file.string());
        if (r.exit_code != 2) {
            ok = false;
            detail = "malformed newick gave exit " + std::to_string(r.exit_code);
        } else if (r.err.find("line 3") == std::string::npos) {
            ok = false;
            detail = "stderr lacks the line number: " + r.err;
        }
    }
    verdict("newick-round-trip-and-parse-errors", ok, ok ? "all n<=6, errors carry lines" : detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-quintree-cli>\n";
        return 2;
    }
    cli_path = argv[1];

    forward_theorem_exhaustive();
    n5_all_systems();
    n6_sampled_oracle();
    quartet_round_trip();
    derived_system_round_trip();
    derived_quartet_tts();
    cli_amalgamation_round_trip();
    negative_certificates();
    newick_round_trip_and_cli_errors();

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
