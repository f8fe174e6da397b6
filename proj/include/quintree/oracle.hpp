#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

namespace quintree {

// Brute-force ground truth, independent of every axiom checker:
// realizability is decided purely by tree enumeration plus extraction.
std::optional<PhyloTree> realizable_by_tree(const QuintetSystem& q);

// Independent second enumeration route: the set of pairwise-compatible
// families of nontrivial splits (each family encoded as sorted
// bitmasks of the side not containing the smallest taxon). Trees
// correspond one-to-one to such families.
std::set<std::vector<uint32_t>> enumerate_split_families(const std::vector<std::string>& taxa);

struct OracleDisagreement {
    std::string system;  // canonical entries, ';'-joined
    bool tts_verdict;
    bool oracle_verdict;
};

struct OracleReport {
    int n = 0;
    uint64_t checked = 0;
    uint64_t agree = 0;
    uint64_t seed = 0;
    bool full = false;
    uint64_t treelike = 0;
    std::vector<OracleDisagreement> disagreements;  // capped at 20

    uint64_t disagree_count = 0;
    std::string summary_line() const;
};

// Compares the TTS verdict with brute-force realizability over complete
// quintet systems on an n-taxon universe (n in {5,6,7}); full
// enumeration when budget == 0 or n == 5, otherwise `budget` seeded
// uniform samples. Deterministic for a given seed regardless of
// worker count.
OracleReport exhaustive_theorem_check(int n, uint64_t budget, uint64_t seed,
                                      unsigned workers = 1);

}  // namespace quintree
