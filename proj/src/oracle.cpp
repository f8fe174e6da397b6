#include "quintree/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace quintree {

namespace {

std::string system_key(const QuintetSystem& q) {
    std::string key;
    for (const Quintet& e : q.entries_sorted()) {
        if (!key.empty()) key += "; ";
        key += e.to_string();
    }
    return key;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::optional<PhyloTree> realizable_by_tree(const QuintetSystem& q) {
    for (PhyloTree& t : enumerate_trees(q.universe()))
        if (quintet_system_of(t) == q) return std::move(t);
    return std::nullopt;
}

std::set<std::vector<uint32_t>> enumerate_split_families(const std::vector<std::string>& taxa) {
    int n = static_cast<int>(taxa.size());
    if (n < 3 || n > 20) throw std::invalid_argument("taxon count out of range");
    // candidate nontrivial splits, encoded as the side avoiding taxon 0
    std::vector<uint32_t> cands;
    for (uint32_t m = 1; m < (1u << (n - 1)); ++m) {
        uint32_t side = m << 1;  // subset of {1..n-1}
        int k = std::popcount(side);
        if (k >= 2 && k <= n - 2) cands.push_back(side);
    }
    std::sort(cands.begin(), cands.end());

    // two splits are compatible iff the avoided sides are disjoint or nested
    auto compatible = [](uint32_t a, uint32_t b) {
        uint32_t i = a & b;
        return i == 0 || i == a || i == b;
    };

    std::set<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, size_t from) -> void {
        out.insert(cur);
        for (size_t i = from; i < cands.size(); ++i) {
            bool ok = true;
            for (uint32_t s : cur)
                if (!compatible(s, cands[i])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(cands[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::string OracleReport::summary_line() const {
    return "n=" + std::to_string(n) + " checked=" + std::to_string(checked) +
           " agree=" + std::to_string(agree) + " disagree=" + std::to_string(disagree_count) +
           " seed=" + std::to_string(seed);
}

OracleReport exhaustive_theorem_check(int n, uint64_t budget, uint64_t seed,
                                      unsigned workers) {
    if (n < 5 || n > 7) throw std::invalid_argument("oracle supports n in {5,6,7}");
    if (workers == 0) workers = 1;

    std::vector<std::string> taxa;
    for (int i = 0; i < n; ++i) taxa.push_back(std::string(1, static_cast<char>('a' + i)));

    OracleReport rep;
    rep.n = n;
    rep.seed = seed;

    std::vector<PhyloTree> trees = enumerate_trees(taxa);
    if (trees.size() != enumerate_split_families(taxa).size())
        throw std::logic_error("tree enumeration disagrees with split-family enumeration");

    std::unordered_set<std::string> realizable;
    std::vector<QuintetSystem> tree_systems;
    for (const PhyloTree& t : trees) {
        tree_systems.push_back(quintet_system_of(t));
        realizable.insert(system_key(tree_systems.back()));
    }

    // every tree-induced system must come out TTS
    for (const QuintetSystem& q : tree_systems) {
        ++rep.checked;
        ++rep.treelike;
        if (check_tts(q).ok()) {
            ++rep.agree;
        } else {
            ++rep.disagree_count;
            if (rep.disagreements.size() < 20)
                rep.disagreements.push_back({system_key(q), false, true});
        }
    }

    // the 26 quintets on each 5-subset, in a fixed order
    std::vector<std::vector<Quintet>> choices;
    size_t nn = taxa.size();
    for (size_t a = 0; a < nn; ++a)
        for (size_t b = a + 1; b < nn; ++b)
            for (size_t c = b + 1; c < nn; ++c)
                for (size_t d = c + 1; d < nn; ++d)
                    for (size_t e = d + 1; e < nn; ++e)
                        choices.push_back(all_quintets_on(
                            {taxa[a], taxa[b], taxa[c], taxa[d], taxa[e]}));
    size_t m = choices.size();

    bool full = budget == 0 || n == 5;
    rep.full = full;
    uint64_t count;
    if (full) {
        count = 1;
        for (size_t i = 0; i < m; ++i) {
            if (count > (1ULL << 40) / 26)
                throw std::invalid_argument("full enumeration infeasible at this n");
            count *= 26;
        }
    } else {
        count = budget;
    }

    struct Local {
        uint64_t agree = 0;
        std::vector<std::pair<uint64_t, OracleDisagreement>> disagreements;
    };
    std::vector<Local> locals(workers);

    auto run = [&](unsigned w) {
        Local& loc = locals[w];
        std::vector<const Quintet*> picks(m);
        for (uint64_t idx = w; idx < count; idx += workers) {
            if (full) {
                uint64_t v = idx;
                for (size_t i = 0; i < m; ++i) {
                    picks[i] = &choices[i][v % 26];
                    v /= 26;
                }
            } else {
                std::mt19937_64 rng(splitmix64(seed ^ splitmix64(idx + 1)));
                std::uniform_int_distribution<int> digit(0, 25);
                for (size_t i = 0; i < m; ++i) picks[i] = &choices[i][digit(rng)];
            }
            QuintetSystem q(taxa);
            for (const Quintet* p : picks) q.add(*p);
            bool tts = check_tts(q).ok();
            bool oracle = realizable.contains(system_key(q));
            if (tts == oracle) {
                ++loc.agree;
            } else if (loc.disagreements.size() < 20) {
                loc.disagreements.push_back({idx, {system_key(q), tts, oracle}});
            }
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<uint64_t, OracleDisagreement>> merged;
    for (Local& loc : locals) {
        rep.agree += loc.agree;
        merged.insert(merged.end(), loc.disagreements.begin(), loc.disagreements.end());
    }
    rep.checked += count;
    rep.disagree_count = rep.checked - rep.agree;
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, d] : merged) {
        if (rep.disagreements.size() >= 20) break;
        rep.disagreements.push_back(std::move(d));
    }
    return rep;
}

}  // namespace quintree
