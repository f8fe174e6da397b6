#include "quintree/pipeline.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace quintree {

AmalgamationResult is_treelike(const QuintetSystem& q) {
    CheckResult r = check_tts(q);
    if (!r.ok()) return {std::nullopt, r.first()};

    QuartetSystem derived = derived_quartet_system(q);
    std::optional<PhyloTree> t;
    try {
        t = reconstruct_from_quartets(derived);
    } catch (const not_tts_error& e) {
        // a TTS quintet system always derives a TTS quartet system;
        // reaching this is an internal defect, not an input error
        throw std::logic_error(
            std::string("derived quartet system failed reconstruction: ") + e.what());
    }
    if (!(quintet_system_of(*t) == q))
        throw std::logic_error("reconstructed tree does not realize the input system");
    return {std::move(t), std::nullopt};
}

amalgamation_input_error::amalgamation_input_error(
    Kind kind, std::string msg, std::vector<std::array<std::string, 5>> missing,
    size_t missing_total)
    : std::runtime_error(std::move(msg)),
      kind_(kind),
      missing_(std::move(missing)),
      missing_total_(missing_total) {}

AmalgamationResult amalgamate_trees(const std::vector<PhyloTree>& trees) {
    using Err = amalgamation_input_error;
    if (trees.empty()) throw Err(Err::Kind::bad_tree, "no input trees");

    std::vector<std::string> universe;
    std::map<std::array<std::string, 5>, Quintet> seen;
    for (const PhyloTree& t : trees) {
        if (t.leaf_count() != 5)
            throw Err(Err::Kind::bad_tree, "input tree has " +
                                               std::to_string(t.leaf_count()) +
                                               " leaves, expected 5");
        universe.insert(universe.end(), t.taxa().begin(), t.taxa().end());
        Quintet qu = quintet_of(t, t.taxa());
        std::array<std::string, 5> sup = qu.support();
        auto [it, inserted] = seen.emplace(sup, qu);
        if (!inserted && !(it->second == qu))
            throw Err(Err::Kind::conflict, "two input trees on leaves {" + sup[0] + ", " +
                                               sup[1] + ", " + sup[2] + ", " + sup[3] + ", " +
                                               sup[4] + "} have different topologies");
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    std::vector<std::array<std::string, 5>> missing;
    size_t missing_total = 0;
    size_t n = universe.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d)
                    for (size_t e = d + 1; e < n; ++e) {
                        std::array<std::string, 5> sup{universe[a], universe[b], universe[c],
                                                       universe[d], universe[e]};
                        if (seen.contains(sup)) continue;
                        ++missing_total;
                        if (missing.size() < 20) missing.push_back(sup);
                    }
    if (missing_total > 0)
        throw Err(Err::Kind::incomplete_coverage,
                  std::to_string(missing_total) + " 5-subsets are not covered",
                  std::move(missing), missing_total);

    QuintetSystem q(universe);
    for (const auto& [sup, qu] : seen) q.add(qu);

    AmalgamationResult res = is_treelike(q);
    if (res.ok())
        for (const PhyloTree& t : trees)
            if (!same_topology(restrict_tree(*res.tree, t.taxa()), t))
                throw std::logic_error("amalgamated tree does not restrict to an input tree");
    return res;
}

}  // namespace quintree
