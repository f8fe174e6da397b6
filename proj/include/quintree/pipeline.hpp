#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quintree/certificate.hpp"
#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

namespace quintree {

// Either the realizing tree or the certificate of the violated axiom.
// When a tree is present, its quintet system equals the input system
// (verified inside the pipeline, never assumed).
struct AmalgamationResult {
    std::optional<PhyloTree> tree;
    std::optional<Certificate> certificate;

    bool ok() const { return tree.has_value(); }
};

// Decides treelikeness of a complete quintet system: TTS check, derived
// quartet system, reconstruction, then exhaustive re-verification.
AmalgamationResult is_treelike(const QuintetSystem& q);

// Thrown by amalgamate_trees on malformed input collections.
class amalgamation_input_error : public std::runtime_error {
public:
    enum class Kind { bad_tree, conflict, incomplete_coverage };

    amalgamation_input_error(Kind kind, std::string msg,
                             std::vector<std::array<std::string, 5>> missing = {},
                             size_t missing_total = 0);

    Kind kind() const { return kind_; }
    // Up to 20 uncovered 5-subsets, plus the total count.
    const std::vector<std::array<std::string, 5>>& missing() const { return missing_; }
    size_t missing_total() const { return missing_total_; }

private:
    Kind kind_;
    std::vector<std::array<std::string, 5>> missing_;
    size_t missing_total_;
};

// Amalgamates a collection of 5-leaf trees covering every 5-subset of
// the union of their leaf sets. The returned supertree restricts to
// every input (re-verified).
AmalgamationResult amalgamate_trees(const std::vector<PhyloTree>& trees);

}  // namespace quintree
