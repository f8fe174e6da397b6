#pragma once

#include <exception>
#include <set>
#include <string>
#include <vector>

namespace quintree {

class Quartet;
class Quintet;
class QuartetSystem;
class QuintetSystem;

// Bipartition of a tree's taxon set induced by deleting one edge.
// Canonical orientation: side_a contains the smallest taxon.
struct Split {
    std::vector<std::string> side_a;
    std::vector<std::string> side_b;

    bool operator==(const Split&) const = default;
    auto operator<=>(const Split&) const = default;
};

// Unrooted phylogenetic tree: connected, acyclic, no degree-2 vertices,
// leaves bijectively labeled by taxa. Immutable after construction.
class PhyloTree {
public:
    // Builds and validates. `leaf_labels[v]` is empty for internal vertices.
    PhyloTree(int vertex_count, std::vector<std::pair<int, int>> edges,
              std::vector<std::string> leaf_labels);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool is_leaf(int v) const { return !labels_[v].empty(); }
    const std::string& label(int v) const { return labels_[v]; }
    int leaf_of(const std::string& taxon) const;  // -1 when absent

    // Sorted taxon set.
    const std::vector<std::string>& taxa() const { return taxa_; }
    int leaf_count() const { return static_cast<int>(taxa_.size()); }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::string> labels_;
    std::vector<std::string> taxa_;
};

struct NewickError {
    std::string message;
    int line = 1;
    int column = 1;
};

// Thrown on malformed Newick input.
class newick_parse_error : public std::exception {
public:
    explicit newick_parse_error(NewickError err);
    const char* what() const noexcept override { return text_.c_str(); }
    const NewickError& detail() const { return err_; }

private:
    NewickError err_;
    std::string text_;
};

PhyloTree parse_newick(const std::string& text);
std::string to_newick(const PhyloTree& t);

// Minimal subtree spanning the leaves in `s`, degree-2 vertices suppressed.
PhyloTree restrict_tree(const PhyloTree& t, const std::vector<std::string>& s);

// Maximal groups of >=2 leaves attached to a common vertex.
std::vector<std::vector<std::string>> complete_cherries(const PhyloTree& t);

Quartet quartet_of(const PhyloTree& t, const std::vector<std::string>& four);
Quintet quintet_of(const PhyloTree& t, const std::vector<std::string>& five);

QuartetSystem quartet_system_of(const PhyloTree& t);
QuintetSystem quintet_system_of(const PhyloTree& t);

std::set<Split> splits_of(const PhyloTree& t);
std::set<Split> nontrivial_splits_of(const PhyloTree& t);
bool same_topology(const PhyloTree& a, const PhyloTree& b);

// Every phylogenetic tree on the given taxa (3 <= n <= 8), exactly once
// up to label-preserving isomorphism, in a deterministic order.
std::vector<PhyloTree> enumerate_trees(const std::vector<std::string>& taxa);

}  // namespace quintree
