#include "quintree/tree.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "quintree/quartet.hpp"
#include "quintree/quintet.hpp"

namespace quintree {

PhyloTree::PhyloTree(int vertex_count, std::vector<std::pair<int, int>> edges,
                     std::vector<std::string> leaf_labels)
    : adj_(vertex_count), labels_(std::move(leaf_labels)) {
    if (vertex_count <= 0) throw std::invalid_argument("tree needs at least one vertex");
    if (static_cast<int>(labels_.size()) != vertex_count)
        throw std::invalid_argument("label vector size mismatch");
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
            throw std::invalid_argument("bad edge endpoints");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    if (static_cast<int>(edges.size()) != vertex_count - 1)
        throw std::invalid_argument("edge count does not match a tree");
    // connectivity (acyclicity follows from |E| = |V|-1)
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != vertex_count) throw std::invalid_argument("tree is not connected");
    for (int v = 0; v < vertex_count; ++v) {
        if (degree(v) == 2) throw std::invalid_argument("degree-2 vertex");
        bool leaf_pos = degree(v) <= 1;
        if (leaf_pos && labels_[v].empty())
            throw std::invalid_argument("unlabeled leaf vertex");
        if (!leaf_pos && !labels_[v].empty())
            throw std::invalid_argument("label on internal vertex");
    }
    for (int v = 0; v < vertex_count; ++v)
        if (is_leaf(v)) taxa_.push_back(labels_[v]);
    std::sort(taxa_.begin(), taxa_.end());
    if (std::adjacent_find(taxa_.begin(), taxa_.end()) != taxa_.end())
        throw std::invalid_argument("duplicate taxon label");
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

int PhyloTree::leaf_of(const std::string& taxon) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (labels_[v] == taxon) return v;
    return -1;
}

// ---------------------------------------------------------------------------
// Newick

newick_parse_error::newick_parse_error(NewickError err) : err_(std::move(err)) {
    text_ = "newick: " + err_.message + " (line " + std::to_string(err_.line) +
            ", column " + std::to_string(err_.column) + ")";
}

namespace {

constexpr const char* kLabelChars =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.-";

bool is_label_char(char c) {
    return std::string_view(kLabelChars).find(c) != std::string_view::npos;
}

struct NewickParser {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    // tree under construction
    std::vector<std::vector<int>> children;
    std::vector<std::string> labels;

    explicit NewickParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw newick_parse_error({msg, line, col});
    }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            advance();
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    int new_node() {
        children.emplace_back();
        labels.emplace_back();
        return static_cast<int>(children.size()) - 1;
    }

    std::string read_label() {
        skip_ws();
        std::string out;
        while (pos < text.size() && is_label_char(text[pos])) {
            out += text[pos];
            advance();
        }
        return out;
    }

    void skip_length() {
        if (pos < text.size() && text[pos] == ':') {
            advance();
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                    text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E'))
                advance();
            if (pos == start) fail("expected branch length after ':'");
        }
    }

    int parse_subtree() {
        if (peek() == '(') {
            int node = new_node();
            advance();  // '('
            // recursing may reallocate `children`; index afterwards
            int child = parse_subtree();
            children[node].push_back(child);
            while (peek() == ',') {
                advance();
                child = parse_subtree();
                children[node].push_back(child);
            }
            if (peek() != ')') fail("expected ')' or ','");
            advance();
            read_label();  // internal labels accepted and discarded
            skip_length();
            return node;
        }
        std::string label = read_label();
        if (label.empty()) fail("expected leaf label");
        int node = new_node();
        labels[node] = label;
        skip_length();
        return node;
    }

    // Parses one ';'-terminated tree starting at pos.
    PhyloTree parse_one() {
        int root = parse_subtree();
        if (peek() != ';') fail("expected ';'");
        advance();
        return build(root);
    }

    PhyloTree build(int root) {
        size_t n = children.size();
        if (n == 1) {
            // single labeled leaf, "a;"
            return PhyloTree(1, {}, {labels[0]});
        }
        if (children[root].size() == 1)
            throw newick_parse_error({"root has a single child", line, col});
        std::vector<std::pair<int, int>> edges;
        for (size_t v = 0; v < n; ++v)
            for (int c : children[v]) edges.emplace_back(static_cast<int>(v), c);
        // suppress degree-2 vertices (the root of a bifurcating expression)
        std::vector<std::vector<int>> adj(n);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::vector<char> removed(n, 0);
        for (size_t v = 0; v < n; ++v) {
            if (adj[v].size() == 2 && labels[v].empty()) {
                int a = adj[v][0], b = adj[v][1];
                auto drop = [&](int from, int old, int repl) {
                    for (int& w : adj[from])
                        if (w == old) w = repl;
                };
                drop(a, static_cast<int>(v), b);
                drop(b, static_cast<int>(v), a);
                removed[v] = 1;
            } else if (adj[v].size() == 2) {
                throw newick_parse_error({"labeled vertex of degree 2", line, col});
            }
        }
        // compact ids
        std::vector<int> id(n, -1);
        int next = 0;
        for (size_t v = 0; v < n; ++v)
            if (!removed[v]) id[v] = next++;
        std::vector<std::pair<int, int>> out_edges;
        std::vector<std::string> out_labels(next);
        for (size_t v = 0; v < n; ++v) {
            if (removed[v]) continue;
            out_labels[id[v]] = labels[v];
            for (int w : adj[v])
                if (!removed[w] && id[v] < id[w]) out_edges.emplace_back(id[v], id[w]);
        }
        try {
            return PhyloTree(next, std::move(out_edges), std::move(out_labels));
        } catch (const std::invalid_argument& e) {
            throw newick_parse_error({e.what(), line, col});
        }
    }
};

}  // namespace

PhyloTree parse_newick(const std::string& text) {
    NewickParser p(text);
    PhyloTree t = p.parse_one();
    if (!p.at_end()) p.fail("trailing characters after ';'");
    return t;
}

namespace {

// Serializes the subtree entered from `parent` into `v`; `min_taxon`
// receives the smallest taxon below.
std::string newick_subtree(const PhyloTree& t, int v, int parent, std::string& min_taxon) {
    if (t.is_leaf(v)) {
        min_taxon = t.label(v);
        return t.label(v);
    }
    std::vector<std::pair<std::string, std::string>> parts;  // (min_taxon, text)
    for (int w : t.neighbors(v)) {
        if (w == parent) continue;
        std::string mt;
        std::string s = newick_subtree(t, w, v, mt);
        parts.emplace_back(std::move(mt), std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    min_taxon = parts.front().first;
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i].second;
    }
    out += ")";
    return out;
}

}  // namespace

std::string to_newick(const PhyloTree& t) {
    if (t.leaf_count() == 1) return t.taxa()[0] + ";";
    if (t.leaf_count() == 2) return "(" + t.taxa()[0] + "," + t.taxa()[1] + ");";
    // root at the internal vertex adjacent to the smallest taxon
    int leaf = t.leaf_of(t.taxa()[0]);
    int root = t.neighbors(leaf)[0];
    std::string mt;
    return newick_subtree(t, root, -1, mt) + ";";
}

// ---------------------------------------------------------------------------
// Restriction and cherries

PhyloTree restrict_tree(const PhyloTree& t, const std::vector<std::string>& s) {
    if (s.empty()) throw std::invalid_argument("restriction to empty set");
    std::vector<char> keep_leaf(t.vertex_count(), 0);
    for (const auto& taxon : s) {
        int v = t.leaf_of(taxon);
        if (v < 0) throw std::invalid_argument("taxon not in tree: " + taxon);
        keep_leaf[v] = 1;
    }
    int n = t.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = t.neighbors(v);
    std::vector<char> removed(n, 0);
    // prune leaves outside s until stable
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (removed[v] || keep_leaf[v]) continue;
            if (adj[v].size() <= 1) {
                removed[v] = 1;
                changed = true;
                if (!adj[v].empty()) {
                    int w = adj[v][0];
                    std::erase(adj[w], v);
                }
                adj[v].clear();
            }
        }
    }
    // suppress degree-2 vertices
    for (int v = 0; v < n; ++v) {
        if (removed[v] || keep_leaf[v]) continue;
        if (adj[v].size() == 2) {
            int a = adj[v][0], b = adj[v][1];
            for (int& w : adj[a])
                if (w == v) w = b;
            for (int& w : adj[b])
                if (w == v) w = a;
            removed[v] = 1;
            adj[v].clear();
        }
    }
    std::vector<int> id(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) id[v] = next++;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels(next);
    for (int v = 0; v < n; ++v) {
        if (removed[v]) continue;
        if (keep_leaf[v]) labels[id[v]] = t.label(v);
        for (int w : adj[v])
            if (id[v] < id[w]) edges.emplace_back(id[v], id[w]);
    }
    return PhyloTree(next, std::move(edges), std::move(labels));
}

std::vector<std::vector<std::string>> complete_cherries(const PhyloTree& t) {
    if (t.leaf_count() < 2) throw std::invalid_argument("tree has fewer than 2 leaves");
    if (t.leaf_count() == 2) return {{t.taxa()[0], t.taxa()[1]}};
    std::map<int, std::vector<std::string>> groups;  // internal vertex -> leaves
    for (int v = 0; v < t.vertex_count(); ++v)
        if (t.is_leaf(v)) groups[t.neighbors(v)[0]].push_back(t.label(v));
    std::vector<std::vector<std::string>> out;
    for (auto& [v, leaves] : groups) {
        if (leaves.size() < 2) continue;
        std::sort(leaves.begin(), leaves.end());
        out.push_back(leaves);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Induced quartets / quintets

Quartet quartet_of(const PhyloTree& t, const std::vector<std::string>& four) {
    if (four.size() != 4) throw std::invalid_argument("quartet_of needs 4 taxa");
    PhyloTree r = restrict_tree(t, four);
    auto cherries = complete_cherries(r);
    if (cherries.size() == 2) {
        assert(cherries[0].size() == 2 && cherries[1].size() == 2);
        return Quartet::pair_pair(cherries[0][0], cherries[0][1], cherries[1][0],
                                  cherries[1][1]);
    }
    assert(cherries.size() == 1 && cherries[0].size() == 4);
    return Quartet::star(cherries[0][0], cherries[0][1], cherries[0][2], cherries[0][3]);
}

Quintet quintet_of(const PhyloTree& t, const std::vector<std::string>& five) {
    if (five.size() != 5) throw std::invalid_argument("quintet_of needs 5 taxa");
    PhyloTree r = restrict_tree(t, five);
    auto cherries = complete_cherries(r);
    if (cherries.size() == 2) {
        const auto& a = cherries[0];
        const auto& b = cherries[1];
        if (a.size() == 2 && b.size() == 2) {
            // the singleton is the leaf in neither cherry
            for (const auto& taxon : r.taxa())
                if (std::find(a.begin(), a.end(), taxon) == a.end() &&
                    std::find(b.begin(), b.end(), taxon) == b.end())
                    return Quintet::pair_pair(a[0], a[1], b[0], b[1], taxon);
            assert(false && "no singleton leaf in a (2,2,1) restriction");
        }
        const auto& pair = a.size() == 2 ? a : b;
        const auto& triple = a.size() == 2 ? b : a;
        assert(pair.size() == 2 && triple.size() == 3);
        return Quintet::pair_triple(pair[0], pair[1], triple[0], triple[1], triple[2]);
    }
    assert(cherries.size() == 1 && cherries[0].size() == 5);
    const auto& c = cherries[0];
    return Quintet::star(c[0], c[1], c[2], c[3], c[4]);
}

namespace {

template <typename F>
void for_each_subset(const std::vector<std::string>& taxa, int k, F&& fn) {
    int n = static_cast<int>(taxa.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<std::string> sub(k);
        for (int i = 0; i < k; ++i) sub[i] = taxa[idx[i]];
        fn(sub);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

QuartetSystem quartet_system_of(const PhyloTree& t) {
    if (t.leaf_count() < 4) throw std::invalid_argument("quartet system needs >= 4 leaves");
    QuartetSystem s(t.taxa());
    for_each_subset(t.taxa(), 4, [&](const std::vector<std::string>& sub) {
        s.add(quartet_of(t, sub));
    });
    return s;
}

QuintetSystem quintet_system_of(const PhyloTree& t) {
    if (t.leaf_count() < 5) throw std::invalid_argument("quintet system needs >= 5 leaves");
    QuintetSystem q(t.taxa());
    for_each_subset(t.taxa(), 5, [&](const std::vector<std::string>& sub) {
        q.add(quintet_of(t, sub));
    });
    return q;
}

// ---------------------------------------------------------------------------
// Splits and isomorphism

std::set<Split> splits_of(const PhyloTree& t) {
    std::set<Split> out;
    int n = t.vertex_count();
    for (int u = 0; u < n; ++u) {
        for (int v : t.neighbors(u)) {
            if (v < u) continue;
            // leaves on u's side of edge (u,v)
            std::vector<std::string> side;
            std::vector<int> stack{u};
            std::vector<char> seen(n, 0);
            seen[u] = seen[v] = 1;
            while (!stack.empty()) {
                int w = stack.back();
                stack.pop_back();
                if (t.is_leaf(w)) side.push_back(t.label(w));
                for (int z : t.neighbors(w))
                    if (!seen[z]) {
                        seen[z] = 1;
                        stack.push_back(z);
                    }
            }
            std::sort(side.begin(), side.end());
            std::vector<std::string> other;
            std::set_difference(t.taxa().begin(), t.taxa().end(), side.begin(), side.end(),
                                std::back_inserter(other));
            if (side.empty() || other.empty()) continue;  // single-vertex side with no leaf
            Split sp;
            if (side.front() == t.taxa().front())
                sp = Split{std::move(side), std::move(other)};
            else
                sp = Split{std::move(other), std::move(side)};
            out.insert(std::move(sp));
        }
    }
    return out;
}

std::set<Split> nontrivial_splits_of(const PhyloTree& t) {
    std::set<Split> out;
    for (auto& sp : splits_of(t))
        if (sp.side_a.size() >= 2 && sp.side_b.size() >= 2) out.insert(sp);
    return out;
}

bool same_topology(const PhyloTree& a, const PhyloTree& b) {
    if (a.taxa() != b.taxa()) throw std::invalid_argument("mismatched leaf sets");
    return splits_of(a) == splits_of(b);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Inserts `taxon` into every position of `t`: subdividing each edge or
// attaching to each internal vertex. Each insertion point yields a
// distinct topology, and removing the new leaf recovers t, so the
// recursion emits every tree exactly once.
void insert_leaf_everywhere(const PhyloTree& t, const std::string& taxon,
                            std::vector<PhyloTree>& out) {
    int n = t.vertex_count();
    std::vector<std::pair<int, int>> base_edges;
    for (int u = 0; u < n; ++u)
        for (int v : t.neighbors(u))
            if (u < v) base_edges.emplace_back(u, v);
    std::vector<std::string> base_labels(n);
    for (int v = 0; v < n; ++v) base_labels[v] = t.label(v);

    for (auto [u, v] : base_edges) {
        // subdivide (u,v) with a new vertex carrying the new leaf
        auto edges = base_edges;
        std::erase(edges, std::make_pair(u, v));
        int mid = n, leaf = n + 1;
        edges.emplace_back(u, mid);
        edges.emplace_back(mid, v);
        edges.emplace_back(mid, leaf);
        auto labels = base_labels;
        labels.emplace_back();       // mid
        labels.push_back(taxon);     // leaf
        out.emplace_back(n + 2, std::move(edges), std::move(labels));
    }
    for (int v = 0; v < n; ++v) {
        if (t.degree(v) < 3) continue;
        auto edges = base_edges;
        edges.emplace_back(v, n);
        auto labels = base_labels;
        labels.push_back(taxon);
        out.emplace_back(n + 1, std::move(edges), std::move(labels));
    }
}

}  // namespace

std::vector<PhyloTree> enumerate_trees(const std::vector<std::string>& taxa) {
    std::vector<std::string> sorted = taxa;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate taxa");
    int n = static_cast<int>(sorted.size());
    if (n < 3 || n > 8) throw std::invalid_argument("enumeration supports 3 <= |X| <= 8");
    // base: the unique 3-leaf star
    std::vector<PhyloTree> current;
    current.emplace_back(4, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}},
                         std::vector<std::string>{"", sorted[0], sorted[1], sorted[2]});
    for (int k = 3; k < n; ++k) {
        std::vector<PhyloTree> next;
        for (const auto& t : current) insert_leaf_everywhere(t, sorted[k], next);
        // dedup by split set; the insertion scheme is exactly-once, so
        // this is a pure safety net
        std::set<std::set<Split>> seen;
        std::vector<PhyloTree> unique;
        for (auto& t : next)
            if (seen.insert(splits_of(t)).second) unique.push_back(std::move(t));
        current = std::move(unique);
    }
    return current;
}

}  // namespace quintree
