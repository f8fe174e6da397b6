#include "quintree/quartet.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "quintree/tree.hpp"

namespace quintree {

namespace {

void require_distinct(std::array<std::string, 4> t) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
        throw std::invalid_argument("quartet taxa must be distinct");
}

size_t hash_combine(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Quartet Quartet::pair_pair(const std::string& a, const std::string& b, const std::string& c,
                           const std::string& d) {
    require_distinct({a, b, c, d});
    std::array<std::string, 2> p1{std::min(a, b), std::max(a, b)};
    std::array<std::string, 2> p2{std::min(c, d), std::max(c, d)};
    if (p2[0] < p1[0]) std::swap(p1, p2);
    return Quartet(QuartetKind::pair_pair, {p1[0], p1[1], p2[0], p2[1]});
}

Quartet Quartet::star(const std::string& a, const std::string& b, const std::string& c,
                      const std::string& d) {
    require_distinct({a, b, c, d});
    std::array<std::string, 4> t{a, b, c, d};
    std::sort(t.begin(), t.end());
    return Quartet(QuartetKind::star, std::move(t));
}

std::array<std::string, 4> Quartet::support() const {
    std::array<std::string, 4> s = t_;
    std::sort(s.begin(), s.end());
    return s;
}

bool Quartet::separates(const std::string& x, const std::string& y) const {
    if (kind_ != QuartetKind::pair_pair) return false;
    bool x1 = t_[0] == x || t_[1] == x;
    bool x2 = t_[2] == x || t_[3] == x;
    bool y1 = t_[0] == y || t_[1] == y;
    bool y2 = t_[2] == y || t_[3] == y;
    return (x1 && y2) || (x2 && y1);
}

bool Quartet::has_pair(const std::string& x, const std::string& y) const {
    if (kind_ != QuartetKind::pair_pair) return false;
    return (t_[0] == x && t_[1] == y) || (t_[0] == y && t_[1] == x) ||
           (t_[2] == x && t_[3] == y) || (t_[2] == y && t_[3] == x);
}

std::string Quartet::to_string() const {
    if (kind_ == QuartetKind::pair_pair)
        return t_[0] + " " + t_[1] + " | " + t_[2] + " " + t_[3];
    return t_[0] + " " + t_[1] + " " + t_[2] + " " + t_[3];
}

size_t QuartetHash::operator()(const Quartet& q) const {
    size_t h = q.kind() == QuartetKind::pair_pair ? 2 : 4;
    std::hash<std::string> sh;
    for (const auto& s : q.taxa()) h = hash_combine(h, sh(s));
    return h;
}

// ---------------------------------------------------------------------------
// QuartetSystem

QuartetSystem::QuartetSystem(std::vector<std::string> universe) : universe_(std::move(universe)) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

void QuartetSystem::add(const Quartet& q) {
    for (const auto& taxon : q.support())
        if (!std::binary_search(universe_.begin(), universe_.end(), taxon)) {
            universe_.insert(
                std::upper_bound(universe_.begin(), universe_.end(), taxon), taxon);
        }
    by_support_[q.support()].push_back(q);
    members_.insert(q);
}

bool QuartetSystem::contains(const Quartet& q) const { return members_.contains(q); }

const std::vector<Quartet>& QuartetSystem::on_support(
    const std::array<std::string, 4>& s) const {
    static const std::vector<Quartet> empty;
    auto it = by_support_.find(s);
    return it == by_support_.end() ? empty : it->second;
}

std::optional<Quartet> QuartetSystem::unique_on_support(
    const std::array<std::string, 4>& s) const {
    const auto& v = on_support(s);
    if (v.size() != 1) return std::nullopt;
    return v.front();
}

std::vector<Quartet> QuartetSystem::entries_sorted() const {
    std::vector<Quartet> out;
    for (const auto& [sup, v] : by_support_) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool QuartetSystem::operator==(const QuartetSystem& o) const {
    return universe_ == o.universe_ && entries_sorted() == o.entries_sorted();
}

// ---------------------------------------------------------------------------
// Axiom checks

namespace {

// Keeps the lexicographically smallest witness in first_violation mode.
struct Collector {
    CheckMode mode;
    std::vector<Certificate> certs;
    std::optional<Certificate> best;

    void report(Certificate c) {
        if (mode == CheckMode::exhaustive) {
            certs.push_back(std::move(c));
        } else if (!best || c.witnesses < best->witnesses) {
            best = std::move(c);
        }
    }
    bool any() const { return best.has_value() || !certs.empty(); }
    CheckResult result() {
        if (mode == CheckMode::exhaustive) {
            std::sort(certs.begin(), certs.end(),
                      [](const Certificate& a, const Certificate& b) {
                          return std::tie(a.rule, a.witnesses) < std::tie(b.rule, b.witnesses);
                      });
            certs.erase(std::unique(certs.begin(), certs.end()), certs.end());
            return {std::move(certs)};
        }
        if (best) return {{*best}};
        return {};
    }
};

template <typename F>
void for_each_4subset(const std::vector<std::string>& u, F&& fn) {
    size_t n = u.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                for (size_t l = k + 1; l < n; ++l)
                    fn(std::array<std::string, 4>{u[i], u[j], u[k], u[l]});
}

}  // namespace

CheckResult is_thin_q4(const QuartetSystem& s, CheckMode mode) {
    if (s.universe().size() < 4)
        throw std::invalid_argument("thinness needs a universe of >= 4 taxa");
    Collector col{mode};
    for_each_4subset(s.universe(), [&](const std::array<std::string, 4>& sup) {
        const auto& v = s.on_support(sup);
        if (v.empty()) {
            col.report({"quartet.thin.missing", {sup.begin(), sup.end()}, {}});
        } else if (v.size() > 1) {
            Certificate c{"quartet.thin.duplicate", {sup.begin(), sup.end()}, {}};
            for (const auto& q : v) c.entries.push_back(q.to_string());
            std::sort(c.entries.begin(), c.entries.end());
            c.entries.erase(std::unique(c.entries.begin(), c.entries.end()), c.entries.end());
            if (c.entries.size() > 1) col.report(std::move(c));
        }
    });
    return col.result();
}

CheckResult is_transitive_q4(const QuartetSystem& s, CheckMode mode) {
    Collector col{mode};
    const auto& X = s.universe();
    // (a1,x | b1,b2) /\ (a2,x | b1,b2) => (a1,a2 | b1,b2)
    for (const Quartet& e1 : s.entries_sorted()) {
        if (e1.kind() != QuartetKind::pair_pair) continue;
        const auto& t = e1.taxa();
        // readings: either pair as {a1,x}, either order inside it
        const std::array<std::array<int, 4>, 4> readings{{
            {0, 1, 2, 3}, {1, 0, 2, 3}, {2, 3, 0, 1}, {3, 2, 0, 1}  // a1,x,b1,b2
        }};
        for (const auto& r : readings) {
            const std::string &a1 = t[r[0]], &x = t[r[1]], &b1 = t[r[2]], &b2 = t[r[3]];
            for (const auto& a2 : X) {
                if (a2 == a1 || a2 == x || a2 == b1 || a2 == b2) continue;
                if (!s.contains(Quartet::pair_pair(a2, x, b1, b2))) continue;
                if (s.contains(Quartet::pair_pair(a1, a2, b1, b2))) continue;
                Certificate c{"quartet.transitive",
                              {std::min(a1, a2), std::max(a1, a2), x, std::min(b1, b2),
                               std::max(b1, b2)},
                              {e1.to_string(), Quartet::pair_pair(a2, x, b1, b2).to_string()}};
                std::sort(c.entries.begin(), c.entries.end());
                col.report(std::move(c));
            }
        }
    }
    return col.result();
}

CheckResult is_saturated_q4(const QuartetSystem& s, CheckMode mode) {
    Collector col{mode};
    const auto& X = s.universe();
    // (a1,a2 | b1,b2) => (a1,x | b1,b2) \/ (a1,a2 | b1,x)
    for (const Quartet& e : s.entries_sorted()) {
        if (e.kind() != QuartetKind::pair_pair) continue;
        const auto& t = e.taxa();
        const std::array<std::array<int, 4>, 8> readings{{
            {0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2},
            {2, 3, 0, 1}, {3, 2, 0, 1}, {2, 3, 1, 0}, {3, 2, 1, 0}  // a1,a2,b1,b2
        }};
        for (const auto& r : readings) {
            const std::string &a1 = t[r[0]], &a2 = t[r[1]], &b1 = t[r[2]], &b2 = t[r[3]];
            for (const auto& x : X) {
                if (x == a1 || x == a2 || x == b1 || x == b2) continue;
                if (s.contains(Quartet::pair_pair(a1, x, b1, b2))) continue;
                if (s.contains(Quartet::pair_pair(a1, a2, b1, x))) continue;
                col.report({"quartet.saturated", {a1, a2, b1, b2, x}, {e.to_string()}});
            }
        }
    }
    return col.result();
}

CheckResult check_tts_q4(const QuartetSystem& s, CheckMode mode) {
    CheckResult r = is_thin_q4(s, mode);
    if (!r.ok() && mode == CheckMode::first_violation) return r;
    CheckResult t = is_transitive_q4(s, mode);
    if (!t.ok() && mode == CheckMode::first_violation) return t;
    CheckResult sat = is_saturated_q4(s, mode);
    if (mode == CheckMode::first_violation) return sat;
    r.certificates.insert(r.certificates.end(), t.certificates.begin(), t.certificates.end());
    r.certificates.insert(r.certificates.end(), sat.certificates.begin(),
                          sat.certificates.end());
    return r;
}

// ---------------------------------------------------------------------------
// Reconstruction

not_tts_error::not_tts_error(std::string msg, Certificate cert)
    : std::runtime_error(std::move(msg)), cert_(std::move(cert)) {}

namespace {

// Clade built during cherry merging; expanded back into tree vertices
// at the end. `flat` composites attach their children directly to the
// parent vertex (the merged leaves shared a vertex without forming a
// 2-cherry of their own).
struct Clade {
    std::string leaf;  // empty for composites
    bool flat = false;
    std::vector<Clade> children;
};

struct Builder {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;

    int new_vertex(const std::string& label = "") {
        labels.push_back(label);
        return static_cast<int>(labels.size()) - 1;
    }

    void attach(int parent, const Clade& c) {
        if (!c.leaf.empty()) {
            int v = new_vertex(c.leaf);
            edges.emplace_back(parent, v);
            return;
        }
        if (c.flat) {
            for (const Clade& ch : c.children) attach(parent, ch);
            return;
        }
        int v = new_vertex();
        edges.emplace_back(parent, v);
        for (const Clade& ch : c.children) attach(v, ch);
    }
};

}  // namespace

PhyloTree reconstruct_from_quartets(const QuartetSystem& s) {
    for (auto check : {is_thin_q4, is_transitive_q4, is_saturated_q4}) {
        CheckResult r = check(s, CheckMode::first_violation);
        if (!r.ok())
            throw not_tts_error("quartet system is not TTS: " + r.first().rule, r.first());
    }

    // current taxa keyed by their smallest original label
    std::map<std::string, Clade> clades;
    for (const auto& taxon : s.universe()) clades[taxon] = Clade{taxon};
    QuartetSystem cur = s;

    auto separated = [&](const std::string& a, const std::string& b) {
        for (const Quartet& q : cur.entries_sorted())
            if (q.separates(a, b)) return true;
        return false;
    };
    auto any_pair_pair = [&] {
        for (const Quartet& q : cur.entries_sorted())
            if (q.kind() == QuartetKind::pair_pair) return true;
        return false;
    };

    while (clades.size() > 3 && any_pair_pair()) {
        // lexicographically smallest non-separated pair of current taxa
        std::optional<std::pair<std::string, std::string>> merge;
        for (auto i = clades.begin(); i != clades.end() && !merge; ++i)
            for (auto j = std::next(i); j != clades.end(); ++j)
                if (!separated(i->first, j->first)) {
                    merge = {i->first, j->first};
                    break;
                }
        if (!merge)
            throw std::logic_error(
                "no mergeable pair although (2,2) entries remain; "
                "checker bug on TTS input");
        auto [a, b] = *merge;

        // 2-cherry iff every current 4-set through {a,b} pairs them up
        bool cherry = true;
        for (auto i = clades.begin(); i != clades.end() && cherry; ++i) {
            if (i->first == a || i->first == b) continue;
            for (auto j = std::next(i); j != clades.end(); ++j) {
                if (j->first == a || j->first == b) continue;
                std::array<std::string, 4> sup{a, b, i->first, j->first};
                std::sort(sup.begin(), sup.end());
                auto q = cur.unique_on_support(sup);
                assert(q && "inherited system lost completeness");
                if (!q->has_pair(a, b)) {
                    cherry = false;
                    break;
                }
            }
        }

        Clade merged;
        merged.flat = !cherry;
        merged.children.push_back(std::move(clades[a]));
        merged.children.push_back(std::move(clades[b]));
        clades.erase(b);
        clades[a] = std::move(merged);

        // inherit quartets: drop entries through both a and b, rename b
        // to a elsewhere, and assert the two inheritance routes agree
        QuartetSystem next(cur.universe());
        {
            std::vector<std::string> u = cur.universe();
            std::erase(u, b);
            next = QuartetSystem(std::move(u));
        }
        std::map<std::array<std::string, 4>, Quartet> merged_entries;
        for (const Quartet& q : cur.entries_sorted()) {
            const auto sup = q.support();
            bool has_a = std::find(sup.begin(), sup.end(), a) != sup.end();
            bool has_b = std::find(sup.begin(), sup.end(), b) != sup.end();
            if (has_a && has_b) continue;
            Quartet renamed = q;
            if (has_b) {
                std::array<std::string, 4> t;
                for (size_t i = 0; i < 4; ++i)
                    t[i] = q.taxa()[i] == b ? a : q.taxa()[i];
                renamed = q.kind() == QuartetKind::pair_pair
                              ? Quartet::pair_pair(t[0], t[1], t[2], t[3])
                              : Quartet::star(t[0], t[1], t[2], t[3]);
            }
            auto [it, inserted] = merged_entries.emplace(renamed.support(), renamed);
            if (!inserted && it->second != renamed)
                throw std::logic_error(
                    "inheritance mismatch while merging {" + a + "," + b +
                    "}; checker bug on TTS input");
        }
        for (const auto& [sup, q] : merged_entries) next.add(q);
        cur = std::move(next);
    }

    // attach everything that remains to a single vertex
    Builder builder;
    if (clades.size() == 1) {
        // |X| >= 4 always leaves >= 3 clades; degenerate only via direct misuse
        const Clade& c = clades.begin()->second;
        if (!c.leaf.empty()) return PhyloTree(1, {}, {c.leaf});
        throw std::logic_error("reconstruction collapsed to a single composite");
    }
    int center = builder.new_vertex();
    for (const auto& [key, clade] : clades) builder.attach(center, clade);
    int vertex_count = static_cast<int>(builder.labels.size());
    return PhyloTree(vertex_count, std::move(builder.edges), std::move(builder.labels));
}

}  // namespace quintree
