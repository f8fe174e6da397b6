#include "quintree/quintet.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace quintree {

namespace {

void require_distinct(std::array<std::string, 5> t) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
        throw std::invalid_argument("quintet taxa must be distinct");
}

size_t hash_combine(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Quintet Quintet::pair_pair(const std::string& a, const std::string& b, const std::string& c,
                           const std::string& d, const std::string& e) {
    require_distinct({a, b, c, d, e});
    std::array<std::string, 2> p1{std::min(a, b), std::max(a, b)};
    std::array<std::string, 2> p2{std::min(c, d), std::max(c, d)};
    if (p2[0] < p1[0]) std::swap(p1, p2);
    return Quintet(QuintetKind::pair_pair, {p1[0], p1[1], p2[0], p2[1], e});
}

Quintet Quintet::pair_triple(const std::string& a, const std::string& b, const std::string& c,
                             const std::string& d, const std::string& e) {
    require_distinct({a, b, c, d, e});
    std::array<std::string, 3> t{c, d, e};
    std::sort(t.begin(), t.end());
    return Quintet(QuintetKind::pair_triple,
                   {std::min(a, b), std::max(a, b), t[0], t[1], t[2]});
}

Quintet Quintet::star(const std::string& a, const std::string& b, const std::string& c,
                      const std::string& d, const std::string& e) {
    require_distinct({a, b, c, d, e});
    std::array<std::string, 5> t{a, b, c, d, e};
    std::sort(t.begin(), t.end());
    return Quintet(QuintetKind::star, std::move(t));
}

std::array<std::string, 5> Quintet::support() const {
    std::array<std::string, 5> s = t_;
    std::sort(s.begin(), s.end());
    return s;
}

std::string Quintet::to_string() const {
    switch (kind_) {
        case QuintetKind::pair_pair:
            return t_[0] + " " + t_[1] + " | " + t_[2] + " " + t_[3] + " | " + t_[4];
        case QuintetKind::pair_triple:
            return t_[0] + " " + t_[1] + " | " + t_[2] + " " + t_[3] + " " + t_[4];
        case QuintetKind::star:
            return t_[0] + " " + t_[1] + " " + t_[2] + " " + t_[3] + " " + t_[4];
    }
    return {};
}

size_t QuintetHash::operator()(const Quintet& q) const {
    size_t h = static_cast<size_t>(q.kind()) + 11;
    std::hash<std::string> sh;
    for (const auto& s : q.taxa()) h = hash_combine(h, sh(s));
    return h;
}

std::vector<Quintet> all_quintets_on(const std::array<std::string, 5>& support) {
    std::array<std::string, 5> s = support;
    std::sort(s.begin(), s.end());
    std::vector<Quintet> out;
    // 15 of kind (2,2,1): choose the singleton (5), then split the rest
    // into two pairs (3)
    for (int single = 0; single < 5; ++single) {
        std::array<int, 4> r;
        int k = 0;
        for (int i = 0; i < 5; ++i)
            if (i != single) r[k++] = i;
        const std::array<std::array<int, 4>, 3> pairings{
            {{r[0], r[1], r[2], r[3]}, {r[0], r[2], r[1], r[3]}, {r[0], r[3], r[1], r[2]}}};
        for (const auto& p : pairings)
            out.push_back(Quintet::pair_pair(s[p[0]], s[p[1]], s[p[2]], s[p[3]], s[single]));
    }
    // 10 of kind (3,2): choose the pair
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            std::array<std::string, 3> t;
            int k = 0;
            for (int l = 0; l < 5; ++l)
                if (l != i && l != j) t[k++] = s[l];
            out.push_back(Quintet::pair_triple(s[i], s[j], t[0], t[1], t[2]));
        }
    out.push_back(Quintet::star(s[0], s[1], s[2], s[3], s[4]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Quintet> expand_overline(const std::string& a1, const std::string& a2,
                                     const std::string& b1, const std::string& b2,
                                     const std::string& b3) {
    require_distinct({a1, a2, b1, b2, b3});
    return {Quintet::pair_triple(a1, a2, b1, b2, b3), Quintet::pair_pair(a1, a2, b1, b2, b3),
            Quintet::pair_pair(a1, a2, b1, b3, b2), Quintet::pair_pair(a1, a2, b2, b3, b1)};
}

// ---------------------------------------------------------------------------
// QuintetSystem

QuintetSystem::QuintetSystem(std::vector<std::string> universe) : universe_(std::move(universe)) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

void QuintetSystem::add(const Quintet& q) {
    for (const auto& taxon : q.support())
        if (!std::binary_search(universe_.begin(), universe_.end(), taxon))
            universe_.insert(std::upper_bound(universe_.begin(), universe_.end(), taxon),
                             taxon);
    by_support_[q.support()].push_back(q);
    members_.insert(q);
}

bool QuintetSystem::contains(const Quintet& q) const { return members_.contains(q); }

const std::vector<Quintet>& QuintetSystem::on_support(
    const std::array<std::string, 5>& s) const {
    static const std::vector<Quintet> empty;
    auto it = by_support_.find(s);
    return it == by_support_.end() ? empty : it->second;
}

std::optional<Quintet> QuintetSystem::unique_on_support(
    const std::array<std::string, 5>& s) const {
    const auto& v = on_support(s);
    if (v.size() != 1) return std::nullopt;
    return v.front();
}

std::vector<Quintet> QuintetSystem::entries_sorted() const {
    std::vector<Quintet> out;
    for (const auto& [sup, v] : by_support_) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool QuintetSystem::operator==(const QuintetSystem& o) const {
    return universe_ == o.universe_ && entries_sorted() == o.entries_sorted();
}

// ---------------------------------------------------------------------------
// Rule scanning machinery

namespace {

using S = const std::string&;

// All readings of a (2,2,1) entry as an ordered tuple
// (p1a, p1b, p2a, p2b, single): pair roles x within-pair orders.
template <typename F>
void each_pp_reading(const Quintet& q, F&& fn) {
    const auto& t = q.taxa();
    const std::array<std::array<int, 4>, 8> orders{{{0, 1, 2, 3},
                                                    {1, 0, 2, 3},
                                                    {0, 1, 3, 2},
                                                    {1, 0, 3, 2},
                                                    {2, 3, 0, 1},
                                                    {3, 2, 0, 1},
                                                    {2, 3, 1, 0},
                                                    {3, 2, 1, 0}}};
    for (const auto& o : orders) fn(t[o[0]], t[o[1]], t[o[2]], t[o[3]], t[4]);
}

// All readings of a (3,2) entry as (pa, pb, t1, t2, t3).
template <typename F>
void each_pt_reading(const Quintet& q, F&& fn) {
    const auto& t = q.taxa();
    const std::array<std::array<int, 3>, 6> perms{
        {{2, 3, 4}, {2, 4, 3}, {3, 2, 4}, {3, 4, 2}, {4, 2, 3}, {4, 3, 2}}};
    for (int swap = 0; swap < 2; ++swap)
        for (const auto& p : perms)
            fn(t[swap ? 1 : 0], t[swap ? 0 : 1], t[p[0]], t[p[1]], t[p[2]]);
}

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
    void merge_into(CheckResult& out) {
        if (mode == CheckMode::exhaustive) {
            std::sort(certs.begin(), certs.end(),
                      [](const Certificate& a, const Certificate& b) {
                          return std::tie(a.rule, a.witnesses) < std::tie(b.rule, b.witnesses);
                      });
            certs.erase(std::unique(certs.begin(), certs.end()), certs.end());
            out.certificates.insert(out.certificates.end(), certs.begin(), certs.end());
        } else if (best) {
            out.certificates.push_back(*best);
        }
    }
};

template <typename F>
void each_5subset(const std::vector<std::string>& u, F&& fn) {
    size_t n = u.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d)
                    for (size_t e = d + 1; e < n; ++e)
                        fn(std::array<std::string, 5>{u[a], u[b], u[c], u[d], u[e]});
}

bool in4(S v, S a, S b, S c, S d) { return v == a || v == b || v == c || v == d; }
bool in5(S v, S a, S b, S c, S d, S e) { return in4(v, a, b, c, d) || v == e; }

}  // namespace

// ---------------------------------------------------------------------------
// Thinness

CheckResult is_thin_q5(const QuintetSystem& q, CheckMode mode) {
    if (q.universe().size() < 5)
        throw std::invalid_argument("thinness needs a universe of >= 5 taxa");
    CheckResult out;
    const auto& X = q.universe();
    const auto entries = q.entries_sorted();

    // forbidden pair patterns; y ranges over X minus {a,b,c,d} and may
    // coincide with x
    for (int rule = 1; rule <= 4 && (mode == CheckMode::exhaustive || out.ok()); ++rule) {
        Collector col{mode};
        for (const Quintet& e1 : entries) {
            if (rule == 1 || rule == 3) {
                if (e1.kind() != QuintetKind::pair_pair) continue;
                each_pp_reading(e1, [&](S a, S b, S c, S x, S d) {
                    for (const auto& y : X) {
                        if (in4(y, a, b, c, d)) continue;
                        Quintet l2 = rule == 1 ? Quintet::pair_pair(a, c, b, y, d)
                                               : Quintet::pair_triple(b, y, a, c, d);
                        if (!q.contains(l2)) continue;
                        col.report({rule == 1 ? "thin.i" : "thin.iii",
                                    {a, b, c, d, x, y},
                                    {e1.to_string(), l2.to_string()}});
                    }
                });
            } else {
                if (e1.kind() != QuintetKind::pair_triple) continue;
                each_pt_reading(e1, [&](S pa, S pb, S t1, S t2, S t3) {
                    // rule 2: (a,b | c,d,x); rule 4: (a,x | b,c,d)
                    S a = pa;
                    S b = rule == 2 ? pb : t1;
                    S c = rule == 2 ? t1 : t2;
                    S d = rule == 2 ? t2 : t3;
                    S x = rule == 2 ? t3 : pb;
                    for (const auto& y : X) {
                        if (in4(y, a, b, c, d)) continue;
                        Quintet l2 = rule == 2 ? Quintet::pair_triple(a, y, b, c, d)
                                               : Quintet::pair_pair(a, d, b, c, y);
                        if (!q.contains(l2)) continue;
                        col.report({rule == 2 ? "thin.ii" : "thin.iv",
                                    {a, b, c, d, x, y},
                                    {e1.to_string(), l2.to_string()}});
                    }
                });
            }
        }
        col.merge_into(out);
    }
    if (!out.ok() && mode == CheckMode::first_violation) return out;

    // per-support uniqueness and completeness
    Collector dup{mode}, missing{mode};
    each_5subset(X, [&](const std::array<std::string, 5>& sup) {
        const auto& v = q.on_support(sup);
        if (v.empty()) {
            missing.report({"thin.incomplete", {sup.begin(), sup.end()}, {}});
        } else if (v.size() > 1) {
            Certificate c{"thin.duplicate", {sup.begin(), sup.end()}, {}};
            for (const auto& e : v) c.entries.push_back(e.to_string());
            std::sort(c.entries.begin(), c.entries.end());
            c.entries.erase(std::unique(c.entries.begin(), c.entries.end()), c.entries.end());
            if (c.entries.size() > 1) dup.report(std::move(c));
        }
    });
    if (mode == CheckMode::first_violation) {
        if (dup.any()) dup.merge_into(out);
        else missing.merge_into(out);
        if (out.certificates.size() > 1) out.certificates.resize(1);
    } else {
        dup.merge_into(out);
        missing.merge_into(out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transitivity

CheckResult is_transitive_q5(const QuintetSystem& q, CheckMode mode) {
    CheckResult out;
    const auto& X = q.universe();
    const auto entries = q.entries_sorted();

    for (int rule = 1; rule <= 6 && (mode == CheckMode::exhaustive || out.ok()); ++rule) {
        Collector col{mode};
        for (const Quintet& e1 : entries) {
            switch (rule) {
                case 1:  // (a1,a2|b1,x|c1) /\ (a1,a2|b1,x|c2) => (a1,a2|ol{c1,c2,b1})
                    if (e1.kind() != QuintetKind::pair_pair) break;
                    each_pp_reading(e1, [&](S a1, S a2, S b1, S x, S c1) {
                        for (const auto& c2 : X) {
                            if (in5(c2, a1, a2, b1, x, c1)) continue;
                            Quintet p2 = Quintet::pair_pair(a1, a2, b1, x, c2);
                            if (!q.contains(p2)) continue;
                            bool concl = false;
                            for (const Quintet& d : expand_overline(a1, a2, c1, c2, b1))
                                if (q.contains(d)) {
                                    concl = true;
                                    break;
                                }
                            if (concl) continue;
                            col.report({"trans.i",
                                        {a1, a2, b1, x, c1, c2},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
                case 2:  // (a1,a2|b1,x|c1) /\ (a1,a2|b2,x|c1) => (a1,a2|b1,b2|c1)
                    if (e1.kind() != QuintetKind::pair_pair) break;
                    each_pp_reading(e1, [&](S a1, S a2, S b1, S x, S c1) {
                        for (const auto& b2 : X) {
                            if (in5(b2, a1, a2, b1, x, c1)) continue;
                            Quintet p2 = Quintet::pair_pair(a1, a2, b2, x, c1);
                            if (!q.contains(p2)) continue;
                            if (q.contains(Quintet::pair_pair(a1, a2, b1, b2, c1))) continue;
                            col.report({"trans.ii",
                                        {a1, a2, b1, b2, x, c1},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
                case 3:  // (a1,x|b1,b2,b3) /\ (a2,x|b1,b2,b3) => (a1,a2|b1,b2,b3)
                    if (e1.kind() != QuintetKind::pair_triple) break;
                    each_pt_reading(e1, [&](S a1, S x, S b1, S b2, S b3) {
                        for (const auto& a2 : X) {
                            if (in5(a2, a1, x, b1, b2, b3)) continue;
                            Quintet p2 = Quintet::pair_triple(a2, x, b1, b2, b3);
                            if (!q.contains(p2)) continue;
                            if (q.contains(Quintet::pair_triple(a1, a2, b1, b2, b3))) continue;
                            col.report({"trans.iii",
                                        {a1, a2, x, b1, b2, b3},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
                case 4:  // (a1,a2|b1,b3,x) /\ (a1,a2|b2,b3,x) =>
                         //   (a1,a2|b1,b2,b3) \/ (a1,a2|b1,b2|b3)
                    if (e1.kind() != QuintetKind::pair_triple) break;
                    each_pt_reading(e1, [&](S a1, S a2, S b1, S b3, S x) {
                        for (const auto& b2 : X) {
                            if (in5(b2, a1, a2, b1, b3, x)) continue;
                            Quintet p2 = Quintet::pair_triple(a1, a2, b2, b3, x);
                            if (!q.contains(p2)) continue;
                            if (q.contains(Quintet::pair_triple(a1, a2, b1, b2, b3)) ||
                                q.contains(Quintet::pair_pair(a1, a2, b1, b2, b3)))
                                continue;
                            col.report({"trans.iv",
                                        {a1, a2, b1, b2, b3, x},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
                case 5:  // (a1,a2|b1,x,b2) /\ (a1,a2|b1,x|b3) => (a1,a2|b1,b2|b3)
                    if (e1.kind() != QuintetKind::pair_triple) break;
                    each_pt_reading(e1, [&](S a1, S a2, S b1, S x, S b2) {
                        for (const auto& b3 : X) {
                            if (in5(b3, a1, a2, b1, x, b2)) continue;
                            Quintet p2 = Quintet::pair_pair(a1, a2, b1, x, b3);
                            if (!q.contains(p2)) continue;
                            if (q.contains(Quintet::pair_pair(a1, a2, b1, b2, b3))) continue;
                            col.report({"trans.v",
                                        {a1, a2, b1, b2, b3, x},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
                case 6:  // (a1,a2|b1,b2|x) /\ (a1,a2|b1,b3,x) => (a1,a2|b1,b2|b3)
                    if (e1.kind() != QuintetKind::pair_pair) break;
                    each_pp_reading(e1, [&](S a1, S a2, S b1, S b2, S x) {
                        for (const auto& b3 : X) {
                            if (in5(b3, a1, a2, b1, b2, x)) continue;
                            Quintet p2 = Quintet::pair_triple(a1, a2, b1, b3, x);
                            if (!q.contains(p2)) continue;
                            if (q.contains(Quintet::pair_pair(a1, a2, b1, b2, b3))) continue;
                            col.report({"trans.vi",
                                        {a1, a2, b1, b2, b3, x},
                                        {e1.to_string(), p2.to_string()}});
                        }
                    });
                    break;
            }
        }
        col.merge_into(out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Saturation

CheckResult is_saturated_q5(const QuintetSystem& q, CheckMode mode) {
    CheckResult out;
    const auto& X = q.universe();
    const auto entries = q.entries_sorted();

    for (int rule = 1; rule <= 3 && (mode == CheckMode::exhaustive || out.ok()); ++rule) {
        Collector col{mode};
        for (const Quintet& e : entries) {
            switch (rule) {
                case 1:
                    // (a1,a2|b1,b2|c) => (a1,a2|b1,b2|x) \/ (a1,x|b1,b2|c)
                    //                    \/ (a1,a2|b1,x|c)
                    if (e.kind() != QuintetKind::pair_pair) break;
                    each_pp_reading(e, [&](S a1, S a2, S b1, S b2, S c) {
                        for (const auto& x : X) {
                            if (in5(x, a1, a2, b1, b2, c)) continue;
                            if (q.contains(Quintet::pair_pair(a1, a2, b1, b2, x)) ||
                                q.contains(Quintet::pair_pair(a1, x, b1, b2, c)) ||
                                q.contains(Quintet::pair_pair(a1, a2, b1, x, c)))
                                continue;
                            col.report({"sat.i", {a1, a2, b1, b2, c, x}, {e.to_string()}});
                        }
                    });
                    break;
                case 2:
                    // (a1,a2|b1,b2,b3) => (a1,x|b1,b2,b3) \/ (a1,a2|ol{b1,b2,x})
                    if (e.kind() != QuintetKind::pair_triple) break;
                    each_pt_reading(e, [&](S a1, S a2, S b1, S b2, S b3) {
                        for (const auto& x : X) {
                            if (in5(x, a1, a2, b1, b2, b3)) continue;
                            if (q.contains(Quintet::pair_triple(a1, x, b1, b2, b3))) continue;
                            bool concl = false;
                            for (const Quintet& d : expand_overline(a1, a2, b1, b2, x))
                                if (q.contains(d)) {
                                    concl = true;
                                    break;
                                }
                            if (concl) continue;
                            col.report({"sat.ii", {a1, a2, b1, b2, b3, x}, {e.to_string()}});
                        }
                    });
                    break;
                case 3: {
                    // (a1..a5) => (a1,a2,a3,a4,x) \/ (ai,x|rest), i=1..4
                    if (e.kind() != QuintetKind::star) break;
                    const auto& t = e.taxa();
                    for (int drop = 0; drop < 5; ++drop) {
                        std::array<std::string, 4> a;
                        int k = 0;
                        for (int i = 0; i < 5; ++i)
                            if (i != drop) a[k++] = t[i];
                        for (const auto& x : X) {
                            if (in5(x, t[0], t[1], t[2], t[3], t[4])) continue;
                            if (q.contains(Quintet::star(a[0], a[1], a[2], a[3], x)) ||
                                q.contains(Quintet::pair_triple(a[0], x, a[1], a[2], a[3])) ||
                                q.contains(Quintet::pair_triple(a[1], x, a[0], a[2], a[3])) ||
                                q.contains(Quintet::pair_triple(a[2], x, a[0], a[1], a[3])) ||
                                q.contains(Quintet::pair_triple(a[3], x, a[0], a[1], a[2])))
                                continue;
                            col.report({"sat.iii",
                                        {a[0], a[1], a[2], a[3], t[drop], x},
                                        {e.to_string()}});
                        }
                    }
                    break;
                }
            }
        }
        col.merge_into(out);
    }
    return out;
}

CheckResult check_tts(const QuintetSystem& q, CheckMode mode) {
    CheckResult r = is_thin_q5(q, mode);
    if (!r.ok() && mode == CheckMode::first_violation) return r;
    CheckResult t = is_transitive_q5(q, mode);
    if (!t.ok() && mode == CheckMode::first_violation) return t;
    CheckResult sat = is_saturated_q5(q, mode);
    if (mode == CheckMode::first_violation) return sat;
    r.certificates.insert(r.certificates.end(), t.certificates.begin(), t.certificates.end());
    r.certificates.insert(r.certificates.end(), sat.certificates.begin(),
                          sat.certificates.end());
    return r;
}

// ---------------------------------------------------------------------------
// Certificate re-evaluation

bool reevaluate(const Certificate& cert, const QuintetSystem& q) {
    const auto& w = cert.witnesses;
    auto pp = [](S a, S b, S c, S d, S e) { return Quintet::pair_pair(a, b, c, d, e); };
    auto pt = [](S a, S b, S c, S d, S e) { return Quintet::pair_triple(a, b, c, d, e); };
    auto in = [&](const Quintet& x) { return q.contains(x); };
    auto any_overline = [&](S a1, S a2, S b1, S b2, S b3) {
        for (const Quintet& d : expand_overline(a1, a2, b1, b2, b3))
            if (q.contains(d)) return true;
        return false;
    };

    if (cert.rule == "thin.incomplete" || cert.rule == "thin.duplicate") {
        if (w.size() != 5) return false;
        std::array<std::string, 5> sup;
        std::copy(w.begin(), w.end(), sup.begin());
        const auto& v = q.on_support(sup);
        if (cert.rule == "thin.incomplete") return v.empty();
        std::vector<Quintet> uniq(v.begin(), v.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        return uniq.size() > 1;
    }
    if (w.size() != 6) return false;
    S a = w[0], b = w[1], c = w[2], d = w[3], e = w[4], f = w[5];

    if (cert.rule == "thin.i") return in(pp(a, b, c, e, d)) && in(pp(a, c, b, f, d));
    if (cert.rule == "thin.ii") return in(pt(a, b, c, d, e)) && in(pt(a, f, b, c, d));
    if (cert.rule == "thin.iii") return in(pp(a, b, c, e, d)) && in(pt(b, f, a, c, d));
    if (cert.rule == "thin.iv") return in(pt(a, e, b, c, d)) && in(pp(a, d, b, c, f));

    if (cert.rule == "trans.i")  // [a1,a2,b1,x,c1,c2]
        return in(pp(a, b, c, d, e)) && in(pp(a, b, c, d, f)) &&
               !any_overline(a, b, e, f, c);
    if (cert.rule == "trans.ii")  // [a1,a2,b1,b2,x,c1]
        return in(pp(a, b, c, e, f)) && in(pp(a, b, d, e, f)) && !in(pp(a, b, c, d, f));
    if (cert.rule == "trans.iii")  // [a1,a2,x,b1,b2,b3]
        return in(pt(a, c, d, e, f)) && in(pt(b, c, d, e, f)) && !in(pt(a, b, d, e, f));
    if (cert.rule == "trans.iv")  // [a1,a2,b1,b2,b3,x]
        return in(pt(a, b, c, e, f)) && in(pt(a, b, d, e, f)) && !in(pt(a, b, c, d, e)) &&
               !in(pp(a, b, c, d, e));
    if (cert.rule == "trans.v")  // [a1,a2,b1,b2,b3,x]
        return in(pt(a, b, c, f, d)) && in(pp(a, b, c, f, e)) && !in(pp(a, b, c, d, e));
    if (cert.rule == "trans.vi")  // [a1,a2,b1,b2,b3,x]
        return in(pp(a, b, c, d, f)) && in(pt(a, b, c, e, f)) && !in(pp(a, b, c, d, e));

    if (cert.rule == "sat.i")  // [a1,a2,b1,b2,c,x]
        return in(pp(a, b, c, d, e)) && !in(pp(a, b, c, d, f)) && !in(pp(a, f, c, d, e)) &&
               !in(pp(a, b, c, f, e));
    if (cert.rule == "sat.ii")  // [a1,a2,b1,b2,b3,x]
        return in(pt(a, b, c, d, e)) && !in(pt(a, f, c, d, e)) && !any_overline(a, b, c, d, f);
    if (cert.rule == "sat.iii")  // [a1,a2,a3,a4,a5,x]
        return in(Quintet::star(a, b, c, d, e)) && !in(Quintet::star(a, b, c, d, f)) &&
               !in(pt(a, f, b, c, d)) && !in(pt(b, f, a, c, d)) && !in(pt(c, f, a, b, d)) &&
               !in(pt(d, f, a, b, c));

    // lemma co-occurrences: [a,b,c,d,x,y] resp. [a,b,c,d,y,x]
    if (cert.rule == "Lemma3.1.B") return in(pp(a, b, c, e, d)) && in(pp(a, c, b, f, d));
    if (cert.rule == "Lemma3.1.C") return in(pp(a, b, c, e, d)) && in(pp(a, c, d, f, b));
    if (cert.rule == "Lemma3.1.D") return in(pp(a, b, c, e, d)) && in(pp(b, d, c, f, a));
    if (cert.rule == "Lemma3.1.E") return in(pp(a, b, c, e, d)) && in(pt(f, c, a, b, d));
    if (cert.rule == "Lemma3.1.F") return in(pp(a, b, c, e, d)) && in(pt(a, c, b, d, f));
    if (cert.rule == "Lemma3.1.G") return in(pp(a, b, c, e, d)) && in(pt(a, d, b, c, f));
    if (cert.rule == "Lemma3.1.H") return in(pp(a, b, c, e, d)) && in(pt(d, f, a, b, c));
    if (cert.rule == "Lemma3.2.B") return in(pt(a, c, b, d, e)) && in(pt(b, f, a, c, d));
    if (cert.rule == "Lemma3.2.C") return in(pt(a, c, b, d, e)) && in(pp(a, b, c, d, f));

    return false;
}

// ---------------------------------------------------------------------------
// Associated systems

QuartetSystem derived_quartet_system(const QuintetSystem& q) {
    const auto& X = q.universe();
    if (X.size() < 5)
        throw std::invalid_argument("derived quartet system needs a universe of >= 5 taxa");
    QuartetSystem out(X);
    size_t n = X.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                for (size_t l = k + 1; l < n; ++l) {
                    const std::array<std::string, 4> sub{X[i], X[j], X[k], X[l]};
                    // the three splittings into two pairs
                    const std::array<std::array<int, 4>, 3> splittings{
                        {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
                    std::optional<Quartet> found;
                    for (const auto& sp : splittings) {
                        S a = sub[sp[0]], b = sub[sp[1]], c = sub[sp[2]], d = sub[sp[3]];
                        bool match = false;
                        for (const auto& y : X) {
                            if (in4(y, a, b, c, d)) continue;
                            if (q.contains(Quintet::pair_pair(a, b, c, d, y)) ||
                                q.contains(Quintet::pair_triple(a, b, c, d, y)) ||
                                q.contains(Quintet::pair_pair(a, b, c, y, d)) ||
                                q.contains(Quintet::pair_pair(a, b, d, y, c)) ||
                                q.contains(Quintet::pair_pair(c, d, b, y, a)) ||
                                q.contains(Quintet::pair_pair(c, d, a, y, b)) ||
                                q.contains(Quintet::pair_triple(c, d, a, b, y))) {
                                match = true;
                                break;
                            }
                        }
                        if (!match) continue;
                        Quartet cand = Quartet::pair_pair(a, b, c, d);
                        if (found && *found != cand)
                            throw std::logic_error(
                                "two splittings matched on one 4-subset; input was not TTS");
                        found = cand;
                    }
                    out.add(found ? *found
                                  : Quartet::star(sub[0], sub[1], sub[2], sub[3]));
                }
    return out;
}

QuintetSystem derived_quintet_system(const QuartetSystem& s) {
    const auto& X = s.universe();
    if (X.size() < 5)
        throw std::invalid_argument("derived quintet system needs a universe of >= 5 taxa");
    QuintetSystem out(X);
    auto spp = [&](S a, S b, S c, S d) { return s.contains(Quartet::pair_pair(a, b, c, d)); };
    auto sstar = [&](S a, S b, S c, S d) { return s.contains(Quartet::star(a, b, c, d)); };

    each_5subset(X, [&](const std::array<std::string, 5>& y) {
        std::vector<Quintet> fired;

        // (a,b | c,d | e): (a,b|c,d), (a,b|c,e), (a,e|c,d) in S, under
        // every naming of the partition
        for (const Quintet& cand : all_quintets_on(y)) {
            if (cand.kind() == QuintetKind::pair_pair) {
                const auto& t = cand.taxa();
                bool all = true;
                each_pp_reading(cand, [&](S a, S b, S c, S d, S e) {
                    if (!(spp(a, b, c, d) && spp(a, b, c, e) && spp(a, e, c, d))) all = false;
                });
                (void)t;
                if (all) fired.push_back(cand);
            } else if (cand.kind() == QuintetKind::pair_triple) {
                // (a,b | c,d,e): (a,b|c,d), (a,b|c,e), (a,e,c,d),
                // (b,c,d,e) in S, under every naming
                bool all = true;
                each_pt_reading(cand, [&](S a, S b, S c, S d, S e) {
                    if (!(spp(a, b, c, d) && spp(a, b, c, e) && sstar(a, e, c, d) &&
                          sstar(b, c, d, e)))
                        all = false;
                });
                if (all) fired.push_back(cand);
            } else {
                // star: every embedded 4-subset is a star in S
                bool all = sstar(y[1], y[2], y[3], y[4]) && sstar(y[0], y[2], y[3], y[4]) &&
                           sstar(y[0], y[1], y[3], y[4]) && sstar(y[0], y[1], y[2], y[4]) &&
                           sstar(y[0], y[1], y[2], y[3]);
                if (all) fired.push_back(cand);
            }
        }
        if (fired.size() != 1)
            throw std::logic_error("expected exactly one quintet case on a 5-subset, got " +
                                   std::to_string(fired.size()) + "; input was not TTS");
        out.add(fired.front());
    });
    return out;
}

// ---------------------------------------------------------------------------
// Extension property and forbidden-configuration lemmas

namespace {

bool any_extension_pattern(const QuintetSystem& q, S a1, S a2, S b1, S b2, S x) {
    return q.contains(Quintet::pair_pair(a1, a2, b1, b2, x)) ||
           q.contains(Quintet::pair_triple(a1, a2, b1, b2, x)) ||
           q.contains(Quintet::pair_triple(b1, b2, a1, a2, x)) ||
           q.contains(Quintet::pair_pair(a1, a2, b1, x, b2)) ||
           q.contains(Quintet::pair_pair(a1, a2, b2, x, b1)) ||
           q.contains(Quintet::pair_pair(a1, x, b1, b2, a2)) ||
           q.contains(Quintet::pair_pair(a2, x, b1, b2, a1));
}

}  // namespace

bool check_exists_iff_forall(const QuintetSystem& q, const std::string& a1,
                             const std::string& a2, const std::string& b1,
                             const std::string& b2) {
    std::array<std::string, 4> t{a1, a2, b1, b2};
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
        throw std::invalid_argument("four distinct taxa required");
    bool exists = false, forall = true;
    for (const auto& x : q.universe()) {
        if (in4(x, a1, a2, b1, b2)) continue;
        if (any_extension_pattern(q, a1, a2, b1, b2, x))
            exists = true;
        else
            forall = false;
    }
    return exists == forall;
}

std::vector<Certificate> lemma_violations(const QuintetSystem& q) {
    std::vector<Certificate> out;
    const auto& X = q.universe();
    auto pp = [](S a, S b, S c, S d, S e) { return Quintet::pair_pair(a, b, c, d, e); };
    auto pt = [](S a, S b, S c, S d, S e) { return Quintet::pair_triple(a, b, c, d, e); };

    for (const Quintet& e1 : q.entries_sorted()) {
        if (e1.kind() == QuintetKind::pair_pair) {
            // Lemma 3.1: (A) = (a,b | c,x | d)
            each_pp_reading(e1, [&](S a, S b, S c, S x, S d) {
                for (const auto& y : X) {
                    if (in4(y, a, b, c, d)) continue;
                    const std::array<std::pair<const char*, Quintet>, 7> partners{
                        {{"Lemma3.1.B", pp(a, c, b, y, d)},
                         {"Lemma3.1.C", pp(a, c, d, y, b)},
                         {"Lemma3.1.D", pp(b, d, c, y, a)},
                         {"Lemma3.1.E", pt(y, c, a, b, d)},
                         {"Lemma3.1.F", pt(a, c, b, d, y)},
                         {"Lemma3.1.G", pt(a, d, b, c, y)},
                         {"Lemma3.1.H", pt(d, y, a, b, c)}}};
                    for (const auto& [rule, l2] : partners)
                        if (q.contains(l2))
                            out.push_back({rule,
                                           {a, b, c, d, x, y},
                                           {e1.to_string(), l2.to_string()}});
                }
            });
        } else if (e1.kind() == QuintetKind::pair_triple) {
            // Lemma 3.2: (A) = (a,c | b,d,y)
            each_pt_reading(e1, [&](S a, S c, S b, S d, S y) {
                for (const auto& x : X) {
                    if (in4(x, a, b, c, d)) continue;
                    const std::array<std::pair<const char*, Quintet>, 2> partners{
                        {{"Lemma3.2.B", pt(b, x, a, c, d)},
                         {"Lemma3.2.C", pp(a, b, c, d, x)}}};
                    for (const auto& [rule, l2] : partners)
                        if (q.contains(l2))
                            out.push_back({rule,
                                           {a, b, c, d, y, x},
                                           {e1.to_string(), l2.to_string()}});
                }
            });
        }
    }
    std::sort(out.begin(), out.end(), [](const Certificate& a, const Certificate& b) {
        return std::tie(a.rule, a.witnesses) < std::tie(b.rule, b.witnesses);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------

std::string Certificate::to_string() const {
    std::string out = "VIOLATION " + rule + " witnesses=";
    for (size_t i = 0; i < witnesses.size(); ++i) {
        if (i) out += ",";
        out += witnesses[i];
    }
    out += " entries=";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += "; ";
        out += entries[i];
    }
    return out;
}

}  // namespace quintree
