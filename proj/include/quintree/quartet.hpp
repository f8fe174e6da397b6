#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "quintree/certificate.hpp"

namespace quintree {

class PhyloTree;

enum class QuartetKind {
    pair_pair,  // (2,2): {a,b} | {c,d}
    star        // (4)
};

// Partition of a 4-subset of X, kind (2,2) or (4). Canonical form:
// taxa sorted within pairs, pairs ordered by smallest element.
class Quartet {
public:
    static Quartet pair_pair(const std::string& a, const std::string& b,
                             const std::string& c, const std::string& d);
    static Quartet star(const std::string& a, const std::string& b,
                        const std::string& c, const std::string& d);

    QuartetKind kind() const { return kind_; }
    // Canonical layout: pair_pair -> [p1a,p1b,p2a,p2b], star -> sorted.
    const std::array<std::string, 4>& taxa() const { return t_; }
    std::array<std::string, 4> support() const;  // sorted

    // True when the quartet places {x,y} and {u,v} on opposite sides.
    bool separates(const std::string& x, const std::string& y) const;
    bool has_pair(const std::string& x, const std::string& y) const;

    std::string to_string() const;

    bool operator==(const Quartet&) const = default;
    auto operator<=>(const Quartet&) const = default;

private:
    Quartet(QuartetKind k, std::array<std::string, 4> t) : kind_(k), t_(std::move(t)) {}
    QuartetKind kind_;
    std::array<std::string, 4> t_;
};

struct QuartetHash {
    size_t operator()(const Quartet& q) const;
};

// Set of quartets over a taxon universe, queryable by support.
// Malformed systems (duplicate or missing supports) are representable;
// thinness is a check, not a constructor constraint.
class QuartetSystem {
public:
    QuartetSystem() = default;
    explicit QuartetSystem(std::vector<std::string> universe);

    void add(const Quartet& q);  // grows the universe as needed
    bool contains(const Quartet& q) const;
    const std::vector<Quartet>& on_support(const std::array<std::string, 4>& s) const;
    std::optional<Quartet> unique_on_support(const std::array<std::string, 4>& s) const;

    const std::vector<std::string>& universe() const { return universe_; }
    size_t size() const { return members_.size(); }
    std::vector<Quartet> entries_sorted() const;

    bool operator==(const QuartetSystem& o) const;

private:
    std::vector<std::string> universe_;
    std::map<std::array<std::string, 4>, std::vector<Quartet>> by_support_;
    std::unordered_multiset<Quartet, QuartetHash> members_;
};

CheckResult is_thin_q4(const QuartetSystem& s, CheckMode mode = CheckMode::first_violation);
CheckResult is_transitive_q4(const QuartetSystem& s, CheckMode mode = CheckMode::first_violation);
CheckResult is_saturated_q4(const QuartetSystem& s, CheckMode mode = CheckMode::first_violation);
CheckResult check_tts_q4(const QuartetSystem& s, CheckMode mode = CheckMode::first_violation);

// Thrown by reconstruct_from_quartets when the input fails an axiom.
class not_tts_error : public std::runtime_error {
public:
    not_tts_error(std::string msg, Certificate cert);
    const Certificate& certificate() const { return cert_; }

private:
    Certificate cert_;
};

// Builds the tree realizing a thin/transitive/saturated quartet system
// by iterated cherry merging. Deterministic; asserts internal
// consistency rather than assuming it.
PhyloTree reconstruct_from_quartets(const QuartetSystem& s);

}  // namespace quintree
