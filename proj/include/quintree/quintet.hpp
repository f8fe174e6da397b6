#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "quintree/certificate.hpp"
#include "quintree/quartet.hpp"

namespace quintree {

enum class QuintetKind {
    pair_pair,    // (2,2,1): {a,b} | {c,d} | {e}
    pair_triple,  // (3,2):   {a,b} | {c,d,e}
    star          // (5)
};

// Partition of a 5-subset of X encoding a 5-leaf tree topology.
// Canonical form: taxa sorted within blocks; for (2,2,1) the pairs are
// ordered by smallest element.
class Quintet {
public:
    static Quintet pair_pair(const std::string& a, const std::string& b,
                             const std::string& c, const std::string& d,
                             const std::string& e);
    static Quintet pair_triple(const std::string& a, const std::string& b,
                               const std::string& c, const std::string& d,
                               const std::string& e);
    static Quintet star(const std::string& a, const std::string& b,
                        const std::string& c, const std::string& d,
                        const std::string& e);

    QuintetKind kind() const { return kind_; }
    // Canonical layout: pair_pair -> [p1a,p1b,p2a,p2b,s],
    // pair_triple -> [pa,pb,t1,t2,t3], star -> sorted.
    const std::array<std::string, 5>& taxa() const { return t_; }
    std::array<std::string, 5> support() const;  // sorted

    std::string to_string() const;

    bool operator==(const Quintet&) const = default;
    auto operator<=>(const Quintet&) const = default;

private:
    Quintet(QuintetKind k, std::array<std::string, 5> t) : kind_(k), t_(std::move(t)) {}
    QuintetKind kind_;
    std::array<std::string, 5> t_;
};

struct QuintetHash {
    size_t operator()(const Quintet& q) const;
};

// The 26 quintets on a 5-taxon support, in a fixed deterministic order.
std::vector<Quintet> all_quintets_on(const std::array<std::string, 5>& support);

// (a1,a2 | overline{b1,b2,b3}): the four quintets of the disjunction.
std::vector<Quintet> expand_overline(const std::string& a1, const std::string& a2,
                                     const std::string& b1, const std::string& b2,
                                     const std::string& b3);

// Set of quintets over a taxon universe, queryable by support.
// Duplicates on a support are representable; thinness is a check.
class QuintetSystem {
public:
    QuintetSystem() = default;
    explicit QuintetSystem(std::vector<std::string> universe);

    void add(const Quintet& q);  // grows the universe as needed
    bool contains(const Quintet& q) const;
    const std::vector<Quintet>& on_support(const std::array<std::string, 5>& s) const;
    std::optional<Quintet> unique_on_support(const std::array<std::string, 5>& s) const;

    const std::vector<std::string>& universe() const { return universe_; }
    size_t size() const { return members_.size(); }
    std::vector<Quintet> entries_sorted() const;

    bool operator==(const QuintetSystem& o) const;

private:
    std::vector<std::string> universe_;
    std::map<std::array<std::string, 5>, std::vector<Quintet>> by_support_;
    std::unordered_multiset<Quintet, QuintetHash> members_;
};

// Thinness: one quintet per 5-subset plus the four forbidden pair
// patterns thin.i-iv. Rule certificates take precedence over
// incompleteness ones.
CheckResult is_thin_q5(const QuintetSystem& q, CheckMode mode = CheckMode::first_violation);
// Transitivity rules trans.i-vi.
CheckResult is_transitive_q5(const QuintetSystem& q, CheckMode mode = CheckMode::first_violation);
// Saturation rules sat.i-iii; x ranges over the universe minus the
// premise support.
CheckResult is_saturated_q5(const QuintetSystem& q, CheckMode mode = CheckMode::first_violation);
// Conjunction in order thin -> transitive -> saturated.
CheckResult check_tts(const QuintetSystem& q, CheckMode mode = CheckMode::first_violation);

// Re-evaluates a certificate's rule on its recorded witnesses; true when
// the violation is reproduced.
bool reevaluate(const Certificate& cert, const QuintetSystem& q);

// The quartet system associated to a TTS quintet system (seven witness
// patterns per 4-subset; star when none matches).
QuartetSystem derived_quartet_system(const QuintetSystem& q);

// The quintet system associated to a TTS quartet system. Exactly one
// emission case fires per 5-subset; anything else aborts.
QuintetSystem derived_quintet_system(const QuartetSystem& s);

// (exists x: one of the seven extension patterns) <=> (forall x: ...).
// Always true on TTS input; diagnostic only elsewhere.
bool check_exists_iff_forall(const QuintetSystem& q, const std::string& a1,
                             const std::string& a2, const std::string& b1,
                             const std::string& b2);

// All co-occurrences forbidden by the two forbidden-configuration
// lemmas (Lemma3.1.B-H, Lemma3.2.B-C). Empty on TTS input.
std::vector<Certificate> lemma_violations(const QuintetSystem& q);

}  // namespace quintree
