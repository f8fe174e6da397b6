#pragma once

#include <string>
#include <vector>

namespace quintree {

// Machine-checkable witness of a violated axiom instance.
// `rule` is a stable identifier ("thin.ii", "trans.iv", "sat.i",
// "Lemma3.1.B", "thin.incomplete", "quartet.saturated", ...),
// `witnesses` the ordered taxon tuple instantiating the rule and
// `entries` the canonical forms of the entries that instantiate the
// premise. The layout of `witnesses` per rule is fixed; see
// quintet.cpp reevaluate().
struct Certificate {
    std::string rule;
    std::vector<std::string> witnesses;
    std::vector<std::string> entries;

    std::string to_string() const;

    bool operator==(const Certificate&) const = default;
};

// Verdict of an axiom check: ok() when no certificate was produced.
struct CheckResult {
    std::vector<Certificate> certificates;

    bool ok() const { return certificates.empty(); }
    const Certificate& first() const { return certificates.front(); }
};

enum class CheckMode {
    first_violation,  // smallest witness of the first violated rule
    exhaustive        // every violating instantiation
};

}  // namespace quintree
