#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quintree/oracle.hpp"
#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

using namespace quintree;

TEST_CASE("split families count trees") {
    auto taxa = [](int n) {
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) out.push_back(std::string(1, char('a' + i)));
        return out;
    };
    for (int n = 4; n <= 7; ++n)
        CHECK(enumerate_split_families(taxa(n)).size() == enumerate_trees(taxa(n)).size());
}

TEST_CASE("brute-force realizability") {
    PhyloTree t = parse_newick("((a,b),(c,d),(e,f));");
    QuintetSystem q = quintet_system_of(t);
    auto found = realizable_by_tree(q);
    REQUIRE(found.has_value());
    CHECK(same_topology(*found, t));

    // corrupting one entry breaks realizability
    QuintetSystem bad(q.universe());
    bool flipped = false;
    for (const Quintet& e : q.entries_sorted()) {
        if (!flipped && e.kind() == QuintetKind::pair_pair) {
            const auto sup = e.support();
            bad.add(Quintet::star(sup[0], sup[1], sup[2], sup[3], sup[4]));
            flipped = true;
        } else {
            bad.add(e);
        }
    }
    REQUIRE(flipped);
    CHECK(!realizable_by_tree(bad).has_value());
}

TEST_CASE("full check at n=5") {
    OracleReport rep = exhaustive_theorem_check(5, 0, 1);
    CHECK(rep.full);
    CHECK(rep.checked == 26 + 26);  // 26 tree systems + the 26 complete systems
    CHECK(rep.agree == rep.checked);
    CHECK(rep.disagree_count == 0);
    CHECK(rep.treelike == 26);
    CHECK(rep.summary_line() == "n=5 checked=52 agree=52 disagree=0 seed=1");
}

TEST_CASE("sampled check at n=6 is clean and deterministic") {
    OracleReport a = exhaustive_theorem_check(6, 300, 42, 1);
    CHECK(!a.full);
    CHECK(a.checked == 300 + 236);
    CHECK(a.disagree_count == 0);

    OracleReport b = exhaustive_theorem_check(6, 300, 42, 3);
    CHECK(b.summary_line() == a.summary_line());

    OracleReport c = exhaustive_theorem_check(6, 300, 43, 1);
    CHECK(c.disagree_count == 0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(exhaustive_theorem_check(4, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_theorem_check(8, 0, 0), std::invalid_argument);
}
