#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "quintree/quintet.hpp"
#include "quintree/tree.hpp"

using namespace quintree;

namespace {

const std::vector<std::string> X6{"a", "b", "c", "d", "e", "f"};

QuintetSystem sys6(const std::vector<Quintet>& entries) {
    QuintetSystem q(X6);
    for (const Quintet& e : entries) q.add(e);
    return q;
}

Quintet pp(const std::string& a, const std::string& b, const std::string& c,
           const std::string& d, const std::string& e) {
    return Quintet::pair_pair(a, b, c, d, e);
}
Quintet pt(const std::string& a, const std::string& b, const std::string& c,
           const std::string& d, const std::string& e) {
    return Quintet::pair_triple(a, b, c, d, e);
}

}  // namespace

TEST_CASE("quintet canonical form") {
    CHECK(pp("d", "c", "b", "a", "e") == pp("a", "b", "c", "d", "e"));
    CHECK(pp("c", "d", "a", "b", "e").taxa() ==
          std::array<std::string, 5>{"a", "b", "c", "d", "e"});
    CHECK(pp("a", "b", "c", "d", "e").to_string() == "a b | c d | e");
    CHECK(pt("b", "a", "e", "d", "c") == pt("a", "b", "c", "d", "e"));
    CHECK(pt("a", "b", "c", "d", "e").to_string() == "a b | c d e");
    CHECK(Quintet::star("e", "d", "c", "b", "a").to_string() == "a b c d e");
    CHECK(pp("a", "b", "c", "d", "e") != pp("a", "b", "c", "e", "d"));
    CHECK_THROWS_AS(pp("a", "a", "b", "c", "d"), std::invalid_argument);
}

TEST_CASE("the 26 quintets on a support") {
    std::vector<Quintet> all = all_quintets_on({"e", "d", "c", "b", "a"});
    CHECK(all.size() == 26);
    std::set<Quintet> uniq(all.begin(), all.end());
    CHECK(uniq.size() == 26);
    int npp = 0, npt = 0, nst = 0;
    for (const Quintet& q : all) {
        if (q.kind() == QuintetKind::pair_pair) ++npp;
        if (q.kind() == QuintetKind::pair_triple) ++npt;
        if (q.kind() == QuintetKind::star) ++nst;
    }
    CHECK(npp == 15);
    CHECK(npt == 10);
    CHECK(nst == 1);
}

TEST_CASE("overline expansion") {
    std::vector<Quintet> v = expand_overline("a", "b", "c", "d", "e");
    CHECK(v.size() == 4);
    CHECK(std::count(v.begin(), v.end(), pt("a", "b", "c", "d", "e")) == 1);
    CHECK(std::count(v.begin(), v.end(), pp("a", "b", "c", "d", "e")) == 1);
    CHECK(std::count(v.begin(), v.end(), pp("a", "b", "c", "e", "d")) == 1);
    CHECK(std::count(v.begin(), v.end(), pp("a", "b", "d", "e", "c")) == 1);
}

TEST_CASE("tree-induced quintet systems satisfy the axioms") {
    for (const char* nwk :
         {"((a,b),(c,d),(e,f));", "(a,b,c,(d,e),f);", "((a,b),((c,d),(e,f)));",
          "(a,b,c,d,e,f);", "((a,(b,c)),(d,(e,f)));"}) {
        QuintetSystem q = quintet_system_of(parse_newick(nwk));
        CHECK(check_tts(q).ok());
        CHECK(lemma_violations(q).empty());
    }
}

TEST_CASE("each axiom rule produces its certificate") {
    struct Case {
        const char* rule;
        std::vector<Quintet> entries;
        std::function<CheckResult(const QuintetSystem&)> checker;
    };
    auto thin = [](const QuintetSystem& q) { return is_thin_q5(q); };
    auto trans = [](const QuintetSystem& q) { return is_transitive_q5(q); };
    auto sat = [](const QuintetSystem& q) { return is_saturated_q5(q); };

    const std::vector<Case> cases{
        {"thin.i", {pp("a", "b", "c", "e", "d"), pp("a", "c", "b", "f", "d")}, thin},
        {"thin.ii", {pt("a", "b", "c", "d", "e"), pt("a", "f", "b", "c", "d")}, thin},
        {"thin.iii", {pp("a", "b", "c", "e", "d"), pt("b", "f", "a", "c", "d")}, thin},
        {"thin.iv", {pt("a", "e", "b", "c", "d"), pp("a", "d", "b", "c", "f")}, thin},
        {"trans.i", {pp("a", "b", "c", "f", "d"), pp("a", "b", "c", "f", "e")}, trans},
        {"trans.ii", {pp("a", "b", "c", "f", "e"), pp("a", "b", "d", "f", "e")}, trans},
        {"trans.iii", {pt("a", "f", "c", "d", "e"), pt("b", "f", "c", "d", "e")}, trans},
        {"trans.iv", {pt("a", "b", "c", "e", "f"), pt("a", "b", "d", "e", "f")}, trans},
        {"trans.v", {pt("a", "b", "c", "f", "d"), pp("a", "b", "c", "f", "e")}, trans},
        {"trans.vi", {pp("a", "b", "c", "d", "f"), pt("a", "b", "c", "e", "f")}, trans},
        {"sat.i", {pp("a", "b", "c", "d", "e")}, sat},
        {"sat.ii", {pt("a", "b", "c", "d", "e")}, sat},
        {"sat.iii", {Quintet::star("a", "b", "c", "d", "e")}, sat},
    };
    for (const Case& c : cases) {
        CAPTURE(c.rule);
        QuintetSystem q = sys6(c.entries);
        CheckResult r = c.checker(q);
        REQUIRE(!r.ok());
        CHECK(r.first().rule == c.rule);
        CHECK(reevaluate(r.first(), q));
    }
}

TEST_CASE("forbidden pairs beat incompleteness in the thinness certificate") {
    // even on an incomplete system the pair pattern is reported first
    QuintetSystem q = sys6({pp("a", "b", "c", "e", "d"), pp("a", "c", "b", "f", "d")});
    CheckResult r = check_tts(q);
    REQUIRE(!r.ok());
    CHECK(r.first().rule == "thin.i");
}

TEST_CASE("incomplete and duplicated systems are certified") {
    QuintetSystem q = sys6({pp("a", "b", "c", "d", "e")});
    CheckResult r = is_thin_q5(q);
    REQUIRE(!r.ok());
    CHECK(r.first().rule == "thin.incomplete");
    CHECK(r.first().witnesses == std::vector<std::string>{"a", "b", "c", "d", "f"});
    CHECK(reevaluate(r.first(), q));

    QuintetSystem dup = sys6({pp("a", "b", "c", "d", "e"), pt("a", "b", "c", "d", "e")});
    r = is_thin_q5(dup);
    REQUIRE(!r.ok());
    CHECK(r.first().rule == "thin.duplicate");
    CHECK(reevaluate(r.first(), dup));
}

TEST_CASE("satisfied rules stop certifying") {
    // completing the trans.ii premise with its conclusion clears the rule
    QuintetSystem q = sys6({pp("a", "b", "c", "f", "e"), pp("a", "b", "d", "f", "e"),
                            pp("a", "b", "c", "d", "e")});
    for (const Certificate& c : is_transitive_q5(q, CheckMode::exhaustive).certificates)
        CHECK(c.rule != "trans.ii");
}

TEST_CASE("reevaluate is layout-faithful") {
    QuintetSystem q = sys6({pp("a", "b", "c", "e", "d"), pp("a", "c", "b", "f", "d")});
    Certificate good{"thin.i", {"a", "b", "c", "d", "e", "f"}, {}};
    CHECK(reevaluate(good, q));
    Certificate scrambled{"thin.i", {"a", "b", "c", "e", "d", "f"}, {}};
    CHECK(!reevaluate(scrambled, q));
    Certificate wrong_rule{"thin.ii", {"a", "b", "c", "d", "e", "f"}, {}};
    CHECK(!reevaluate(wrong_rule, q));
}

TEST_CASE("derived quartet system of a tree system is the tree's") {
    for (const char* nwk : {"((a,b),(c,d),(e,f));", "(a,b,c,(d,e),f);", "(a,b,c,d,e,f);",
                            "((a,(b,c)),(d,(e,f)));"}) {
        PhyloTree t = parse_newick(nwk);
        CHECK(derived_quartet_system(quintet_system_of(t)) == quartet_system_of(t));
    }
}

TEST_CASE("derived quintet system inverts the derived quartet system") {
    for (const char* nwk : {"((a,b),(c,d),(e,f));", "(a,b,c,(d,e),f);", "(a,b,c,d,e,f);"}) {
        QuintetSystem q = quintet_system_of(parse_newick(nwk));
        CHECK(derived_quintet_system(derived_quartet_system(q)) == q);
    }
}

TEST_CASE("the extension property holds on tree systems") {
    QuintetSystem q = quintet_system_of(parse_newick("((a,b),(c,d),(e,f));"));
    for (const char* quad : {"abcd", "acde", "abef", "cdef", "bdef"}) {
        std::string s(quad);
        CHECK(check_exists_iff_forall(q, std::string(1, s[0]), std::string(1, s[1]),
                                      std::string(1, s[2]), std::string(1, s[3])));
    }
    CHECK_THROWS_AS(check_exists_iff_forall(q, "a", "a", "b", "c"), std::invalid_argument);
}

TEST_CASE("forbidden configuration lemmas") {
    auto rules_of = [](const QuintetSystem& q) {
        std::set<std::string> out;
        for (const Certificate& c : lemma_violations(q)) {
            out.insert(c.rule);
            CHECK(reevaluate(c, q));
        }
        return out;
    };
    CHECK(rules_of(sys6({pp("a", "b", "c", "e", "d"), pp("a", "c", "b", "f", "d")}))
              .contains("Lemma3.1.B"));
    CHECK(rules_of(sys6({pt("a", "c", "b", "d", "e"), pt("b", "f", "a", "c", "d")}))
              .contains("Lemma3.2.B"));
    CHECK(rules_of(sys6({pt("a", "c", "b", "d", "e"), pp("a", "b", "c", "d", "f")}))
              .contains("Lemma3.2.C"));
    CHECK(rules_of(quintet_system_of(parse_newick("((a,b),(c,d),(e,f));"))).empty());
}

TEST_CASE("certificate rendering") {
    Certificate c{"thin.i", {"a", "b", "c", "d", "e", "f"}, {"a b | c e | d", "a c | b f | d"}};
    CHECK(c.to_string() ==
          "VIOLATION thin.i witnesses=a,b,c,d,e,f entries=a b | c e | d; a c | b f | d");
}
