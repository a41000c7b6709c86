#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "isoclass/classify.hpp"

using namespace isoclass;

namespace {

#ifndef ISOCLASS_DATA_DIR
#define ISOCLASS_DATA_DIR "data"
#endif

const Catalog& shipped_catalog() {
    static Catalog cat = Catalog::load(std::string(ISOCLASS_DATA_DIR) + "/groups.cat");
    return cat;
}

SignatureType sig(int g, std::vector<int> periods) {
    return SignatureType::make(g, std::move(periods));
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

ClassificationRow expect_row(std::string kind, int K2, int gC, int gF, std::string group,
                             std::string paper_id, std::vector<SignatureType> sigs,
                             std::vector<QuotientSingularity> sings, int dim, int n) {
    ClassificationRow r;
    r.kind = std::move(kind);
    r.K2 = K2;
    r.gC = gC;
    r.gF = gF;
    r.group = std::move(group);
    r.paper_id = std::move(paper_id);
    r.sigs = std::move(sigs);
    r.singularities = std::move(sings);
    r.dim = dim;
    r.n = n;
    return r;
}

std::vector<QuotientSingularity> sings(std::vector<std::pair<int, int>> nq) {
    std::vector<QuotientSingularity> out;
    for (auto [n, q] : nq) out.push_back(QuotientSingularity::make(n, q));
    return out;
}

}  // namespace

TEST_CASE("admissible signature search, genus-0 quotient with g(F)=2") {
    auto cases = admissible_signatures(1, 2, SigShape{0, 2, 2});
    CHECK(!cases.empty());

    for (const auto& c : cases) {
        CHECK(c.genus == 2);
        CHECK(covering_genus(c.order, c.sig) == 2);
        for (int m : c.sig.periods) CHECK(c.order % m == 0);
        CHECK(c.sig.g_prime == 0);
    }
    CHECK(std::is_sorted(cases.begin(), cases.end(), [](const auto& a, const auto& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.sig < b.sig;
    }));
    CHECK(std::adjacent_find(cases.begin(), cases.end()) == cases.end());

    auto has = [&](int order, const SignatureType& s) {
        return std::any_of(cases.begin(), cases.end(),
                           [&](const auto& c) { return c.order == order && c.sig == s; });
    };
    // the hyperelliptic extremes and two interior cases
    CHECK(has(2, sig(0, {2, 2, 2, 2, 2, 2})));
    CHECK(has(5, sig(0, {5, 5, 5})));
    CHECK(has(20, sig(0, {2, 5, 5})));
    CHECK(has(48, sig(0, {2, 3, 8})));
    // the numeric bound peaks at the (2,3,7) triangle case, which only the
    // group sweep eliminates
    CHECK(has(84, sig(0, {2, 3, 7})));
    int max_order = 0;
    for (const auto& c : cases) max_order = std::max(max_order, c.order);
    CHECK(max_order == 84);

    CHECK_THROWS_AS(admissible_signatures(2, 2, SigShape{0, 2, 2}), Error);
}

TEST_CASE("admissible signature search applies the complementary-side divisibility") {
    // irregularity 1: the other quotient is elliptic and ramified, so
    // (gC - 1)(gF - 1) = order forces (genus - 1) | order.
    for (int gF = 2; gF <= 5; ++gF) {
        auto cases = admissible_signatures(1, 1, SigShape{0, gF, gF});
        for (const auto& c : cases) {
            CHECK(c.genus == gF);
            CHECK(c.order % (gF - 1) == 0);
        }
    }
    // same filter for two elliptic quotients with chi = 1
    for (const auto& c : admissible_signatures(1, 2, SigShape{1, 2, 5}))
        CHECK(c.order % (c.genus - 1) == 0);
}

TEST_CASE("missing catalog order surfaces as a gap, not a silent skip") {
    Catalog tiny = Catalog::load(write_temp("tiny.cat", "2;Z2;G(2,1);2;(0 1)\n"));
    CHECK_THROWS_AS(classify_gh(tiny), CatalogGap);
    CHECK_THROWS_AS(classify_pgq1(tiny), CatalogGap);
}

TEST_CASE("unmixed surfaces with two elliptic quotients and chi=1") {
    auto rows = classify_unmixed_agt(shipped_catalog());
    std::vector<ClassificationRow> expected = {
        expect_row("UnMix", 8, 3, 3, "Z2xZ2", "G(4,2)", {sig(1, {2, 2}), sig(1, {2, 2})}, {}, 4, 1),
        expect_row("UnMix", 8, 4, 3, "S3", "G(6,1)", {sig(1, {3}), sig(1, {2, 2})}, {}, 3, 1),
        expect_row("UnMix", 8, 5, 3, "D4", "G(8,3)", {sig(1, {2}), sig(1, {2, 2})}, {}, 3, 1),
    };
    REQUIRE(rows.size() == expected.size());
    for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == expected[i]);
    for (const auto& r : rows) validate_row(shipped_catalog(), r);
}

TEST_CASE("mixed surfaces with chi=1 and free action") {
    auto rows = classify_mixed_pgq2(shipped_catalog());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] ==
          expect_row("Mix", 8, 3, 3, "Z4", "G(4,1)", {sig(2, {})}, {}, 3, 1));
    validate_row(shipped_catalog(), rows[0]);
}

TEST_CASE("isotrivial quotients with prescribed singular baskets") {
    auto rows = classify_isotrivial_pgq2(shipped_catalog());
    std::vector<ClassificationRow> expected = {
        expect_row("Isotrivial", 4, 2, 2, "Z2", "G(2,1)", {sig(1, {2, 2}), sig(1, {2, 2})},
                   sings({{2, 1}, {2, 1}, {2, 1}, {2, 1}}), 4, 1),
        expect_row("Isotrivial", 4, 3, 3, "D4", "G(8,3)", {sig(1, {2}), sig(1, {2})},
                   sings({{2, 1}, {2, 1}, {2, 1}, {2, 1}}), 2, 1),
        expect_row("Isotrivial", 4, 3, 3, "Q8", "G(8,4)", {sig(1, {2}), sig(1, {2})},
                   sings({{2, 1}, {2, 1}, {2, 1}, {2, 1}}), 2, 1),
        expect_row("Isotrivial", 5, 3, 3, "S3", "G(6,1)", {sig(1, {3}), sig(1, {3})},
                   sings({{3, 1}, {3, 2}}), 2, 1),
        expect_row("Isotrivial", 6, 4, 4, "A4", "G(12,3)", {sig(1, {2}), sig(1, {2})},
                   sings({{2, 1}, {2, 1}}), 2, 1),
    };
    REQUIRE(rows.size() == expected.size());
    for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == expected[i]);
    for (const auto& r : rows) validate_row(shipped_catalog(), r);
}

TEST_CASE("row validation rejects corrupted rows") {
    auto rows = classify_isotrivial_pgq2(shipped_catalog());
    REQUIRE(!rows.empty());
    ClassificationRow bad = rows[0];
    bad.dim += 1;
    CHECK_THROWS_AS(validate_row(shipped_catalog(), bad), InconsistentInvariants);
    bad = rows[0];
    bad.K2 = 7;
    CHECK_THROWS_AS(validate_row(shipped_catalog(), bad), InconsistentInvariants);
    bad = rows[0];
    bad.gC += 1;
    CHECK_THROWS_AS(validate_row(shipped_catalog(), bad), InconsistentInvariants);
}

TEST_CASE("row sorting is deterministic and order-insensitive") {
    auto rows = classify_isotrivial_pgq2(shipped_catalog());
    auto mixed_in = classify_unmixed_agt(shipped_catalog());
    rows.insert(rows.end(), mixed_in.begin(), mixed_in.end());
    auto sorted = rows;
    sort_rows(sorted);
    std::reverse(rows.begin(), rows.end());
    sort_rows(rows);
    CHECK(rows == sorted);
}

TEST_CASE("documented exclusions above the catalog bound") {
    const auto& excl = above_catalog_exclusions();
    REQUIRE(excl.size() == 7);
    std::set<std::tuple<int, int, std::string>> keys;
    for (const auto& e : excl) {
        CHECK(e.order > 120);  // everything at or below 120 must be swept
        CHECK(!e.reason.empty());
        keys.insert({e.order, e.gF, e.sig_F.to_string()});
    }
    CHECK(keys.size() == 7);  // no duplicate entries
    CHECK(keys.count({168, 3, "(0|2,3,7)"}) == 1);
    CHECK(keys.count({252, 4, "(0|2,3,7)"}) == 1);
    CHECK(keys.count({336, 5, "(0|2,3,7)"}) == 1);
    CHECK(keys.count({144, 4, "(0|2,3,8)"}) == 1);
    CHECK(keys.count({144, 5, "(0|2,3,9)"}) == 1);
    CHECK(keys.count({192, 5, "(0|2,3,8)"}) == 1);
    CHECK(keys.count({160, 5, "(0|2,4,5)"}) == 1);
}

TEST_CASE("order-168 exclusion witness") {
    // The only simple group of order 168 realizes (0|2,3,7), but all of its
    // involutions are conjugate, so the stabilizer sets of a (0|2,3,7) vector
    // and of any vector with even periods always share an involution: no
    // free diagonal action exists.
    FiniteGroup G = psl2_f7();
    REQUIRE(G.order() == 168);
    CHECK(derived_subgroup(G).size() == 168);  // perfect: no elliptic quotient side
    CHECK(exists_admissible_epimorphism(G, sig(0, {2, 3, 7})));
    int involution_classes = 0;
    for (const auto& cls : G.conjugacy_classes())
        if (G.elem_order(cls.front()) == 2) ++involution_classes;
    CHECK(involution_classes == 1);
}

TEST_CASE("catalog coverage needed by the sweeps") {
    const Catalog& cat = shipped_catalog();
    CHECK(cat.entries().size() == 995);
    // every order up to 48 is fully covered, with the classical class counts
    for (int n = 1; n <= 48; ++n) CHECK(cat.covers(n));
    CHECK(cat.groups_of_order(16).size() == 14);
    CHECK(cat.groups_of_order(24).size() == 15);
    CHECK(cat.groups_of_order(32).size() == 51);
    CHECK(cat.groups_of_order(48).size() == 52);
    CHECK(cat.groups_of_order(64).size() == 267);
    CHECK(cat.groups_of_order(96).size() == 231);
    CHECK(cat.groups_of_order(120).size() == 47);
    CHECK(cat.by_label("D4").paper_id() == "G(8,3)");
    CHECK(cat.by_label("Z2xZ2").paper_id() == "G(4,2)");
}
