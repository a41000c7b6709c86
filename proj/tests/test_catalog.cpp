#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "isoclass/catalog.hpp"

using namespace isoclass;

namespace {

/// Writes `text` to a fresh temp file and returns its path.
std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/isoclass_test_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

int count_elements_of_order(const FiniteGroup& G, int k) {
    int c = 0;
    for (Elem x = 0; x < G.order(); ++x)
        if (G.elem_order(x) == k) ++c;
    return c;
}

}  // namespace

TEST_CASE("cyclic and abelian constructors") {
    FiniteGroup z12 = cyclic_group(12);
    CHECK(z12.order() == 12);
    CHECK(z12.is_abelian());
    CHECK(count_elements_of_order(z12, 12) == 4);

    FiniteGroup ab = abelian_group({2, 6});
    CHECK(ab.order() == 12);
    CHECK(ab.is_abelian());
    CHECK(!is_isomorphic(ab, z12));
    CHECK(abelian_invariants(ab) == std::vector<int>({2, 2, 3}));

    CHECK_THROWS_AS(cyclic_group(0), BadParameters);
    CHECK_THROWS_AS(abelian_group({}), BadParameters);
}

TEST_CASE("dihedral and quaternion constructors") {
    FiniteGroup d4 = dihedral_group(4);
    CHECK(d4.order() == 8);
    CHECK(!d4.is_abelian());
    CHECK(count_elements_of_order(d4, 2) == 5);

    FiniteGroup q8 = quaternion_group();
    CHECK(q8.order() == 8);
    CHECK(count_elements_of_order(q8, 2) == 1);
    CHECK(!is_isomorphic(d4, q8));

    CHECK_THROWS_AS(dihedral_group(2), BadParameters);
}

TEST_CASE("dpqr constructor and its relations") {
    // D(4,3,-1) is the dicyclic group of order 12: a unique involution and
    // elements of order 4.
    FiniteGroup dic = dpqr_group(4, 3, -1);
    CHECK(dic.order() == 12);
    CHECK(count_elements_of_order(dic, 2) == 1);
    CHECK(count_elements_of_order(dic, 4) == 6);

    // D(2,q,q-1) is dihedral of order 2q.
    CHECK(is_isomorphic(dpqr_group(2, 5, -1), dihedral_group(5)).has_value());

    // The two nonisomorphic order-16 groups D(2,8,3) and D(2,8,5).
    FiniteGroup sd = dpqr_group(2, 8, 3);
    FiniteGroup m4 = dpqr_group(2, 8, 5);
    CHECK(sd.order() == 16);
    CHECK(m4.order() == 16);
    CHECK(!is_isomorphic(sd, m4));
    CHECK(count_elements_of_order(sd, 2) == 5);
    CHECK(count_elements_of_order(m4, 2) == 3);

    // Degenerate parameters collapse to familiar groups.
    CHECK(is_isomorphic(dpqr_group(1, 7, 1), cyclic_group(7)).has_value());
    CHECK(is_isomorphic(dpqr_group(6, 1, 1), cyclic_group(6)).has_value());

    CHECK_THROWS_AS(dpqr_group(2, 8, 2), BadParameters);   // gcd(r, q) != 1
    CHECK_THROWS_AS(dpqr_group(3, 8, 3), BadParameters);  // r^p != 1 mod q
}

TEST_CASE("symmetric and alternating constructors") {
    CHECK(symmetric_group(4).order() == 24);
    CHECK(symmetric_group(5).order() == 120);
    CHECK(symmetric_group(4).conjugacy_classes().size() == 5);

    FiniteGroup a5 = alternating_group(5);
    CHECK(a5.order() == 60);
    CHECK(a5.conjugacy_classes().size() == 5);
    CHECK(derived_subgroup(a5).size() == 60);  // perfect

    CHECK(is_isomorphic(alternating_group(3), cyclic_group(3)).has_value());
    CHECK_THROWS_AS(symmetric_group(6), BadParameters);
    CHECK_THROWS_AS(alternating_group(6), BadParameters);
}

TEST_CASE("matrix group constructors") {
    FiniteGroup sl = sl2_f3();
    CHECK(sl.order() == 24);
    CHECK(count_elements_of_order(sl, 2) == 1);  // -I is the unique involution
    CHECK(sl.center().size() == 2);

    FiniteGroup gl = gl2_f3();
    CHECK(gl.order() == 48);
    CHECK(gl.center().size() == 2);
    CHECK(derived_subgroup(gl).size() == 24);
    CHECK(!is_isomorphic(gl, direct_product(cyclic_group(2), symmetric_group(4))));

    FiniteGroup psl = psl2_f7();
    CHECK(psl.order() == 168);
    CHECK(derived_subgroup(psl).size() == 168);  // perfect (simple)
    CHECK(psl.conjugacy_classes().size() == 6);
}

TEST_CASE("direct products") {
    CHECK(is_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6))
              .has_value());
    FiniteGroup g = direct_product(cyclic_group(2), alternating_group(4));
    CHECK(g.order() == 24);
    CHECK(g.center().size() == 2);
}

TEST_CASE("semidirect products and action enumeration") {
    FiniteGroup z2 = cyclic_group(2);
    FiniteGroup z3 = cyclic_group(3);
    auto homs = action_homomorphisms(z2, z3);
    REQUIRE(homs.size() == 2);  // trivial and inversion

    bool saw_z6 = false, saw_s3 = false;
    for (const auto& hom : homs) {
        FiniteGroup g = semidirect_product(z2, z3, hom);
        CHECK(g.order() == 6);
        if (g.is_abelian())
            saw_z6 = is_isomorphic(g, cyclic_group(6)).has_value();
        else
            saw_s3 = is_isomorphic(g, symmetric_group(3)).has_value();
    }
    CHECK(saw_z6);
    CHECK(saw_s3);

    // Hom counts: Z2 -> Aut(Z2 x Z2) = S3 has one image per element of order
    // dividing 2, so 4 homs; Z3 -> S3 has 3.
    FiniteGroup v4 = abelian_group({2, 2});
    CHECK(action_homomorphisms(z2, v4).size() == 4);
    CHECK(action_homomorphisms(cyclic_group(3), v4).size() == 3);

    // Z3 acting nontrivially on Z2 x Z2 gives A4.
    bool saw_a4 = false;
    for (const auto& hom : action_homomorphisms(cyclic_group(3), v4)) {
        FiniteGroup g = semidirect_product(cyclic_group(3), v4, hom);
        if (!g.is_abelian()) saw_a4 = is_isomorphic(g, alternating_group(4)).has_value();
    }
    CHECK(saw_a4);

    // A malformed action (non-homomorphism) is rejected.
    auto bad = action_homomorphisms(z2, z3)[1];
    bad[0] = bad[1];  // identity element must act trivially
    CHECK_THROWS_AS(semidirect_product(z2, z3, bad), BadParameters);
}

TEST_CASE("construct_named facade") {
    CHECK(construct_named("Z8").order() == 8);
    CHECK(is_isomorphic(construct_named("Z2xZ6"), abelian_group({2, 6})).has_value());
    CHECK(is_isomorphic(construct_named("D4"), dihedral_group(4)).has_value());
    CHECK(is_isomorphic(construct_named("D(4,3,-1)"), dpqr_group(4, 3, -1)).has_value());
    CHECK(construct_named("GL(2,3)").order() == 48);
    CHECK(construct_named("Q8").order() == 8);
    CHECK(is_isomorphic(construct_named("Z2xA4"),
                        direct_product(cyclic_group(2), alternating_group(4)))
              .has_value());
    CHECK_THROWS_AS(construct_named("E8"), BadParameters);
    CHECK_THROWS_AS(construct_named(""), BadParameters);
}

TEST_CASE("cycle notation round trip") {
    std::vector<int> p = parse_cycles("(0 1 2 3)", 4);
    CHECK(p == std::vector<int>({1, 2, 3, 0}));
    CHECK(parse_cycles("(1 3)", 4) == std::vector<int>({0, 3, 2, 1}));
    CHECK(parse_cycles("(0 1)(2 3)", 4) == std::vector<int>({1, 0, 3, 2}));
    CHECK(parse_cycles("()", 4) == std::vector<int>({0, 1, 2, 3}));

    for (const std::vector<int> perm :
         {std::vector<int>{1, 0, 3, 2}, std::vector<int>{0, 1, 2, 3}, std::vector<int>{4, 0, 1, 2, 3}})
        CHECK(parse_cycles(cycles_to_string(perm), static_cast<int>(perm.size())) == perm);

    CHECK_THROWS_AS(parse_cycles("(0 1 1)", 4), ParseError);
    CHECK_THROWS_AS(parse_cycles("(0 9)", 4), ParseError);
    CHECK_THROWS_AS(parse_cycles("(0 1", 4), ParseError);
    CHECK_THROWS_AS(parse_cycles("", 4), ParseError);
}

TEST_CASE("regular representation generators reconstruct the group") {
    for (const FiniteGroup& G :
         {quaternion_group(), dihedral_group(6), sl2_f3(), abelian_group({2, 2, 3})}) {
        auto gens = regular_generators(G);
        FiniteGroup H = group_from_permutations(G.order(), gens);
        CHECK(is_isomorphic(G, H).has_value());
    }
}

TEST_CASE("catalog loading") {
    std::string body =
        "# comment line\n"
        "\n"
        "1;Z1;G(1,1);1;()\n"
        "2;Z2;G(2,1);2;(0 1)\n"
        "4;Z4;G(4,1);4;(0 1 2 3)\n"
        "4;Z2xZ2;G(4,2);4;(0 1);(2 3)\n"
        "8;D4;G(8,3);4;(0 1 2 3);(1 3)\n"
        "8;Q8;G(8,4);8;(0 1 2 3)(4 5 6 7);(0 4 2 6)(1 7 3 5)\n";
    Catalog cat = Catalog::load(write_temp("ok.cat", body));

    CHECK(cat.entries().size() == 6);
    CHECK(cat.covers(4));
    CHECK(!cat.covers(3));
    CHECK(cat.covered_orders() == std::vector<int>({1, 2, 4, 8}));
    CHECK(cat.groups_of_order(4).size() == 2);
    CHECK(cat.groups_of_order(8).size() == 2);
    CHECK_THROWS_AS(cat.groups_of_order(16), OrderNotCovered);
    CHECK_THROWS_AS(cat.by_label("Z16"), OrderNotCovered);

    const FiniteGroup& d4 = cat.by_label("D4");
    CHECK(d4.order() == 8);
    CHECK(d4.paper_id() == "G(8,3)");
    CHECK(is_isomorphic(d4, dihedral_group(4)).has_value());
    CHECK(is_isomorphic(cat.by_label("Q8"), quaternion_group()).has_value());
}

TEST_CASE("catalog validation failures") {
    CHECK_THROWS_AS(Catalog::load(write_temp("bad_order.cat", "6;Z4;;4;(0 1 2 3)\n")),
                    OrderMismatch);
    CHECK_THROWS_AS(Catalog::load(write_temp("bad_fields.cat", "4;Z4;4;(0 1 2 3)\n")), ParseError);
    CHECK_THROWS_AS(Catalog::load(write_temp("bad_perm.cat", "4;Z4;;4;(0 1 2 9)\n")), ParseError);
    CHECK_THROWS_AS(
        Catalog::load(write_temp("dup_label.cat", "2;Z2;;2;(0 1)\n2;Z2;;2;(0 1)\n")), ParseError);
    // Two isomorphic entries of the same order are rejected for orders <= 32.
    CHECK_THROWS_AS(
        Catalog::load(write_temp("dup_iso.cat", "4;Z4a;;4;(0 1 2 3)\n4;Z4b;;4;(0 2 1 3)\n")),
        ParseError);
    CHECK_THROWS_AS(Catalog::load("/nonexistent/path.cat"), ParseError);

    // Line numbers appear in parse diagnostics.
    try {
        Catalog::load(write_temp("lineno.cat", "# header\n4;Z4;;4;(0 1 2 9)\n"));
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}
