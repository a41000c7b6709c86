#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "isoclass/group.hpp"

using namespace isoclass;

namespace {

// --- Common construction helpers -------------------------------------------

FiniteGroup cyclic(int n) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    return group_from_permutations(n, {cyc}, "Z" + std::to_string(n));
}

FiniteGroup klein4() {
    return group_from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, "Z2xZ2");
}

FiniteGroup symmetric3() {
    return group_from_permutations(3, {{1, 2, 0}, {1, 0, 2}}, "S3");
}

FiniteGroup dihedral(int n) {  // order 2n, on n points
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return group_from_permutations(n, {rot, refl}, "D" + std::to_string(n));
}

FiniteGroup quaternion8() {
    // Left regular representation on {1,i,-1,-i,j,k,-j,-k}.
    return group_from_permutations(
        8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}}, "Q8");
}

// --- Independent brute-force oracles ----------------------------------------

// Naive backtracking over bijections fixing the identity; checks the
// homomorphism property on every pair of already-assigned elements. No
// order/class pruning, so it is an independent check of the production code.
int count_isomorphisms_naive(const FiniteGroup& A, const FiniteGroup& B) {
    if (A.order() != B.order()) return 0;
    const int n = A.order();
    std::vector<int> img(n, -1);
    std::vector<char> used(n, 0);
    img[0] = 0;
    used[0] = 1;
    int count = 0;
    std::function<void(int)> rec = [&](int x) {
        if (x == n) {
            ++count;
            return;
        }
        for (int y = 0; y < n; ++y) {
            if (used[y]) continue;
            img[x] = y;
            bool ok = true;
            for (int a = 0; a < x && ok; ++a)
                for (int b = 0; b < x && ok; ++b) {
                    if (A.mul(a, b) <= x && img[A.mul(a, b)] >= 0 &&
                        img[A.mul(a, b)] != B.mul(img[a], img[b]))
                        ok = false;
                }
            // Full check over assigned prefix, including x itself.
            for (int a = 0; a <= x && ok; ++a)
                for (int b = 0; b <= x && ok; ++b) {
                    int ab = A.mul(a, b);
                    if (ab <= x && img[ab] != B.mul(img[a], img[b])) ok = false;
                }
            if (ok) {
                used[y] = 1;
                rec(x + 1);
                used[y] = 0;
            }
            img[x] = -1;
        }
    };
    rec(1);
    return count;
}

}  // namespace

TEST_CASE("group_from_permutations: identity and cyclic closure") {
    FiniteGroup trivial = group_from_permutations(1, {}, "Z1");
    CHECK(trivial.order() == 1);
    CHECK(trivial.mul(0, 0) == 0);

    FiniteGroup z4 = cyclic(4);
    CHECK(z4.order() == 4);
    CHECK(z4.elem_order(1) == 4);
    CHECK(z4.is_abelian());
}

TEST_CASE("group_from_permutations: dihedral closure of order 8") {
    FiniteGroup d4 = group_from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4");
    CHECK(d4.order() == 8);
    int order4 = 0;
    for (int x = 0; x < 8; ++x)
        if (d4.elem_order(x) == 4) ++order4;
    CHECK(order4 == 2);
    CHECK_FALSE(d4.is_abelian());
}

TEST_CASE("group_from_permutations: order cap") {
    std::vector<int> big(40);
    std::iota(big.begin(), big.end(), 0);
    std::rotate(big.begin(), big.begin() + 1, big.end());
    CHECK_THROWS_AS(group_from_permutations(40, {big}, "Z40cap", "", 16), OrderCapExceeded);
}

TEST_CASE("conjugacy classes") {
    CHECK(conjugacy_classes(group_from_permutations(1, {})).size() == 1);

    FiniteGroup s3 = symmetric3();
    std::multiset<size_t> sizes;
    for (const auto& c : conjugacy_classes(s3)) sizes.insert(c.size());
    CHECK(sizes == std::multiset<size_t>{1, 2, 3});

    CHECK(conjugacy_classes(dihedral(4)).size() == 5);
}

TEST_CASE("class equation holds on a sample of groups") {
    for (const FiniteGroup& G : {cyclic(6), symmetric3(), dihedral(4), quaternion8(), klein4()}) {
        size_t total = 0;
        for (const auto& c : conjugacy_classes(G)) total += c.size();
        CHECK(total == static_cast<size_t>(G.order()));
        for (int x = 0; x < G.order(); ++x) {
            size_t cls = conjugacy_classes(G)[G.class_index(x)].size();
            CHECK(centralizer(G, x).size() * cls == static_cast<size_t>(G.order()));
        }
    }
}

TEST_CASE("centralizer") {
    FiniteGroup q8 = quaternion8();
    // Unique involution of Q8 is central.
    int minus_one = -1;
    for (int x = 0; x < 8; ++x)
        if (q8.elem_order(x) == 2) minus_one = x;
    REQUIRE(minus_one >= 0);
    CHECK(centralizer(q8, minus_one).size() == 8);
    CHECK(centralizer(q8, 0).size() == 8);

    FiniteGroup s3 = symmetric3();
    for (int x = 0; x < 6; ++x)
        if (s3.elem_order(x) == 2) CHECK(centralizer(s3, x).size() == 2);
}

TEST_CASE("normalizer") {
    FiniteGroup s3 = symmetric3();
    std::vector<Elem> all(s3.order());
    std::iota(all.begin(), all.end(), 0);
    CHECK(normalizer(s3, all).size() == 6);

    // <3-cycle> is normal in S3.
    Elem rot = -1;
    for (int x = 0; x < 6; ++x)
        if (s3.elem_order(x) == 3) rot = x;
    CHECK(normalizer(s3, subgroup_generated(s3, {rot})).size() == 6);

    // A reflection subgroup of D4 has an order-4 normalizer.
    FiniteGroup d4 = dihedral(4);
    Elem refl = -1;
    for (int x = 0; x < 8; ++x) {
        if (d4.elem_order(x) != 2) continue;
        if (centralizer(d4, x).size() == 4) refl = x;  // non-central involution
    }
    REQUIRE(refl >= 0);
    CHECK(normalizer(d4, subgroup_generated(d4, {refl})).size() == 4);

    CHECK_THROWS_AS(normalizer(s3, std::vector<Elem>{1}), NotASubgroup);
}

TEST_CASE("subgroup_generated") {
    FiniteGroup z6 = cyclic(6);
    CHECK(subgroup_generated(z6, {}) == std::vector<Elem>{0});
    CHECK(subgroup_generated(z6, {2}) == std::vector<Elem>{0, 2, 4});

    FiniteGroup q8 = quaternion8();
    CHECK(subgroup_generated(q8, {1, 4}).size() == 8);  // i and j generate
}

TEST_CASE("automorphism group sizes") {
    CHECK(automorphism_group(cyclic(2)).size() == 1);
    CHECK(automorphism_group(klein4()).size() == 6);
    CHECK(automorphism_group(quaternion8()).size() == 24);
    CHECK(automorphism_group(cyclic(8)).size() == 4);
    CHECK(automorphism_group(symmetric3()).size() == 6);
}

TEST_CASE("automorphism count matches naive bijection search (order <= 8)") {
    for (const FiniteGroup& G :
         {cyclic(4), cyclic(6), klein4(), symmetric3(), dihedral(4), quaternion8()}) {
        CAPTURE(G.label());
        CHECK(static_cast<int>(automorphism_group(G).size()) ==
              count_isomorphisms_naive(G, G));
    }
}

TEST_CASE("automorphisms verify independently and are closed under composition") {
    for (const FiniteGroup& G : {dihedral(4), quaternion8(), cyclic(12), symmetric3()}) {
        auto auts = automorphism_group(G);
        std::set<std::vector<Elem>> all;
        for (const auto& a : auts) all.insert(a.perm);
        for (const auto& a : auts) {
            CHECK(a(0) == 0);
            for (int x = 0; x < G.order(); ++x) {
                CHECK(G.elem_order(a(x)) == G.elem_order(x));
                for (int y = 0; y < G.order(); ++y)
                    CHECK(a(G.mul(x, y)) == G.mul(a(x), a(y)));
            }
        }
        for (const auto& a : auts)
            for (const auto& b : auts) {
                std::vector<Elem> comp(G.order());
                for (int x = 0; x < G.order(); ++x) comp[x] = a(b(x));
                CHECK(all.count(comp) == 1);
            }
        // |Inn(G)| = |G| / |Z(G)| and Inn is contained in Aut.
        auto inner = inner_automorphisms(G);
        CHECK(inner.size() == static_cast<size_t>(G.order()) / G.center().size());
        for (const auto& i : inner) CHECK(all.count(i.perm) == 1);
    }
}

TEST_CASE("is_isomorphic") {
    FiniteGroup s3 = symmetric3();
    auto self = is_isomorphic(s3, s3);
    REQUIRE(self.has_value());
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            CHECK((*self)[s3.mul(x, y)] == s3.mul((*self)[x], (*self)[y]));

    CHECK_FALSE(is_isomorphic(cyclic(4), klein4()).has_value());

    // D6 (order 12) is isomorphic to Z2 x S3.
    FiniteGroup d6 = dihedral(6);
    FiniteGroup z2xs3 = group_from_permutations(
        5, {{1, 0, 2, 3, 4}, {0, 1, 3, 4, 2}, {0, 1, 3, 2, 4}}, "Z2xS3");
    REQUIRE(z2xs3.order() == 12);
    auto iso = is_isomorphic(d6, z2xs3);
    REQUIRE(iso.has_value());
    for (int x = 0; x < 12; ++x)
        for (int y = 0; y < 12; ++y)
            CHECK((*iso)[d6.mul(x, y)] == z2xs3.mul((*iso)[x], (*iso)[y]));
}

TEST_CASE("is_isomorphic agrees with naive search on small groups") {
    std::vector<FiniteGroup> groups;
    groups.push_back(cyclic(8));
    groups.push_back(dihedral(4));
    groups.push_back(quaternion8());
    groups.push_back(group_from_permutations(6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5},
                                                 {0, 1, 2, 3, 5, 4}},
                                             "Z2^3"));
    groups.push_back(group_from_permutations(6, {{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}},
                                             "Z4xZ2"));
    for (const auto& A : groups)
        for (const auto& B : groups) {
            bool naive = count_isomorphisms_naive(A, B) > 0;
            CHECK(is_isomorphic(A, B).has_value() == naive);
        }
}

TEST_CASE("abelian invariants") {
    CHECK(abelian_invariants(cyclic(6)) == std::vector<int>{2, 3});
    CHECK(abelian_invariants(symmetric3()) == std::vector<int>{2});
    CHECK(abelian_invariants(quaternion8()) == std::vector<int>{2, 2});
    CHECK(abelian_invariants(dihedral(4)) == std::vector<int>{2, 2});
    CHECK(abelian_invariants(klein4()) == std::vector<int>{2, 2});
    CHECK(abelian_invariants(cyclic(12)) == std::vector<int>{3, 4});
}

TEST_CASE("power and commutator conventions") {
    FiniteGroup z5 = cyclic(5);
    CHECK(z5.power(1, 3) == 3);
    CHECK(z5.power(1, -1) == 4);
    CHECK(z5.power(1, 0) == 0);

    FiniteGroup s3 = symmetric3();
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            // [x,y] = x y x^-1 y^-1
            Elem lhs = s3.commutator(x, y);
            Elem rhs = s3.mul(s3.mul(x, y), s3.mul(s3.inv(x), s3.inv(y)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("minimal generating tuple") {
    CHECK(minimal_generating_tuple(cyclic(6)).size() == 1);
    CHECK(minimal_generating_tuple(klein4()).size() == 2);
    CHECK(minimal_generating_tuple(quaternion8()).size() == 2);
}
