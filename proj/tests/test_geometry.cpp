#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "isoclass/catalog.hpp"
#include "isoclass/geometry.hpp"
#include "isoclass/hurwitz.hpp"

using namespace isoclass;

namespace {

/// Picks any pair (V1, V2) of the given types whose stabilizer sets meet
/// nontrivially (the singular configurations of interest).
std::pair<GeneratingVector, GeneratingVector> intersecting_pair(const FiniteGroup& G,
                                                                const SignatureType& s1,
                                                                const SignatureType& s2) {
    auto v1 = all_generating_vectors(G, s1, Mode::ordered);
    auto v2 = all_generating_vectors(G, s2, Mode::ordered);
    for (const auto& a : v1)
        for (const auto& b : v2)
            if (!are_disjoint(a, b)) return {a, b};
    throw Error("no intersecting pair found");
}

Rational hj_value(const std::vector<int>& bs) {
    // Evaluates b1 - 1/(b2 - 1/(...)) from the tail.
    Rational v(bs.back());
    for (int i = static_cast<int>(bs.size()) - 2; i >= 0; --i)
        v = Rational(bs[i]) - Rational(1) / v;
    return v;
}

}  // namespace

TEST_CASE("Hirzebruch-Jung expansions") {
    CHECK(hj_expansion(2, 1) == std::vector<int>{2});
    CHECK(hj_expansion(5, 2) == std::vector<int>{3, 2});
    CHECK(hj_expansion(4, 1) == std::vector<int>{4});
    CHECK(hj_expansion(5, 3) == std::vector<int>{2, 3});
    CHECK(hj_expansion(7, 3) == std::vector<int>{3, 2, 2});

    SUBCASE("exact reconstruction for all n <= 200") {
        for (int n = 2; n <= 200; ++n)
            for (int q = 1; q < n; ++q) {
                if (std::gcd(n, q) != 1) continue;
                auto bs = hj_expansion(n, q);
                for (int b : bs) CHECK(b >= 2);
                CHECK(hj_value(bs) == Rational(n, q));
            }
    }

    SUBCASE("bad pairs") {
        CHECK_THROWS_AS(hj_expansion(4, 2), BadPair);
        CHECK_THROWS_AS(hj_expansion(3, 0), BadPair);
        CHECK_THROWS_AS(hj_expansion(3, 3), BadPair);
        CHECK_THROWS_AS(hj_expansion(1, 1), BadPair);
    }
}

TEST_CASE("singularity contributions") {
    auto c21 = singularity_contribution(QuotientSingularity::make(2, 1));
    CHECK(c21.h == Rational(0));
    CHECK(c21.e == Rational(3, 2));
    CHECK(c21.B == Rational(3));

    auto c31 = singularity_contribution(QuotientSingularity::make(3, 1));
    CHECK(c31.h == Rational(-1, 3));
    CHECK(c31.e == Rational(5, 3));

    auto c41 = singularity_contribution(QuotientSingularity::make(4, 1));
    CHECK(c41.h == Rational(-1));
    CHECK(c41.e == Rational(7, 4));

    auto c52 = singularity_contribution(QuotientSingularity::make(5, 2));
    CHECK(c52.h == Rational(-2, 5));
    CHECK(c52.e == Rational(14, 5));

    SUBCASE("rational double points 1/n(1,n-1) have h = 0, e = (n-1)(n+1)/n") {
        for (int n = 2; n <= 20; ++n) {
            auto c = singularity_contribution(QuotientSingularity::make(n, n - 1));
            CHECK(c.h == Rational(0));
            CHECK(c.e == Rational((n - 1) * (n + 1), n));
        }
    }

    SUBCASE("h is symmetric in q and its inverse; e depends on (n, string length)") {
        for (int n = 2; n <= 40; ++n)
            for (int q = 1; q < n; ++q) {
                if (std::gcd(n, q) != 1) continue;
                auto s = QuotientSingularity::make(n, q);
                auto sp = QuotientSingularity::make(n, s.q_prime);
                CHECK((s.q * s.q_prime) % n == 1);
                CHECK(singularity_contribution(s).h == singularity_contribution(sp).h);
                auto c = singularity_contribution(s);
                CHECK(c.e == Rational(static_cast<long long>(s.hj.size()) + 1) - Rational(1, n));
                CHECK(c.e >= Rational(3, 2));
                CHECK(c.B == c.e + c.e - c.h);
            }
    }
}

TEST_CASE("free product invariants and irregularity") {
    auto inv = product_invariants_free(3, 2, 2);
    CHECK(inv.chi == 1);
    CHECK(inv.K2 == Rational(8));
    CHECK(inv.e == Rational(4));
    CHECK(product_invariants_free(2, 2, 1).K2 == Rational(8));
    CHECK(product_invariants_free(3, 3, 4).chi == 1);
    CHECK_THROWS_AS(product_invariants_free(3, 3, 3), NonIntegralChi);
    CHECK_THROWS_AS(product_invariants_free(1, 3, 2), Error);

    CHECK(irregularity(SignatureType::make(2, {}), SignatureType::make(0, {2, 3, 8})) == 2);
    CHECK(irregularity(SignatureType::make(1, {2}), SignatureType::make(1, {2, 2})) == 2);
    CHECK(irregularity(SignatureType::make(0, {2, 2, 2}), SignatureType::make(0, {3, 3, 3})) ==
          0);

    CHECK(covering_genus(12, SignatureType::make(1, {2})) == 4);
    CHECK_THROWS_AS(covering_genus(2, SignatureType::make(0, {3})), NonIntegralGenus);
}

TEST_CASE("singular points and node counts") {
    SUBCASE("disjoint vectors give a smooth quotient") {
        FiniteGroup G = dihedral_group(4);
        auto v1 = all_generating_vectors(G, SignatureType::make(1, {2}), Mode::ordered);
        auto v2 = all_generating_vectors(G, SignatureType::make(1, {2, 2}), Mode::ordered);
        bool found = false;
        for (const auto& a : v1)
            for (const auto& b : v2)
                if (are_disjoint(a, b)) {
                    CHECK(singular_points(G, a, b).empty());
                    CHECK(node_count(G, a, b) == 0);
                    found = true;
                }
        CHECK(found);
    }

    SUBCASE("A4 with both sides (1|2): two nodes") {
        FiniteGroup G = alternating_group(4);
        auto sig = SignatureType::make(1, {2});
        auto [a, b] = intersecting_pair(G, sig, sig);
        auto sings = singular_points(G, a, b);
        CHECK(singularities_to_string(sings) == "2/1,2/1");
        CHECK(node_count(G, a, b) == 2);
        auto inv = resolved_invariants(4, 4, 12, sings);
        CHECK(inv.K2 == Rational(6));
        CHECK(inv.e == Rational(6));
        CHECK(inv.chi == 1);
    }

    SUBCASE("Q8 with both sides (1|2): four nodes") {
        FiniteGroup G = quaternion_group();
        auto sig = SignatureType::make(1, {2});
        auto [a, b] = intersecting_pair(G, sig, sig);
        CHECK(node_count(G, a, b) == 4);
        CHECK(singularities_to_string(singular_points(G, a, b)) == "2/1,2/1,2/1,2/1");
    }

    SUBCASE("Z2 with both sides (1|2,2): four nodes") {
        FiniteGroup G = cyclic_group(2);
        auto sig = SignatureType::make(1, {2, 2});
        auto [a, b] = intersecting_pair(G, sig, sig);
        CHECK(node_count(G, a, b) == 4);
        auto inv = resolved_invariants(2, 2, 2, singular_points(G, a, b));
        CHECK(inv.K2 == Rational(4));
    }

    SUBCASE("S3 with both sides (1|3): types 1/3(1,1) and 1/3(1,2)") {
        FiniteGroup G = symmetric_group(3);
        auto sig = SignatureType::make(1, {3});
        auto [a, b] = intersecting_pair(G, sig, sig);
        auto sings = singular_points(G, a, b);
        CHECK(singularities_to_string(sings) == "3/1,3/2");
        CHECK_THROWS_AS(node_count(G, a, b), NonInvolutionStabilizer);
        auto inv = resolved_invariants(3, 3, 6, sings);
        CHECK(inv.K2 == Rational(5));
        CHECK(inv.e == Rational(7));
    }

    SUBCASE("node count equals number of singular points on involution data") {
        for (const FiniteGroup& G :
             {alternating_group(4), quaternion_group(), dihedral_group(4)}) {
            auto sig = SignatureType::make(1, {2});
            auto v = all_generating_vectors(G, sig, Mode::ordered);
            for (size_t i = 0; i < v.size() && i < 5; ++i)
                for (size_t j = 0; j < v.size() && j < 5; ++j) {
                    if (are_disjoint(v[i], v[j])) continue;
                    CHECK(static_cast<size_t>(node_count(G, v[i], v[j])) ==
                          singular_points(G, v[i], v[j]).size());
                }
        }
    }

    SUBCASE("singular points are invariant along move orbits") {
        FiniteGroup G = symmetric_group(3);
        auto sig = SignatureType::make(1, {3});
        auto [a, b] = intersecting_pair(G, sig, sig);
        auto base = singular_points(G, a, b);
        for (int id = 1; id <= move_count(sig); ++id) {
            for (bool inv : {false, true}) {
                CHECK(singular_points(G, apply_move(a, id, inv), b) == base);
                CHECK(singular_points(G, a, apply_move(b, id, inv)) == base);
            }
        }
    }
}

TEST_CASE("resolved invariants consistency") {
    SUBCASE("smooth case") {
        auto inv = resolved_invariants(3, 2, 2, {});
        CHECK(inv.K2 == Rational(8));
        CHECK(inv.e == Rational(4));
        CHECK(inv.chi == 1);
    }

    SUBCASE("two 1/5(1,2) points give K2 = 4") {
        auto inv = resolved_invariants(4, 2, 5, {QuotientSingularity::make(5, 2),
                                                 QuotientSingularity::make(5, 2)});
        CHECK(inv.chi == 1);
        CHECK(inv.K2 == Rational(4));
        CHECK(inv.e == Rational(8));
    }

    SUBCASE("non-integral chi / K2 are rejected") {
        CHECK_THROWS_AS(resolved_invariants(2, 2, 3, {}), NonIntegralChi);
        CHECK_THROWS_AS(resolved_invariants(8, 2, 9, {QuotientSingularity::make(3, 1),
                                                      QuotientSingularity::make(3, 1)}),
                        NonIntegralK2);
    }
}

TEST_CASE("baskets") {
    auto sing = [](int n, int q) { return QuotientSingularity::make(n, q); };
    CHECK(basket_allowed(6, {sing(2, 1), sing(2, 1)}));
    CHECK(basket_allowed(5, {sing(2, 1), sing(2, 1), sing(2, 1)}));
    CHECK(basket_allowed(5, {sing(3, 2), sing(3, 1)}));  // order-insensitive
    CHECK(basket_allowed(4, {sing(5, 2), sing(5, 2)}));
    CHECK(basket_allowed(4, {sing(2, 1), sing(4, 1), sing(4, 1)}));
    CHECK(!basket_allowed(6, {sing(3, 1)}));
    CHECK(!basket_allowed(5, {sing(2, 1), sing(2, 1)}));
    CHECK(!basket_allowed(4, {sing(5, 2), sing(5, 3)}));
    CHECK_THROWS_AS(basket_allowed(7, {}), K2OutOfRange);
    CHECK_THROWS_AS(basket_allowed(3, {}), K2OutOfRange);

    SUBCASE("numerical re-derivation") {
        // Candidate types with B <= 12, then all multisets of >= 2 points
        // with sum B = 3(8 - K2) and total h + e < 12 (so the free part of
        // chi stays positive). The constraints of the B-bound alone produce
        // a superset of the allowed baskets for K2 = 5, 4: the extras are
        // ruled out by the fibre structure (every singular fibre carries at
        // least two Hirzebruch-Jung strings), which is out of numerical
        // scope; the allowed lists must be contained in the derived ones,
        // and for K2 = 6 the derivation is exact.
        struct Cand {
            QuotientSingularity s;
            Rational B, he;
        };
        std::vector<Cand> cands;
        for (int n = 2; n <= 25; ++n)
            for (int q = 1; q < n; ++q) {
                if (std::gcd(n, q) != 1) continue;
                auto s = QuotientSingularity::make(n, q);
                auto c = singularity_contribution(s);
                if (c.B <= Rational(12)) cands.push_back({s, c.B, c.h + c.e});
            }
        auto derive = [&](int K2) {
            Rational target(3 * (8 - K2));
            std::set<std::vector<QuotientSingularity>> found;
            // Depth-first over non-decreasing candidate indices.
            std::vector<QuotientSingularity> cur;
            std::function<void(size_t, Rational, Rational)> rec = [&](size_t from, Rational B,
                                                                     Rational he) {
                if (B == target && cur.size() >= 2 && he < Rational(12)) found.insert(cur);
                if (B >= target) return;
                for (size_t i = from; i < cands.size(); ++i) {
                    cur.push_back(cands[i].s);
                    rec(i, B + cands[i].B, he + cands[i].he);
                    cur.pop_back();
                }
            };
            rec(0, Rational(0), Rational(0));
            return found;
        };
        for (int K2 : {4, 5, 6}) {
            auto derived = derive(K2);
            for (auto basket : basket_list(K2)) {
                std::sort(basket.begin(), basket.end());
                CHECK(derived.count(basket) == 1);
            }
        }
        CHECK(derive(6).size() == 1);
    }
}

TEST_CASE("moduli dimensions") {
    CHECK(moduli_dimension({SignatureType::make(2, {}),
                            SignatureType::make(0, {2, 2, 2, 2, 2, 2})}) == 6);
    CHECK(moduli_dimension({SignatureType::make(1, {2, 2}), SignatureType::make(1, {2, 2})}) ==
          4);
    CHECK(moduli_dimension({SignatureType::make(2, {})}) == 3);
    CHECK(moduli_dimension({SignatureType::make(2, {}), SignatureType::make(0, {2, 3, 8})}) ==
          3 + 0);
    CHECK_THROWS_AS(moduli_dimension({SignatureType::make(0, {2, 2})}), DegenerateSignature);
    CHECK_THROWS_AS(moduli_dimension({SignatureType::make(1, {})}), DegenerateSignature);
}

TEST_CASE("mixed construction data and admissibility") {
    SUBCASE("Z4 over Z2: the unique datum is admissible") {
        FiniteGroup Z4 = cyclic_group(4);
        Elem x = 1;
        MixedDatum d = make_mixed_datum(Z4, {0, Z4.mul(x, x)}, x);
        CHECK(d.G_zero.order() == 2);
        CHECK(d.tau == 1);  // x^2 is the nontrivial subgroup element
        auto vecs = all_generating_vectors(d.G_zero, SignatureType::make(2, {}), Mode::ordered);
        bool any = false;
        for (const auto& V : vecs) any = any || mixed_admissible(d, V);
        CHECK(any);
    }

    SUBCASE("split extension is never admissible") {
        FiniteGroup V4 = abelian_group({2, 2});
        MixedDatum d = make_mixed_datum(V4, {0, 1}, 2);
        auto vecs = all_generating_vectors(d.G_zero, SignatureType::make(2, {}), Mode::ordered);
        REQUIRE(!vecs.empty());
        for (const auto& V : vecs) CHECK(!mixed_admissible(d, V));
    }

    SUBCASE("ramified C-side with abelian G fails m1") {
        FiniteGroup Z8 = cyclic_group(8);
        std::vector<Elem> sub = {0, 2, 4, 6};
        MixedDatum d = make_mixed_datum(Z8, sub, 1);
        // phi is trivial on the abelian subgroup, so any nontrivial
        // stabilizer already meets its phi-image.
        auto vecs =
            all_generating_vectors(d.G_zero, SignatureType::make(1, {2, 2}), Mode::ordered);
        REQUIRE(!vecs.empty());
        for (const auto& V : vecs) CHECK(!mixed_admissible(d, V));
    }

    SUBCASE("datum validation and the phi^2 = conjugation-by-tau invariant") {
        FiniteGroup Z4 = cyclic_group(4);
        CHECK_THROWS_AS(make_mixed_datum(Z4, {0}, 1), NotIndexTwo);
        CHECK_THROWS_AS(make_mixed_datum(Z4, {0, 2}, 2), Error);  // lift inside
        FiniteGroup Z8 = cyclic_group(8);
        CHECK_THROWS_AS(make_mixed_datum(Z8, {0, 1, 2, 3}, 4), NotASubgroup);

        for (const FiniteGroup& G :
             {cyclic_group(4), quaternion_group(), dihedral_group(4), dpqr_group(4, 3, 2)}) {
            // Index-two subgroups contain every square; enumerate them as
            // subgroups generated by the squares plus one further element.
            std::vector<Elem> squares;
            for (Elem g = 0; g < G.order(); ++g) squares.push_back(G.mul(g, g));
            for (Elem extra = 0; extra < G.order(); ++extra) {
                std::vector<Elem> gens = squares;
                gens.push_back(extra);
                std::vector<Elem> sub = subgroup_generated(G, gens);
                if (2 * static_cast<int>(sub.size()) != G.order()) continue;
                std::vector<char> inside(G.order(), 0);
                for (Elem e : sub) inside[e] = 1;
                for (Elem lift = 0; lift < G.order(); ++lift) {
                    if (inside[lift]) continue;
                    MixedDatum d = make_mixed_datum(G, sub, lift);
                    CHECK(d.tau_prime == lift);
                    CHECK(d.embed[d.tau] == G.mul(lift, lift));
                    for (Elem h = 0; h < d.G_zero.order(); ++h)
                        CHECK(d.phi(d.phi(h)) == d.G_zero.conj(d.tau, h));
                }
            }
        }
    }
}
