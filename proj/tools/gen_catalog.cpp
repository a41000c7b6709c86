// One-off generator for data/groups.cat: enumerates all isomorphism classes
// of finite groups for every order the classification pipelines touch.
//
// Method: process orders ascending. Every solvable group G has a normal
// subgroup N of prime index p (pull back an index-p subgroup of G/[G,G]), so
// G is a cyclic extension of some already-known group N of order |G|/p:
// pick g outside N; then alpha = conjugation by g restricted to N and
// t = g^p satisfy alpha(t) = t and alpha^p = conj_t, and (N, alpha, t)
// determines G. We therefore enumerate, for each known N and prime p, all
// pairs (alpha, t) with alpha in Aut(N) up to Aut(N)-conjugacy, and dedupe
// the resulting groups up to isomorphism. The nonsolvable groups of order
// <= 120 are exactly A5, S5, Z2 x A5 and SL(2,5); the latter has no normal
// subgroup of prime index and is added explicitly (S5 and Z2 x A5 arise as
// extensions of A5).
//
// The class count for every order is validated against the known number of
// isomorphism classes of that order before anything is written.
//
// Usage: gen_catalog <output-path>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "isoclass/catalog.hpp"
#include "isoclass/group.hpp"

using namespace isoclass;

namespace {

// Orders needed by the pipelines, closed under division by any prime so the
// extension step always finds its kernels.
const std::vector<int> kOrders = [] {
    std::vector<int> v;
    for (int n = 1; n <= 48; ++n) v.push_back(n);
    for (int n : {54, 60, 64, 72, 80, 84, 90, 96, 108, 120}) v.push_back(n);
    return v;
}();

// Known number of isomorphism classes per order (OEIS A000001).
const std::map<int, int> kExpectedCounts = {
    {1, 1},   {2, 1},   {3, 1},  {4, 2},    {5, 1},   {6, 2},   {7, 1},   {8, 5},
    {9, 2},   {10, 2},  {11, 1}, {12, 5},   {13, 1},  {14, 2},  {15, 1},  {16, 14},
    {17, 1},  {18, 5},  {19, 1}, {20, 5},   {21, 2},  {22, 2},  {23, 1},  {24, 15},
    {25, 2},  {26, 2},  {27, 5}, {28, 4},   {29, 1},  {30, 4},  {31, 1},  {32, 51},
    {33, 1},  {34, 2},  {35, 1}, {36, 14},  {37, 1},  {38, 2},  {39, 2},  {40, 14},
    {41, 1},  {42, 6},  {43, 1}, {44, 4},   {45, 2},  {46, 2},  {47, 1},  {48, 52},
    {54, 15}, {60, 13}, {64, 267}, {72, 50}, {80, 52}, {84, 15}, {90, 10}, {96, 231},
    {108, 45}, {120, 47}};

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int p = 2; p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    return out;
}

/// SL(2, F_5), order 120 (perfect, so not reachable as a cyclic extension).
FiniteGroup sl2_f5() {
    struct M {
        int a, b, c, d;
    };
    std::vector<M> elems;
    elems.push_back({1, 0, 0, 1});
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                for (int d = 0; d < 5; ++d) {
                    if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                    if (((a * d - b * c) % 5 + 5) % 5 == 1) elems.push_back({a, b, c, d});
                }
    int n = static_cast<int>(elems.size());
    auto key = [](const M& m) { return ((m.a * 5 + m.b) * 5 + m.c) * 5 + m.d; };
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[key(elems[i])] = i;
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const M &x = elems[i], &y = elems[j];
            M z{(x.a * y.a + x.b * y.c) % 5, (x.a * y.b + x.b * y.d) % 5,
                (x.c * y.a + x.d * y.c) % 5, (x.c * y.b + x.d * y.d) % 5};
            mul[static_cast<size_t>(i) * n + j] = index.at(key(z));
        }
    return FiniteGroup::from_table(std::move(mul), "SL(2,5)");
}

/// Builds the extension <N, g> with g x g^-1 = alpha(x) and g^p = t, as a
/// table on pairs (i, x) <-> g^i * x.
FiniteGroup build_extension(const FiniteGroup& N, int p, const Automorphism& alpha, Elem t) {
    int m = N.order();
    // alpha_neg[j] = alpha^{-j}
    std::vector<std::vector<Elem>> alpha_neg(p);
    std::vector<Elem> inv_perm(m);
    for (Elem x = 0; x < m; ++x) inv_perm[alpha(x)] = x;
    alpha_neg[0].resize(m);
    std::iota(alpha_neg[0].begin(), alpha_neg[0].end(), 0);
    for (int j = 1; j < p; ++j) {
        alpha_neg[j].resize(m);
        for (Elem x = 0; x < m; ++x) alpha_neg[j][x] = inv_perm[alpha_neg[j - 1][x]];
    }
    int n = p * m;
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < p; ++i)
        for (Elem x = 0; x < m; ++x)
            for (int j = 0; j < p; ++j)
                for (Elem y = 0; y < m; ++y) {
                    int k = i + j;
                    Elem z = N.mul(alpha_neg[j][x], y);
                    if (k >= p) {
                        k -= p;
                        z = N.mul(t, z);
                    }
                    mul[static_cast<size_t>(i * m + x) * n + (j * m + y)] = k * m + z;
                }
    return FiniteGroup::from_table(std::move(mul), "ext");
}

/// All (alpha, t) pairs for cyclic extensions of N by Z_p, with alpha taken
/// up to Aut(N)-conjugacy.
std::vector<std::pair<Automorphism, Elem>> extension_candidates(const FiniteGroup& N, int p);

/// Special case: N = (Z2)^5 has ~10^7 automorphisms, far too many to list.
/// N is abelian, so the condition is alpha^p = id and t fixed by alpha; the
/// GL(5,2)-conjugacy classes of alpha are known in closed form.
std::vector<std::pair<Automorphism, Elem>> extension_candidates_z2_5(const FiniteGroup& N,
                                                                     int p) {
    int m = N.order();  // 32
    // Element index <-> bit vector: abelian_group({2,...,2}) nests direct
    // products so coordinate 0 is the most significant bit.
    auto matrix_to_perm = [&](const std::vector<std::vector<int>>& A) {
        Automorphism phi;
        phi.perm.resize(m);
        for (int v = 0; v < m; ++v) {
            int w = 0;
            for (int r = 0; r < 5; ++r) {
                int bit = 0;
                for (int c = 0; c < 5; ++c) bit ^= A[r][c] & (v >> (4 - c));
                w |= (bit & 1) << (4 - r);
            }
            phi.perm[v] = w;
        }
        return phi;
    };
    std::vector<std::vector<std::vector<int>>> reps;
    auto identity5 = [] {
        std::vector<std::vector<int>> I(5, std::vector<int>(5, 0));
        for (int i = 0; i < 5; ++i) I[i][i] = 1;
        return I;
    };
    if (p == 2) {
        // A^2 = I <=> (A-I)^2 = 0; classes by rank(A-I) in {0, 1, 2}:
        // block-diagonal with r Jordan blocks [[1,1],[0,1]].
        for (int r = 0; r <= 2; ++r) {
            auto A = identity5();
            for (int b = 0; b < r; ++b) A[2 * b][2 * b + 1] = 1;
            reps.push_back(A);
        }
    } else if (p == 3) {
        // A^3 = I, semisimple over F_2: I_a + b copies of the companion
        // matrix of x^2+x+1, a + 2b = 5, b in {0, 1, 2}.
        for (int b = 0; b <= 2; ++b) {
            auto A = identity5();
            for (int k = 0; k < b; ++k) {
                int o = 2 * k;
                A[o][o] = 0, A[o][o + 1] = 1;
                A[o + 1][o] = 1, A[o + 1][o + 1] = 1;
            }
            reps.push_back(A);
        }
    } else {
        return {};  // no other extension primes occur for this kernel
    }
    std::vector<std::pair<Automorphism, Elem>> out;
    for (const auto& A : reps) {
        Automorphism phi = matrix_to_perm(A);
        for (Elem t = 0; t < m; ++t)
            if (phi(t) == t) out.push_back({phi, t});
    }
    return out;
}

std::vector<std::pair<Automorphism, Elem>> extension_candidates(const FiniteGroup& N, int p) {
    bool elementary_abelian_2 = N.is_abelian() && N.order() == 32;
    if (elementary_abelian_2)
        for (Elem x = 1; x < N.order(); ++x)
            if (N.elem_order(x) != 2) elementary_abelian_2 = false;
    if (elementary_abelian_2) return extension_candidates_z2_5(N, p);

    std::vector<Automorphism> auts = automorphism_group(N);
    int m = N.order();

    // conj_t as a permutation, for matching alpha^p against inner maps.
    std::map<std::vector<Elem>, std::vector<Elem>> inner;  // perm -> list of t
    for (Elem t = 0; t < m; ++t) {
        std::vector<Elem> perm(m);
        for (Elem x = 0; x < m; ++x) perm[x] = N.conj(t, x);
        inner[perm].push_back(t);
    }

    std::vector<std::pair<Automorphism, Elem>> out;
    std::set<std::vector<Elem>> covered;
    std::vector<Elem> scratch(m), apow(m);
    for (const Automorphism& alpha : auts) {
        if (covered.count(alpha.perm)) continue;
        // Mark the whole Aut(N)-conjugacy class of alpha as seen.
        for (const Automorphism& beta : auts) {
            std::vector<Elem> binv(m);
            for (Elem x = 0; x < m; ++x) binv[beta(x)] = x;
            for (Elem x = 0; x < m; ++x) scratch[x] = beta(alpha(binv[x]));
            covered.insert(scratch);
        }
        // alpha^p
        std::iota(apow.begin(), apow.end(), 0);
        for (int i = 0; i < p; ++i) {
            for (Elem x = 0; x < m; ++x) scratch[x] = alpha(apow[x]);
            apow = scratch;
        }
        auto it = inner.find(apow);
        if (it == inner.end()) continue;
        for (Elem t : it->second)
            if (alpha(t) == t) out.push_back({alpha, t});
    }
    return out;
}

/// Small generating set found greedily (least element outside the current
/// closure), as left-multiplication permutations.
std::vector<std::vector<int>> greedy_regular_generators(const FiniteGroup& G) {
    std::vector<Elem> sel;
    std::vector<Elem> closure = subgroup_generated(G, {});
    while (static_cast<int>(closure.size()) < G.order()) {
        std::set<Elem> have(closure.begin(), closure.end());
        for (Elem x = 0; x < G.order(); ++x)
            if (!have.count(x)) {
                sel.push_back(x);
                break;
            }
        closure = subgroup_generated(G, sel);
    }
    std::vector<std::vector<int>> gens;
    for (Elem g : sel) {
        std::vector<int> perm(G.order());
        for (Elem x = 0; x < G.order(); ++x) perm[x] = G.mul(g, x);
        gens.push_back(std::move(perm));
    }
    if (gens.empty()) gens.push_back({0});
    return gens;
}

struct ClassInfo {
    FiniteGroup group;
    std::string label;     // assigned in the naming pass
    std::string paper_id;  // assigned in the naming pass
};

std::map<int, std::vector<ClassInfo>> g_found;

/// Accepts a candidate if it is not isomorphic to an already-accepted class
/// of the same order. Returns true if new.
bool accept(std::map<std::uint64_t, std::vector<int>>& buckets, std::vector<ClassInfo>& classes,
            FiniteGroup G) {
    std::uint64_t fp = iso_fingerprint(G);
    auto& bucket = buckets[fp];
    for (int idx : bucket)
        if (is_isomorphic(classes[idx].group, G)) return false;
    bucket.push_back(static_cast<int>(classes.size()));
    classes.push_back({std::move(G), "", ""});
    return true;
}

// --- Naming pass -------------------------------------------------------------

/// Finds the class isomorphic to G and assigns label + paper id.
void assign(int order, const FiniteGroup& G, const std::string& label,
            const std::string& paper_id) {
    for (ClassInfo& c : g_found.at(order))
        if (is_isomorphic(c.group, G)) {
            if (!c.paper_id.empty() && c.paper_id != paper_id)
                throw Error("conflicting ids " + c.paper_id + " and " + paper_id);
            c.label = label;
            c.paper_id = paper_id;
            return;
        }
    throw Error("no class of order " + std::to_string(order) + " matches " + label);
}

/// Builds all isomorphism classes of semidirect products actor |x kernel
/// over nontrivial actions.
std::vector<FiniteGroup> semidirect_classes(const FiniteGroup& actor, const FiniteGroup& kernel,
                                            bool faithful_only) {
    std::vector<FiniteGroup> classes;
    for (const auto& hom : action_homomorphisms(actor, kernel)) {
        std::set<std::vector<Elem>> images;
        for (const auto& phi : hom) images.insert(phi.perm);
        bool trivial = images.size() == 1;
        bool faithful = static_cast<int>(images.size()) == actor.order();
        if (trivial) continue;
        if (faithful_only && !faithful) continue;
        FiniteGroup G = semidirect_product(actor, kernel, hom);
        bool fresh = true;
        for (const auto& H : classes)
            if (is_isomorphic(H, G)) {
                fresh = false;
                break;
            }
        if (fresh) classes.push_back(std::move(G));
    }
    return classes;
}

/// Assigns an id to the unique semidirect-product class matching the given
/// filters; fails loudly if the class is not unique.
void assign_semidirect(const std::string& actor_name, const std::string& kernel_name,
                       const std::string& label, const std::string& paper_id, bool faithful_only,
                       int required_center = -1) {
    FiniteGroup actor = construct_named(actor_name);
    FiniteGroup kernel = construct_named(kernel_name);
    std::vector<FiniteGroup> classes = semidirect_classes(actor, kernel, faithful_only);
    if (required_center > 0) {
        std::vector<FiniteGroup> kept;
        for (auto& G : classes)
            if (static_cast<int>(G.center().size()) == required_center) kept.push_back(std::move(G));
        classes = std::move(kept);
    }
    if (classes.size() != 1)
        throw Error("ambiguous semidirect " + label + ": " + std::to_string(classes.size()) +
                    " classes");
    assign(classes[0].order(), classes[0], label, paper_id);
}

void naming_pass() {
    // Groups named directly in the classification tables.
    const std::vector<std::pair<std::string, std::string>> named = {
        {"Z2", "G(2,1)"},        {"Z3", "G(3,1)"},      {"Z4", "G(4,1)"},
        {"Z2xZ2", "G(4,2)"},     {"Z5", "G(5,1)"},      {"S3", "G(6,1)"},
        {"Z6", "G(6,2)"},        {"Z8", "G(8,1)"},      {"Z2xZ4", "G(8,2)"},
        {"D4", "G(8,3)"},        {"Q8", "G(8,4)"},      {"Z2xZ2xZ2", "G(8,5)"},
        {"Z10", "G(10,2)"},      {"D(4,3,-1)", "G(12,1)"}, {"A4", "G(12,3)"},
        {"D6", "G(12,4)"},       {"Z2xZ6", "G(12,5)"},  {"Z2xZ8", "G(16,5)"},
        {"D(2,8,5)", "G(16,6)"}, {"D(2,8,3)", "G(16,8)"}, {"Z2xD4", "G(16,11)"},
        {"Z3xS3", "G(18,3)"},    {"SL(2,3)", "G(24,3)"}, {"D(2,12,5)", "G(24,5)"},
        {"S4", "G(24,12)"},      {"Z2xA4", "G(24,13)"}, {"S3xS3", "G(36,10)"},
        {"Z6xS3", "G(36,12)"},   {"GL(2,3)", "G(48,29)"}, {"Z2xS4", "G(48,48)"},
        {"Z2xZ2xA4", "G(48,49)"}, {"A5", "G(60,5)"},    {"Z3xS4", "G(72,42)"},
        {"S5", "G(120,34)"},     {"Z1", "G(1,1)"}};
    for (const auto& [name, id] : named) {
        FiniteGroup G = construct_named(name == "Z1" ? "Z1" : name);
        assign(G.order(), G, name, id);
    }
    // Semidirect products named in the tables where the nontrivial (resp.
    // faithful) action class is unique.
    assign_semidirect("Z4", "Z2xZ2", "Z4sdV4", "G(16,3)", false);
    assign_semidirect("Z2", "Z2xZ2xZ3", "Z2sdV4xZ3", "G(24,8)", false, 2);
    assign_semidirect("Z8", "Z2xZ2", "Z8sdV4", "G(32,5)", false);
    assign_semidirect("Z4", "Z2xZ2xZ2", "Z4sdE8", "G(32,6)", true);
    assign_semidirect("Z5", "Z2xZ2xZ2xZ2", "Z5sdE16", "G(80,49)", false);
    // Remaining ambiguous table groups (Z4 |x (Z4xZ2), Z2 |x D(2,8,5),
    // Z2 |x (Z2xZ8), Z4 |x (Z3)^2, Z4 |x (Z2)^4) are resolved by elimination
    // against the classification output and get plain labels here. Note the
    // unique FAITHFUL Z4 |x (Z4xZ2) is isomorphic to the faithful
    // Z4 |x (Z2)^3 above, so that description must refer to a non-faithful
    // action and cannot be pinned here.
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_catalog <output-path>\n";
        return 2;
    }
    const std::string out_path = argv[1];

    for (int n : kOrders) {
        std::vector<ClassInfo> classes;
        std::map<std::uint64_t, std::vector<int>> buckets;
        if (n == 1) {
            classes.push_back({FiniteGroup::from_table({0}, "Z1"), "", ""});
        } else {
            for (int p : prime_divisors(n)) {
                auto it = g_found.find(n / p);
                if (it == g_found.end()) throw Error("missing kernels of order " + std::to_string(n / p));
                for (const ClassInfo& kernel : it->second)
                    for (const auto& [alpha, t] : extension_candidates(kernel.group, p))
                        accept(buckets, classes, build_extension(kernel.group, p, alpha, t));
            }
            if (n == 60) accept(buckets, classes, alternating_group(5));
            if (n == 120) accept(buckets, classes, sl2_f5());
        }
        int expected = kExpectedCounts.at(n);
        std::cout << "order " << n << ": " << classes.size() << " classes (expected " << expected
                  << ")" << std::endl;
        if (static_cast<int>(classes.size()) != expected) {
            std::cerr << "count mismatch at order " << n << "\n";
            return 1;
        }
        g_found[n] = std::move(classes);
    }

    naming_pass();

    std::vector<CatalogEntry> entries;
    for (auto& [order, classes] : g_found) {
        int idx = 0;
        for (ClassInfo& c : classes) {
            CatalogEntry e;
            e.order = order;
            e.label = c.label.empty()
                          ? "o" + std::to_string(order) + "_" + std::to_string(idx)
                          : c.label;
            e.paper_id = c.paper_id;
            e.degree = order;
            e.generators = greedy_regular_generators(c.group);
            entries.push_back(std::move(e));
            ++idx;
        }
    }
    write_catalog(out_path, entries);
    std::cout << "wrote " << entries.size() << " entries to " << out_path << std::endl;
    return 0;
}
