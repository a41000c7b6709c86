#include "isoclass/group.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace isoclass {

namespace {

std::string describe(const std::string& label, const std::string& what) {
    return label.empty() ? what : label + ": " + what;
}

}  // namespace

void FiniteGroup::finalize() {
    const int n = order_;
    // Latin-square check: each row and column is a permutation.
    std::vector<char> seen(n);
    for (int x = 0; x < n; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int y = 0; y < n; ++y) {
            Elem z = mul(x, y);
            if (z < 0 || z >= n || seen[z])
                throw Error(describe(label_, "multiplication table row is not a permutation"));
            seen[z] = 1;
        }
    }
    for (int y = 0; y < n; ++y) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int x = 0; x < n; ++x) {
            Elem z = mul(x, y);
            if (seen[z])
                throw Error(describe(label_, "multiplication table column is not a permutation"));
            seen[z] = 1;
        }
    }
    // Identity at index 0.
    for (int x = 0; x < n; ++x)
        if (mul(0, x) != x || mul(x, 0) != x)
            throw Error(describe(label_, "element 0 is not the identity"));
    // Associativity: exhaustive for small orders, sampled above.
    if (n <= 64) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                        throw Error(describe(label_, "multiplication table is not associative"));
    } else {
        std::mt19937 rng(0xa550u ^ static_cast<unsigned>(n));
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int trial = 0; trial < 200000; ++trial) {
            int x = pick(rng), y = pick(rng), z = pick(rng);
            if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                throw Error(describe(label_, "multiplication table is not associative"));
        }
    }
    // Inverses and element orders.
    inv_.assign(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (mul(x, y) == 0) {
                inv_[x] = y;
                break;
            }
    elem_order_.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        int k = 1;
        Elem p = x;
        while (p != 0) {
            p = mul(p, x);
            ++k;
        }
        elem_order_[x] = k;
        if (n % k != 0)
            throw Error(describe(label_, "element order does not divide group order"));
    }
    // Conjugacy classes, sorted by (size, least element) for determinism.
    class_index_.assign(n, -1);
    std::vector<std::vector<Elem>> classes;
    for (int x = 0; x < n; ++x) {
        if (class_index_[x] != -1) continue;
        std::vector<Elem> cls;
        for (int g = 0; g < n; ++g) {
            Elem y = mul(mul(g, x), inv_[g]);
            if (class_index_[y] == -1) {
                class_index_[y] = -2;  // mark, renumber below
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    classes_ = std::move(classes);
    for (size_t i = 0; i < classes_.size(); ++i)
        for (Elem x : classes_[i]) class_index_[x] = static_cast<int>(i);
}

FiniteGroup FiniteGroup::from_table(std::vector<Elem> mul, std::string label,
                                    std::string paper_id) {
    FiniteGroup G;
    const auto n2 = mul.size();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
    // Guard against rounding: find exact square root.
    while (static_cast<size_t>(n) * n > n2) --n;
    while (static_cast<size_t>(n) * n < n2) ++n;
    if (n <= 0 || static_cast<size_t>(n) * n != n2)
        throw Error("multiplication table size is not a perfect square");
    G.order_ = n;
    G.mul_ = std::move(mul);
    G.label_ = std::move(label);
    G.paper_id_ = std::move(paper_id);
    G.finalize();
    return G;
}

Elem FiniteGroup::power(Elem x, long long k) const {
    const int o = elem_order_[x];
    long long r = k % o;
    if (r < 0) r += o;
    Elem acc = 0;
    for (long long i = 0; i < r; ++i) acc = mul(acc, x);
    return acc;
}

std::vector<Elem> FiniteGroup::center() const {
    std::vector<Elem> z;
    for (int x = 0; x < order_; ++x) {
        bool central = true;
        for (int y = 0; y < order_ && central; ++y)
            if (mul(x, y) != mul(y, x)) central = false;
        if (central) z.push_back(x);
    }
    return z;
}

bool FiniteGroup::is_abelian() const {
    for (int x = 0; x < order_; ++x)
        for (int y = x + 1; y < order_; ++y)
            if (mul(x, y) != mul(y, x)) return false;
    return true;
}

std::uint64_t FiniteGroup::table_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Elem v : mul_) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

FiniteGroup group_from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                    std::string label, std::string paper_id, int order_cap) {
    if (degree <= 0) throw Error("degree must be positive");
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree)
            throw Error(describe(label, "generator degree mismatch"));
        std::vector<char> seen(degree, 0);
        for (int v : g) {
            if (v < 0 || v >= degree || seen[v])
                throw Error(describe(label, "generator is not a bijection"));
            seen[v] = 1;
        }
    }
    std::vector<int> identity(degree);
    std::iota(identity.begin(), identity.end(), 0);

    // BFS closure under right multiplication by the generators. Discovery
    // order is deterministic: identity first, then FIFO by generator order.
    std::map<std::vector<int>, Elem> index;
    std::vector<std::vector<int>> elems;
    index.emplace(identity, 0);
    elems.push_back(identity);
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            std::vector<int> prod(degree);
            for (int i = 0; i < degree; ++i) prod[i] = elems[head][g[i]];
            if (index.emplace(prod, static_cast<Elem>(elems.size())).second) {
                elems.push_back(std::move(prod));
                if (static_cast<int>(elems.size()) > order_cap)
                    throw OrderCapExceeded(describe(label, "generated group exceeds order cap " +
                                                               std::to_string(order_cap)));
            }
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<Elem> table(static_cast<size_t>(n) * n);
    std::vector<int> prod(degree);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            for (int i = 0; i < degree; ++i) prod[i] = elems[x][elems[y][i]];
            table[static_cast<size_t>(x) * n + y] = index.at(prod);
        }
    return FiniteGroup::from_table(std::move(table), std::move(label), std::move(paper_id));
}

const std::vector<std::vector<Elem>>& conjugacy_classes(const FiniteGroup& G) {
    return G.conjugacy_classes();
}

std::vector<Elem> centralizer(const FiniteGroup& G, Elem x) {
    std::vector<Elem> c;
    for (int g = 0; g < G.order(); ++g)
        if (G.mul(g, x) == G.mul(x, g)) c.push_back(g);
    return c;
}

namespace {

bool is_subgroup(const FiniteGroup& G, const std::vector<Elem>& H) {
    std::vector<char> in(G.order(), 0);
    for (Elem h : H) in[h] = 1;
    if (H.empty() || !in[0]) return false;
    for (Elem a : H)
        for (Elem b : H)
            if (!in[G.mul(a, b)]) return false;
    return true;
}

}  // namespace

std::vector<Elem> normalizer(const FiniteGroup& G, const std::vector<Elem>& H) {
    if (!is_subgroup(G, H)) throw NotASubgroup("normalizer: H is not a subgroup");
    std::vector<char> in(G.order(), 0);
    for (Elem h : H) in[h] = 1;
    std::vector<Elem> n;
    for (int g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (Elem h : H)
            if (!in[G.conj(g, h)]) {
                ok = false;
                break;
            }
        if (ok) n.push_back(g);
    }
    return n;
}

std::vector<Elem> subgroup_generated(const FiniteGroup& G, const std::vector<Elem>& S) {
    std::vector<char> in(G.order(), 0);
    std::vector<Elem> out{0};
    in[0] = 1;
    for (size_t head = 0; head < out.size(); ++head)
        for (Elem s : S) {
            Elem y = G.mul(out[head], s);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool generates(const FiniteGroup& G, const std::vector<Elem>& S) {
    return static_cast<int>(subgroup_generated(G, S).size()) == G.order();
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, std::vector<Elem> elems,
                              std::vector<Elem>* embed, std::string label) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (subgroup_generated(G, elems) != elems)
        throw NotASubgroup("element list is not closed under multiplication");
    int h = static_cast<int>(elems.size());
    std::vector<int> idx(G.order(), -1);
    for (int i = 0; i < h; ++i) idx[elems[i]] = i;
    std::vector<Elem> table(static_cast<size_t>(h) * h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            table[static_cast<size_t>(i) * h + j] = idx[G.mul(elems[i], elems[j])];
    if (label.empty()) label = G.label() + "_sub" + std::to_string(h);
    if (embed) *embed = elems;
    return FiniteGroup::from_table(std::move(table), std::move(label));
}

std::vector<Elem> minimal_generating_tuple(const FiniteGroup& G) {
    const int n = G.order();
    if (n == 1) return {};
    std::vector<Elem> tuple;
    for (int k = 1; k <= n; ++k) {
        tuple.assign(k, 0);
        // Lexicographically-first increasing k-combination that generates.
        std::vector<Elem> comb(k);
        std::function<bool(int, int)> rec = [&](int pos, int start) {
            if (pos == k) return generates(G, comb);
            for (int e = start; e < n; ++e) {
                comb[pos] = e;
                // Prune: the partial subgroup cannot exceed |G| by adding
                // k-pos-1 more generators of index >= 2 each.
                if (rec(pos + 1, e + 1)) return true;
            }
            return false;
        };
        if (rec(0, 1)) return comb;
    }
    throw Error("minimal_generating_tuple: unreachable");
}

namespace {

// Backtracking over images of a generating tuple of G inside H. For each
// candidate image assignment, the partial map is closed under right
// multiplication; every closure edge is checked, which suffices for the
// homomorphism property on the generated subgroup. Calls `emit` for every
// bijective homomorphic extension; if `emit` returns false the search stops.
template <typename Emit>
void map_search(const FiniteGroup& G, const FiniteGroup& H, const std::vector<Elem>& gens,
                const std::vector<std::vector<Elem>>& candidates, Emit emit) {
    const int n = G.order();
    std::vector<Elem> img(n, -1);
    std::vector<char> used(n, 0);
    std::vector<Elem> domain_order;  // BFS discovery order of the closure
    bool stop = false;

    // Closure with undo support: returns list of newly defined elements, or
    // nullopt on conflict.
    auto close = [&](int level) -> std::optional<std::vector<Elem>> {
        std::vector<Elem> added;
        std::vector<Elem> queue;
        // Re-walk everything already defined plus the new generator image.
        for (int x = 0; x < n; ++x)
            if (img[x] >= 0) queue.push_back(x);
        for (size_t head = 0; head < queue.size(); ++head) {
            Elem x = queue[head];
            for (int i = 0; i <= level; ++i) {
                Elem y = G.mul(x, gens[i]);
                Elem yi = H.mul(img[x], img[gens[i]]);
                if (img[y] < 0) {
                    if (used[yi]) {  // not injective
                        for (Elem a : added) { used[img[a]] = 0; img[a] = -1; }
                        return std::nullopt;
                    }
                    img[y] = yi;
                    used[yi] = 1;
                    added.push_back(y);
                    queue.push_back(y);
                } else if (img[y] != yi) {
                    for (Elem a : added) { used[img[a]] = 0; img[a] = -1; }
                    return std::nullopt;
                }
            }
        }
        return added;
    };

    std::function<void(int)> rec = [&](int level) {
        if (stop) return;
        if (level == static_cast<int>(gens.size())) {
            // gens generate G, so the closure defined img on all of G.
            if (!emit(img)) stop = true;
            return;
        }
        Elem g = gens[level];
        for (Elem h : candidates[level]) {
            if (stop) return;
            if (img[g] >= 0) {
                // Image already forced by closure of earlier generators.
                if (img[g] == h) rec(level + 1);
                continue;
            }
            if (used[h]) continue;
            img[g] = h;
            used[h] = 1;
            auto added = close(level);
            if (added) {
                rec(level + 1);
                for (Elem a : *added) { used[img[a]] = 0; img[a] = -1; }
            }
            used[h] = 0;
            img[g] = -1;
        }
    };

    img[0] = 0;
    used[0] = 1;
    rec(0);
}

// (order, class size) multiset compatibility: candidate images of x must have
// the same element order and lie in a class of the same size.
std::vector<std::vector<Elem>> image_candidates(const FiniteGroup& G, const FiniteGroup& H,
                                                const std::vector<Elem>& gens) {
    std::vector<std::vector<Elem>> cand(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        Elem g = gens[i];
        size_t cls_size = G.conjugacy_classes()[G.class_index(g)].size();
        for (int h = 0; h < H.order(); ++h)
            if (H.elem_order(h) == G.elem_order(g) &&
                H.conjugacy_classes()[H.class_index(h)].size() == cls_size)
                cand[i].push_back(h);
    }
    return cand;
}

}  // namespace

std::vector<Automorphism> automorphism_group(const FiniteGroup& G) {
    if (G.order() == 1) return {Automorphism{{0}}};
    auto gens = minimal_generating_tuple(G);
    auto cand = image_candidates(G, G, gens);
    std::vector<Automorphism> result;
    map_search(G, G, gens, cand, [&](const std::vector<Elem>& img) {
        result.push_back(Automorphism{img});
        return true;
    });
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Automorphism> inner_automorphisms(const FiniteGroup& G) {
    std::vector<Automorphism> result;
    for (int g = 0; g < G.order(); ++g) {
        Automorphism a;
        a.perm.resize(G.order());
        for (int x = 0; x < G.order(); ++x) a.perm[x] = G.conj(g, x);
        result.push_back(std::move(a));
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

std::vector<Elem> derived_subgroup(const FiniteGroup& G) {
    std::vector<Elem> comms;
    std::vector<char> seen(G.order(), 0);
    for (int x = 0; x < G.order(); ++x)
        for (int y = 0; y < G.order(); ++y) {
            Elem c = G.commutator(x, y);
            if (!seen[c]) {
                seen[c] = 1;
                comms.push_back(c);
            }
        }
    return subgroup_generated(G, comms);
}

namespace {

// Builds the quotient group table of G by a normal subgroup N (element list).
// Coset of x is represented by its least element.
FiniteGroup quotient_group(const FiniteGroup& G, const std::vector<Elem>& N) {
    const int n = G.order();
    std::vector<char> in(n, 0);
    for (Elem e : N) in[e] = 1;
    std::vector<int> coset(n, -1);
    std::vector<Elem> reps;
    for (int x = 0; x < n; ++x) {
        if (coset[x] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (Elem e : N) coset[G.mul(x, e)] = id;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<Elem> table(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[static_cast<size_t>(a) * q + b] = coset[G.mul(reps[a], reps[b])];
    return FiniteGroup::from_table(std::move(table), G.label() + "/N");
}

}  // namespace

std::vector<int> abelian_invariants(const FiniteGroup& G) {
    FiniteGroup A = quotient_group(G, derived_subgroup(G));
    // The order profile of a finite abelian group determines it: for each
    // prime p, the counts of elements of order dividing p^k give the
    // conjugate of the partition of p-exponents.
    std::vector<int> divisors;
    int n = A.order();
    std::vector<int> primes;
    for (int p = 2, m = n; m > 1; ++p)
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    for (int p : primes) {
        std::vector<int> dim;  // dim[k] = #{i : lambda_i >= k+1}
        long long prev = 1;
        for (int k = 1;; ++k) {
            long long pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            long long cnt = 0;
            for (int x = 0; x < A.order(); ++x)
                if (pk % A.elem_order(x) == 0) ++cnt;
            if (cnt == prev) break;
            int d = 0;
            for (long long t = cnt / prev; t > 1; t /= p) ++d;
            dim.push_back(d);
            prev = cnt;
        }
        // Conjugate partition -> exponents lambda_i; emit p^lambda_i.
        if (!dim.empty()) {
            for (int i = 0; i < dim[0]; ++i) {
                int lambda = 0;
                for (int d : dim)
                    if (d > i) ++lambda;
                int pw = 1;
                for (int j = 0; j < lambda; ++j) pw *= p;
                divisors.push_back(pw);
            }
        }
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

std::uint64_t iso_fingerprint(const FiniteGroup& G) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    };
    std::uint64_t h = mix(0, static_cast<std::uint64_t>(G.order()));
    // Per-class data: (element order, class size, class of the square).
    std::vector<std::uint64_t> feats;
    const auto& classes = G.conjugacy_classes();
    for (const auto& cls : classes) {
        Elem x = cls.front();
        Elem x2 = G.mul(x, x);
        std::uint64_t f = static_cast<std::uint64_t>(G.elem_order(x));
        f = f * 1000003 + cls.size();
        f = f * 1000003 + classes[G.class_index(x2)].size();
        f = f * 1000003 + static_cast<std::uint64_t>(G.elem_order(x2));
        feats.push_back(f);
    }
    std::sort(feats.begin(), feats.end());
    for (auto f : feats) h = mix(h, f);
    h = mix(h, G.center().size());
    h = mix(h, derived_subgroup(G).size());
    for (int d : abelian_invariants(G)) h = mix(h, static_cast<std::uint64_t>(d));
    // Commuting-pair count.
    std::uint64_t commuting = 0;
    for (int x = 0; x < G.order(); ++x)
        for (int y = 0; y < G.order(); ++y)
            if (G.mul(x, y) == G.mul(y, x)) ++commuting;
    h = mix(h, commuting);
    return h;
}

std::optional<std::vector<Elem>> is_isomorphic(const FiniteGroup& G1, const FiniteGroup& G2) {
    if (G1.order() != G2.order()) return std::nullopt;
    if (G1.order() == 1) return std::vector<Elem>{0};
    // Invariant-based early rejection.
    auto profile = [](const FiniteGroup& G) {
        std::vector<std::pair<int, size_t>> p;
        for (const auto& cls : G.conjugacy_classes())
            p.emplace_back(G.elem_order(cls.front()), cls.size());
        std::sort(p.begin(), p.end());
        return p;
    };
    if (profile(G1) != profile(G2)) return std::nullopt;
    if (G1.center().size() != G2.center().size()) return std::nullopt;
    if (abelian_invariants(G1) != abelian_invariants(G2)) return std::nullopt;
    if (iso_fingerprint(G1) != iso_fingerprint(G2)) return std::nullopt;

    auto gens = minimal_generating_tuple(G1);
    auto cand = image_candidates(G1, G2, gens);
    std::optional<std::vector<Elem>> witness;
    map_search(G1, G2, gens, cand, [&](const std::vector<Elem>& img) {
        witness = img;
        return false;  // first hit suffices
    });
    return witness;
}

}  // namespace isoclass
