#include "isoclass/hurwitz.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace isoclass {

namespace {

struct TupleHash {
    size_t operator()(const std::vector<Elem>& v) const {
        size_t h = 1469598103934665603ULL;
        for (Elem e : v) {
            h ^= static_cast<size_t>(e) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

using TupleSet = std::unordered_set<std::vector<Elem>, TupleHash>;

int move_count_for(Family fam, int r) {
    switch (fam) {
        case Family::sphere: return r - 1;
        case Family::torus1: return 2;
        case Family::torus2: return 4;
        case Family::genus2: return 5;
    }
    return 0;
}

// Applies a move in place on the concatenated tuple (hyperbolic entries
// first, then elliptic). `id` is 1-based.
void apply_move_tuple(const FiniteGroup& G, Family fam, std::vector<Elem>& t, int id,
                      bool inverse) {
    switch (fam) {
        case Family::sphere: {
            // Entries are c_1,...,c_r; braid i swaps positions i-1, i.
            Elem& c = t[id - 1];
            Elem& d = t[id];
            if (!inverse) {
                Elem nc = d;
                Elem nd = G.mul(G.mul(G.inv(d), c), d);
                c = nc;
                d = nd;
            } else {
                Elem nc = G.mul(G.mul(c, d), G.inv(c));
                Elem nd = c;
                c = nc;
                d = nd;
            }
            return;
        }
        case Family::torus1:
        case Family::torus2: {
            Elem& a = t[0];
            Elem& b = t[1];
            if (id == 1) {
                b = inverse ? G.mul(b, G.inv(a)) : G.mul(b, a);
                return;
            }
            if (id == 2) {
                a = inverse ? G.mul(a, b) : G.mul(a, G.inv(b));
                return;
            }
            // torus2 only from here on; c1 = t[2], c2 = t[3].
            Elem& c1 = t[2];
            Elem& c2 = t[3];
            if (id == 3) {
                if (!inverse) {
                    Elem u = G.mul(G.mul(a, b), G.inv(a));
                    c2 = G.mul(G.mul(G.inv(u), c2), u);
                    a = G.mul(G.mul(G.inv(b), c1), a);
                } else {
                    a = G.mul(G.mul(G.inv(c1), b), a);
                    Elem u = G.mul(G.mul(a, b), G.inv(a));
                    c2 = G.mul(G.mul(u, c2), G.inv(u));
                }
                return;
            }
            // id == 4 is an involution.
            Elem a0 = a, b0 = b, c10 = c1, c20 = c2;
            c1 = G.mul(G.mul(G.mul(G.mul(G.inv(b0), G.inv(a0)), c20), a0), b0);
            c2 = G.mul(G.mul(G.mul(G.mul(G.inv(a0), G.inv(b0)), c10), b0), a0);
            a = G.inv(a0);
            b = G.inv(b0);
            return;
        }
        case Family::genus2: {
            Elem& a1 = t[0];
            Elem& b1 = t[1];
            Elem& a2 = t[2];
            Elem& b2 = t[3];
            switch (id) {
                case 1: b1 = inverse ? G.mul(b1, G.inv(a1)) : G.mul(b1, a1); return;
                case 2: a1 = inverse ? G.mul(a1, b1) : G.mul(a1, G.inv(b1)); return;
                case 3: a2 = inverse ? G.mul(a2, b2) : G.mul(a2, G.inv(b2)); return;
                case 4: b2 = inverse ? G.mul(b2, G.inv(a2)) : G.mul(b2, a2); return;
                case 5: {
                    // x = b2^-1 a1 b1 a1^-1 is the same before and after the
                    // move, which yields the closed-form inverse.
                    Elem x = G.mul(G.mul(G.mul(G.inv(b2), a1), b1), G.inv(a1));
                    if (!inverse) {
                        a1 = G.mul(a1, G.inv(x));
                        b1 = G.mul(G.mul(x, b1), G.inv(x));
                        a2 = G.mul(x, a2);
                    } else {
                        a1 = G.mul(a1, x);
                        b1 = G.mul(G.mul(G.inv(x), b1), x);
                        a2 = G.mul(G.inv(x), a2);
                    }
                    return;
                }
            }
            return;
        }
    }
}

void apply_aut_tuple(const Automorphism& phi, std::vector<Elem>& t) {
    for (Elem& e : t) e = phi.perm[e];
}

// BFS closure of `start` under moves (both directions) and the given
// automorphisms, applied entrywise.
TupleSet orbit_tuples(const FiniteGroup& G, Family fam, int nmoves,
                      const std::vector<Elem>& start, const std::vector<Automorphism>& auts,
                      long long max_orbit) {
    TupleSet seen;
    seen.insert(start);
    std::deque<std::vector<Elem>> frontier{start};
    auto push = [&](std::vector<Elem>&& cand) {
        if (seen.insert(cand).second) {
            if (static_cast<long long>(seen.size()) > max_orbit) {
                throw OrbitBudgetExceeded("orbit exceeded budget of " +
                                          std::to_string(max_orbit) + " elements");
            }
            frontier.push_back(std::move(cand));
        }
    };
    while (!frontier.empty()) {
        std::vector<Elem> cur = std::move(frontier.front());
        frontier.pop_front();
        for (int id = 1; id <= nmoves; ++id) {
            for (bool inverse : {false, true}) {
                std::vector<Elem> next = cur;
                apply_move_tuple(G, fam, next, id, inverse);
                push(std::move(next));
            }
        }
        for (const Automorphism& phi : auts) {
            std::vector<Elem> next = cur;
            apply_aut_tuple(phi, next);
            push(std::move(next));
        }
    }
    return seen;
}

std::vector<Automorphism> auts_for_spec(const FiniteGroup& G, const ActionSpec& spec) {
    if (spec.include_aut) return automorphism_group(G);
    if (spec.include_inner) return inner_automorphisms(G);
    return {};
}

GeneratingVector vector_from_tuple(const FiniteGroup& G, const SignatureType& sig,
                                   const std::vector<Elem>& t) {
    GeneratingVector V;
    V.group = &G;
    V.sig = sig;
    V.hyperbolic.assign(t.begin(), t.begin() + 2 * sig.g_prime);
    V.elliptic.assign(t.begin() + 2 * sig.g_prime, t.end());
    return V;
}

Mode mode_for(const SignatureType& sig) {
    return sig.g_prime == 0 ? Mode::unordered : Mode::ordered;
}

// Orbit partition of the full vector set under moves + explicit
// automorphisms. Sweeping the lexicographically sorted enumeration makes
// each first-unvisited tuple the lexicographic minimum of its orbit.
OrbitPartition partition_impl(const FiniteGroup& G, const SignatureType& sig, Family fam,
                              const std::vector<Automorphism>& auts,
                              const WorkBudget& enum_budget, const OrbitBudget& orbit_budget) {
    std::vector<std::vector<Elem>> all;
    enumerate_generating_vectors(
        G, sig, mode_for(sig),
        [&](const GeneratingVector& V) {
            all.push_back(V.tuple());
            return true;
        },
        enum_budget);
    int nmoves = move_count_for(fam, sig.r());
    TupleSet visited;
    OrbitPartition part;
    for (const auto& t : all) {
        if (visited.count(t)) continue;
        TupleSet orb = orbit_tuples(G, fam, nmoves, t, auts, orbit_budget.max_orbit);
        for (const auto& m : orb) visited.insert(m);
        part.representatives.push_back(vector_from_tuple(G, sig, t));
        part.orbit_sizes.push_back(static_cast<long long>(orb.size()));
        part.total += static_cast<long long>(orb.size());
    }
    return part;
}

}  // namespace

Family family_of(const SignatureType& sig) {
    if (sig.g_prime == 0 && sig.r() >= 1) return Family::sphere;
    if (sig.g_prime == 1 && sig.r() == 1) return Family::torus1;
    if (sig.g_prime == 1 && sig.r() == 2 && sig.periods[0] == sig.periods[1])
        return Family::torus2;
    if (sig.g_prime == 2 && sig.r() == 0) return Family::genus2;
    throw BadMoveForFamily("no move list for signature " + sig.to_string());
}

int move_count(const SignatureType& sig) { return move_count_for(family_of(sig), sig.r()); }

GeneratingVector apply_move(const GeneratingVector& V, int move_id, bool inverse) {
    Family fam = family_of(V.sig);
    int nmoves = move_count_for(fam, V.sig.r());
    if (move_id < 1 || move_id > nmoves) {
        throw BadMoveForFamily("move id " + std::to_string(move_id) + " out of range for " +
                               V.sig.to_string() + " (have " + std::to_string(nmoves) + ")");
    }
    std::vector<Elem> t = V.tuple();
    apply_move_tuple(*V.group, fam, t, move_id, inverse);
    return vector_from_tuple(*V.group, V.sig, t);
}

Orbit orbit(const FiniteGroup& G, const GeneratingVector& V, const ActionSpec& spec,
            const OrbitBudget& budget) {
    Family fam = family_of(V.sig);
    if (fam != spec.family) throw BadMoveForFamily("action family does not match signature");
    TupleSet seen = orbit_tuples(G, fam, move_count_for(fam, V.sig.r()), V.tuple(),
                                 auts_for_spec(G, spec), budget.max_orbit);
    Orbit out;
    out.elements.assign(seen.begin(), seen.end());
    std::sort(out.elements.begin(), out.elements.end());
    out.canonical = out.elements.front();
    return out;
}

OrbitPartition orbit_representatives(const FiniteGroup& G, const SignatureType& sig,
                                     const ActionSpec& spec, const WorkBudget& enum_budget,
                                     const OrbitBudget& orbit_budget) {
    Family fam = family_of(sig);
    if (fam != spec.family) throw BadMoveForFamily("action family does not match signature");
    return partition_impl(G, sig, fam, auts_for_spec(G, spec), enum_budget, orbit_budget);
}

ComponentCount component_count_unmixed(const FiniteGroup& G, const SignatureType& sig1,
                                       const SignatureType& sig2, Policy policy,
                                       const WorkBudget& enum_budget,
                                       const OrbitBudget& orbit_budget) {
    Family fam1 = family_of(sig1);
    Family fam2 = family_of(sig2);
    int n1 = move_count_for(fam1, sig1.r());
    int n2 = move_count_for(fam2, sig2.r());
    std::vector<Automorphism> auts = automorphism_group(G);
    std::vector<Automorphism> inner = inner_automorphisms(G);

    // Stage 1: left representatives under moves + Aut(G), right
    // representatives under moves only.
    OrbitPartition left = partition_impl(G, sig1, fam1, auts, enum_budget, orbit_budget);
    OrbitPartition right = partition_impl(G, sig2, fam2, {}, enum_budget, orbit_budget);

    // Canonical form of each right representative under moves + Aut(G)
    // (its H2-orbit), computed once.
    std::vector<std::vector<Elem>> h2_canon(right.representatives.size());
    for (size_t j = 0; j < right.representatives.size(); ++j) {
        TupleSet h2 = orbit_tuples(G, fam2, n2, right.representatives[j].tuple(), auts,
                                   orbit_budget.max_orbit);
        h2_canon[j] = *std::min_element(h2.begin(), h2.end());
    }

    ComponentCount out;
    for (const GeneratingVector& V1 : left.representatives) {
        // Compatible right representatives, grouped by their H2-orbit.
        std::map<std::vector<Elem>, std::vector<const GeneratingVector*>> h2_groups;
        for (size_t j = 0; j < right.representatives.size(); ++j) {
            const GeneratingVector& V2 = right.representatives[j];
            if (!are_disjoint(V1, V2)) continue;
            h2_groups[h2_canon[j]].push_back(&V2);
        }
        for (const auto& [canon, members] : h2_groups) {
            if (members.size() == 1) {
                out.n += 1;
                out.certificate.push_back("counted left=" + V1.serialize() + " right=" +
                                          members[0]->serialize() +
                                          " :: unique right class under moves+Aut");
                continue;
            }
            if (policy == Policy::appendix) {
                out.n += 1;
                std::string line = "counted left=" + V1.serialize() + " :: merged " +
                                   std::to_string(members.size()) +
                                   " right move-orbits sharing one moves+Aut orbit";
                out.certificate.push_back(line);
                continue;
            }
            // Theorem policy: distinct move-orbits on the right inside one
            // moves+Aut orbit are ambiguous. The pair action factorizes:
            // moves commute with entrywise automorphisms, stabilizer sets
            // are conjugation-closed, and the simultaneous automorphisms
            // normalize the per-side moves+Inn factors, so every group
            // element is (per-side part) o (one simultaneous automorphism).
            // Two pairs sharing the left vector are therefore equivalent
            // iff some automorphism keeps the left vector inside its
            // moves+Inn orbit while carrying one right moves+Inn orbit to
            // the other.
            std::vector<Elem> t1 = V1.tuple();
            TupleSet left_orbit =
                orbit_tuples(G, fam1, n1, t1, inner, orbit_budget.max_orbit);
            std::vector<int> parent(members.size());
            for (size_t j = 0; j < members.size(); ++j) parent[j] = static_cast<int>(j);
            std::function<int(int)> find = [&](int x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
            std::map<std::vector<Elem>, int> owner;  // right tuple -> member index
            for (size_t j = 0; j < members.size(); ++j) {
                TupleSet orb = orbit_tuples(G, fam2, n2, members[j]->tuple(), inner,
                                            orbit_budget.max_orbit);
                for (const auto& t : orb) {
                    auto [it, inserted] = owner.emplace(t, static_cast<int>(j));
                    if (!inserted) unite(static_cast<int>(j), it->second);
                }
            }
            for (const Automorphism& phi : auts) {
                std::vector<Elem> l = t1;
                apply_aut_tuple(phi, l);
                if (!left_orbit.count(l)) continue;
                for (size_t j = 0; j < members.size(); ++j) {
                    std::vector<Elem> r = members[j]->tuple();
                    apply_aut_tuple(phi, r);
                    auto it = owner.find(r);
                    if (it != owner.end()) unite(static_cast<int>(j), it->second);
                }
            }
            int classes = 0;
            for (size_t j = 0; j < members.size(); ++j)
                if (find(static_cast<int>(j)) == static_cast<int>(j)) ++classes;
            out.n += classes;
            out.certificate.push_back(
                "escalated left=" + V1.serialize() + " :: " + std::to_string(members.size()) +
                " ambiguous rights -> " + std::to_string(classes) +
                " classes via the factored pair action");
        }
    }
    return out;
}

int component_count_mixed(const FiniteGroup& G, const std::vector<Elem>& G_zero,
                          const SignatureType& sig, const WorkBudget& enum_budget,
                          const OrbitBudget& orbit_budget) {
    std::vector<Elem> dedup = G_zero;
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    if (2 * static_cast<int>(dedup.size()) != G.order()) {
        throw NotIndexTwo("subgroup of order " + std::to_string(dedup.size()) +
                          " has index != 2 in group of order " + std::to_string(G.order()));
    }
    std::vector<Elem> elems;
    FiniteGroup H0 = subgroup_as_group(G, dedup, &elems, G.label() + "_zero");
    int h = H0.order();
    std::vector<int> idx(G.order(), -1);
    for (int i = 0; i < h; ++i) idx[elems[i]] = i;

    // Restrictions to the subgroup of the automorphisms of G preserving it.
    std::set<std::vector<Elem>> restrictions;
    for (const Automorphism& phi : automorphism_group(G)) {
        bool preserves = true;
        for (Elem e : elems) {
            if (idx[phi.perm[e]] < 0) {
                preserves = false;
                break;
            }
        }
        if (!preserves) continue;
        std::vector<Elem> perm(h);
        for (int i = 0; i < h; ++i) perm[i] = idx[phi.perm[elems[i]]];
        restrictions.insert(std::move(perm));
    }
    std::vector<Automorphism> auts;
    for (const auto& p : restrictions) auts.push_back(Automorphism{p});

    Family fam = family_of(sig);
    OrbitPartition part = partition_impl(H0, sig, fam, auts, enum_budget, orbit_budget);
    return static_cast<int>(part.representatives.size());
}

long long count_compatible_pairs(const FiniteGroup& G, const SignatureType& sig1,
                                 const SignatureType& sig2, const WorkBudget& enum_budget) {
    auto sigma_counts = [&](const SignatureType& sig) {
        std::map<std::vector<Elem>, long long> counts;
        if (sig.r() == 0) {
            // No elliptic entries: every vector has trivial stabilizer set.
            long long n = enumerate_generating_vectors(
                G, sig, mode_for(sig), [](const GeneratingVector&) { return true; },
                enum_budget);
            if (n > 0) counts[{0}] = n;
            return counts;
        }
        enumerate_generating_vectors(
            G, sig, mode_for(sig),
            [&](const GeneratingVector& V) {
                counts[stabilizer_set(V)] += 1;
                return true;
            },
            enum_budget);
        return counts;
    };
    auto c1 = sigma_counts(sig1);
    auto c2 = sigma_counts(sig2);
    long long total = 0;
    for (const auto& [s1, n1] : c1) {
        for (const auto& [s2, n2] : c2) {
            // Both sorted sets contain the identity 0; disjoint means no
            // further common element.
            size_t i = 1, j = 1;
            bool disjoint = true;
            while (i < s1.size() && j < s2.size()) {
                if (s1[i] == s2[j]) {
                    disjoint = false;
                    break;
                }
                if (s1[i] < s2[j]) ++i;
                else ++j;
            }
            if (disjoint) total += n1 * n2;
        }
    }
    return total;
}

void write_orbit_cache(const std::string& path, const FiniteGroup& G, const SignatureType& sig,
                       const std::string& policy_tag, const OrbitPartition& part) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open cache file for writing: " + path);
    out << "# isoclass orbit cache\n";
    out << "group=" << G.label() << " sig=" << sig.to_string() << " policy=" << policy_tag
        << " table_hash=" << G.table_hash() << " orbits=" << part.representatives.size()
        << " total=" << part.total << "\n";
    for (size_t i = 0; i < part.representatives.size(); ++i) {
        out << part.representatives[i].serialize() << ";" << part.orbit_sizes[i] << "\n";
    }
}

std::optional<OrbitPartition> read_orbit_cache(const std::string& path, const FiniteGroup& G,
                                               const SignatureType& sig,
                                               const std::string& policy_tag) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != "# isoclass orbit cache") return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    std::string expected_prefix = "group=" + G.label() + " sig=" + sig.to_string() +
                                  " policy=" + policy_tag +
                                  " table_hash=" + std::to_string(G.table_hash()) + " orbits=";
    if (line.rfind(expected_prefix, 0) != 0) return std::nullopt;
    size_t total_pos = line.find(" total=");
    if (total_pos == std::string::npos) return std::nullopt;
    size_t norbits = std::stoull(line.substr(expected_prefix.size()));
    OrbitPartition part;
    part.total = std::stoll(line.substr(total_pos + 7));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t semi = line.rfind(';');
        size_t lb = line.rfind('[');
        size_t rb = line.rfind(']');
        if (semi == std::string::npos || lb == std::string::npos || rb == std::string::npos ||
            rb > semi) {
            return std::nullopt;
        }
        std::vector<Elem> t;
        std::stringstream body(line.substr(lb + 1, rb - lb - 1));
        std::string tok;
        while (std::getline(body, tok, ',')) {
            if (!tok.empty()) t.push_back(std::stoi(tok));
        }
        if (static_cast<int>(t.size()) != 2 * sig.g_prime + sig.r()) return std::nullopt;
        part.representatives.push_back(vector_from_tuple(G, sig, t));
        part.orbit_sizes.push_back(std::stoll(line.substr(semi + 1)));
    }
    if (part.representatives.size() != norbits) return std::nullopt;
    long long sum = 0;
    for (long long s : part.orbit_sizes) sum += s;
    if (sum != part.total) return std::nullopt;
    return part;
}

}  // namespace isoclass
