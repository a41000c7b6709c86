#include "isoclass/genvec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace isoclass {

SignatureType SignatureType::make(int g_prime, std::vector<int> periods) {
    if (g_prime < 0) throw Error("SignatureType: g' must be >= 0");
    for (int m : periods)
        if (m < 2) throw Error("SignatureType: periods must be >= 2");
    std::sort(periods.begin(), periods.end());
    SignatureType s;
    s.g_prime = g_prime;
    s.periods = std::move(periods);
    return s;
}

std::string SignatureType::to_string() const {
    std::string out = "(" + std::to_string(g_prime) + "|";
    if (periods.empty()) {
        out += "-";
    } else {
        for (size_t i = 0; i < periods.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(periods[i]);
        }
    }
    return out + ")";
}

SignatureType SignatureType::parse(const std::string& text) {
    if (text.size() < 4 || text.front() != '(' || text.back() != ')')
        throw Error("bad signature: " + text);
    std::string body = text.substr(1, text.size() - 2);
    size_t bar = body.find('|');
    if (bar == std::string::npos) throw Error("bad signature: " + text);
    int gp = 0;
    std::vector<int> periods;
    try {
        gp = std::stoi(body.substr(0, bar));
        std::string rest = body.substr(bar + 1);
        if (rest != "-") {
            std::istringstream in(rest);
            std::string tok;
            while (std::getline(in, tok, ',')) periods.push_back(std::stoi(tok));
        }
    } catch (const std::exception&) {
        throw Error("bad signature: " + text);
    }
    return make(gp, std::move(periods));
}

std::vector<Elem> GeneratingVector::tuple() const {
    std::vector<Elem> out = hyperbolic;
    out.insert(out.end(), elliptic.begin(), elliptic.end());
    return out;
}

std::string GeneratingVector::serialize() const {
    std::string out = (group ? group->label() : "?") + ":" + sig.to_string() + ":[";
    std::vector<Elem> t = tuple();
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t[i]);
    }
    return out + "]";
}

namespace {

/// Product of the hyperbolic commutators followed by a c-prefix.
Elem relation_prefix(const FiniteGroup& G, const std::vector<Elem>& hyp,
                     const std::vector<Elem>& ell, size_t ell_count) {
    Elem p = 0;
    for (size_t k = 0; k < hyp.size(); k += 2)
        p = G.mul(p, G.commutator(hyp[k], hyp[k + 1]));
    for (size_t j = 0; j < ell_count; ++j) p = G.mul(p, ell[j]);
    return p;
}

}  // namespace

bool is_generating_vector(const FiniteGroup& G, const SignatureType& sig,
                          const std::vector<Elem>& tuple, Mode mode) {
    const int r = sig.r();
    if (static_cast<int>(tuple.size()) != 2 * sig.g_prime + r)
        throw LengthMismatch("tuple has " + std::to_string(tuple.size()) + " entries, expected " +
                             std::to_string(2 * sig.g_prime + r));
    std::vector<Elem> hyp(tuple.begin(), tuple.begin() + 2 * sig.g_prime);
    std::vector<Elem> ell(tuple.begin() + 2 * sig.g_prime, tuple.end());

    if (mode == Mode::ordered) {
        for (int j = 0; j < r; ++j)
            if (G.elem_order(ell[j]) != sig.periods[j]) return false;
    } else {
        std::multiset<int> want(sig.periods.begin(), sig.periods.end()), got;
        for (Elem c : ell) got.insert(G.elem_order(c));
        if (want != got) return false;
    }
    if (relation_prefix(G, hyp, ell, ell.size()) != 0) return false;
    return generates(G, tuple);
}

long long enumerate_generating_vectors(const FiniteGroup& G, const SignatureType& sig, Mode mode,
                                       const std::function<bool(const GeneratingVector&)>& consume,
                                       const WorkBudget& budget) {
    const int n = G.order();
    const int gp = sig.g_prime;
    const int r = sig.r();

    // Elements grouped by order, ascending, for the elliptic positions.
    std::map<int, std::vector<Elem>> by_order;
    for (Elem x = 0; x < n; ++x) by_order[G.elem_order(x)].push_back(x);

    long long nodes = 0;
    long long emitted = 0;
    bool stopped = false;
    std::vector<Elem> hyp(2 * gp), ell(r);
    std::multiset<int> remaining(sig.periods.begin(), sig.periods.end());

    auto tick = [&] {
        if (++nodes > budget.max_nodes)
            throw WorkBudgetExceeded("enumeration exceeded " + std::to_string(budget.max_nodes) +
                                     " nodes");
    };

    // Emits the current tuple if it generates.
    auto leaf = [&](Elem /*prefix_done*/) {
        std::vector<Elem> t = hyp;
        t.insert(t.end(), ell.begin(), ell.end());
        if (!generates(G, t)) return;
        GeneratingVector V;
        V.group = &G;
        V.sig = sig;
        V.hyperbolic = hyp;
        V.elliptic = ell;
        ++emitted;
        if (!consume(V)) stopped = true;
    };

    // Elliptic positions: the last entry is forced by the long relation.
    std::function<void(int, Elem)> rec_ell = [&](int j, Elem prefix) {
        if (stopped) return;
        if (r == 0) {
            if (prefix == 0) leaf(prefix);
            return;
        }
        if (j == r - 1) {
            tick();
            Elem last = G.inv(prefix);
            int o = G.elem_order(last);
            bool ok = (mode == Mode::ordered) ? (o == sig.periods[j])
                                              : (remaining.count(o) > 0);
            if (!ok) return;
            ell[j] = last;
            leaf(0);
            return;
        }
        if (mode == Mode::ordered) {
            for (Elem c : by_order.count(sig.periods[j]) ? by_order[sig.periods[j]]
                                                         : std::vector<Elem>{}) {
                if (stopped) return;
                tick();
                ell[j] = c;
                rec_ell(j + 1, G.mul(prefix, c));
            }
        } else {
            // Candidates ascending by element index across all still-needed
            // orders, to keep global lexicographic order.
            for (Elem c = 0; c < n; ++c) {
                if (stopped) return;
                int o = G.elem_order(c);
                auto it = remaining.find(o);
                if (it == remaining.end()) continue;
                tick();
                ell[j] = c;
                remaining.erase(it);
                rec_ell(j + 1, G.mul(prefix, c));
                remaining.insert(o);
            }
        }
    };

    std::function<void(int)> rec_hyp = [&](int k) {
        if (stopped) return;
        if (k == 2 * gp) {
            Elem prefix = 0;
            for (int i = 0; i < gp; ++i) prefix = G.mul(prefix, G.commutator(hyp[2 * i], hyp[2 * i + 1]));
            rec_ell(0, prefix);
            return;
        }
        for (Elem x = 0; x < n; ++x) {
            if (stopped) return;
            tick();
            hyp[k] = x;
            rec_hyp(k + 1);
        }
    };

    rec_hyp(0);
    return emitted;
}

std::vector<GeneratingVector> all_generating_vectors(const FiniteGroup& G,
                                                     const SignatureType& sig, Mode mode,
                                                     const WorkBudget& budget) {
    std::vector<GeneratingVector> out;
    enumerate_generating_vectors(
        G, sig, mode,
        [&](const GeneratingVector& V) {
            out.push_back(V);
            return true;
        },
        budget);
    return out;
}

bool exists_admissible_epimorphism(const FiniteGroup& G, const SignatureType& sig,
                                   const WorkBudget& budget) {
    bool found = false;
    enumerate_generating_vectors(
        G, sig, Mode::unordered,
        [&](const GeneratingVector&) {
            found = true;
            return false;
        },
        budget);
    return found;
}

std::vector<Elem> stabilizer_set(const GeneratingVector& V) {
    const FiniteGroup& G = *V.group;
    std::set<Elem> sigma{0};
    for (Elem c : V.elliptic) {
        Elem p = c;
        while (p != 0) {
            for (Elem h = 0; h < G.order(); ++h) sigma.insert(G.conj(h, p));
            p = G.mul(p, c);
        }
    }
    return {sigma.begin(), sigma.end()};
}

bool are_disjoint(const GeneratingVector& V1, const GeneratingVector& V2) {
    if (V1.group != V2.group)
        throw GroupMismatch("are_disjoint: vectors over different group objects");
    std::vector<Elem> s1 = stabilizer_set(V1), s2 = stabilizer_set(V2);
    std::vector<Elem> meet;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(meet));
    return meet == std::vector<Elem>{0};
}

namespace {

/// True iff <x> and <y> are conjugate subgroups (both of order m).
bool cyclic_subgroups_conjugate(const FiniteGroup& G, Elem x, Elem y, int m) {
    for (int j = 1; j < std::max(m, 2); ++j) {
        if (std::gcd(j, m) != 1) continue;
        if (G.class_index(x) == G.class_index(G.power(y, j))) return true;
    }
    return false;
}

/// Common machinery for the two fixed-point counts: `weight` of |N| or |C|
/// times sum of 1/m_i over branch indices passing `match`.
int fix_sum(const GeneratingVector& V, long long weight,
            const std::function<bool(int)>& match) {
    long long L = 1;
    for (int m : V.sig.periods) L = std::lcm(L, static_cast<long long>(m));
    long long total = 0;
    for (int i = 0; i < V.sig.r(); ++i)
        if (match(i)) total += weight * (L / V.sig.periods[i]);
    if (total % L != 0) throw Error("fix count is not an integer");
    return static_cast<int>(total / L);
}

}  // namespace

int fix_count(const GeneratingVector& V, Elem c) {
    if (c == 0) throw IdentityElement("fix_count: c must not be the identity");
    const FiniteGroup& G = *V.group;
    const int m = G.elem_order(c);
    std::vector<Elem> cyc;
    for (Elem p = c; p != 0; p = G.mul(p, c)) cyc.push_back(p);
    cyc.push_back(0);
    std::sort(cyc.begin(), cyc.end());
    long long nn = static_cast<long long>(normalizer(G, cyc).size());
    return fix_sum(V, nn, [&](int i) {
        int mi = V.sig.periods[i];
        if (mi % m != 0) return false;
        return cyclic_subgroups_conjugate(G, c, G.power(V.elliptic[i], mi / m), m);
    });
}

int fix_count_rotation(const GeneratingVector& V, Elem c, int q) {
    if (c == 0) throw IdentityElement("fix_count_rotation: c must not be the identity");
    const FiniteGroup& G = *V.group;
    const int m = G.elem_order(c);
    if (std::gcd(q, m) != 1) throw NotCoprime("fix_count_rotation: gcd(q, ord c) != 1");
    long long cc = static_cast<long long>(centralizer(G, c).size());
    return fix_sum(V, cc, [&](int i) {
        int mi = V.sig.periods[i];
        if (mi % m != 0) return false;
        Elem target = G.power(V.elliptic[i], static_cast<long long>(q) * (mi / m));
        return G.class_index(c) == G.class_index(target);
    });
}

FixedPointModel fixed_point_model(const GeneratingVector& V) {
    const FiniteGroup& G = *V.group;
    FixedPointModel model;
    for (int i = 0; i < V.sig.r(); ++i) {
        Elem ci = V.elliptic[i];
        int mi = V.sig.periods[i];
        std::vector<char> seen(G.order(), 0);
        for (Elem g = 0; g < G.order(); ++g) {
            if (seen[g]) continue;
            // Mark the whole left coset g<c_i>; g is its least representative.
            Elem p = 0;
            do {
                seen[G.mul(g, p)] = 1;
                p = G.mul(p, ci);
            } while (p != 0);
            model.points.push_back({i, g, G.conj(g, ci), mi});
        }
    }
    return model;
}

int covering_genus(int group_order, const SignatureType& sig) {
    // 2g - 2 = |G| (2g' - 2 + sum (1 - 1/m_i)), computed exactly over a
    // common denominator.
    long long L = 1;
    for (int m : sig.periods) L = std::lcm(L, static_cast<long long>(m));
    long long rhs = static_cast<long long>(2 * sig.g_prime - 2) * L;
    for (int m : sig.periods) rhs += L - L / m;
    rhs *= group_order;
    if (rhs % (2 * L) != 0) throw NonIntegralGenus("Riemann-Hurwitz genus is not an integer");
    long long g = rhs / (2 * L) + 1;
    if (g < 0) throw NonIntegralGenus("Riemann-Hurwitz genus is negative");
    return static_cast<int>(g);
}

}  // namespace isoclass
