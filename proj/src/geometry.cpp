#include "isoclass/geometry.hpp"

#include "isoclass/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace isoclass {

std::vector<int> hj_expansion(int n, int q) {
    if (n < 2 || q <= 0 || q >= n || std::gcd(n, q) != 1)
        throw BadPair("no Hirzebruch-Jung expansion for " + std::to_string(n) + "/" +
                      std::to_string(q));
    std::vector<int> bs;
    while (q > 0) {
        int b = (n + q - 1) / q;  // ceil(n/q)
        bs.push_back(b);
        int next_q = b * q - n;   // n/q = b - next_q/q
        n = q;
        q = next_q;
    }
    return bs;
}

QuotientSingularity QuotientSingularity::make(int n, int q) {
    QuotientSingularity s;
    s.n = n;
    s.q = q;
    s.hj = hj_expansion(n, q);  // validates (n, q)
    s.q_prime = 0;
    for (int c = 1; c < n; ++c)
        if ((static_cast<long long>(q) * c) % n == 1) {
            s.q_prime = c;
            break;
        }
    return s;
}

std::string QuotientSingularity::to_string() const {
    return std::to_string(n) + "/" + std::to_string(q);
}

std::string singularities_to_string(const std::vector<QuotientSingularity>& sings) {
    if (sings.empty()) return "-";
    std::vector<QuotientSingularity> sorted = sings;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (i) out += ',';
        out += sorted[i].to_string();
    }
    return out;
}

SingularityContribution singularity_contribution(const QuotientSingularity& s) {
    SingularityContribution c;
    int sum_b = 0;
    for (int b : s.hj) sum_b += b - 2;
    c.h = Rational(2) - Rational(2 + s.q + s.q_prime, s.n) - Rational(sum_b);
    c.e = Rational(static_cast<long long>(s.hj.size()) + 1) - Rational(1, s.n);
    c.B = c.e + c.e - c.h;
    return c;
}

SurfaceInvariants product_invariants_free(int gC, int gF, int order) {
    if (gC < 2 || gF < 2) throw Error("product invariants need both genera >= 2");
    long long num = static_cast<long long>(gC - 1) * (gF - 1);
    if (num % order != 0)
        throw NonIntegralChi("chi = " + Rational(num, order).to_string() + " is not an integer");
    SurfaceInvariants inv;
    inv.chi = static_cast<int>(num / order);
    inv.K2 = Rational(8 * num, order);
    inv.e = Rational(4 * num, order);
    return inv;
}

int irregularity(const SignatureType& sig1, const SignatureType& sig2) {
    return sig1.g_prime + sig2.g_prime;
}

namespace {

/// Per-model lookup tables for the diagonal G-action on fixed points.
struct ModelIndex {
    FixedPointModel model;
    // point_of[branch][g] = index of the point whose coset contains g, or -1.
    std::vector<std::vector<int>> point_of;
    // mask[p][x] = 1 iff x lies in the cyclic stabilizer <s_p>.
    std::vector<std::vector<char>> mask;
};

ModelIndex build_index(const FiniteGroup& G, const GeneratingVector& V) {
    ModelIndex mi;
    mi.model = fixed_point_model(V);
    mi.point_of.assign(V.sig.r(), std::vector<int>(G.order(), -1));
    mi.mask.resize(mi.model.points.size());
    for (size_t p = 0; p < mi.model.points.size(); ++p) {
        const FixedPoint& P = mi.model.points[p];
        Elem c = V.elliptic[P.branch_index];
        Elem x = P.coset_rep;
        for (int k = 0; k < P.period; ++k) {
            mi.point_of[P.branch_index][x] = static_cast<int>(p);
            x = G.mul(x, c);
        }
        mi.mask[p].assign(G.order(), 0);
        Elem s = 0;
        do {
            mi.mask[p][s] = 1;
            s = G.mul(s, P.stabilizer_gen);
        } while (s != 0);
    }
    return mi;
}

}  // namespace

std::vector<QuotientSingularity> singular_points(const FiniteGroup& G,
                                                 const GeneratingVector& V1,
                                                 const GeneratingVector& V2) {
    if (V1.group != &G || V2.group != &G)
        throw GroupMismatch("vectors must live on the given group");
    ModelIndex m1 = build_index(G, V1);
    ModelIndex m2 = build_index(G, V2);
    size_t n2 = m2.model.points.size();
    std::vector<char> visited(m1.model.points.size() * n2, 0);
    std::vector<QuotientSingularity> out;
    for (size_t p = 0; p < m1.model.points.size(); ++p) {
        const FixedPoint& P = m1.model.points[p];
        for (size_t q = 0; q < n2; ++q) {
            if (visited[p * n2 + q]) continue;
            const FixedPoint& Q = m2.model.points[q];
            // Order of the common stabilizer H = <s_P> cap <s_Q> (cyclic).
            int n = 1;  // identity
            Elem s = P.stabilizer_gen;
            for (int k = 1; k < P.period; ++k, s = G.mul(s, P.stabilizer_gen))
                if (m2.mask[q][s]) ++n;
            if (n == 1) continue;
            // Mark the whole diagonal G-orbit of the pair.
            for (Elem g = 0; g < G.order(); ++g) {
                int pp = m1.point_of[P.branch_index][G.mul(g, P.coset_rep)];
                int qq = m2.point_of[Q.branch_index][G.mul(g, Q.coset_rep)];
                visited[static_cast<size_t>(pp) * n2 + qq] = 1;
            }
            // h generates H and acts with local exponent 1 on the C side.
            Elem h = G.power(P.stabilizer_gen, P.period / n);
            // On the F side h = s_Q^e with e = (|s_Q|/n) v; the type is
            // 1/n(1, v).
            int e = 1;
            Elem t = Q.stabilizer_gen;
            while (t != h) {
                t = G.mul(t, Q.stabilizer_gen);
                ++e;
            }
            int v = e / (Q.period / n);
            out.push_back(QuotientSingularity::make(n, v % n));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int node_count(const FiniteGroup& G, const GeneratingVector& V1, const GeneratingVector& V2) {
    if (V1.group != &G || V2.group != &G)
        throw GroupMismatch("vectors must live on the given group");
    std::vector<Elem> s1 = stabilizer_set(V1);
    std::vector<Elem> s2 = stabilizer_set(V2);
    std::vector<Elem> common;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(common));
    long long total = 0;
    for (Elem c : common) {
        if (c == 0) continue;
        if (G.elem_order(c) != 2)
            throw NonInvolutionStabilizer("common stabilizer element of order " +
                                          std::to_string(G.elem_order(c)));
        total += static_cast<long long>(fix_count(V1, c)) * fix_count(V2, c);
    }
    total *= 2;
    if (total % G.order() != 0) throw Error("node count is not an integer");
    return static_cast<int>(total / G.order());
}

SurfaceInvariants resolved_invariants(int gC, int gF, int order,
                                      const std::vector<QuotientSingularity>& sings) {
    long long num = static_cast<long long>(gC - 1) * (gF - 1);
    Rational K2(8 * num, order);
    Rational e(4 * num, order);
    Rational B_sum(0);
    for (const QuotientSingularity& s : sings) {
        SingularityContribution c = singularity_contribution(s);
        K2 += c.h;
        e += c.e;
        B_sum += c.B;
    }
    Rational chi = (K2 + e) / Rational(12);
    if (!chi.is_integer())
        throw NonIntegralChi("chi = " + chi.to_string() + " is not an integer");
    SurfaceInvariants inv;
    inv.chi = static_cast<int>(chi.as_integer());
    inv.K2 = K2;
    inv.e = e;
    if (inv.chi == 1) {
        Rational alt = Rational(8) - B_sum / Rational(3);
        if (alt != K2)
            throw InconsistentInvariants("K2 = " + K2.to_string() +
                                         " but 8 - B/3 = " + alt.to_string());
        if (e != Rational(12) - K2)
            throw InconsistentInvariants("Noether check failed: e = " + e.to_string());
    }
    if (!K2.is_integer())
        throw NonIntegralK2("K2 = " + K2.to_string() + " is not an integer");
    return inv;
}

std::vector<std::vector<QuotientSingularity>> basket_list(int K2) {
    auto sing = [](int n, int q) { return QuotientSingularity::make(n, q); };
    switch (K2) {
        case 6:
            return {{sing(2, 1), sing(2, 1)}};
        case 5:
            return {{sing(3, 1), sing(3, 2)},
                    {sing(4, 1), sing(4, 1)},
                    {sing(2, 1), sing(2, 1), sing(2, 1)}};
        case 4:
            return {{sing(4, 1), sing(4, 3)},
                    {sing(5, 2), sing(5, 2)},
                    {sing(2, 1), sing(4, 1), sing(4, 1)},
                    {sing(2, 1), sing(2, 1), sing(2, 1), sing(2, 1)}};
        default:
            throw K2OutOfRange("no basket list for K2 = " + std::to_string(K2));
    }
}

bool basket_allowed(int K2, const std::vector<QuotientSingularity>& sings) {
    std::vector<QuotientSingularity> sorted = sings;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& basket : basket_list(K2))
        if (basket == sorted) return true;
    return false;
}

int moduli_dimension(const std::vector<SignatureType>& sigs) {
    int dim = 0;
    for (const SignatureType& sig : sigs) {
        if ((sig.g_prime == 0 && sig.r() < 3) || (sig.g_prime == 1 && sig.r() == 0))
            throw DegenerateSignature("signature " + sig.to_string() +
                                      " has an empty Teichmueller space");
        dim += 3 * sig.g_prime - 3 + sig.r();
    }
    return dim;
}

MixedDatum make_mixed_datum(const FiniteGroup& G, const std::vector<Elem>& subgroup_elems,
                            Elem tau_prime) {
    std::vector<Elem> dedup = subgroup_elems;
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    if (2 * static_cast<int>(dedup.size()) != G.order())
        throw NotIndexTwo("subgroup of order " + std::to_string(dedup.size()) +
                          " has index != 2 in group of order " + std::to_string(G.order()));
    std::vector<Elem> embed;
    FiniteGroup H = subgroup_as_group(G, dedup, &embed, G.label() + "_zero");
    MixedDatum d{&G, std::move(H), std::move(embed), 0, 0, Automorphism{}};
    std::vector<int> idx(G.order(), -1);
    for (size_t i = 0; i < d.embed.size(); ++i) idx[d.embed[i]] = static_cast<int>(i);
    if (idx[tau_prime] >= 0) throw Error("tau_prime lies inside the subgroup");
    d.tau_prime = tau_prime;
    d.tau = idx[G.mul(tau_prime, tau_prime)];
    d.phi.perm.resize(d.G_zero.order());
    for (int i = 0; i < d.G_zero.order(); ++i) d.phi.perm[i] = idx[G.conj(tau_prime, d.embed[i])];
    return d;
}

bool mixed_admissible(const MixedDatum& datum, const GeneratingVector& V_C) {
    if (V_C.group != &datum.G_zero)
        throw GroupMismatch("generating vector must live on the subgroup");
    const FiniteGroup& G = *datum.G;
    const FiniteGroup& H = datum.G_zero;
    // Non-split: no involution of G outside the subgroup.
    std::vector<char> inside(G.order(), 0);
    for (Elem e : datum.embed) inside[e] = 1;
    for (Elem g = 0; g < G.order(); ++g)
        if (!inside[g] && G.elem_order(g) == 2) return false;
    std::vector<Elem> sigma = stabilizer_set(V_C);
    std::vector<char> in_sigma(H.order(), 0);
    for (Elem s : sigma) in_sigma[s] = 1;
    // m1: Sigma_C and phi(Sigma_C) share only the identity.
    for (Elem s : sigma)
        if (s != 0 && in_sigma[datum.phi(s)]) return false;
    // m2: phi(gamma) tau gamma avoids Sigma_C for every gamma.
    for (Elem gamma = 0; gamma < H.order(); ++gamma)
        if (in_sigma[H.mul(H.mul(datum.phi(gamma), datum.tau), gamma)]) return false;
    return true;
}

}  // namespace isoclass
