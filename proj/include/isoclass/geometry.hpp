#pragma once

// Numerical invariants of quotient surfaces: genus arithmetic, cyclic
// quotient singularities with their Hirzebruch-Jung strings, K^2/e/chi
// formulas for the minimal resolution, basket admissibility, moduli
// dimensions, and admissibility of the mixed construction.

#include <string>
#include <vector>

#include "isoclass/genvec.hpp"
#include "isoclass/group.hpp"
#include "isoclass/rational.hpp"

namespace isoclass {

class NonIntegralChi : public Error {
public:
    using Error::Error;
};

class NonIntegralK2 : public Error {
public:
    using Error::Error;
};

class InconsistentInvariants : public Error {
public:
    using Error::Error;
};

class BadPair : public Error {
public:
    using Error::Error;
};

class NonInvolutionStabilizer : public Error {
public:
    using Error::Error;
};

class K2OutOfRange : public Error {
public:
    using Error::Error;
};

class DegenerateSignature : public Error {
public:
    using Error::Error;
};

/// Hirzebruch-Jung continued fraction [b1,...,bk] of n/q with all b_i >= 2:
/// n/q = b1 - 1/(b2 - 1/(... - 1/bk)). Throws BadPair unless 0 < q < n and
/// gcd(n, q) = 1.
std::vector<int> hj_expansion(int n, int q);

/// A cyclic quotient singularity of type 1/n(1,q).
struct QuotientSingularity {
    int n = 2;
    int q = 1;
    int q_prime = 1;      // inverse of q mod n, in [1, n-1]
    std::vector<int> hj;  // continued fraction of n/q

    static QuotientSingularity make(int n, int q);

    /// "n/q" token, e.g. "5/2".
    std::string to_string() const;

    bool operator==(const QuotientSingularity& o) const { return n == o.n && q == o.q; }
    bool operator<(const QuotientSingularity& o) const {
        if (n != o.n) return n < o.n;
        return q < o.q;
    }
};

/// Serialization of a multiset of singularities: sorted "n/q" tokens joined
/// by commas, e.g. "2/1,2/1"; empty multiset gives "-".
std::string singularities_to_string(const std::vector<QuotientSingularity>& sings);

/// Correction terms contributed by one singular point to K^2 (h), to the
/// topological Euler number (e), and the combination B = 2e - h.
struct SingularityContribution {
    Rational h;
    Rational e;
    Rational B;
};

SingularityContribution singularity_contribution(const QuotientSingularity& s);

/// Invariants of a surface: chi = chi(O_S), and exact K^2 and e. The
/// irregularity data p_g, q are -1 when not determined by the computation.
struct SurfaceInvariants {
    int chi = 0;
    Rational K2;
    Rational e;
    int p_g = -1;
    int q = -1;
};

/// chi, K^2 = 8 chi, e = 4 chi of the smooth quotient (C x F)/G of a free
/// action, with chi = (gC-1)(gF-1)/order. Throws NonIntegralChi.
SurfaceInvariants product_invariants_free(int gC, int gF, int order);

/// q(S) = g(C/G) + g(F/G).
int irregularity(const SignatureType& sig1, const SignatureType& sig2);

/// Singular points of T = (C x F)/G for the pair (V1, V2): G-orbits of pairs
/// of fixed points with nontrivial common stabilizer H. For each orbit the
/// generator h of H acting with local exponent 1 on the C-side point acts
/// with some exponent q on the F-side point, giving type 1/|H|(1, q). The
/// result is sorted (multiset order). Empty when the vectors are disjoint.
std::vector<QuotientSingularity> singular_points(const FiniteGroup& G,
                                                 const GeneratingVector& V1,
                                                 const GeneratingVector& V2);

/// Number of nodes of T when every common stabilizer is an involution:
/// (2/|G|) sum over c of |Fix_C(c)| |Fix_F(c)|. Throws
/// NonInvolutionStabilizer when some common stabilizer has order > 2.
int node_count(const FiniteGroup& G, const GeneratingVector& V1, const GeneratingVector& V2);

/// K^2 and e of the minimal resolution S of T: the free-quotient terms plus
/// the singular corrections. chi is recovered from Noether's formula; when
/// chi = 1 the alternative route K^2 = 8 - (1/3) sum B_x is cross-checked
/// (InconsistentInvariants on disagreement). K^2 must come out an integer
/// (NonIntegralK2).
SurfaceInvariants resolved_invariants(int gC, int gF, int order,
                                      const std::vector<QuotientSingularity>& sings);

/// Membership of the singularity multiset in the admissible basket list for
/// the given K^2 (only 4, 5, 6 are in range).
bool basket_allowed(int K2, const std::vector<QuotientSingularity>& sings);

/// The hard-coded basket list for a given K^2 in {4, 5, 6}, as sorted
/// multisets; exposed so the numerical re-derivation can be compared.
std::vector<std::vector<QuotientSingularity>> basket_list(int K2);

/// Sum of 3g' - 3 + r over the signatures; each signature must define a
/// nonempty Teichmueller space (g' = 0 needs r >= 3, g' = 1 needs r >= 1).
int moduli_dimension(const std::vector<SignatureType>& sigs);

/// Data of a mixed construction: an index-two subgroup G_zero of G together
/// with a lift tau_prime of the generator of G/G_zero, tau = tau_prime^2,
/// and the conjugation automorphism phi of G_zero induced by tau_prime.
struct MixedDatum {
    const FiniteGroup* G = nullptr;
    FiniteGroup G_zero;        // the subgroup re-indexed as a group
    std::vector<Elem> embed;   // subgroup element index -> index in G
    Elem tau_prime = 0;        // element of G outside the subgroup
    Elem tau = 0;              // tau_prime^2 as a subgroup index
    Automorphism phi;          // conjugation by tau_prime, subgroup indices
};

/// Builds a MixedDatum; throws NotIndexTwo / NotASubgroup on bad subgroups
/// and Error if tau_prime lies inside the subgroup.
MixedDatum make_mixed_datum(const FiniteGroup& G, const std::vector<Elem>& subgroup_elems,
                            Elem tau_prime);

/// True iff the extension is non-split (no involution of G outside G_zero)
/// and the two free-action conditions hold for Sigma_C = stabilizer_set(V_C):
/// Sigma_C and phi(Sigma_C) meet only in 1, and phi(gamma) tau gamma avoids
/// Sigma_C for every gamma in G_zero. V_C must live on datum.G_zero.
bool mixed_admissible(const MixedDatum& datum, const GeneratingVector& V_C);

}  // namespace isoclass
