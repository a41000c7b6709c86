#pragma once

// Generating vectors of a prescribed signature: enumeration, stabilizer
// sets, fixed-point counts, and the combinatorial fixed-point model that
// stands in for the branch fibres of the associated curve.
//
// A generating vector of type (g' | m_1,...,m_r) for a group G is a tuple
// (a_1, b_1, ..., a_{g'}, b_{g'}, c_1, ..., c_r) that generates G, whose
// elliptic entries c_j have the prescribed orders, and which satisfies the
// long relation prod [a_k, b_k] * c_1 ... c_r = 1.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "isoclass/group.hpp"

namespace isoclass {

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class WorkBudgetExceeded : public Error {
public:
    using Error::Error;
};

class GroupMismatch : public Error {
public:
    using Error::Error;
};

class IdentityElement : public Error {
public:
    using Error::Error;
};

class NotCoprime : public Error {
public:
    using Error::Error;
};

class NonIntegralGenus : public Error {
public:
    using Error::Error;
};

/// A signature (g' | m_1,...,m_r): quotient genus plus branching periods.
struct SignatureType {
    int g_prime = 0;
    std::vector<int> periods;  // sorted ascending, each >= 2

    /// Validates and sorts the period list.
    static SignatureType make(int g_prime, std::vector<int> periods);

    int r() const { return static_cast<int>(periods.size()); }

    /// "(1|2,2)" or "(2|-)" for an empty period list.
    std::string to_string() const;

    /// Inverse of to_string; throws ParseError-compatible Error on bad input.
    static SignatureType parse(const std::string& text);

    bool operator==(const SignatureType& o) const {
        return g_prime == o.g_prime && periods == o.periods;
    }
    bool operator<(const SignatureType& o) const {
        if (g_prime != o.g_prime) return g_prime < o.g_prime;
        return periods < o.periods;
    }
};

/// Ordered mode requires order(c_j) = m_j positionally; unordered mode only
/// requires the multiset of orders to equal the multiset of periods.
enum class Mode { ordered, unordered };

/// A generating vector; `hyperbolic` holds a_1, b_1, ..., a_{g'}, b_{g'} and
/// `elliptic` holds c_1, ..., c_r.
struct GeneratingVector {
    const FiniteGroup* group = nullptr;
    SignatureType sig;
    std::vector<Elem> hyperbolic;
    std::vector<Elem> elliptic;

    /// Concatenation hyperbolic + elliptic.
    std::vector<Elem> tuple() const;

    /// Cache/golden-file form: `label:sig:[i1,i2,...]`.
    std::string serialize() const;

    bool operator==(const GeneratingVector& o) const {
        return hyperbolic == o.hyperbolic && elliptic == o.elliptic;
    }
    bool operator<(const GeneratingVector& o) const { return tuple() < o.tuple(); }
};

/// Caps the number of backtracking nodes an enumeration may visit.
struct WorkBudget {
    long long max_nodes = 500'000'000;
};

/// Checks the three generating-vector conditions for an explicit tuple of
/// length 2 g' + r (throws LengthMismatch otherwise).
bool is_generating_vector(const FiniteGroup& G, const SignatureType& sig,
                          const std::vector<Elem>& tuple, Mode mode);

/// Streams every generating vector of the given type exactly once, in
/// lexicographic order of the concatenated element tuple. The consumer
/// returns false to stop early. Returns the number of vectors emitted before
/// stopping. Throws WorkBudgetExceeded (naming the bound) if the backtracking
/// exceeds budget.max_nodes nodes.
long long enumerate_generating_vectors(const FiniteGroup& G, const SignatureType& sig, Mode mode,
                                       const std::function<bool(const GeneratingVector&)>& consume,
                                       const WorkBudget& budget = {});

/// Convenience: materializes the full list.
std::vector<GeneratingVector> all_generating_vectors(const FiniteGroup& G,
                                                     const SignatureType& sig, Mode mode,
                                                     const WorkBudget& budget = {});

/// True iff at least one generating vector of this type exists (short
/// circuits at the first hit).
bool exists_admissible_epimorphism(const FiniteGroup& G, const SignatureType& sig,
                                   const WorkBudget& budget = {});

/// Sigma(V): the union over all conjugates of all powers of all elliptic
/// entries (sorted element list; always contains the identity).
std::vector<Elem> stabilizer_set(const GeneratingVector& V);

/// True iff Sigma(V1) and Sigma(V2) meet only in the identity. Both vectors
/// must reference the same group object (GroupMismatch).
bool are_disjoint(const GeneratingVector& V1, const GeneratingVector& V2);

/// |Fix_C(c)|: number of fixed points of c != 1 on the curve associated to
/// V, via the normalizer formula. Throws IdentityElement.
int fix_count(const GeneratingVector& V, Elem c);

/// |Fix_{C,q}(c)|: fixed points of c whose local rotation exponent is q
/// (gcd(q, order(c)) = 1; NotCoprime otherwise). Summing over all valid q
/// recovers fix_count.
int fix_count_rotation(const GeneratingVector& V, Elem c, int q);

/// One point of the combinatorial model: the left coset g<c_i> over branch
/// index i, with stabilizer g<c_i>g^-1 generated by s = g c_i g^-1, which
/// acts with rotation exponent +1.
struct FixedPoint {
    int branch_index = 0;
    Elem coset_rep = 0;
    Elem stabilizer_gen = 0;
    int period = 1;
};

struct FixedPointModel {
    std::vector<FixedPoint> points;
};

/// Builds the model with one point per (branch index, left coset of <c_i>).
FixedPointModel fixed_point_model(const GeneratingVector& V);

/// Genus of the covering curve from the Riemann-Hurwitz relation
/// 2g - 2 = |G| (2g' - 2 + sum (1 - 1/m_i)); throws Error if not a
/// non-negative integer.
int covering_genus(int group_order, const SignatureType& sig);

}  // namespace isoclass
