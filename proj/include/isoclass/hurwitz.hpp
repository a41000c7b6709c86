#pragma once

// Hurwitz moves per signature family, orbit computation over generating
// vectors, and the two-stage component-counting algorithm.
//
// The mapping class group of the quotient orbifold acts on generating
// vectors through finitely many explicit moves; orbits under the moves
// (optionally combined with inner or all automorphisms of the group)
// correspond to connected components of the relevant moduli space.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoclass/genvec.hpp"
#include "isoclass/group.hpp"

namespace isoclass {

class BadMoveForFamily : public Error {
public:
    using Error::Error;
};

class OrbitBudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotIndexTwo : public Error {
public:
    using Error::Error;
};

/// Signature families with known move lists.
enum class Family {
    sphere,  // (0 | m_1,...,m_r): braid moves on unordered vectors
    torus1,  // (1 | m): two torus moves
    torus2,  // (1 | m, m): four moves
    genus2,  // (2 | -): five moves
};

/// Family of a signature; throws BadMoveForFamily if the signature has no
/// implemented move list.
Family family_of(const SignatureType& sig);

/// Number of forward moves for vectors of this signature.
int move_count(const SignatureType& sig);

/// Which group action accompanies the moves when forming orbits.
struct ActionSpec {
    Family family;
    bool include_inner = false;  // inner automorphisms applied entrywise
    bool include_aut = false;    // all automorphisms (subsumes include_inner)
};

/// Applies forward move `move_id` (1-based); `inverse` applies its inverse.
/// Throws BadMoveForFamily when the id is out of range for V's family.
GeneratingVector apply_move(const GeneratingVector& V, int move_id, bool inverse = false);

struct OrbitBudget {
    long long max_orbit = 20'000'000;
};

/// A fully computed orbit: all member tuples plus the lexicographically
/// minimal one (the canonical representative).
struct Orbit {
    std::vector<std::vector<Elem>> elements;  // concatenated tuples, sorted
    std::vector<Elem> canonical;              // == elements.front()
};

/// Breadth-first closure of V under the moves, their inverses, and the
/// automorphisms selected by `spec`. Throws OrbitBudgetExceeded when the
/// orbit exceeds budget.max_orbit elements.
Orbit orbit(const FiniteGroup& G, const GeneratingVector& V, const ActionSpec& spec,
            const OrbitBudget& budget = {});

/// All orbits of the full vector set of the given type. Sphere-family
/// vectors are enumerated in unordered mode (braids permute the entries),
/// the other families in ordered mode.
struct OrbitPartition {
    std::vector<GeneratingVector> representatives;  // canonical, sorted
    std::vector<long long> orbit_sizes;             // parallel to representatives
    long long total = 0;                            // sum of orbit sizes
};

OrbitPartition orbit_representatives(const FiniteGroup& G, const SignatureType& sig,
                                     const ActionSpec& spec, const WorkBudget& enum_budget = {},
                                     const OrbitBudget& orbit_budget = {});

/// Equivalence used for pairs of generating vectors. "theorem" is the full
/// relation (moves + inner automorphisms per side, simultaneous action of
/// Aut(G)); "appendix" replays the published program, which acted with the
/// moves only per side and decided ambiguous pairs by re-orbiting the right
/// side under moves + Aut(G).
enum class Policy { theorem, appendix };

struct ComponentCount {
    int n = 0;
    /// One line per decided pair, recording which shortcut applied.
    std::vector<std::string> certificate;
};

/// Number of equivalence classes of compatible (= freely-acting) pairs of
/// generating vectors of types (sig1, sig2), via the two-stage algorithm:
/// left representatives under moves + Aut(G), right representatives under
/// moves only, pair filtering by disjointness, then the part (i)/(ii)
/// shortcuts with escalation to a full pair-orbit only for pairs sharing a
/// left vector whose right vectors lie in the same moves+Aut orbit.
ComponentCount component_count_unmixed(const FiniteGroup& G, const SignatureType& sig1,
                                       const SignatureType& sig2, Policy policy,
                                       const WorkBudget& enum_budget = {},
                                       const OrbitBudget& orbit_budget = {});

/// Number of classes of generating vectors of the given type for the
/// index-two subgroup G_zero (element list), under moves plus restrictions
/// of the automorphisms of G that preserve G_zero. Throws NotIndexTwo.
int component_count_mixed(const FiniteGroup& G, const std::vector<Elem>& G_zero,
                          const SignatureType& sig, const WorkBudget& enum_budget = {},
                          const OrbitBudget& orbit_budget = {});

/// Number of ordered compatible pairs (V1, V2), computed by grouping each
/// side by its stabilizer set and multiplying group sizes over disjoint
/// pairs of stabilizer sets (pairs are never materialized).
long long count_compatible_pairs(const FiniteGroup& G, const SignatureType& sig1,
                                 const SignatureType& sig2, const WorkBudget& enum_budget = {});

/// Persists an orbit partition; the header records group label, signature,
/// policy tag and the group's multiplication-table hash.
void write_orbit_cache(const std::string& path, const FiniteGroup& G, const SignatureType& sig,
                       const std::string& policy_tag, const OrbitPartition& part);

/// Reads a cache file back. Returns std::nullopt when the file is missing or
/// its header does not match (stale table hash, different signature/policy).
std::optional<OrbitPartition> read_orbit_cache(const std::string& path, const FiniteGroup& G,
                                               const SignatureType& sig,
                                               const std::string& policy_tag);

}  // namespace isoclass
