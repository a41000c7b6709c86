#pragma once

// Finite groups as immutable multiplication tables, plus the structural
// queries (conjugacy classes, centralizers, normalizers, automorphisms,
// isomorphism testing) needed by the rest of the library.
//
// Elements are dense integer indices into the group's element table; index 0
// is always the identity. Groups are usually realized by closing a set of
// permutation generators and flattening the result to a table, so downstream
// code sees one uniform representation.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoclass {

/// Opaque handle into a group's element table. Index 0 is the identity.
using Elem = int;

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Generated group larger than the configured order cap.
class OrderCapExceeded : public Error {
public:
    using Error::Error;
};

/// An element set claimed to be a subgroup fails closure.
class NotASubgroup : public Error {
public:
    using Error::Error;
};

/// Default order cap; the largest group in any classification table is 120.
inline constexpr int kDefaultOrderCap = 256;

/// A finite group as an immutable multiplication table with precomputed
/// inverses, element orders and conjugacy classes. Safe to share read-only
/// between any number of threads; all member functions are const.
class FiniteGroup {
public:
    /// Builds a group from a complete multiplication table (row-major,
    /// mul[x*n+y] = x*y). Validates that the table is a latin square with
    /// identity 0, that inverses exist, and that associativity holds
    /// (exhaustively for order <= 64, sampled above).
    static FiniteGroup from_table(std::vector<Elem> mul, std::string label,
                                  std::string paper_id = "");

    int order() const { return order_; }
    const std::string& label() const { return label_; }
    const std::string& paper_id() const { return paper_id_; }

    Elem mul(Elem x, Elem y) const { return mul_[static_cast<size_t>(x) * order_ + y]; }
    Elem inv(Elem x) const { return inv_[x]; }
    int elem_order(Elem x) const { return elem_order_[x]; }

    /// x^k for any integer k (negative exponents use the inverse).
    Elem power(Elem x, long long k) const;

    /// g * x * g^-1.
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

    /// [x, y] = x y x^-1 y^-1.
    Elem commutator(Elem x, Elem y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }

    /// Conjugacy classes as a partition of element indices; class 0 is the
    /// singleton {identity}, classes are sorted by (size of class, least
    /// element) for determinism.
    const std::vector<std::vector<Elem>>& conjugacy_classes() const { return classes_; }

    /// Index into conjugacy_classes() of the class containing x.
    int class_index(Elem x) const { return class_index_[x]; }

    std::vector<Elem> center() const;
    bool is_abelian() const;

    /// FNV-1a hash of the multiplication table (cache keying).
    std::uint64_t table_hash() const;

private:
    FiniteGroup() = default;
    void finalize();  // computes inv_, elem_order_, classes_

    int order_ = 0;
    std::vector<Elem> mul_;
    std::vector<Elem> inv_;
    std::vector<int> elem_order_;
    std::vector<std::vector<Elem>> classes_;
    std::vector<int> class_index_;
    std::string label_;
    std::string paper_id_;
};

/// An automorphism of a fixed group, stored as a permutation of element
/// indices. perm[x] is the image of x.
struct Automorphism {
    std::vector<Elem> perm;

    Elem operator()(Elem x) const { return perm[x]; }
    bool operator==(const Automorphism& o) const { return perm == o.perm; }
    bool operator<(const Automorphism& o) const { return perm < o.perm; }
};

/// Closes `generators` (permutations of {0,...,degree-1}) under composition
/// and re-encodes the result as a multiplication table. The identity becomes
/// element 0; the remaining indices follow deterministic BFS discovery order.
/// Throws OrderCapExceeded if the closure exceeds `order_cap`. An empty
/// generator list yields the trivial group.
FiniteGroup group_from_permutations(int degree,
                                    const std::vector<std::vector<int>>& generators,
                                    std::string label = "",
                                    std::string paper_id = "",
                                    int order_cap = kDefaultOrderCap);

/// Conjugacy classes of G (convenience forwarder).
const std::vector<std::vector<Elem>>& conjugacy_classes(const FiniteGroup& G);

/// { g in G : g x = x g }.
std::vector<Elem> centralizer(const FiniteGroup& G, Elem x);

/// { g in G : g H g^-1 = H }. H must be a subgroup (throws NotASubgroup).
std::vector<Elem> normalizer(const FiniteGroup& G, const std::vector<Elem>& H);

/// Smallest subgroup of G containing S (sorted element list).
std::vector<Elem> subgroup_generated(const FiniteGroup& G, const std::vector<Elem>& S);

/// Re-indexes a subgroup (given as an element list, in any order) as a
/// standalone FiniteGroup; the identity keeps index 0 and the remaining
/// elements follow ascending order of their indices in G. When `embed` is
/// non-null it receives the map new index -> index in G. Throws
/// NotASubgroup if the list is not closed under multiplication.
FiniteGroup subgroup_as_group(const FiniteGroup& G, std::vector<Elem> elems,
                              std::vector<Elem>* embed = nullptr, std::string label = "");

/// True iff S generates all of G.
bool generates(const FiniteGroup& G, const std::vector<Elem>& S);

/// A lexicographically-least generating tuple of minimal size, found by
/// trying tuple sizes 1, 2, ... in order.
std::vector<Elem> minimal_generating_tuple(const FiniteGroup& G);

/// The full automorphism group, found by backtracking over order-compatible
/// images of a minimal generating tuple. Sorted by permutation for
/// determinism; the identity automorphism is always present.
std::vector<Automorphism> automorphism_group(const FiniteGroup& G);

/// The inner automorphisms {x -> g x g^-1}, deduplicated and sorted.
std::vector<Automorphism> inner_automorphisms(const FiniteGroup& G);

/// Returns a witnessing bijection (image table indexed by G1's elements) if
/// G1 and G2 are isomorphic, std::nullopt otherwise. Uses invariant-based
/// early rejection (order, order profile, class sizes, center size,
/// abelianization) before the backtracking search.
std::optional<std::vector<Elem>> is_isomorphic(const FiniteGroup& G1, const FiniteGroup& G2);

/// Cheap isomorphism invariant fingerprint; equal for isomorphic groups.
/// Used to bucket candidates before full isomorphism tests.
std::uint64_t iso_fingerprint(const FiniteGroup& G);

/// Abelian invariants (elementary divisors of G/[G,G]), sorted ascending.
std::vector<int> abelian_invariants(const FiniteGroup& G);

/// The derived subgroup [G, G] as a sorted element list.
std::vector<Elem> derived_subgroup(const FiniteGroup& G);

}  // namespace isoclass
