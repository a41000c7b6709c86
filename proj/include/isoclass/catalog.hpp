#pragma once

// Named group constructors for every group appearing in the classification
// tables, plus ingestion of the bundled data file listing all isomorphism
// classes of groups of each covered order, so exhaustive "among the N groups
// of order n" sweeps are possible.
//
// Catalog file format (ASCII, line-oriented):
//   order;label;paper_id;degree;gen1;gen2;...
// where each gen is a permutation in cycle notation, e.g.
//   8;D4;G(8,3);4;(0 1 2 3);(1 3)
// Lines starting with '#' are comments; paper_id may be empty.

#include <map>
#include <string>
#include <vector>

#include "isoclass/group.hpp"

namespace isoclass {

class BadParameters : public Error {
public:
    using Error::Error;
};

class RelationCheckFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class OrderMismatch : public Error {
public:
    using Error::Error;
};

class OrderNotCovered : public Error {
public:
    using Error::Error;
};

/// One line of the catalog file.
struct CatalogEntry {
    int order = 0;
    std::string label;
    std::string paper_id;
    int degree = 0;
    std::vector<std::vector<int>> generators;
};

// --- Named constructors ------------------------------------------------------

/// Cyclic group Z_n.
FiniteGroup cyclic_group(int n);

/// Direct product of cyclic groups Z_{orders[0]} x Z_{orders[1]} x ...
FiniteGroup abelian_group(const std::vector<int>& orders);

/// Dihedral group of order 2n (symmetries of the regular n-gon).
FiniteGroup dihedral_group(int n);

/// Quaternion group Q8.
FiniteGroup quaternion_group();

/// D_{p,q,r} = <x, y | x^p = y^q = 1, x y x^-1 = y^r> of order p*q.
/// Requires gcd(r, q) = 1 and r^p = 1 (mod q); the defining relations are
/// re-verified on the constructed group.
FiniteGroup dpqr_group(int p, int q, int r);

/// Symmetric group S_n, n <= 5.
FiniteGroup symmetric_group(int n);

/// Alternating group A_n, n <= 5.
FiniteGroup alternating_group(int n);

/// SL(2, F_3), order 24.
FiniteGroup sl2_f3();

/// GL(2, F_3), order 48.
FiniteGroup gl2_f3();

/// PSL(2, F_7), order 168 (used only as an exclusion witness, never swept).
FiniteGroup psl2_f7();

/// Direct product of two groups.
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B, std::string label = "");

/// Semidirect product A |x N for a given action of A on N. `action` maps
/// each element of A to an automorphism of N and must be a homomorphism
/// (validated; throws BadParameters otherwise).
FiniteGroup semidirect_product(const FiniteGroup& A, const FiniteGroup& N,
                               const std::vector<Automorphism>& action,
                               std::string label = "");

/// Homomorphisms A -> Aut(N) as element-indexed automorphism vectors, one per
/// hom, enumerated deterministically. Convenience for building semidirect
/// products when the action is only known structurally.
std::vector<std::vector<Automorphism>> action_homomorphisms(const FiniteGroup& A,
                                                            const FiniteGroup& N);

/// Facade over the constructors above for string names used by the CLI and
/// the catalog tooling: "Zn", products "Z2xZ4xS3" of the atoms below,
/// "Dn" (dihedral of order 2n), "Q8", "Sn"/"An" (n <= 5), "SL(2,3)",
/// "GL(2,3)", "PSL(2,7)", and "D(p,q,r)".
FiniteGroup construct_named(const std::string& name);

// --- Catalog ingestion -------------------------------------------------------

/// Parses and validates a catalog file. Each entry's generator closure is
/// materialized and checked against the declared order (OrderMismatch), and
/// entries within one order are checked pairwise non-isomorphic (exhaustively
/// for orders <= 32, spot-checked above). Parse failures carry line numbers.
class Catalog {
public:
    static Catalog load(const std::string& path);

    /// Loads without the pairwise non-isomorphism validation (used by tools
    /// that run their own, stronger validation).
    static Catalog load_unvalidated(const std::string& path);

    const std::vector<CatalogEntry>& entries() const { return entries_; }

    bool covers(int order) const { return by_order_.count(order) > 0; }

    /// Sorted list of covered orders.
    std::vector<int> covered_orders() const;

    /// One group per isomorphism class of order n; throws OrderNotCovered.
    const std::vector<FiniteGroup>& groups_of_order(int n) const;

    /// Group with the given label; throws OrderNotCovered if absent.
    const FiniteGroup& by_label(const std::string& label) const;

private:
    static Catalog load_impl(const std::string& path, bool validate_pairwise);

    std::vector<CatalogEntry> entries_;
    std::map<int, std::vector<FiniteGroup>> by_order_;
};

/// Serializes entries to the catalog file format.
void write_catalog(const std::string& path, const std::vector<CatalogEntry>& entries);

/// Formats a permutation in cycle notation ("(0 1 2)(3 4)"; "()" for the
/// identity).
std::string cycles_to_string(const std::vector<int>& perm);

/// Parses cycle notation into a permutation of the given degree.
std::vector<int> parse_cycles(const std::string& text, int degree);

/// Regular-representation permutation generators for a group: left
/// multiplication by each element of a minimal generating tuple.
std::vector<std::vector<int>> regular_generators(const FiniteGroup& G);

}  // namespace isoclass
