#pragma once

#include "bellpoly/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bellpoly {

/// Largest observable count accepted by enumerate_vertices (2^n assignments).
inline constexpr int kMaxEnumeratedObservables = 24;

using Monomial = std::vector<int>;

/// A set of dichotomic observables and the products of them that span the
/// correlation space. For two-party correlation polytopes every monomial is a
/// pair (i, j) with i < j.
class Scenario {
public:
    /// Throws InvalidScenario unless: n >= 1, at least one monomial, each
    /// monomial non-empty and strictly increasing with indices < n, no
    /// duplicates, and labels either empty or one per observable.
    Scenario(int observable_count, std::vector<Monomial> monomials,
             std::vector<std::string> labels = {});

    int observable_count() const noexcept { return observable_count_; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t dimension() const noexcept { return monomials_.size(); }

    /// Display name of monomial k, e.g. "XY"; falls back to "E(0,1)".
    std::string monomial_name(std::size_t k) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    int observable_count_;
    std::vector<Monomial> monomials_;
    std::vector<std::string> labels_;
};

/// Three observables X, Y, Z with monomials XY, XZ, YZ.
Scenario sz_scenario();

/// Four observables W, X, Y, Z with monomials WY, WZ, XY, XZ.
Scenario chsh_scenario();

struct VRepresentation {
    std::size_t dimension = 0;
    RationalMatrix vertices;
};

/// The inequality normal . x + offset >= 0.
struct Facet {
    Rational offset;
    RationalVector normal;

    /// normal . x + offset
    Rational margin(const RationalVector& x) const;

    friend bool operator==(const Facet&, const Facet&) = default;
};

/// Integer rescaling with collective gcd 1. Only positive factors are used, so
/// the inequality keeps its orientation.
Facet canonical_facet(const Facet& f);

/// Output order of facets: offset ascending, then normal lexicographically
/// descending. For the three-observable polytope this lists the all-plus
/// facet first.
bool facet_order(const Facet& lhs, const Facet& rhs);

struct HRepresentation {
    std::size_t dimension = 0;
    std::vector<Facet> facets;
};

/// All distinct monomial-value tuples over the 2^n sign assignments, in the
/// order first produced. Assignment index bit i is observable i, 0 -> +1.
VRepresentation enumerate_vertices(const Scenario& scenario);

/// Rank of {v_i - v_0}. Requires at least one vertex.
std::size_t affine_dimension(const VRepresentation& v);

/// Facets of the convex hull of a full-dimensional vertex set, computed by
/// the Double Description method in exact arithmetic.
///
/// Each vertex w becomes the constraint (1, w) . (b, a) >= 0 on the cone of
/// valid inequalities; its extreme rays are the facets. The cone starts from
/// the first d + 1 linearly independent constraints (input order) and the rest
/// are added in input order. A pair of rays is combined only when the zero set
/// they share is not contained in any other ray's zero set and has rank d - 1.
///
/// Throws DegeneratePolytope when the vertices do not span R^d.
HRepresentation dd_hull(const VRepresentation& v);

enum class Location { inside, boundary, outside };

std::string to_string(Location location);

struct MembershipReport {
    RationalVector margins;  ///< one per facet, in facet order
    Location location = Location::inside;
    std::size_t worst_facet = 0;  ///< index of the smallest margin
    Rational worst_margin;

    /// inside or boundary
    bool contained() const noexcept { return location != Location::outside; }
};

/// Evaluates every facet at `point`. `inside` means all margins are strictly
/// positive. Throws DimensionMismatch.
MembershipReport membership(const HRepresentation& h, const RationalVector& point);

}  // namespace bellpoly
