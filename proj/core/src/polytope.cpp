#include "bellpoly/polytope.hpp"

#include "bellpoly/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace bellpoly {

Scenario::Scenario(int observable_count, std::vector<Monomial> monomials,
                   std::vector<std::string> labels)
    : observable_count_(observable_count), monomials_(std::move(monomials)),
      labels_(std::move(labels)) {
    if (observable_count_ < 1) {
        throw InvalidScenario("observable count must be positive");
    }
    if (monomials_.empty()) {
        throw InvalidScenario("scenario needs at least one monomial");
    }
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(observable_count_)) {
        throw InvalidScenario("expected one label per observable");
    }
    std::set<Monomial> seen;
    for (const auto& m : monomials_) {
        if (m.empty()) {
            throw InvalidScenario("empty monomial");
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] < 0 || m[i] >= observable_count_) {
                throw InvalidScenario("monomial index out of range");
            }
            if (i > 0 && m[i] <= m[i - 1]) {
                throw InvalidScenario("monomial indices must be strictly increasing");
            }
        }
        if (!seen.insert(m).second) {
            throw InvalidScenario("duplicate monomial");
        }
    }
}

std::string Scenario::monomial_name(std::size_t k) const {
    const auto& m = monomials_.at(k);
    std::string name;
    if (!labels_.empty()) {
        for (int i : m) {
            name += labels_[static_cast<std::size_t>(i)];
        }
        return name;
    }
    name = "E(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        name += (i ? "," : "") + std::to_string(m[i]);
    }
    return name + ")";
}

Scenario sz_scenario() { return Scenario(3, {{0, 1}, {0, 2}, {1, 2}}, {"X", "Y", "Z"}); }

Scenario chsh_scenario() {
    return Scenario(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {"W", "X", "Y", "Z"});
}

Rational Facet::margin(const RationalVector& x) const { return dot(normal, x) + offset; }

Facet canonical_facet(const Facet& f) {
    RationalVector joined;
    joined.reserve(f.normal.size() + 1);
    joined.push_back(f.offset);
    joined.insert(joined.end(), f.normal.begin(), f.normal.end());
    joined = primitive_integer(joined);
    return Facet{joined.front(), RationalVector(joined.begin() + 1, joined.end())};
}

bool facet_order(const Facet& lhs, const Facet& rhs) {
    if (lhs.offset != rhs.offset) {
        return lhs.offset < rhs.offset;
    }
    return std::lexicographical_compare(rhs.normal.begin(), rhs.normal.end(), lhs.normal.begin(),
                                        lhs.normal.end());
}

VRepresentation enumerate_vertices(const Scenario& scenario) {
    const int n = scenario.observable_count();
    if (n > kMaxEnumeratedObservables) {
        throw ScenarioTooLarge("vertex enumeration is limited to " +
                               std::to_string(kMaxEnumeratedObservables) + " observables, got " +
                               std::to_string(n));
    }
    VRepresentation out;
    out.dimension = scenario.dimension();
    std::set<std::vector<int>> seen;
    const std::uint64_t assignments = std::uint64_t{1} << n;
    for (std::uint64_t index = 0; index < assignments; ++index) {
        std::vector<int> tuple;
        tuple.reserve(out.dimension);
        for (const auto& m : scenario.monomials()) {
            int product = 1;
            for (int i : m) {
                product *= ((index >> i) & 1U) ? -1 : 1;
            }
            tuple.push_back(product);
        }
        if (seen.insert(tuple).second) {
            out.vertices.emplace_back(tuple.begin(), tuple.end());
        }
    }
    return out;
}

std::size_t affine_dimension(const VRepresentation& v) {
    if (v.vertices.empty()) {
        throw InputError("affine dimension of an empty vertex set");
    }
    RationalMatrix diffs;
    diffs.reserve(v.vertices.size() - 1);
    const auto& origin = v.vertices.front();
    for (std::size_t i = 1; i < v.vertices.size(); ++i) {
        RationalVector row(origin.size());
        for (std::size_t k = 0; k < origin.size(); ++k) {
            row[k] = v.vertices[i][k] - origin[k];
        }
        diffs.push_back(std::move(row));
    }
    return exact_rank(std::move(diffs));
}

namespace {

using ZeroSet = boost::dynamic_bitset<>;

struct Ray {
    RationalVector coords;
    ZeroSet zeros;  // processed constraints on which the ray is tight
};

// Gauss-Jordan inverse of a square nonsingular matrix.
RationalMatrix invert(RationalMatrix m) {
    const std::size_t n = m.size();
    RationalMatrix inv(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (m[pivot][c] == 0) {
            ++pivot;
        }
        std::swap(m[c], m[pivot]);
        std::swap(inv[c], inv[pivot]);
        const Rational scale = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= scale;
            inv[c][k] /= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) {
                continue;
            }
            const Rational factor = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= factor * m[c][k];
                inv[r][k] -= factor * inv[c][k];
            }
        }
    }
    return inv;
}

std::size_t zero_set_rank(const RationalMatrix& constraints, const ZeroSet& zeros) {
    RationalMatrix rows;
    for (auto i = zeros.find_first(); i != ZeroSet::npos; i = zeros.find_next(i)) {
        rows.push_back(constraints[i]);
    }
    return exact_rank(std::move(rows));
}

}  // namespace

HRepresentation dd_hull(const VRepresentation& v) {
    const std::size_t d = v.dimension;
    if (v.vertices.empty() || affine_dimension(v) != d) {
        throw DegeneratePolytope(
            "vertex set is not full-dimensional; project it onto its affine hull before "
            "computing facets");
    }
    const std::size_t dim = d + 1;
    const std::size_t m = v.vertices.size();

    RationalMatrix constraints;
    constraints.reserve(m);
    for (const auto& w : v.vertices) {
        RationalVector row;
        row.reserve(dim);
        row.emplace_back(1);
        row.insert(row.end(), w.begin(), w.end());
        constraints.push_back(std::move(row));
    }

    // Initial simplicial cone from the first dim independent constraints.
    std::vector<std::size_t> basis;
    RationalMatrix basis_rows;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
        basis_rows.push_back(constraints[i]);
        if (exact_rank(basis_rows) == basis_rows.size()) {
            basis.push_back(i);
        } else {
            basis_rows.pop_back();
        }
    }
    const RationalMatrix inverse = invert(basis_rows);

    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        Ray ray;
        ray.coords.resize(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            ray.coords[r] = inverse[r][j];
        }
        ray.coords = primitive_integer(ray.coords);
        ray.zeros.resize(m);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != j) {
                ray.zeros.set(basis[i]);
            }
        }
        rays.push_back(std::move(ray));
    }

    ZeroSet in_basis(m);
    for (auto i : basis) {
        in_basis.set(i);
    }

    for (std::size_t k = 0; k < m; ++k) {
        if (in_basis.test(k)) {
            continue;
        }
        std::vector<Rational> values;
        values.reserve(rays.size());
        std::vector<std::size_t> positive;
        std::vector<std::size_t> negative;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            values.push_back(dot(constraints[k], rays[r].coords));
            if (values.back() > 0) {
                positive.push_back(r);
            } else if (values.back() < 0) {
                negative.push_back(r);
            }
        }

        std::vector<Ray> next;
        for (std::size_t p : positive) {
            for (std::size_t q : negative) {
                const ZeroSet common = rays[p].zeros & rays[q].zeros;
                if (common.count() + 2 < dim) {
                    continue;
                }
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != p && r != q && common.is_subset_of(rays[r].zeros)) {
                        adjacent = false;
                    }
                }
                if (!adjacent || zero_set_rank(constraints, common) + 2 != dim) {
                    continue;
                }
                Ray combined;
                combined.coords.resize(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    combined.coords[i] =
                        values[p] * rays[q].coords[i] - values[q] * rays[p].coords[i];
                }
                combined.coords = primitive_integer(combined.coords);
                combined.zeros = common;
                combined.zeros.set(k);
                next.push_back(std::move(combined));
            }
        }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (values[r] > 0) {
                next.push_back(std::move(rays[r]));
            } else if (values[r] == 0) {
                rays[r].zeros.set(k);
                next.push_back(std::move(rays[r]));
            }
        }
        rays = std::move(next);
    }

    HRepresentation h;
    h.dimension = d;
    h.facets.reserve(rays.size());
    for (const auto& ray : rays) {
        h.facets.push_back(canonical_facet(
            Facet{ray.coords.front(), RationalVector(ray.coords.begin() + 1, ray.coords.end())}));
    }
    std::sort(h.facets.begin(), h.facets.end(), facet_order);
    return h;
}

std::string to_string(Location location) {
    switch (location) {
    case Location::inside:
        return "inside";
    case Location::boundary:
        return "boundary";
    case Location::outside:
        return "outside";
    }
    return "unknown";
}

MembershipReport membership(const HRepresentation& h, const RationalVector& point) {
    if (point.size() != h.dimension) {
        throw DimensionMismatch("point has dimension " + std::to_string(point.size()) +
                                ", polytope has " + std::to_string(h.dimension));
    }
    MembershipReport report;
    report.margins.reserve(h.facets.size());
    bool any_zero = false;
    bool any_negative = false;
    for (std::size_t k = 0; k < h.facets.size(); ++k) {
        report.margins.push_back(h.facets[k].margin(point));
        const Rational& mk = report.margins.back();
        if (k == 0 || mk < report.worst_margin) {
            report.worst_margin = mk;
            report.worst_facet = k;
        }
        any_zero = any_zero || mk == 0;
        any_negative = any_negative || mk < 0;
    }
    report.location = any_negative ? Location::outside
                      : any_zero   ? Location::boundary
                                   : Location::inside;
    return report;
}

}  // namespace bellpoly
