#include "bellpoly/error.hpp"
#include "bellpoly/polytope.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace bellpoly {
namespace {

RationalMatrix rows(std::initializer_list<std::initializer_list<int>> values) {
    RationalMatrix out;
    for (const auto& r : values) {
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

Facet facet(int b, std::initializer_list<int> a) {
    return Facet{Rational(b), RationalVector(a.begin(), a.end())};
}

std::set<testing::FacetKey> keys(const HRepresentation& h) {
    std::set<testing::FacetKey> out;
    for (const auto& f : h.facets) {
        testing::FacetKey k{numerator(f.offset)};
        for (const auto& a : f.normal) {
            k.push_back(numerator(a));
        }
        out.insert(k);
    }
    return out;
}

// Soundness: every vertex satisfies every facet, and each facet is tight on
// a vertex set of affine rank d - 1.
void expect_sound(const VRepresentation& v, const HRepresentation& h) {
    for (const auto& f : h.facets) {
        VRepresentation tight;
        tight.dimension = v.dimension;
        for (const auto& w : v.vertices) {
            const Rational m = f.margin(w);
            EXPECT_GE(m, 0);
            if (m == 0) {
                tight.vertices.push_back(w);
            }
        }
        ASSERT_FALSE(tight.vertices.empty());
        EXPECT_EQ(affine_dimension(tight), v.dimension - 1);
    }
}

TEST(Rational, ParsesIntegersAndFractions) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("+7/21"), Rational(1, 3));
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational("1/-2"), InputError);
    EXPECT_THROW(parse_rational("x"), InputError);
    EXPECT_THROW(parse_rational(""), InputError);
}

TEST(Rational, ZeroIsCanonical) {
    const Rational z = parse_rational("0/5");
    EXPECT_EQ(numerator(z), 0);
    EXPECT_EQ(denominator(z), 1);
}

TEST(Rational, FromDoubleIsExact) {
    EXPECT_EQ(from_double(0.5), Rational(1, 2));
    EXPECT_EQ(from_double(-3.0), Rational(-3));
    EXPECT_EQ(to_double(from_double(0.1)), 0.1);
    EXPECT_THROW(from_double(std::numeric_limits<double>::infinity()), InputError);
}

TEST(Rational, PrimitiveIntegerKeepsOrientation) {
    const RationalVector v{Rational(2, 3), Rational(-4, 3), Rational(0)};
    EXPECT_EQ(primitive_integer(v), (RationalVector{1, -2, 0}));
    EXPECT_EQ(canonical_facet(Facet{Rational(2, 3), {Rational(4, 3), Rational(-2)}}),
              facet(1, {2, -3}));
}

TEST(Scenario, RejectsMalformedInput) {
    EXPECT_THROW(Scenario(0, {{0}}), InvalidScenario);
    EXPECT_THROW(Scenario(3, {}), InvalidScenario);
    EXPECT_THROW(Scenario(3, {{0, 3}}), InvalidScenario);
    EXPECT_THROW(Scenario(3, {{1, 0}}), InvalidScenario);
    EXPECT_THROW(Scenario(3, {{0, 1}, {0, 1}}), InvalidScenario);
    EXPECT_THROW(Scenario(3, {{}}), InvalidScenario);
    EXPECT_THROW(Scenario(2, {{0, 1}}, {"X"}), InvalidScenario);
}

TEST(Scenario, MonomialNames) {
    EXPECT_EQ(sz_scenario().monomial_name(2), "YZ");
    EXPECT_EQ(Scenario(2, {{0, 1}}).monomial_name(0), "E(0,1)");
}

TEST(EnumerateVertices, ThreeObservablesGiveTravisRows) {
    const auto v = enumerate_vertices(sz_scenario());
    EXPECT_EQ(v.dimension, 3u);
    // First-seen order over assignments 0 (+++), 1 (X-), 2 (Y-), 3 (X-Y-).
    EXPECT_EQ(v.vertices, rows({{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}}));
}

TEST(EnumerateVertices, SingleObservable) {
    const auto v = enumerate_vertices(Scenario(1, {{0}}));
    EXPECT_EQ(v.vertices, rows({{1}, {-1}}));
}

TEST(EnumerateVertices, ChshVerticesHaveUnitProduct) {
    const auto v = enumerate_vertices(chsh_scenario());
    std::set<RationalVector> expected;
    for (int mask = 0; mask < 16; ++mask) {
        RationalVector w;
        int product = 1;
        for (int k = 0; k < 4; ++k) {
            const int s = (mask >> k) & 1 ? -1 : 1;
            product *= s;
            w.emplace_back(s);
        }
        if (product == 1) {
            expected.insert(w);
        }
    }
    EXPECT_EQ(v.vertices.size(), 8u);
    EXPECT_EQ(std::set<RationalVector>(v.vertices.begin(), v.vertices.end()), expected);
}

TEST(EnumerateVertices, EachVertexHasTwoAssignments) {
    for (const auto& scenario : {sz_scenario(), chsh_scenario()}) {
        std::map<std::vector<int>, int> hits;
        const int n = scenario.observable_count();
        for (int index = 0; index < (1 << n); ++index) {
            std::vector<int> tuple;
            for (const auto& m : scenario.monomials()) {
                int p = 1;
                for (int i : m) {
                    p *= (index >> i) & 1 ? -1 : 1;
                }
                tuple.push_back(p);
            }
            ++hits[tuple];
        }
        EXPECT_EQ(hits.size(), enumerate_vertices(scenario).vertices.size());
        for (const auto& [tuple, count] : hits) {
            EXPECT_EQ(count, 2);
        }
    }
}

TEST(EnumerateVertices, Guardrail) {
    EXPECT_THROW(enumerate_vertices(Scenario(25, {{0, 1}})), ScenarioTooLarge);
}

TEST(AffineDimension, KnownSets) {
    EXPECT_EQ(affine_dimension(enumerate_vertices(sz_scenario())), 3u);
    EXPECT_EQ(affine_dimension(enumerate_vertices(Scenario(1, {{0}}))), 1u);
    EXPECT_EQ(affine_dimension(enumerate_vertices(chsh_scenario())), 4u);
    EXPECT_THROW(affine_dimension(VRepresentation{}), InputError);
}

TEST(AffineDimension, TravisMatrixLinearRankIsThree) {
    EXPECT_EQ(exact_rank(enumerate_vertices(sz_scenario()).vertices), 3u);
}

TEST(DdHull, SuppesZanottiFacets) {
    const auto h = dd_hull(enumerate_vertices(sz_scenario()));
    ASSERT_EQ(h.facets.size(), 4u);
    EXPECT_EQ(h.facets[0], facet(1, {1, 1, 1}));
    EXPECT_EQ(h.facets[1], facet(1, {1, -1, -1}));
    EXPECT_EQ(h.facets[2], facet(1, {-1, 1, -1}));
    EXPECT_EQ(h.facets[3], facet(1, {-1, -1, 1}));
}

TEST(DdHull, Segment) {
    const auto h = dd_hull(enumerate_vertices(Scenario(1, {{0}})));
    ASSERT_EQ(h.facets.size(), 2u);
    EXPECT_EQ(h.facets[0], facet(1, {1}));
    EXPECT_EQ(h.facets[1], facet(1, {-1}));
}

TEST(DdHull, ChshPolytope) {
    const auto v = enumerate_vertices(chsh_scenario());
    const auto h = dd_hull(v);
    ASSERT_EQ(h.facets.size(), 16u);
    int trivial = 0;
    int chsh = 0;
    for (const auto& f : h.facets) {
        int nonzero = 0;
        int minus = 0;
        for (const auto& a : f.normal) {
            nonzero += a != 0;
            minus += a < 0;
            EXPECT_LE(abs(a), 1);
        }
        if (nonzero == 1) {
            EXPECT_EQ(f.offset, 1);
            ++trivial;
        } else {
            EXPECT_EQ(nonzero, 4);
            EXPECT_EQ(f.offset, 2);
            EXPECT_EQ(minus % 2, 1);
            ++chsh;
        }
    }
    EXPECT_EQ(trivial, 8);
    EXPECT_EQ(chsh, 8);
    EXPECT_EQ(keys(h), testing::brute_force_facets(v.vertices));
    expect_sound(v, h);
}

TEST(DdHull, MatchesBruteForceOnSmallScenarios) {
    const std::vector<Scenario> scenarios{
        sz_scenario(),
        Scenario(2, {{0}, {1}}),
        Scenario(2, {{0}, {1}, {0, 1}}),
        Scenario(3, {{0}, {1}, {2}, {0, 1}}),
        Scenario(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
    };
    for (const auto& s : scenarios) {
        const auto v = enumerate_vertices(s);
        const auto h = dd_hull(v);
        EXPECT_EQ(keys(h), testing::brute_force_facets(v.vertices));
        expect_sound(v, h);
    }
}

TEST(DdHull, MatchesBruteForceOnRandomPointSets) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-4, 4);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + trial % 3;
        VRepresentation v;
        v.dimension = d;
        std::set<RationalVector> seen;
        while (v.vertices.size() < d + 4) {
            RationalVector p;
            for (std::size_t k = 0; k < d; ++k) {
                p.emplace_back(coord(rng), 1 + trial % 2);
            }
            if (seen.insert(p).second) {
                v.vertices.push_back(p);
            }
        }
        if (affine_dimension(v) != d) {
            EXPECT_THROW(dd_hull(v), DegeneratePolytope);
            continue;
        }
        const auto h = dd_hull(v);
        EXPECT_EQ(keys(h), testing::brute_force_facets(v.vertices));
        expect_sound(v, h);
        ++checked;
    }
    EXPECT_GT(checked, 40);
}

TEST(DdHull, FacetsAreCanonicalAndSorted) {
    const auto h = dd_hull(enumerate_vertices(chsh_scenario()));
    for (std::size_t k = 0; k < h.facets.size(); ++k) {
        EXPECT_EQ(canonical_facet(h.facets[k]), h.facets[k]);
        EXPECT_GE(h.facets[k].offset, 0);
        if (k > 0) {
            EXPECT_TRUE(facet_order(h.facets[k - 1], h.facets[k]));
        }
    }
}

TEST(DdHull, Deterministic) {
    const auto v = enumerate_vertices(chsh_scenario());
    const auto a = dd_hull(v);
    const auto b = dd_hull(v);
    ASSERT_EQ(a.facets.size(), b.facets.size());
    for (std::size_t k = 0; k < a.facets.size(); ++k) {
        EXPECT_EQ(a.facets[k], b.facets[k]);
    }
}

TEST(DdHull, RejectsLowerDimensionalInput) {
    VRepresentation line{2, rows({{0, 0}, {1, 1}, {2, 2}})};
    EXPECT_THROW(dd_hull(line), DegeneratePolytope);
    EXPECT_THROW(dd_hull(VRepresentation{2, {}}), DegeneratePolytope);
}

TEST(DdHull, RedundantInteriorPointsAreIgnored) {
    VRepresentation square{2, rows({{0, 0}, {1, 1}, {2, 0}, {0, 2}, {2, 2}, {1, 0}})};
    const auto h = dd_hull(square);
    EXPECT_EQ(h.facets.size(), 4u);
    EXPECT_EQ(keys(h), testing::brute_force_facets(square.vertices));
}

TEST(Membership, SpeckerPointIsOutside) {
    const auto h = dd_hull(enumerate_vertices(sz_scenario()));
    const auto r = membership(h, {-1, -1, -1});
    EXPECT_EQ(r.location, Location::outside);
    EXPECT_EQ(r.margins[0], -2);
    EXPECT_EQ(r.worst_margin, -2);
    EXPECT_EQ(r.worst_facet, 0u);
}

TEST(Membership, OriginIsInside) {
    const auto h = dd_hull(enumerate_vertices(sz_scenario()));
    const auto r = membership(h, {0, 0, 0});
    EXPECT_EQ(r.location, Location::inside);
    EXPECT_EQ(r.margins, (RationalVector{1, 1, 1, 1}));
}

TEST(Membership, VertexIsOnBoundary) {
    const auto h = dd_hull(enumerate_vertices(sz_scenario()));
    const auto r = membership(h, {1, 1, 1});
    EXPECT_EQ(r.location, Location::boundary);
    EXPECT_EQ(r.margins, (RationalVector{4, 0, 0, 0}));
}

TEST(Membership, DimensionMismatch) {
    const auto h = dd_hull(enumerate_vertices(sz_scenario()));
    EXPECT_THROW(membership(h, {0, 0}), DimensionMismatch);
}

TEST(Membership, ConvexCombinationsAreContained) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> weight(0, 50);
    for (const auto& scenario : {sz_scenario(), chsh_scenario()}) {
        const auto v = enumerate_vertices(scenario);
        const auto h = dd_hull(v);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<int> w(v.vertices.size());
            int total = 0;
            for (auto& x : w) {
                x = weight(rng);
                total += x;
            }
            if (total == 0) {
                continue;
            }
            RationalVector p(v.dimension, Rational(0));
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (std::size_t k = 0; k < v.dimension; ++k) {
                    p[k] += Rational(w[i], total) * v.vertices[i][k];
                }
            }
            EXPECT_TRUE(membership(h, p).contained());
        }
    }
}

}  // namespace
}  // namespace bellpoly
