#include "bellpoly/error.hpp"
#include "bellpoly/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace bellpoly {
namespace {

const double kSqrt2 = std::sqrt(2.0);

ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v.asDiagonal();
}

Facet chsh_facet() { return Facet{Rational(2), {1, 1, 1, -1}}; }

TEST(Eigh, DiagonalInput) {
    const auto system = eigh(diag({3, -1, 2}));
    EXPECT_EQ(system.values, (std::vector<double>{-1, 2, 3}));
    EXPECT_EQ(system.sweeps, 0);
    EXPECT_NEAR(std::abs(system.vectors(1, 0)), 1.0, 1e-15);
}

TEST(Eigh, PauliY) {
    const auto system = eigh(pauli(Axis::y));
    EXPECT_NEAR(system.values[0], -1.0, 1e-14);
    EXPECT_NEAR(system.values[1], 1.0, 1e-14);
    const ComplexVector v = system.vectors.col(1);
    EXPECT_LE((pauli(Axis::y) * v - v).norm(), 1e-13);
}

TEST(Eigh, Errors) {
    EXPECT_THROW(eigh(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
    EXPECT_THROW(eigh(ComplexMatrix::Zero(65, 65)), DimensionMismatch);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    EXPECT_THROW(eigh(a), NotHermitian);
}

TEST(Eigh, PhaseConvention) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const auto system = eigh(testing::random_hermitian(5, rng));
        for (Eigen::Index k = 0; k < system.vectors.cols(); ++k) {
            const ComplexVector v = system.vectors.col(k);
            Eigen::Index top = 0;
            v.cwiseAbs().maxCoeff(&top);
            // The winning component may tie with an earlier index; either way
            // some component of maximal magnitude is real and positive.
            bool found = false;
            for (Eigen::Index j = 0; j < v.size(); ++j) {
                if (std::abs(v(j)) >= std::abs(v(top)) - 1e-12 && v(j).real() > 0 &&
                    std::abs(v(j).imag()) <= 1e-14) {
                    found = true;
                }
            }
            EXPECT_TRUE(found);
        }
    }
}

TEST(Eigh, AgreesWithReferenceSolver) {
    std::mt19937_64 rng(23);
    for (int dim = 1; dim <= 16; ++dim) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto a = testing::random_hermitian(dim, rng, 3.0);
            const auto system = eigh(a);
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> reference(a);
            const double scale = std::max(1.0, a.norm());
            for (int k = 0; k < dim; ++k) {
                EXPECT_NEAR(system.values[static_cast<std::size_t>(k)],
                            reference.eigenvalues()(k), 1e-12 * scale);
            }
            EXPECT_TRUE(std::is_sorted(system.values.begin(), system.values.end()));
        }
    }
}

TEST(Eigh, ReconstructionAndOrthonormality) {
    std::mt19937_64 rng(29);
    for (int dim : {2, 4, 7, 16}) {
        for (int rep = 0; rep < 25; ++rep) {
            const auto a = testing::random_hermitian(dim, rng);
            const auto system = eigh(a);
            const auto& v = system.vectors;
            ComplexVector values(dim);
            for (int k = 0; k < dim; ++k) {
                values(k) = system.values[static_cast<std::size_t>(k)];
            }
            const ComplexMatrix rebuilt = v * values.asDiagonal() * v.adjoint();
            EXPECT_LE((rebuilt - a).norm(), 1e-11 * std::max(1.0, a.norm()));
            EXPECT_LE((v.adjoint() * v - ComplexMatrix::Identity(dim, dim)).norm(), 1e-12);
        }
    }
}

TEST(Eigh, Variational) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const auto a = testing::random_hermitian(4, rng);
        const auto values = eigvalsh(a);
        for (int t = 0; t < 10; ++t) {
            const auto psi = testing::random_unit_vector(4, rng);
            const double e = expectation(PureState(psi), a);
            EXPECT_GE(e, values.front() - 1e-12);
            EXPECT_LE(e, values.back() + 1e-12);
        }
    }
}

TEST(Eigh, EigvalshMatchesEigh) {
    std::mt19937_64 rng(37);
    const auto a = testing::random_hermitian(6, rng);
    EXPECT_EQ(eigvalsh(a), eigh(a).values);
}

TEST(Eigh, ClusterAndEigenspace) {
    const auto system = eigh(kron(pauli(Axis::z), pauli(Axis::z)));
    EXPECT_EQ(system.cluster(1.0, 1e-9).size(), 2u);
    EXPECT_EQ(system.cluster(0.0, 1e-9).size(), 0u);
    EXPECT_LE(projector_distance(system.eigenspace_projector(-1.0, 1e-9), diag({0, 1, 1, 0})),
              1e-14);
}

TEST(SpanTools, ProjectorAndResidual) {
    ComplexMatrix cols = ComplexMatrix::Zero(3, 2);
    cols.col(0) << 1, 1, 0;
    cols.col(1) << 0, 2, 0;
    const auto p = span_projector(cols);
    EXPECT_LE(projector_distance(p, diag({1, 1, 0})), 1e-14);
    ComplexVector in(3);
    in << 3, Complex(0, 1), 0;
    EXPECT_NEAR(span_residual(p, in), 0.0, 1e-15);
    ComplexVector out(3);
    out << 0, 0, 5;
    EXPECT_NEAR(span_residual(p, out), 1.0, 1e-15);
}

TEST(ParticleSwap, ExchangesFactors) {
    const auto s = particle_swap();
    const Direction a(0.4, 1.3);
    const Direction b(2.0, 0.2);
    EXPECT_LE((s * correlation_operator(a, b) * s - correlation_operator(b, a)).norm(), 1e-13);
    EXPECT_LE((s * s - ComplexMatrix::Identity(4, 4)).norm(), 0.0);
}

TEST(FacetOperator, LinearCombination) {
    const std::vector<ComplexMatrix> ops{pauli(Axis::x), pauli(Axis::z)};
    const auto f = facet_operator(std::vector<double>{2.0, -1.0}, ops);
    EXPECT_LE((f - (2.0 * pauli(Axis::x) - pauli(Axis::z))).norm(), 0.0);
    EXPECT_EQ(facet_operator(RationalVector{Rational(1, 2), Rational(0)}, ops),
              0.5 * pauli(Axis::x));
    EXPECT_THROW(facet_operator(std::vector<double>{1.0}, ops), DimensionMismatch);
    EXPECT_THROW(facet_operator(std::vector<double>{1.0, 1.0},
                                {pauli(Axis::x), ComplexMatrix::Identity(4, 4)}),
                 DimensionMismatch);
}

TEST(SzOperator, BellLimitAtZero) {
    const auto a = sz_operator(0.0);
    EXPECT_LE((a - 3.0 * diag({1, -1, -1, 1})).norm(), 1e-14);
    const auto values = eigvalsh(a);
    EXPECT_NEAR(values.front(), -3.0, 1e-12);
    EXPECT_NEAR(values.back(), 3.0, 1e-12);
}

TEST(SzOperator, ClosedFormEigenvalues) {
    EXPECT_NEAR(sz_mu1(0.0), -3.0, 1e-15);
    EXPECT_NEAR(sz_mu2(0.0), -3.0, 1e-15);
    EXPECT_NEAR(sz_mu1(kPi), -1.0, 1e-15);
    EXPECT_NEAR(sz_mu2(kPi), 1.0, 1e-15);
    EXPECT_NEAR(sz_mu2(2 * kPi / 3), 0.0, 1e-15);
}

TEST(SzOperator, ClosedFormsAcrossSweep) {
    for (int k = 0; k <= 180; ++k) {
        const double theta = kPi * k / 180.0;
        const auto spectrum = sz_spectrum(theta);
        EXPECT_NEAR(spectrum.mu1.computed_value, sz_mu1(theta), 1e-10) << theta;
        EXPECT_NEAR(spectrum.mu2.computed_value, sz_mu2(theta), 1e-10) << theta;
        if (spectrum.mu1.vector_defined) {
            EXPECT_LE(spectrum.mu1.subspace_error, 1e-8) << theta;
        }
        EXPECT_TRUE(spectrum.mu2.vector_defined);
        EXPECT_LE(spectrum.mu2.subspace_error, 1e-8) << theta;
    }
}

TEST(SzOperator, DegeneratePointsAreFlagged) {
    EXPECT_TRUE(sz_spectrum(0.0).degenerate);
    EXPECT_TRUE(sz_spectrum(2 * kPi / 3).degenerate);
    const auto end = sz_spectrum(kPi);
    EXPECT_TRUE(end.degenerate);
    EXPECT_FALSE(end.mu1.vector_defined);
    EXPECT_FALSE(sz_spectrum(1.0).degenerate);
}

TEST(SzOperator, ClosedFormVectorsDirectly) {
    for (double theta : {0.3, 1.0, 1.7, 2.5}) {
        const auto forms = sz_closed_forms(theta);
        const ComplexMatrix a = sz_operator(theta);
        EXPECT_LE((a * forms.x1 - sz_mu1(theta) * forms.x1).norm(), 1e-12);
        EXPECT_LE((a * forms.x2 - sz_mu2(theta) * forms.x2).norm(), 1e-12);
        const ComplexMatrix swapped = particle_swap() * a * particle_swap();
        EXPECT_LE((swapped * forms.x1_swapped_order - sz_mu1(theta) * forms.x1_swapped_order).norm(),
                  1e-12);
        EXPECT_LE((swapped * forms.x2 - sz_mu2(theta) * forms.x2).norm(), 1e-12);
    }
}

TEST(SzOperator, SingletSumMatchesExpectation) {
    for (double theta : {0.0, 0.5, 1.2, kPi}) {
        const double direct = expectation(singlet_state(), sz_operator(theta));
        EXPECT_NEAR(direct, -2 * std::cos(theta) - std::cos(2 * theta), 1e-12);
    }
}

TEST(QuantumBound, ChshAtCanonicalAngles) {
    const std::vector<Direction> dirs{Direction(0.0), Direction(kPi / 2), Direction(kPi / 4),
                                      Direction(7 * kPi / 4)};
    const auto r = quantum_bound(chsh_facet(), dirs, chsh_scenario());
    EXPECT_NEAR(r.lambda_min, -2 * kSqrt2, 1e-12);
    EXPECT_NEAR(r.lambda_max, 2 * kSqrt2, 1e-12);
    EXPECT_EQ(r.classical_min, Rational(-2));
    EXPECT_EQ(r.classical_max, Rational(2));
    EXPECT_NEAR(r.violation, 2 * kSqrt2 - 2, 1e-12);
    EXPECT_FALSE(r.coincident_directions);
}

TEST(QuantumBound, Errors) {
    const std::vector<Direction> three(3);
    EXPECT_THROW(quantum_bound(chsh_facet(), three, chsh_scenario()), DimensionMismatch);
    const std::vector<Direction> four(4);
    EXPECT_THROW(quantum_bound(Facet{Rational(1), {1, 1}}, four, chsh_scenario()),
                 DimensionMismatch);
    const Scenario triple(3, {{0, 1, 2}});
    EXPECT_THROW(quantum_bound(Facet{Rational(1), {1}}, std::vector<Direction>(3), triple),
                 UnsupportedMonomialOrder);
}

TEST(QuantumBound, ScaleEquivariance) {
    const std::vector<Direction> dirs{Direction(0.1), Direction(1.2, 0.3), Direction(0.7, 2.0),
                                      Direction(2.9, 4.0)};
    const auto base = quantum_bound(chsh_facet(), dirs, chsh_scenario());
    const auto scaled = quantum_bound(Facet{Rational(6), {3, 3, 3, -3}}, dirs, chsh_scenario());
    EXPECT_NEAR(scaled.lambda_min, 3 * base.lambda_min, 1e-11);
    EXPECT_NEAR(scaled.lambda_max, 3 * base.lambda_max, 1e-11);
    EXPECT_NEAR(scaled.violation, 3 * base.violation, 1e-11);
}

TEST(QuantumBound, CoincidentDirectionsReachPerfectCorrelation) {
    const std::vector<Direction> same(3, Direction(0.8, 0.4));
    const auto r = quantum_bound(Facet{Rational(1), {1, 1, 1}}, same, sz_scenario());
    EXPECT_TRUE(r.coincident_directions);
    EXPECT_NEAR(r.lambda_min, -3.0, 1e-12);
    EXPECT_NEAR(r.violation, 2.0, 1e-12);
    EXPECT_EQ(r.min_multiplicity, 2u);
}

TEST(QuantumBound, EigenstatesMatchExtremes) {
    const std::vector<Direction> dirs{Direction(0.3), Direction(1.1), Direction(2.0)};
    const auto r = quantum_bound(Facet{Rational(1), {1, 1, 1}}, dirs, sz_scenario());
    const ComplexMatrix a = correlation_operator(dirs[0], dirs[1]) +
                            correlation_operator(dirs[0], dirs[2]) +
                            correlation_operator(dirs[1], dirs[2]);
    EXPECT_NEAR(expectation(PureState(r.state_min), a), r.lambda_min, 1e-12);
    EXPECT_NEAR(expectation(PureState(r.state_max), a), r.lambda_max, 1e-12);
}

TEST(Optimizer, ChshReachesTsirelson) {
    const auto result = optimize_angles(chsh_facet(), chsh_scenario());
    EXPECT_NEAR(result.report.violation, 2 * kSqrt2 - 2, 1e-6);
    EXPECT_EQ(result.directions.front().theta(), 0.0);
    EXPECT_GT(result.evaluations, 0u);
}

TEST(Optimizer, InitialGuessIsUsed) {
    const std::vector<Direction> guess{Direction(0.3), Direction(0.3 + kPi / 2),
                                       Direction(0.3 + kPi / 4), Direction(0.3 - kPi / 4)};
    const auto result =
        optimize_angles(chsh_facet(), chsh_scenario(), guess, AngleMode::spherical);
    EXPECT_NEAR(result.report.violation, 2 * kSqrt2 - 2, 1e-6);
    EXPECT_THROW(optimize_angles(chsh_facet(), chsh_scenario(), std::vector<Direction>(2)),
                 DimensionMismatch);
}

TEST(Optimizer, SinglePairHasNoViolation) {
    const Scenario pair(2, {{0, 1}});
    const auto result = optimize_angles(Facet{Rational(1), {1}}, pair);
    EXPECT_NEAR(result.report.violation, 0.0, 1e-12);
    EXPECT_NEAR(result.report.lambda_min, -1.0, 1e-12);
}

TEST(Optimizer, EquidistantSz) {
    const auto result = optimize_equidistant(Facet{Rational(1), {1, 1, 1}}, sz_scenario());
    EXPECT_NEAR(result.report.violation, 2.0, 1e-6);
    EXPECT_NEAR(result.report.lambda_min, -3.0, 1e-6);
    EXPECT_TRUE(result.report.coincident_directions);
    EXPECT_NEAR(result.theta, 0.0, 1e-6);
}

TEST(PairStates, MatchClosedFormSpans) {
    for (double theta : {0.0, 0.4, kPi / 2, 2.3, kPi}) {
        const auto states = pair_extremal_states(Direction(theta));
        EXPECT_LE(states.min_distance, 1e-10) << theta;
        EXPECT_LE(states.max_distance, 1e-10) << theta;
        const auto op = correlation_operator(Direction(theta), Direction(0.0));
        for (const auto& v : states.min_states) {
            EXPECT_LE((op * v + v).norm(), 1e-12);
        }
        for (const auto& v : states.max_states) {
            EXPECT_LE((op * v - v).norm(), 1e-12);
        }
    }
    EXPECT_THROW(pair_extremal_states(Direction(0.4, 0.1)), DomainError);
}

TEST(PairStates, LiteralColumnsLieInSpans) {
    const auto states = pair_extremal_states(Direction(1.1));
    const auto op = correlation_operator(Direction(1.1), Direction(0.0));
    for (int k = 0; k < 2; ++k) {
        const ComplexVector lo = states.min_span.col(k);
        const ComplexVector hi = states.max_span.col(k);
        EXPECT_LE((op * lo + lo).norm(), 1e-12);
        EXPECT_LE((op * hi - hi).norm(), 1e-12);
    }
}

TEST(Tsirelson, ClosedFormStates) {
    const auto r = tsirelson_eigenstates();
    ASSERT_TRUE(r.found);
    EXPECT_NEAR(r.lambda_min, -2 * kSqrt2, 1e-10);
    EXPECT_NEAR(r.lambda_max, 2 * kSqrt2, 1e-10);
    EXPECT_LE(r.residual_low, 1e-6);
    EXPECT_LE(r.residual_high, 1e-6);
    EXPECT_NEAR(std::abs(r.expectation_low), 2 * kSqrt2, 1e-6);
    EXPECT_NEAR(std::abs(r.expectation_high), 2 * kSqrt2, 1e-6);
    // Eigenvectors of distinct eigenvalues are orthogonal.
    EXPECT_NEAR(std::abs(r.state_low.dot(r.state_high)), 0.0, 1e-15);
}

}  // namespace
}  // namespace bellpoly
