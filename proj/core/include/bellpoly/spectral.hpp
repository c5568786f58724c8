#pragma once

#include "bellpoly/polytope.hpp"
#include "bellpoly/quantum.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace bellpoly {

inline constexpr int kMaxEigenDimension = 64;
inline constexpr int kMaxJacobiSweeps = 60;

/// Eigenpairs of a Hermitian matrix. values ascend; column k of vectors is
/// the unit eigenvector of values[k], phased so that its largest-magnitude
/// component (lowest index on ties) is real and positive.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
    int sweeps = 0;

    /// Indices k with |values[k] - value| <= tolerance.
    std::vector<Eigen::Index> cluster(double value, double tolerance) const;

    /// Orthogonal projector onto the eigenspace of the cluster around value.
    ComplexMatrix eigenspace_projector(double value, double tolerance) const;
};

/// Cyclic complex Jacobi (row-cyclic pivots) until the off-diagonal Frobenius
/// norm is at most 1e-13 ||A||_F. Throws NotHermitian, DimensionMismatch
/// (non-square or larger than 64) and NoConvergence after 60 sweeps.
EigenSystem eigh(const ComplexMatrix& a);

/// Eigenvalues only, same iteration as eigh.
std::vector<double> eigvalsh(const ComplexMatrix& a);

/// Orthogonal projector onto the column span of `columns` (full column rank).
ComplexMatrix span_projector(const ComplexMatrix& columns);

/// ||P - Q||_F
double projector_distance(const ComplexMatrix& p, const ComplexMatrix& q);

/// ||x - P x|| for x normalized; 0 means x lies in the range of P.
double span_residual(const ComplexMatrix& p, const ComplexVector& x);

/// Exchanges the two qubits: |ab> -> |ba>.
ComplexMatrix particle_swap();

/// sum_k c_k F_k. Throws DimensionMismatch.
ComplexMatrix facet_operator(const std::vector<double>& coefficients,
                             const std::vector<ComplexMatrix>& operators);
ComplexMatrix facet_operator(const RationalVector& coefficients,
                             const std::vector<ComplexMatrix>& operators);

/// F(0, t) + F(0, 2t) + F(t, 2t) with planar directions.
ComplexMatrix sz_operator(double theta);

double sz_mu1(double theta);  ///< -(5 + 4 cos t)^(1/2)
double sz_mu2(double theta);  ///< -(1 + 2 cos t)

/// Closed-form eigenvectors of the equidistant operator. The x1 formula
/// (a, b, -b, a) holds when the first observable of each pair is measured on
/// particle two; under sigma(d1) (x) sigma(d2) its image under particle_swap,
/// (a, -b, b, a), is the eigenvector. x2 is swap-symmetric.
struct SzClosedForms {
    ComplexVector x1_swapped_order;   ///< (a, b, -b, a)
    ComplexVector x1;                 ///< (a, -b, b, a)
    ComplexVector x2;                 ///< (-sin t, cos t, cos t, sin t)
};
SzClosedForms sz_closed_forms(double theta);

/// A closed-form eigenpair compared against the computed spectrum.
struct ClosedFormCheck {
    double closed_value = 0.0;
    double computed_value = 0.0;      ///< nearest computed eigenvalue
    std::size_t multiplicity = 0;     ///< size of the computed cluster
    bool vector_defined = false;      ///< false when the closed-form vector vanishes
    /// Projector distance when the cluster is one-dimensional, otherwise the
    /// residual of the closed-form vector outside the cluster's eigenspace.
    double subspace_error = 0.0;
};

/// Compares (value, vector) against `system`; clusters eigenvalues within
/// `cluster_tolerance`.
ClosedFormCheck check_closed_form(const EigenSystem& system, double value,
                                  const ComplexVector& vector, double cluster_tolerance = 1e-8);

struct SzSpectrum {
    double theta = 0.0;
    EigenSystem system;
    ClosedFormCheck mu1;
    ClosedFormCheck mu2;
    bool degenerate = false;  ///< mu1 or mu2 has multiplicity above one
};

/// Spectrum of sz_operator(theta) with both closed forms checked. Throws
/// NumericError if either closed-form eigenvalue is missing (1e-9).
SzSpectrum sz_spectrum(double theta);

struct BoundReport {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    ComplexVector state_min;
    ComplexVector state_max;
    Rational classical_min;  ///< min of normal . v over the vertices (= -offset on a facet)
    Rational classical_max;
    double violation = 0.0;
    std::size_t min_multiplicity = 1;
    std::size_t max_multiplicity = 1;
    /// Some monomial pairs two observables with identical directions, the
    /// degenerate configuration where perfect correlations are attained.
    bool coincident_directions = false;
};

/// Extreme eigenvalues of sum_k a_k sigma(d_i) (x) sigma(d_j) over the
/// monomials (i, j). Throws DimensionMismatch and UnsupportedMonomialOrder.
BoundReport quantum_bound(const Facet& facet, const std::vector<Direction>& directions,
                          const Scenario& scenario);

enum class AngleMode { planar, spherical };

struct OptimizationResult {
    std::vector<Direction> directions;
    BoundReport report;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
};

/// Maximizes the violation over measurement directions. Observable 0 is
/// pinned to theta = 0. A coarse planar grid (step pi/60 per free angle) is
/// followed by coordinate descent until the step falls below 1e-8 or 200
/// passes; in spherical mode the descent also moves the azimuths. `initial`,
/// when non-empty, is rotated into the gauge and competes with the grid.
OptimizationResult optimize_angles(const Facet& facet, const Scenario& scenario,
                                   const std::vector<Direction>& initial = {},
                                   AngleMode mode = AngleMode::planar);

struct EquidistantResult {
    double theta = 0.0;
    BoundReport report;
    std::size_t evaluations = 0;
};

/// Same search restricted to planar directions 0, t, 2t, ... with t in [0, pi].
EquidistantResult optimize_equidistant(const Facet& facet, const Scenario& scenario);

/// Eigenvectors of F(t, 0; 0, 0) with the closed-form spans they must match.
struct PairExtremalStates {
    double theta = 0.0;
    std::array<ComplexVector, 2> min_states;  ///< eigenvalue -1
    std::array<ComplexVector, 2> max_states;  ///< eigenvalue +1
    ComplexMatrix min_span;                   ///< closed-form basis, as columns
    ComplexMatrix max_span;
    double min_distance = 0.0;  ///< projector distance to the closed form
    double max_distance = 0.0;
};

/// Throws DomainError unless d1.phi() == 0.
PairExtremalStates pair_extremal_states(const Direction& d1);

struct TsirelsonReport {
    bool found = false;  ///< false reports ConventionNotFound
    std::array<double, 4> angles{};  ///< planar W, X, Y, Z
    ComplexVector state_low;   ///< (-1, 1, 1, 1) / 2
    ComplexVector state_high;  ///< (-1, -1, -1, 1) / 2
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double residual_low = 0.0;   ///< of state_low in its extremal eigenspace
    double residual_high = 0.0;
    double expectation_low = 0.0;
    double expectation_high = 0.0;
    bool low_at_minimum = true;  ///< state_low sits in the lambda_min eigenspace
    std::size_t grid_points = 0;
};

/// Scans planar CHSH angles on a pi/8 grid (W outermost) for the first
/// configuration with extreme eigenvalues +-2 sqrt 2 whose extremal
/// eigenspaces contain the two closed-form states with residual at most 1e-6.
TsirelsonReport tsirelson_eigenstates();

}  // namespace bellpoly
