#pragma once

#include "bellpoly/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace bellpoly {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Absolute tolerance on max |A - A^dagger| for a matrix to count as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

enum class Axis { x, y, z };
enum class Sign { plus, minus };

/// Measurement direction in spherical coordinates. phi is normalized to
/// [0, 2 pi); theta is any real so planar scans may leave [0, pi].
class Direction {
public:
    Direction() = default;
    explicit Direction(double theta, double phi = 0.0);

    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }

    /// Unit vector (sin t cos p, sin t sin p, cos t).
    Eigen::Vector3d unit_vector() const;

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Normalized state vector of one or two qubits.
class PureState {
public:
    /// Normalizes `amplitudes`. Throws DimensionMismatch unless the length is 2
    /// or 4, and DomainError for a zero or non-finite vector.
    explicit PureState(ComplexVector amplitudes);

    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Eigen::Index size() const noexcept { return amplitudes_.size(); }

private:
    ComplexVector amplitudes_;
};

bool is_hermitian(const ComplexMatrix& a, double tolerance = kHermitianTolerance);

ComplexMatrix pauli(Axis axis);
ComplexMatrix identity2();

/// sigma_x sin t cos p + sigma_y sin t sin p + sigma_z cos t
ComplexMatrix spin_operator(const Direction& d);

/// (I +- sigma(d)) / 2
ComplexMatrix projector(Sign sign, const Direction& d);

/// Block layout: result(i*p + k, j*q + l) = a(i, j) * b(k, l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma(d1) (x) sigma(d2); particle one measures along d1.
ComplexMatrix correlation_operator(const Direction& d1, const Direction& d2);

/// <psi|A|psi>. Throws DimensionMismatch or NotHermitian.
double expectation(const PureState& state, const ComplexMatrix& op);

/// (0, 1, -1, 0) / sqrt 2
PureState singlet_state();

/// -[cos t1 cos t2 + cos(p1 - p2) sin t1 sin t2]
double singlet_correlation(const Direction& d1, const Direction& d2);

/// Classical fragment correlation -1 + 2 theta / pi. Throws DomainError
/// outside [0, pi].
double fragment_correlation(double theta);

/// Monte Carlo estimate of the fragment correlation. Each draw picks a planar
/// angle lambda uniformly in [0, 2 pi) and records sign(cos lambda) times
/// -sign(cos(lambda - theta)). Throws DomainError for theta outside [0, pi]
/// or samples == 0.
double fragment_monte_carlo(double theta, std::uint64_t samples, SplitMix64& rng);

/// Extrema of E(theta) - F(theta) = -1 + 2 theta / pi + cos theta on [0, pi].
struct DeviationExtrema {
    double theta_low = 0.0;           ///< arcsin(2 / pi)
    double theta_high = 0.0;          ///< pi - arcsin(2 / pi)
    double max_abs_deviation = 0.0;   ///< closed form
    double deviation_at_low = 0.0;    ///< D(theta_low), positive
    double deviation_at_high = 0.0;   ///< D(theta_high), negative
    double scan_max_abs_deviation = 0.0;
    double scan_argmax = 0.0;
};

/// E(theta) - F(theta) for the singlet.
double classical_quantum_deviation(double theta);

/// Closed-form stationary points and magnitude, cross-checked against a dense
/// scan of 200001 points. Throws NumericError if the two disagree by more
/// than 1e-8.
DeviationExtrema deviation_extrema();

}  // namespace bellpoly
