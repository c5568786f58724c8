#include "bellpoly/quantum.hpp"

#include "bellpoly/error.hpp"

#include <cmath>
#include <string>

namespace bellpoly {

namespace {

constexpr Complex kI{0.0, 1.0};

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

Direction::Direction(double theta, double phi) : theta_(theta) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw DomainError("direction angles must be finite");
    }
    phi_ = std::fmod(phi, 2.0 * kPi);
    if (phi_ < 0.0) {
        phi_ += 2.0 * kPi;
    }
    if (phi_ >= 2.0 * kPi) {
        phi_ = 0.0;
    }
}

Eigen::Vector3d Direction::unit_vector() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_),
            std::cos(theta_)};
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != 2 && amplitudes_.size() != 4) {
        throw DimensionMismatch("pure states have 2 or 4 amplitudes, got " +
                                std::to_string(amplitudes_.size()));
    }
    const double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
        throw DomainError("cannot normalize a zero or non-finite state");
    }
    amplitudes_ /= norm;
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix pauli(Axis axis) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (axis) {
    case Axis::x:
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case Axis::y:
        m(0, 1) = -kI;
        m(1, 0) = kI;
        break;
    case Axis::z:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    }
    return m;
}

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix spin_operator(const Direction& d) {
    const double st = std::sin(d.theta());
    const double ct = std::cos(d.theta());
    const double cp = std::cos(d.phi());
    const double sp = std::sin(d.phi());
    // Entry-wise form of the Pauli expansion; the diagonal is exactly +-cos t.
    ComplexMatrix m(2, 2);
    m(0, 0) = ct;
    m(1, 1) = -ct;
    m(0, 1) = Complex(st * cp, -st * sp);
    m(1, 0) = Complex(st * cp, st * sp);
    return m;
}

ComplexMatrix projector(Sign sign, const Direction& d) {
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    return 0.5 * (identity2() + s * spin_operator(d));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix correlation_operator(const Direction& d1, const Direction& d2) {
    return kron(spin_operator(d1), spin_operator(d2));
}

double expectation(const PureState& state, const ComplexMatrix& op) {
    if (op.rows() != op.cols() || op.rows() != state.size()) {
        throw DimensionMismatch("operator is " + std::to_string(op.rows()) + "x" +
                                std::to_string(op.cols()) + ", state has " +
                                std::to_string(state.size()) + " amplitudes");
    }
    if (!is_hermitian(op)) {
        throw NotHermitian("expectation requires a Hermitian operator");
    }
    const auto& psi = state.amplitudes();
    const Complex value = psi.dot(op * psi);  // dot conjugates its left argument
    const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
    if (std::abs(value.imag()) > 1e-10 * scale) {
        throw NumericError("expectation has an imaginary residue of " +
                           std::to_string(value.imag()));
    }
    return value.real();
}

PureState singlet_state() {
    ComplexVector v(4);
    v << 0.0, 1.0, -1.0, 0.0;
    return PureState(v);
}

double singlet_correlation(const Direction& d1, const Direction& d2) {
    return -(std::cos(d1.theta()) * std::cos(d2.theta()) +
             std::cos(d1.phi() - d2.phi()) * std::sin(d1.theta()) * std::sin(d2.theta()));
}

double fragment_correlation(double theta) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw DomainError("fragment model needs theta in [0, pi]");
    }
    return -1.0 + 2.0 * theta / kPi;
}

double fragment_monte_carlo(double theta, std::uint64_t samples, SplitMix64& rng) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw DomainError("fragment model needs theta in [0, pi]");
    }
    if (samples == 0) {
        throw DomainError("fragment model needs at least one sample");
    }
    long long sum = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double lambda = 2.0 * kPi * rng.uniform01();
        const double a = sign_of(std::cos(lambda));
        const double b = -sign_of(std::cos(lambda - theta));
        sum += static_cast<long long>(a * b);
    }
    return static_cast<double>(sum) / static_cast<double>(samples);
}

double classical_quantum_deviation(double theta) {
    return -1.0 + 2.0 * theta / kPi + std::cos(theta);
}

DeviationExtrema deviation_extrema() {
    const double ratio = 2.0 / kPi;
    DeviationExtrema out;
    out.theta_low = std::asin(ratio);
    out.theta_high = kPi - out.theta_low;
    out.max_abs_deviation = std::sqrt(1.0 - ratio * ratio) - ratio * std::acos(ratio);
    out.deviation_at_low = classical_quantum_deviation(out.theta_low);
    out.deviation_at_high = classical_quantum_deviation(out.theta_high);

    constexpr int kScanPoints = 200001;
    for (int i = 0; i < kScanPoints; ++i) {
        const double theta = kPi * i / (kScanPoints - 1);
        const double dev = std::abs(classical_quantum_deviation(theta));
        if (dev > out.scan_max_abs_deviation) {
            out.scan_max_abs_deviation = dev;
            out.scan_argmax = theta;
        }
    }
    if (std::abs(out.scan_max_abs_deviation - out.max_abs_deviation) > 1e-8) {
        throw NumericError("closed-form deviation extremum disagrees with the scan");
    }
    return out;
}

}  // namespace bellpoly
