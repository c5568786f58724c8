#include "bellpoly/spectral.hpp"

#include "bellpoly/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace bellpoly {

namespace {

using Matrix4 = Eigen::Matrix4cd;

// One row-cyclic sweep sequence of complex Jacobi rotations on a Hermitian
// matrix. When `v` is non-null it accumulates the rotations as columns.
template <class Mat>
int jacobi(Mat& a, Mat* v) {
    const Eigen::Index n = a.rows();
    const double norm = a.norm();
    if (norm == 0.0) {
        return 0;
    }
    const double target = 1e-13 * norm;
    for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = 0; q < n; ++q) {
                if (p != q) {
                    off += std::norm(a(p, q));
                }
            }
        }
        if (std::sqrt(off) <= target) {
            return sweep;
        }
        if (sweep == kMaxJacobiSweeps) {
            break;
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const Complex phase = std::conj(apq) / g;  // e^{-i alpha}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double ratio = (aqq - app) / (2.0 * g);
                const double t = (ratio >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(ratio) + std::sqrt(ratio * ratio + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J restricted to (p, q): [[c, s], [-s e^{-ia}, c e^{-ia}]]
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase;
                const Complex jqq = c * phase;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (v != nullptr) {
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const Complex vkp = (*v)(k, p);
                        const Complex vkq = (*v)(k, q);
                        (*v)(k, p) = vkp * jpp + vkq * jqp;
                        (*v)(k, q) = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    throw NoConvergence("Jacobi iteration did not converge in " +
                        std::to_string(kMaxJacobiSweeps) + " sweeps");
}

void require_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("eigensolver needs a square matrix");
    }
    if (a.rows() < 1 || a.rows() > kMaxEigenDimension) {
        throw DimensionMismatch("eigensolver supports dimensions 1.." +
                                std::to_string(kMaxEigenDimension));
    }
    if (!is_hermitian(a)) {
        throw NotHermitian("eigensolver input is not Hermitian");
    }
}

std::vector<double> sorted_diagonal(const Matrix4& a) {
    std::vector<double> values(4);
    for (int i = 0; i < 4; ++i) {
        values[static_cast<std::size_t>(i)] = a(i, i).real();
    }
    std::sort(values.begin(), values.end());
    return values;
}

// Extreme eigenvalues of a two-qubit operator without eigenvectors.
std::pair<double, double> extreme_values(Matrix4 a) {
    a = (0.5 * (a + a.adjoint())).eval();
    jacobi(a, static_cast<Matrix4*>(nullptr));
    const auto values = sorted_diagonal(a);
    return {values.front(), values.back()};
}

}  // namespace

std::vector<Eigen::Index> EigenSystem::cluster(double value, double tolerance) const {
    std::vector<Eigen::Index> out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (std::abs(values[k] - value) <= tolerance) {
            out.push_back(static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

ComplexMatrix EigenSystem::eigenspace_projector(double value, double tolerance) const {
    ComplexMatrix p = ComplexMatrix::Zero(vectors.rows(), vectors.rows());
    for (auto k : cluster(value, tolerance)) {
        p += vectors.col(k) * vectors.col(k).adjoint();
    }
    return p;
}

EigenSystem eigh(const ComplexMatrix& a) {
    require_hermitian(a);
    const Eigen::Index n = a.rows();
    ComplexMatrix work = 0.5 * (a + a.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    EigenSystem out;
    out.sweeps = jacobi(work, &v);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
        return work(l, l).real() < work(r, r).real();
    });
    out.values.reserve(order.size());
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values.push_back(work(src, src).real());
        ComplexVector col = v.col(src);
        col.normalize();
        const double largest = col.cwiseAbs().maxCoeff();
        Eigen::Index lead = 0;
        while (col(lead).real() * col(lead).real() + col(lead).imag() * col(lead).imag() <
               (largest - 1e-12) * (largest - 1e-12)) {
            ++lead;
        }
        col *= std::conj(col(lead)) / std::abs(col(lead));
        col(lead) = std::abs(col(lead));
        out.vectors.col(k) = col;
    }
    return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& a) {
    require_hermitian(a);
    ComplexMatrix work = 0.5 * (a + a.adjoint());
    jacobi(work, static_cast<ComplexMatrix*>(nullptr));
    std::vector<double> values(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        values[static_cast<std::size_t>(k)] = work(k, k).real();
    }
    std::sort(values.begin(), values.end());
    return values;
}

ComplexMatrix span_projector(const ComplexMatrix& columns) {
    const ComplexMatrix gram = columns.adjoint() * columns;
    return columns * gram.ldlt().solve(columns.adjoint());
}

double projector_distance(const ComplexMatrix& p, const ComplexMatrix& q) { return (p - q).norm(); }

double span_residual(const ComplexMatrix& p, const ComplexVector& x) {
    const ComplexVector unit = x.normalized();
    return (unit - p * unit).norm();
}

ComplexMatrix particle_swap() {
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
}

ComplexMatrix facet_operator(const std::vector<double>& coefficients,
                             const std::vector<ComplexMatrix>& operators) {
    if (coefficients.size() != operators.size() || operators.empty()) {
        throw DimensionMismatch("need one coefficient per operator");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(operators.front().rows(), operators.front().cols());
    for (std::size_t k = 0; k < operators.size(); ++k) {
        if (operators[k].rows() != sum.rows() || operators[k].cols() != sum.cols()) {
            throw DimensionMismatch("operators differ in shape");
        }
        sum += coefficients[k] * operators[k];
    }
    return sum;
}

ComplexMatrix facet_operator(const RationalVector& coefficients,
                             const std::vector<ComplexMatrix>& operators) {
    std::vector<double> c;
    c.reserve(coefficients.size());
    for (const auto& x : coefficients) {
        c.push_back(to_double(x));
    }
    return facet_operator(c, operators);
}

ComplexMatrix sz_operator(double theta) {
    const Direction x(0.0);
    const Direction y(theta);
    const Direction z(2.0 * theta);
    return correlation_operator(x, y) + correlation_operator(x, z) + correlation_operator(y, z);
}

double sz_mu1(double theta) { return -std::sqrt(5.0 + 4.0 * std::cos(theta)); }

double sz_mu2(double theta) { return -(1.0 + 2.0 * std::cos(theta)); }

SzClosedForms sz_closed_forms(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double a = 2.0 * (c + 1.0) * s;
    const double b = 2.0 * c + std::cos(2.0 * theta) + std::sqrt(5.0 + 4.0 * c);
    SzClosedForms out;
    out.x1_swapped_order = ComplexVector(4);
    out.x1_swapped_order << a, b, -b, a;
    out.x1 = particle_swap() * out.x1_swapped_order;
    out.x2 = ComplexVector(4);
    out.x2 << -s, c, c, s;
    return out;
}

ClosedFormCheck check_closed_form(const EigenSystem& system, double value,
                                  const ComplexVector& vector, double cluster_tolerance) {
    ClosedFormCheck out;
    out.closed_value = value;
    out.computed_value = *std::min_element(
        system.values.begin(), system.values.end(),
        [&](double l, double r) { return std::abs(l - value) < std::abs(r - value); });
    const auto members = system.cluster(out.computed_value, cluster_tolerance);
    out.multiplicity = members.size();
    out.vector_defined = vector.norm() > 1e-12;
    if (!out.vector_defined) {
        out.subspace_error = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const ComplexMatrix eigenspace =
        system.eigenspace_projector(out.computed_value, cluster_tolerance);
    if (out.multiplicity == 1) {
        out.subspace_error = projector_distance(span_projector(vector), eigenspace);
    } else {
        out.subspace_error = span_residual(eigenspace, vector);
    }
    return out;
}

SzSpectrum sz_spectrum(double theta) {
    SzSpectrum out;
    out.theta = theta;
    out.system = eigh(sz_operator(theta));
    const auto forms = sz_closed_forms(theta);
    out.mu1 = check_closed_form(out.system, sz_mu1(theta), forms.x1);
    out.mu2 = check_closed_form(out.system, sz_mu2(theta), forms.x2);
    for (const auto* check : {&out.mu1, &out.mu2}) {
        if (std::abs(check->computed_value - check->closed_value) > 1e-9) {
            throw NumericError("closed-form eigenvalue " + std::to_string(check->closed_value) +
                               " missing from the spectrum at theta = " + std::to_string(theta));
        }
    }
    out.degenerate = out.mu1.multiplicity > 1 || out.mu2.multiplicity > 1;
    return out;
}

namespace {

// A facet over a pairwise scenario with its classical range precomputed.
class BoundProblem {
public:
    BoundProblem(const Facet& facet, const Scenario& scenario)
        : observables_(scenario.observable_count()) {
        if (facet.normal.size() != scenario.dimension()) {
            throw DimensionMismatch("facet has " + std::to_string(facet.normal.size()) +
                                    " coefficients, scenario has " +
                                    std::to_string(scenario.dimension()) + " monomials");
        }
        for (const auto& m : scenario.monomials()) {
            if (m.size() != 2) {
                throw UnsupportedMonomialOrder(
                    "quantum bounds need two-partite monomials, got order " +
                    std::to_string(m.size()));
            }
            pairs_.emplace_back(m[0], m[1]);
        }
        for (const auto& a : facet.normal) {
            coefficients_.push_back(to_double(a));
        }
        const auto v = enumerate_vertices(scenario);
        for (std::size_t i = 0; i < v.vertices.size(); ++i) {
            const Rational value = dot(facet.normal, v.vertices[i]);
            if (i == 0 || value < classical_min_) {
                classical_min_ = value;
            }
            if (i == 0 || value > classical_max_) {
                classical_max_ = value;
            }
        }
        classical_min_d_ = to_double(classical_min_);
        classical_max_d_ = to_double(classical_max_);
    }

    int observables() const noexcept { return observables_; }

    Matrix4 assemble(const std::vector<Direction>& directions) const {
        if (directions.size() != static_cast<std::size_t>(observables_)) {
            throw DimensionMismatch("need one direction per observable");
        }
        std::vector<ComplexMatrix> spins;
        spins.reserve(directions.size());
        for (const auto& d : directions) {
            spins.push_back(spin_operator(d));
        }
        return assemble_spins(spins);
    }

    Matrix4 assemble_spins(const std::vector<ComplexMatrix>& spins) const {
        Matrix4 sum = Matrix4::Zero();
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            const auto& a = spins[static_cast<std::size_t>(pairs_[k].first)];
            const auto& b = spins[static_cast<std::size_t>(pairs_[k].second)];
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    sum.block<2, 2>(2 * i, 2 * j) += (coefficients_[k] * a(i, j)) * b;
                }
            }
        }
        return sum;
    }

    double violation(double lambda_min, double lambda_max) const {
        return std::max({classical_min_d_ - lambda_min, lambda_max - classical_max_d_, 0.0});
    }

    double objective(const std::vector<Direction>& directions) const {
        const auto [lo, hi] = extreme_values(assemble(directions));
        return violation(lo, hi);
    }

    BoundReport report(const std::vector<Direction>& directions) const {
        const ComplexMatrix op = assemble(directions);
        const EigenSystem system = eigh(op);
        BoundReport out;
        out.lambda_min = system.values.front();
        out.lambda_max = system.values.back();
        out.state_min = system.vectors.col(0);
        out.state_max = system.vectors.col(system.vectors.cols() - 1);
        out.classical_min = classical_min_;
        out.classical_max = classical_max_;
        out.violation = violation(out.lambda_min, out.lambda_max);
        const double tol = 1e-9 * std::max(1.0, op.norm());
        out.min_multiplicity = system.cluster(out.lambda_min, tol).size();
        out.max_multiplicity = system.cluster(out.lambda_max, tol).size();
        for (const auto& [i, j] : pairs_) {
            const auto& di = directions[static_cast<std::size_t>(i)];
            const auto& dj = directions[static_cast<std::size_t>(j)];
            if ((di.unit_vector() - dj.unit_vector()).norm() <= 1e-12) {
                out.coincident_directions = true;
            }
        }
        return out;
    }

private:
    int observables_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<double> coefficients_;
    Rational classical_min_;
    Rational classical_max_;
    double classical_min_d_ = 0.0;
    double classical_max_d_ = 0.0;
};

constexpr double kGridStep = kPi / 60.0;
constexpr std::size_t kMaxGridPoints = 2'000'000;
constexpr double kMinStep = 1e-8;
constexpr int kMaxPasses = 200;

struct Search {
    std::vector<double> best;
    double value = -std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
};

// Pattern search: each pass tries +-step on every coordinate in order and
// keeps the first improvement; a pass without improvement halves the step.
template <class Objective>
void coordinate_descent(Search& search, double step, double lower, double upper,
                        const Objective& f) {
    while (step >= kMinStep && search.iterations < static_cast<std::size_t>(kMaxPasses)) {
        bool improved = false;
        for (std::size_t i = 0; i < search.best.size(); ++i) {
            for (const double delta : {step, -step}) {
                auto trial = search.best;
                trial[i] = std::clamp(trial[i] + delta, lower, upper);
                if (trial[i] == search.best[i]) {
                    continue;
                }
                const double value = f(trial);
                ++search.evaluations;
                if (value > search.value + 1e-14) {
                    search.best = std::move(trial);
                    search.value = value;
                    improved = true;
                    break;
                }
            }
        }
        ++search.iterations;
        if (!improved) {
            step *= 0.5;
        }
    }
}

// Rotation taking d0 to the north pole, applied to every direction.
std::vector<Direction> to_gauge(const std::vector<Direction>& dirs) {
    const Eigen::Quaterniond rotation =
        Eigen::Quaterniond::FromTwoVectors(dirs.front().unit_vector(), Eigen::Vector3d::UnitZ());
    std::vector<Direction> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) {
        const Eigen::Vector3d u = rotation * d.unit_vector();
        const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
        const double phi = std::atan2(u.y(), u.x());
        out.emplace_back(theta, phi);
    }
    return out;
}

}  // namespace

BoundReport quantum_bound(const Facet& facet, const std::vector<Direction>& directions,
                          const Scenario& scenario) {
    return BoundProblem(facet, scenario).report(directions);
}

OptimizationResult optimize_angles(const Facet& facet, const Scenario& scenario,
                                   const std::vector<Direction>& initial, AngleMode mode) {
    const BoundProblem problem(facet, scenario);
    const int n = problem.observables();
    const std::size_t free_planar = static_cast<std::size_t>(n - 1);
    const bool spherical = mode == AngleMode::spherical;

    // Parameters: theta_1..theta_{n-1}, then phi_1..phi_{n-1} in spherical mode.
    auto directions_of = [&](const std::vector<double>& params) {
        std::vector<Direction> dirs;
        dirs.reserve(static_cast<std::size_t>(n));
        dirs.emplace_back(0.0, 0.0);
        for (std::size_t i = 0; i < free_planar; ++i) {
            dirs.emplace_back(params[i], spherical ? params[free_planar + i] : 0.0);
        }
        return dirs;
    };
    auto objective = [&](const std::vector<double>& params) {
        return problem.objective(directions_of(params));
    };

    Search search;
    search.best.assign(spherical ? 2 * free_planar : free_planar, 0.0);

    // Coarse planar grid, shrinking the step only if the grid would be huge.
    std::size_t per_axis = static_cast<std::size_t>(std::llround(2.0 * kPi / kGridStep));
    double grid_step = kGridStep;
    while (free_planar > 0 && std::pow(static_cast<double>(per_axis),
                                       static_cast<double>(free_planar)) > kMaxGridPoints) {
        per_axis /= 2;
        grid_step = 2.0 * kPi / static_cast<double>(per_axis);
    }
    std::vector<ComplexMatrix> spin_table;
    spin_table.reserve(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k) {
        spin_table.push_back(spin_operator(Direction(static_cast<double>(k) * grid_step)));
    }
    const ComplexMatrix pinned = spin_operator(Direction(0.0));
    std::vector<std::size_t> index(free_planar, 0);
    std::vector<ComplexMatrix> spins(static_cast<std::size_t>(n), pinned);
    while (true) {
        for (std::size_t i = 0; i < free_planar; ++i) {
            spins[i + 1] = spin_table[index[i]];
        }
        const auto [lo, hi] = extreme_values(problem.assemble_spins(spins));
        const double value = problem.violation(lo, hi);
        ++search.evaluations;
        if (value > search.value) {
            search.value = value;
            for (std::size_t i = 0; i < free_planar; ++i) {
                search.best[i] = static_cast<double>(index[i]) * grid_step;
            }
        }
        std::size_t pos = free_planar;
        while (pos > 0 && ++index[pos - 1] == per_axis) {
            index[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) {
            break;
        }
    }

    if (!initial.empty()) {
        if (initial.size() != static_cast<std::size_t>(n)) {
            throw DimensionMismatch("need one initial direction per observable");
        }
        const auto gauged = to_gauge(initial);
        std::vector<double> params(search.best.size(), 0.0);
        for (std::size_t i = 0; i < free_planar; ++i) {
            if (spherical) {
                params[i] = gauged[i + 1].theta();
                params[free_planar + i] = gauged[i + 1].phi();
            } else {
                // Planar directions only differ by a rotation about the y axis.
                params[i] = initial[i + 1].theta() - initial.front().theta();
            }
        }
        const double value = objective(params);
        ++search.evaluations;
        if (value > search.value) {
            search.value = value;
            search.best = std::move(params);
        }
    }

    coordinate_descent(search, grid_step, -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(), objective);

    OptimizationResult out;
    out.directions = directions_of(search.best);
    out.report = problem.report(out.directions);
    out.evaluations = search.evaluations;
    out.iterations = search.iterations;
    return out;
}

EquidistantResult optimize_equidistant(const Facet& facet, const Scenario& scenario) {
    const BoundProblem problem(facet, scenario);
    const int n = problem.observables();
    auto directions_of = [&](const std::vector<double>& params) {
        std::vector<Direction> dirs;
        dirs.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            dirs.emplace_back(static_cast<double>(i) * params[0]);
        }
        return dirs;
    };
    auto objective = [&](const std::vector<double>& params) {
        return problem.objective(directions_of(params));
    };
    Search search;
    search.best = {0.0};
    for (int k = 0; k <= 60; ++k) {
        const std::vector<double> params{std::min(kPi, k * kGridStep)};
        const double value = objective(params);
        ++search.evaluations;
        if (value > search.value) {
            search.value = value;
            search.best = params;
        }
    }
    coordinate_descent(search, kGridStep, 0.0, kPi, objective);

    EquidistantResult out;
    out.theta = search.best.front();
    out.report = problem.report(directions_of(search.best));
    out.evaluations = search.evaluations;
    return out;
}

PairExtremalStates pair_extremal_states(const Direction& d1) {
    if (d1.phi() != 0.0) {
        throw DomainError("pair extremal states are defined for planar directions (phi = 0)");
    }
    const double theta = d1.theta();
    const EigenSystem system = eigh(correlation_operator(Direction(theta), Direction(0.0)));
    PairExtremalStates out;
    out.theta = theta;
    for (int k = 0; k < 2; ++k) {
        out.min_states[static_cast<std::size_t>(k)] = system.vectors.col(k);
        out.max_states[static_cast<std::size_t>(k)] = system.vectors.col(k + 2);
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    out.min_span = ComplexMatrix::Zero(4, 2);
    out.min_span.col(0) << 0.0, c + 1.0, 0.0, s;
    out.min_span.col(1) << c - 1.0, 0.0, s, 0.0;
    out.max_span = ComplexMatrix::Zero(4, 2);
    out.max_span.col(0) << 0.0, c - 1.0, 0.0, s;
    out.max_span.col(1) << c + 1.0, 0.0, s, 0.0;

    // Same spans with each column divided by 2 cos(t/2) or 2 sin(t/2), so no
    // column vanishes at t = 0 or t = pi.
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    ComplexMatrix min_basis = ComplexMatrix::Zero(4, 2);
    min_basis.col(0) << 0.0, ch, 0.0, sh;
    min_basis.col(1) << -sh, 0.0, ch, 0.0;
    ComplexMatrix max_basis = ComplexMatrix::Zero(4, 2);
    max_basis.col(0) << 0.0, -sh, 0.0, ch;
    max_basis.col(1) << ch, 0.0, sh, 0.0;
    out.min_distance = projector_distance(span_projector(min_basis),
                                          system.eigenspace_projector(-1.0, 1e-8));
    out.max_distance = projector_distance(span_projector(max_basis),
                                          system.eigenspace_projector(1.0, 1e-8));
    return out;
}

TsirelsonReport tsirelson_eigenstates() {
    const Scenario scenario = chsh_scenario();
    const Facet facet{Rational(2), {1, 1, 1, -1}};
    const BoundProblem problem(facet, scenario);

    TsirelsonReport out;
    out.state_low = ComplexVector(4);
    out.state_low << -1.0, 1.0, 1.0, 1.0;
    out.state_low.normalize();
    out.state_high = ComplexVector(4);
    out.state_high << -1.0, -1.0, -1.0, 1.0;
    out.state_high.normalize();

    constexpr int kSteps = 16;
    const double step = kPi / 8.0;
    const double kTsirelson = 2.0 * std::sqrt(2.0);
    for (int w = 0; w < kSteps && !out.found; ++w) {
        for (int x = 0; x < kSteps && !out.found; ++x) {
            for (int y = 0; y < kSteps && !out.found; ++y) {
                for (int z = 0; z < kSteps && !out.found; ++z) {
                    ++out.grid_points;
                    const std::vector<Direction> dirs{Direction(w * step), Direction(x * step),
                                                      Direction(y * step), Direction(z * step)};
                    const ComplexMatrix op = problem.assemble(dirs);
                    const EigenSystem system = eigh(op);
                    const double lo = system.values.front();
                    const double hi = system.values.back();
                    if (hi < kTsirelson - 1e-9 || lo > -kTsirelson + 1e-9) {
                        continue;
                    }
                    const ComplexMatrix p_lo = system.eigenspace_projector(lo, 1e-8);
                    const ComplexMatrix p_hi = system.eigenspace_projector(hi, 1e-8);
                    const double direct =
                        std::max(span_residual(p_lo, out.state_low), span_residual(p_hi, out.state_high));
                    const double flipped =
                        std::max(span_residual(p_hi, out.state_low), span_residual(p_lo, out.state_high));
                    if (std::min(direct, flipped) > 1e-6) {
                        continue;
                    }
                    out.found = true;
                    out.angles = {w * step, x * step, y * step, z * step};
                    out.lambda_min = lo;
                    out.lambda_max = hi;
                    out.low_at_minimum = direct <= flipped;
                    out.residual_low = span_residual(out.low_at_minimum ? p_lo : p_hi, out.state_low);
                    out.residual_high = span_residual(out.low_at_minimum ? p_hi : p_lo, out.state_high);
                    out.expectation_low = expectation(PureState(out.state_low), op);
                    out.expectation_high = expectation(PureState(out.state_high), op);
                }
            }
        }
    }
    return out;
}

}  // namespace bellpoly
