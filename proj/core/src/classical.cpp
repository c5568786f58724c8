#include "bellpoly/classical.hpp"

#include "bellpoly/error.hpp"
#include "bellpoly/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace bellpoly {

namespace {

void check_observables(int observables) {
    if (observables < 1 || observables > kMaxUrnObservables) {
        throw InvalidUrn("urn models support 1.." + std::to_string(kMaxUrnObservables) +
                         " observables");
    }
}

std::size_t ball_count(int observables) { return std::size_t{1} << observables; }

}  // namespace

BallType::BallType(std::vector<int> signs) : signs_(std::move(signs)) {
    if (signs_.empty() || signs_.size() > static_cast<std::size_t>(kMaxUrnObservables)) {
        throw InvalidUrn("ball type needs 1.." + std::to_string(kMaxUrnObservables) + " signs");
    }
    for (int s : signs_) {
        if (s != 1 && s != -1) {
            throw InvalidUrn("ball type entries must be +1 or -1");
        }
    }
}

BallType BallType::parse(const std::string& text) {
    static const std::string kUnicodeMinus = "\xE2\x88\x92";
    std::vector<int> signs;
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] == '+') {
            signs.push_back(1);
            ++i;
        } else if (text[i] == '-') {
            signs.push_back(-1);
            ++i;
        } else if (text.compare(i, kUnicodeMinus.size(), kUnicodeMinus) == 0) {
            signs.push_back(-1);
            i += kUnicodeMinus.size();
        } else {
            throw InvalidUrn("ball type '" + text + "' must use only + and -");
        }
    }
    return BallType(std::move(signs));
}

std::uint32_t BallType::index() const noexcept {
    std::uint32_t index = 0;
    for (int s : signs_) {
        index = (index << 1U) | (s < 0 ? 1U : 0U);
    }
    return index;
}

BallType BallType::from_index(std::uint32_t index, int observables) {
    std::vector<int> signs(static_cast<std::size_t>(observables));
    for (int i = 0; i < observables; ++i) {
        const int bit = observables - 1 - i;
        signs[static_cast<std::size_t>(i)] = ((index >> bit) & 1U) ? -1 : 1;
    }
    return BallType(std::move(signs));
}

std::string BallType::str() const {
    std::string out;
    for (int s : signs_) {
        out += s > 0 ? '+' : '-';
    }
    return out;
}

UrnDistribution::UrnDistribution(int observables, std::vector<Rational> weights)
    : observables_(observables), weights_(std::move(weights)) {
    check_observables(observables_);
    if (weights_.size() != ball_count(observables_)) {
        throw InvalidUrn("expected " + std::to_string(ball_count(observables_)) + " weights");
    }
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) {
            throw InvalidUrn("urn weights must be non-negative");
        }
        total += w;
    }
    if (total != 1) {
        throw InvalidUrn("urn weights sum to " + to_string(total) + ", not 1");
    }
}

UrnDistribution UrnDistribution::from_weights(int observables,
                                              const std::map<std::string, Rational>& weights) {
    check_observables(observables);
    std::vector<Rational> dense(ball_count(observables), Rational(0));
    std::vector<bool> given(dense.size(), false);
    for (const auto& [key, value] : weights) {
        const BallType ball = BallType::parse(key);
        if (ball.signs().size() != static_cast<std::size_t>(observables)) {
            throw InvalidUrn("ball type '" + key + "' does not have " +
                             std::to_string(observables) + " signs");
        }
        if (given[ball.index()]) {
            throw InvalidUrn("ball type '" + key + "' listed twice");
        }
        given[ball.index()] = true;
        dense[ball.index()] = value;
    }
    return UrnDistribution(observables, std::move(dense));
}

UrnDistribution UrnDistribution::from_double_weights(int observables,
                                                     const std::map<std::string, double>& weights) {
    double total = 0.0;
    std::map<std::string, Rational> exact;
    for (const auto& [key, value] : weights) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw InvalidUrn("urn weights must be finite and non-negative");
        }
        total += value;
        exact.emplace(key, from_double(value));
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidUrn("urn weights must sum to 1 within 1e-12");
    }
    Rational exact_total = 0;
    for (const auto& entry : exact) {
        exact_total += entry.second;
    }
    for (auto& entry : exact) {
        entry.second /= exact_total;
    }
    return from_weights(observables, exact);
}

UrnDistribution UrnDistribution::uniform(int observables) {
    check_observables(observables);
    const std::size_t count = ball_count(observables);
    return UrnDistribution(observables,
                           std::vector<Rational>(count, Rational(1, static_cast<long>(count))));
}

Rational exact_pairwise_expectation(const UrnDistribution& urn, std::pair<int, int> pair) {
    const auto [i, j] = pair;
    const int n = urn.observables();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
        throw InvalidPair("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is not two distinct observables of a " + std::to_string(n) +
                          "-observable urn");
    }
    const int bit_i = n - 1 - i;
    const int bit_j = n - 1 - j;
    Rational sum = 0;
    const auto& w = urn.weights();
    for (std::uint32_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0) {
            continue;
        }
        const bool differ = (((k >> bit_i) ^ (k >> bit_j)) & 1U) != 0;
        sum += differ ? -w[k] : w[k];
    }
    return sum;
}

Rational exact_marginal(const UrnDistribution& urn, int observable) {
    const int n = urn.observables();
    if (observable < 0 || observable >= n) {
        throw InvalidPair("observable index out of range");
    }
    const int bit = n - 1 - observable;
    Rational sum = 0;
    const auto& w = urn.weights();
    for (std::uint32_t k = 0; k < w.size(); ++k) {
        sum += ((k >> bit) & 1U) ? -w[k] : w[k];
    }
    return sum;
}

RationalVector correlation_point(const UrnDistribution& urn, const Scenario& scenario) {
    RationalVector point;
    point.reserve(scenario.dimension());
    for (const auto& m : scenario.monomials()) {
        if (m.size() != 2) {
            throw UnsupportedMonomialOrder("urn correlation points need pair monomials");
        }
        point.push_back(exact_pairwise_expectation(urn, {m[0], m[1]}));
    }
    return point;
}

UrnDistribution mixture(const std::vector<UrnDistribution>& urns,
                        const std::vector<Rational>& weights) {
    if (urns.empty() || urns.size() != weights.size()) {
        throw InvalidUrn("need one mixture weight per urn");
    }
    const int n = urns.front().observables();
    std::vector<Rational> combined(ball_count(n), Rational(0));
    for (std::size_t u = 0; u < urns.size(); ++u) {
        if (urns[u].observables() != n) {
            throw InvalidUrn("mixed urns must share the observable count");
        }
        for (std::size_t k = 0; k < combined.size(); ++k) {
            combined[k] += weights[u] * urns[u].weights()[k];
        }
    }
    return UrnDistribution(n, std::move(combined));
}

UrnSample sample_urn(const UrnDistribution& urn, const Scenario& scenario, std::uint64_t draws,
                     SplitMix64& rng) {
    if (draws == 0) {
        throw DomainError("sampling needs at least one draw");
    }
    const int n = urn.observables();
    // Validates the scenario against the urn before drawing.
    correlation_point(UrnDistribution::uniform(n), scenario);

    const auto& w = urn.weights();
    std::vector<double> cumulative;
    cumulative.reserve(w.size());
    Rational running = 0;
    for (const auto& x : w) {
        running += x;
        cumulative.push_back(to_double(running));
    }

    UrnSample out;
    out.draws = draws;
    out.counts.assign(w.size(), 0);
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double u = rng.uniform01();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        ++out.counts[static_cast<std::size_t>(it - cumulative.begin())];
    }

    for (const auto& m : scenario.monomials()) {
        const int bit_i = n - 1 - m[0];
        const int bit_j = n - 1 - m[1];
        long long sum = 0;
        for (std::uint32_t k = 0; k < out.counts.size(); ++k) {
            const bool differ = (((k >> bit_i) ^ (k >> bit_j)) & 1U) != 0;
            const auto c = static_cast<long long>(out.counts[k]);
            sum += differ ? -c : c;
        }
        out.empirical.push_back(static_cast<double>(sum) / static_cast<double>(draws));
    }
    return out;
}

SpeckerReport specker_check(const std::vector<double>& correlations, const HRepresentation& h) {
    RationalVector point;
    point.reserve(correlations.size());
    for (double x : correlations) {
        point.push_back(from_double(x));
    }
    SpeckerReport out;
    out.membership = membership(h, point);
    for (const auto& m : out.membership.margins) {
        out.margins.push_back(to_double(m));
    }
    out.worst_margin = to_double(out.membership.worst_margin);
    return out;
}

SingletProfile singlet_sz_profile(double theta) {
    if (!(theta >= 0.0)) {
        throw DomainError("singlet profile needs theta >= 0");
    }
    const Direction x(0.0);
    const Direction y(theta);
    const Direction z(2.0 * theta);
    SingletProfile out;
    out.theta = theta;
    out.correlations = {singlet_correlation(x, y), singlet_correlation(x, z),
                        singlet_correlation(y, z)};
    out.sz_sum = -2.0 * std::cos(theta) - std::cos(2.0 * theta);
    out.classical_violated = out.sz_sum < -1.0;
    return out;
}

double sz_threshold_angle() { return std::acos((std::sqrt(5.0) - 1.0) / 2.0); }

}  // namespace bellpoly
