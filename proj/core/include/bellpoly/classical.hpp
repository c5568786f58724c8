#pragma once

#include "bellpoly/polytope.hpp"
#include "bellpoly/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bellpoly {

inline constexpr int kMaxUrnObservables = 20;

/// Pre-assigned outcome (+1 or -1) for every observable color of a ball.
class BallType {
public:
    /// Throws InvalidUrn for entries other than +-1.
    explicit BallType(std::vector<int> signs);

    /// Parses a string over {+, -}; the Unicode minus sign is accepted too.
    static BallType parse(const std::string& text);

    /// Position in the fixed order: lexicographic in signs, + before -, so
    /// observable 0 is the most significant bit.
    std::uint32_t index() const noexcept;
    static BallType from_index(std::uint32_t index, int observables);

    const std::vector<int>& signs() const noexcept { return signs_; }
    std::string str() const;

private:
    std::vector<int> signs_;
};

/// Probabilities over the 2^n ball types of a generalized urn model.
class UrnDistribution {
public:
    /// Dense weights in BallType order. Throws InvalidUrn unless all are
    /// non-negative and they sum to exactly 1.
    UrnDistribution(int observables, std::vector<Rational> weights);

    static UrnDistribution from_weights(int observables,
                                        const std::map<std::string, Rational>& weights);

    /// Doubles must be non-negative and sum to 1 within 1e-12; they are made
    /// exact and renormalized exactly.
    static UrnDistribution from_double_weights(int observables,
                                               const std::map<std::string, double>& weights);

    static UrnDistribution uniform(int observables);

    int observables() const noexcept { return observables_; }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    const Rational& weight(const BallType& ball) const { return weights_.at(ball.index()); }

private:
    int observables_;
    std::vector<Rational> weights_;
};

/// sum over balls of lambda * s_i * s_j. Throws InvalidPair for i == j or an
/// index outside the urn.
Rational exact_pairwise_expectation(const UrnDistribution& urn, std::pair<int, int> pair);

/// sum over balls of lambda * s_i. Not used by membership tests.
Rational exact_marginal(const UrnDistribution& urn, int observable);

/// Pairwise expectations for every monomial. Throws UnsupportedMonomialOrder
/// for non-pair monomials and InvalidPair when the scenario does not fit the urn.
RationalVector correlation_point(const UrnDistribution& urn, const Scenario& scenario);

/// Convex combination sum_k w_k urn_k (weights must be a probability vector).
UrnDistribution mixture(const std::vector<UrnDistribution>& urns, const std::vector<Rational>& weights);

struct UrnSample {
    std::vector<double> empirical;     ///< mean pairwise product per monomial
    std::vector<std::uint64_t> counts; ///< draws per ball type, in BallType order
    std::uint64_t draws = 0;
};

/// Independent draws by inverse CDF over the ball-type order. Throws
/// DomainError when draws == 0.
UrnSample sample_urn(const UrnDistribution& urn, const Scenario& scenario, std::uint64_t draws,
                     SplitMix64& rng);

struct SpeckerReport {
    MembershipReport membership;
    std::vector<double> margins;
    double worst_margin = 0.0;
};

/// Membership of a real correlation vector, evaluated exactly after
/// converting each double to its exact rational value.
SpeckerReport specker_check(const std::vector<double>& correlations, const HRepresentation& h);

struct SingletProfile {
    double theta = 0.0;
    std::vector<double> correlations;  ///< E(X,Y), E(X,Z), E(Y,Z)
    double sz_sum = 0.0;               ///< -2 cos t - cos 2t
    bool classical_violated = false;   ///< sz_sum < -1
};

/// Singlet correlations for planar directions 0, t, 2t. Throws DomainError for t < 0.
SingletProfile singlet_sz_profile(double theta);

/// arccos((sqrt 5 - 1) / 2): above it the singlet satisfies the all-plus facet.
double sz_threshold_angle();

}  // namespace bellpoly
