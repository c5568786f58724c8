#pragma once

// Reference computations that share no code path with the library.

#include "bellpoly/quantum.hpp"
#include "bellpoly/rational.hpp"

#include <random>
#include <set>
#include <vector>

namespace bellpoly::testing {

/// (b, a_1, ..., a_d) as a primitive integer vector.
using FacetKey = std::vector<Integer>;

/// Every facet of conv(vertices) for a full-dimensional point set: tries the
/// hyperplane through each d-subset of affinely independent points and keeps
/// those with all points on one side.
std::set<FacetKey> brute_force_facets(const RationalMatrix& vertices);

/// Random Hermitian matrix with entries of magnitude up to `scale`.
ComplexMatrix random_hermitian(int dimension, std::mt19937_64& rng, double scale = 1.0);

ComplexVector random_unit_vector(int dimension, std::mt19937_64& rng);

}  // namespace bellpoly::testing
