#pragma once

#include "bellpoly/classical.hpp"
#include "bellpoly/polytope.hpp"

#include <string>

namespace bellpoly::io {

/// {"observables": n, "monomials": [[0,1], ...], "labels": [...]} (labels optional).
/// Throws InputError for malformed documents and InvalidScenario for bad content.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);

/// "sz" and "chsh" name the built-in scenarios; anything else is a file path.
Scenario load_scenario(const std::string& alias_or_path);

/// {"facets": [{"a": [...], "b": 1}, ...]} with integer coefficients.
std::string hrep_to_json(const HRepresentation& h);
HRepresentation hrep_from_json(const std::string& text);

/// {"weights": {"+++": "1/2", "--+": "1/2"}}. Values are rational strings;
/// plain JSON numbers are accepted as doubles. Omitted ball types weigh 0.
UrnDistribution urn_from_json(const std::string& text);

UrnDistribution load_urn(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace bellpoly::io
