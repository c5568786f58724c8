#include "bellpoly/io.hpp"

#include "bellpoly/error.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace bellpoly::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

json integer_json(const Rational& value) {
    if (denominator(value) != 1) {
        throw InputError("facet coefficient " + to_string(value) + " is not an integer");
    }
    const Integer& n = numerator(value);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min()) {
        return n.str();
    }
    return n.convert_to<long long>();
}

Rational rational_json(const json& value) {
    if (value.is_number_integer()) {
        return Rational(value.get<long long>());
    }
    if (value.is_string()) {
        return parse_rational(value.get<std::string>());
    }
    throw InputError("expected an integer or a rational string");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    const json doc = parse(text);
    try {
        const int n = doc.at("observables").get<int>();
        std::vector<Monomial> monomials = doc.at("monomials").get<std::vector<Monomial>>();
        std::vector<std::string> labels;
        if (doc.contains("labels")) {
            labels = doc.at("labels").get<std::vector<std::string>>();
        }
        return Scenario(n, std::move(monomials), std::move(labels));
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid scenario document: ") + e.what());
    }
}

std::string scenario_to_json(const Scenario& scenario) {
    json doc;
    doc["observables"] = scenario.observable_count();
    doc["monomials"] = scenario.monomials();
    if (!scenario.labels().empty()) {
        doc["labels"] = scenario.labels();
    }
    return doc.dump();
}

Scenario load_scenario(const std::string& alias_or_path) {
    if (alias_or_path == "sz") {
        return sz_scenario();
    }
    if (alias_or_path == "chsh") {
        return chsh_scenario();
    }
    return scenario_from_json(read_file(alias_or_path));
}

std::string hrep_to_json(const HRepresentation& h) {
    json facets = json::array();
    for (const auto& f : h.facets) {
        json a = json::array();
        for (const auto& x : f.normal) {
            a.push_back(integer_json(x));
        }
        facets.push_back({{"a", a}, {"b", integer_json(f.offset)}});
    }
    return json{{"facets", facets}}.dump();
}

HRepresentation hrep_from_json(const std::string& text) {
    const json doc = parse(text);
    HRepresentation h;
    try {
        for (const auto& item : doc.at("facets")) {
            Facet f;
            f.offset = rational_json(item.at("b"));
            for (const auto& x : item.at("a")) {
                f.normal.push_back(rational_json(x));
            }
            if (h.facets.empty()) {
                h.dimension = f.normal.size();
            } else if (f.normal.size() != h.dimension) {
                throw DimensionMismatch("facets differ in dimension");
            }
            h.facets.push_back(std::move(f));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid facet document: ") + e.what());
    }
    return h;
}

UrnDistribution urn_from_json(const std::string& text) {
    const json doc = parse(text);
    try {
        const json& weights = doc.at("weights");
        if (!weights.is_object() || weights.empty()) {
            throw InvalidUrn("urn document needs a non-empty weights object");
        }
        const int n = static_cast<int>(BallType::parse(weights.begin().key()).signs().size());
        bool all_strings = true;
        for (const auto& item : weights.items()) {
            all_strings = all_strings && (item.value().is_string() || item.value().is_number_integer());
        }
        if (all_strings) {
            std::map<std::string, Rational> exact;
            for (const auto& item : weights.items()) {
                exact.emplace(item.key(), rational_json(item.value()));
            }
            return UrnDistribution::from_weights(n, exact);
        }
        std::map<std::string, double> approx;
        for (const auto& item : weights.items()) {
            approx.emplace(item.key(), item.value().get<double>());
        }
        return UrnDistribution::from_double_weights(n, approx);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid urn document: ") + e.what());
    }
}

UrnDistribution load_urn(const std::string& path) { return urn_from_json(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace bellpoly::io
