#include "cli.hpp"

#include "report.hpp"

#include "bellpoly/classical.hpp"
#include "bellpoly/error.hpp"
#include "bellpoly/io.hpp"
#include "bellpoly/polytope.hpp"
#include "bellpoly/quantum.hpp"
#include "bellpoly/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace bellpoly::cli {

using nlohmann::json;

namespace {

#ifndef BELLPOLY_VERSION
#define BELLPOLY_VERSION "0.0.0"
#endif

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string scenario = "sz";
    std::vector<double> angles;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0;
    bool json_format = false;
    bool csv_format = false;
    std::string out_file;

    int facet_index = 0;
    std::vector<std::string> normal;
    std::string offset;

    std::string mode = "planar";
    bool equidistant = false;

    double start = 0.0;
    double stop = kPi;
    int steps = 25;

    std::string urn;
    std::vector<double> point{-1.0, -1.0, -1.0};
    std::optional<double> theta;
    bool optimize = false;
};

json number(const Rational& value) {
    if (denominator(value) == 1 && abs(numerator(value)) < Integer(1) << 62) {
        return numerator(value).convert_to<long long>();
    }
    return to_double(value);
}

json facet_json(const Facet& f) {
    json a = json::array();
    for (const auto& x : f.normal) {
        a.push_back(number(x));
    }
    return {{"a", a}, {"b", number(f.offset)}};
}

json scenario_json(const Scenario& s) { return json::parse(io::scenario_to_json(s)); }

json state_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(json::array({v(i).real(), v(i).imag()}));
    }
    return out;
}

json directions_json(const std::vector<Direction>& dirs) {
    json out = json::array();
    for (const auto& d : dirs) {
        out.push_back(json::array({d.theta(), d.phi()}));
    }
    return out;
}

json doubles_json(const std::vector<double>& values) { return json(values); }

std::string inequality_text(const Facet& f, const Scenario& s) {
    std::ostringstream text;
    bool first = true;
    for (std::size_t k = 0; k < f.normal.size(); ++k) {
        const Rational& a = f.normal[k];
        if (a == 0) {
            continue;
        }
        const Rational magnitude = abs(a);
        text << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (magnitude != 1) {
            text << to_string(magnitude) << " ";
        }
        text << s.monomial_name(k);
        first = false;
    }
    if (first) {
        text << "0";
    }
    text << " >= " << to_string(-f.offset);
    return text.str();
}

json bound_json(const BoundReport& r) {
    return {{"lambda_min", r.lambda_min},
            {"lambda_max", r.lambda_max},
            {"classical_min", number(r.classical_min)},
            {"classical_max", number(r.classical_max)},
            {"violation", r.violation},
            {"min_multiplicity", r.min_multiplicity},
            {"max_multiplicity", r.max_multiplicity},
            {"coincident_directions", r.coincident_directions},
            {"state_min", state_json(r.state_min)},
            {"state_max", state_json(r.state_max)}};
}

std::vector<Direction> planar(const std::vector<double>& angles) {
    std::vector<Direction> dirs;
    dirs.reserve(angles.size());
    for (double a : angles) {
        dirs.emplace_back(a);
    }
    return dirs;
}

Facet select_facet(const Options& o, const Scenario& scenario) {
    if (!o.normal.empty()) {
        if (o.offset.empty()) {
            throw UsageError("--normal needs --offset");
        }
        Facet f;
        f.offset = parse_rational(o.offset);
        for (const auto& a : o.normal) {
            f.normal.push_back(parse_rational(a));
        }
        if (f.normal.size() != scenario.dimension()) {
            throw UsageError("--normal needs " + std::to_string(scenario.dimension()) +
                             " coefficients");
        }
        return f;
    }
    const HRepresentation h = dd_hull(enumerate_vertices(scenario));
    if (o.facet_index < 0 || static_cast<std::size_t>(o.facet_index) >= h.facets.size()) {
        throw UsageError("--facet-index must be in 0.." + std::to_string(h.facets.size() - 1));
    }
    return h.facets[static_cast<std::size_t>(o.facet_index)];
}

json report(const std::string& command, json inputs, json results) {
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"version", BELLPOLY_VERSION}};
}

json cmd_facets(const Options& o) {
    const Scenario scenario = io::load_scenario(o.scenario);
    const VRepresentation v = enumerate_vertices(scenario);
    const HRepresentation h = dd_hull(v);
    json vertices = json::array();
    for (const auto& row : v.vertices) {
        json r = json::array();
        for (const auto& x : row) {
            r.push_back(number(x));
        }
        vertices.push_back(r);
    }
    json facets = json::array();
    json inequalities = json::array();
    for (const auto& f : h.facets) {
        facets.push_back(facet_json(f));
        inequalities.push_back(inequality_text(f, scenario));
    }
    return report("facets", {{"scenario", scenario_json(scenario)}},
                  {{"affine_dimension", affine_dimension(v)},
                   {"vertex_count", v.vertices.size()},
                   {"vertices", vertices},
                   {"facet_count", h.facets.size()},
                   {"facets", facets},
                   {"inequalities", inequalities}});
}

json cmd_qbound(const Options& o) {
    const Scenario scenario = io::load_scenario(o.scenario);
    if (o.angles.size() != static_cast<std::size_t>(scenario.observable_count())) {
        throw UsageError("--angles needs " + std::to_string(scenario.observable_count()) +
                         " values");
    }
    const Facet facet = select_facet(o, scenario);
    const auto dirs = planar(o.angles);
    const BoundReport r = quantum_bound(facet, dirs, scenario);
    return report("qbound",
                  {{"scenario", scenario_json(scenario)},
                   {"facet", facet_json(facet)},
                   {"angles", doubles_json(o.angles)}},
                  bound_json(r));
}

json cmd_optimize(const Options& o) {
    const Scenario scenario = io::load_scenario(o.scenario);
    const Facet facet = select_facet(o, scenario);
    json inputs = {{"scenario", scenario_json(scenario)},
                   {"facet", facet_json(facet)},
                   {"mode", o.equidistant ? "equidistant" : o.mode}};
    if (o.equidistant) {
        const EquidistantResult r = optimize_equidistant(facet, scenario);
        json results = bound_json(r.report);
        results["theta"] = r.theta;
        results["evaluations"] = r.evaluations;
        return report("optimize", inputs, results);
    }
    if (o.mode != "planar" && o.mode != "spherical") {
        throw UsageError("--mode must be planar or spherical");
    }
    if (!o.angles.empty() &&
        o.angles.size() != static_cast<std::size_t>(scenario.observable_count())) {
        throw UsageError("--angles needs " + std::to_string(scenario.observable_count()) +
                         " values");
    }
    inputs["angles"] = doubles_json(o.angles);
    const OptimizationResult r =
        optimize_angles(facet, scenario, planar(o.angles),
                        o.mode == "spherical" ? AngleMode::spherical : AngleMode::planar);
    json results = bound_json(r.report);
    results["directions"] = directions_json(r.directions);
    results["evaluations"] = r.evaluations;
    results["iterations"] = r.iterations;
    return report("optimize", inputs, results);
}

struct SweepRow {
    double theta;
    SzSpectrum spectrum;
    double singlet_sum;
};

std::vector<SweepRow> sweep_rows(const Options& o) {
    if (o.steps < 2) {
        throw UsageError("--steps must be at least 2");
    }
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(o.steps));
    for (int k = 0; k < o.steps; ++k) {
        const double theta = o.start + (o.stop - o.start) * k / (o.steps - 1);
        rows.push_back({theta, sz_spectrum(theta), singlet_sz_profile(std::abs(theta)).sz_sum});
    }
    return rows;
}

std::string cmd_sweep_csv(const Options& o) {
    std::string out =
        "theta,mu1_closed,mu1_computed,mu2_closed,mu2_computed,singlet_sum,classical_bound,"
        "mu1_abs_error,mu2_abs_error,degenerate\n";
    for (const auto& row : sweep_rows(o)) {
        const auto& s = row.spectrum;
        const double values[] = {row.theta,
                                 s.mu1.closed_value,
                                 s.mu1.computed_value,
                                 s.mu2.closed_value,
                                 s.mu2.computed_value,
                                 row.singlet_sum,
                                 -1.0,
                                 std::abs(s.mu1.closed_value - s.mu1.computed_value),
                                 std::abs(s.mu2.closed_value - s.mu2.computed_value)};
        for (double v : values) {
            out += format_double(v) + ",";
        }
        out += s.degenerate ? "1\n" : "0\n";
    }
    return out;
}

json cmd_sweep_json(const Options& o) {
    json rows = json::array();
    for (const auto& row : sweep_rows(o)) {
        const auto& s = row.spectrum;
        rows.push_back({{"theta", row.theta},
                        {"mu1_closed", s.mu1.closed_value},
                        {"mu1_computed", s.mu1.computed_value},
                        {"mu2_closed", s.mu2.closed_value},
                        {"mu2_computed", s.mu2.computed_value},
                        {"singlet_sum", row.singlet_sum},
                        {"classical_bound", -1.0},
                        {"mu1_abs_error", std::abs(s.mu1.closed_value - s.mu1.computed_value)},
                        {"mu2_abs_error", std::abs(s.mu2.closed_value - s.mu2.computed_value)},
                        {"degenerate", s.degenerate}});
    }
    return report("sweep", {{"start", o.start}, {"stop", o.stop}, {"steps", o.steps}},
                  {{"rows", rows}});
}

json cmd_deviation(const Options& o) {
    const DeviationExtrema d = deviation_extrema();
    json results = {{"theta_low", d.theta_low},
                    {"theta_high", d.theta_high},
                    {"max_abs_deviation", d.max_abs_deviation},
                    {"deviation_at_low", d.deviation_at_low},
                    {"deviation_at_high", d.deviation_at_high},
                    {"scan_max_abs_deviation", d.scan_max_abs_deviation},
                    {"scan_argmax", d.scan_argmax},
                    {"classical_at_low", fragment_correlation(d.theta_low)},
                    {"quantum_at_low", -std::cos(d.theta_low)}};
    json out = report("deviation", {{"samples", o.samples}}, results);
    if (o.samples > 0) {
        SplitMix64 rng(o.seed);
        const double estimate = fragment_monte_carlo(d.theta_low, o.samples, rng);
        out["results"]["monte_carlo_at_low"] = estimate;
        out["results"]["monte_carlo_tolerance"] = 5.0 / std::sqrt(static_cast<double>(o.samples));
        out["seed"] = o.seed;
    }
    return out;
}

json cmd_urn(const Options& o) {
    if (o.urn.empty()) {
        throw UsageError("urn needs --urn FILE or --urn uniform");
    }
    const Scenario scenario = io::load_scenario(o.scenario);
    const UrnDistribution urn = o.urn == "uniform"
                                    ? UrnDistribution::uniform(scenario.observable_count())
                                    : io::load_urn(o.urn);
    const RationalVector point = correlation_point(urn, scenario);
    const HRepresentation h = dd_hull(enumerate_vertices(scenario));
    const MembershipReport m = membership(h, point);

    json exact = json::array();
    json values = json::array();
    for (const auto& x : point) {
        exact.push_back(to_string(x));
        values.push_back(to_double(x));
    }
    json marginals = json::array();
    for (int i = 0; i < urn.observables(); ++i) {
        marginals.push_back(to_string(exact_marginal(urn, i)));
    }
    json weights = json::object();
    for (std::uint32_t k = 0; k < urn.weights().size(); ++k) {
        if (urn.weights()[k] != 0) {
            weights[BallType::from_index(k, urn.observables()).str()] = to_string(urn.weights()[k]);
        }
    }
    json results = {{"exact_point", exact},
                    {"point", values},
                    {"marginals", marginals},
                    {"location", to_string(m.location)},
                    {"worst_facet", m.worst_facet},
                    {"worst_margin", to_string(m.worst_margin)}};
    json out = report("urn",
                      {{"scenario", scenario_json(scenario)},
                       {"weights", weights},
                       {"samples", o.samples}},
                      results);
    if (o.samples > 0) {
        SplitMix64 rng(o.seed);
        const UrnSample sample = sample_urn(urn, scenario, o.samples, rng);
        json counts = json::object();
        for (std::uint32_t k = 0; k < sample.counts.size(); ++k) {
            if (sample.counts[k] != 0) {
                counts[BallType::from_index(k, urn.observables()).str()] = sample.counts[k];
            }
        }
        double max_error = 0.0;
        for (std::size_t k = 0; k < point.size(); ++k) {
            max_error = std::max(max_error, std::abs(sample.empirical[k] - to_double(point[k])));
        }
        out["results"]["empirical"] = doubles_json(sample.empirical);
        out["results"]["counts"] = counts;
        out["results"]["max_abs_error"] = max_error;
        out["results"]["tolerance"] = 5.0 / std::sqrt(static_cast<double>(o.samples));
        out["seed"] = o.seed;
    }
    return out;
}

json cmd_specker(const Options& o) {
    const Scenario scenario = sz_scenario();
    const HRepresentation h = dd_hull(enumerate_vertices(scenario));
    const SpeckerReport r = specker_check(o.point, h);
    json results = {{"margins", doubles_json(r.margins)},
                    {"location", to_string(r.membership.location)},
                    {"worst_facet", r.membership.worst_facet},
                    {"worst_margin", r.worst_margin},
                    {"threshold_angle", sz_threshold_angle()}};
    json inputs = {{"point", doubles_json(o.point)}};
    if (o.theta) {
        const SingletProfile p = singlet_sz_profile(*o.theta);
        results["singlet"] = {{"theta", p.theta},
                              {"correlations", doubles_json(p.correlations)},
                              {"sz_sum", p.sz_sum},
                              {"classical_violated", p.classical_violated},
                              {"mu1", sz_mu1(p.theta)}};
        inputs["theta"] = *o.theta;
    }
    return report("specker", inputs, results);
}

json cmd_chsh(const Options& o) {
    const Scenario scenario = chsh_scenario();
    const Facet facet{Rational(2), {1, 1, 1, -1}};
    const std::vector<double> angles{0.0, kPi / 2.0, kPi / 4.0, 7.0 * kPi / 4.0};
    const auto dirs = planar(angles);
    const BoundReport r = quantum_bound(facet, dirs, scenario);
    ComplexMatrix op = ComplexMatrix::Zero(4, 4);
    for (std::size_t k = 0; k < scenario.dimension(); ++k) {
        const auto& m = scenario.monomials()[k];
        op += to_double(facet.normal[k]) *
              correlation_operator(dirs[static_cast<std::size_t>(m[0])],
                                   dirs[static_cast<std::size_t>(m[1])]);
    }
    json results = bound_json(r);
    results["angles"] = doubles_json(angles);
    results["singlet_value"] = expectation(singlet_state(), op);
    results["tsirelson_bound"] = 2.0 * std::sqrt(2.0);

    const TsirelsonReport t = tsirelson_eigenstates();
    results["eigenstates"] = {{"found", t.found},
                              {"angles", json(std::vector<double>(t.angles.begin(), t.angles.end()))},
                              {"state_low", state_json(t.state_low)},
                              {"state_high", state_json(t.state_high)},
                              {"lambda_min", t.lambda_min},
                              {"lambda_max", t.lambda_max},
                              {"residual_low", t.residual_low},
                              {"residual_high", t.residual_high},
                              {"expectation_low", t.expectation_low},
                              {"expectation_high", t.expectation_high},
                              {"low_at_minimum", t.low_at_minimum},
                              {"grid_points", t.grid_points}};
    if (o.optimize) {
        const OptimizationResult opt = optimize_angles(facet, scenario);
        results["optimized"] = {{"directions", directions_json(opt.directions)},
                                {"violation", opt.report.violation},
                                {"lambda_min", opt.report.lambda_min},
                                {"lambda_max", opt.report.lambda_max},
                                {"evaluations", opt.evaluations},
                                {"iterations", opt.iterations}};
    }
    return report("chsh", {{"facet", facet_json(facet)}, {"optimize", o.optimize}}, results);
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_flag("--json", o.json_format, "Write JSON");
    sub->add_flag("--csv", o.csv_format, "Write CSV (sweep only)");
    sub->add_option("--out", o.out_file, "Write the report to FILE instead of standard output");
}

void add_scenario(CLI::App* sub, Options& o) {
    sub->add_option("--scenario", o.scenario, "Scenario file, or the alias sz / chsh")
        ->capture_default_str();
}

void add_facet(CLI::App* sub, Options& o) {
    sub->add_option("--facet-index", o.facet_index, "Facet of the scenario's hull to use")
        ->capture_default_str();
    sub->add_option("--normal", o.normal, "Explicit inequality normal a (comma separated)")
        ->delimiter(',');
    sub->add_option("--offset", o.offset, "Explicit inequality offset b (a.x + b >= 0)");
}

void add_angles(CLI::App* sub, Options& o) {
    sub->add_option("--angles", o.angles, "Planar polar angles in radians, one per observable")
        ->delimiter(',');
}

void add_sampling(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--samples", o.samples, "Monte Carlo sample count (0 disables)")
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Correlation polytopes and their quantum violations", "bellpoly"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BELLPOLY_VERSION);

    auto* facets = app.add_subcommand("facets", "Facet inequalities of a scenario's correlation polytope");
    add_scenario(facets, o);
    add_common(facets, o);

    auto* qbound = app.add_subcommand("qbound", "Quantum range of a facet operator at given angles");
    add_scenario(qbound, o);
    add_facet(qbound, o);
    add_angles(qbound, o);
    qbound->get_option("--angles")->required();
    add_common(qbound, o);

    auto* optimize = app.add_subcommand("optimize", "Maximize a facet's quantum violation over angles");
    add_scenario(optimize, o);
    add_facet(optimize, o);
    add_angles(optimize, o);
    optimize->add_option("--mode", o.mode, "planar or spherical")->capture_default_str();
    optimize->add_flag("--equidistant", o.equidistant, "Search directions 0, t, 2t, ... only");
    add_common(optimize, o);

    auto* sweep = app.add_subcommand("sweep", "Equidistant three-observable spectrum over theta");
    sweep->add_option("--start", o.start, "First theta")->capture_default_str();
    sweep->add_option("--stop", o.stop, "Last theta")->capture_default_str();
    sweep->add_option("--steps", o.steps, "Number of grid points (>= 2)")->capture_default_str();
    add_common(sweep, o);

    auto* deviation = app.add_subcommand("deviation", "Extrema of classical minus quantum correlation");
    add_sampling(deviation, o);
    add_common(deviation, o);

    auto* urn = app.add_subcommand("urn", "Generalized urn model: exact and sampled correlations");
    add_scenario(urn, o);
    urn->add_option("--urn", o.urn, "Urn file, or uniform")->required();
    add_sampling(urn, o);
    add_common(urn, o);

    auto* specker = app.add_subcommand("specker", "Membership of a correlation vector in the three-observable polytope");
    specker->add_option("--point", o.point, "Correlations E(X,Y),E(X,Z),E(Y,Z)")
        ->delimiter(',')
        ->expected(3);
    specker->add_option("--theta", o.theta, "Also profile the singlet at directions 0, t, 2t");
    add_common(specker, o);

    auto* chsh = app.add_subcommand("chsh", "CHSH operator at the canonical angles and its eigenstates");
    chsh->add_flag("--optimize", o.optimize, "Also run the angle optimizer");
    add_common(chsh, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (o.json_format && o.csv_format) {
            throw UsageError("--json and --csv are mutually exclusive");
        }
        if (o.csv_format && command != "sweep") {
            throw UsageError("--csv is only available for sweep");
        }
        std::string text;
        if (command == "facets") {
            text = render_json(cmd_facets(o));
        } else if (command == "qbound") {
            text = render_json(cmd_qbound(o));
        } else if (command == "optimize") {
            text = render_json(cmd_optimize(o));
        } else if (command == "sweep") {
            text = o.json_format ? render_json(cmd_sweep_json(o)) : cmd_sweep_csv(o);
        } else if (command == "deviation") {
            text = render_json(cmd_deviation(o));
        } else if (command == "urn") {
            text = render_json(cmd_urn(o));
        } else if (command == "specker") {
            text = render_json(cmd_specker(o));
        } else {
            text = render_json(cmd_chsh(o));
        }
        if (o.out_file.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out_file);
            if (!file) {
                throw UsageError("cannot write '" + o.out_file + "'");
            }
            file << text;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "bellpoly " << command << ": " << e.what() << "\n" << app.get_subcommand(command)->help();
        return kExitUsage;
    } catch (const InputError& e) {
        err << "bellpoly " << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        err << "bellpoly " << command << ": " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace bellpoly::cli
