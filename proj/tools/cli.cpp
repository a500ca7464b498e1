#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spines/cheeger.hpp"
#include "spines/continuous.hpp"
#include "spines/flow_cert.hpp"
#include "spines/rng.hpp"
#include "spines/spectral.hpp"
#include "spines/spine.hpp"
#include "spines/verify.hpp"

namespace spines::cli {

using json = nlohmann::ordered_json;

namespace {

struct Params {
    std::string command;
    int m = 8;
    int d = 2;
    std::string power;
    std::string kind = "edge";
    std::uint64_t seed = 1;
    std::size_t runs = 100;
    unsigned jobs = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t coverage_samples = 1'000'000;
    double epsilon = 1e-3;
    std::string t_grid = "0.05,0.1,0.2,0.3,0.5,0.7,0.9";
    std::string output;
    std::string format = "json";
    bool no_timestamp = false;
    std::string edge_spine;
    std::string vertex_spine;
    std::string c;
    std::size_t vectors = 100;
    bool spine_area = false;
    std::size_t max_shifts = 0;
    std::string config;
};

struct Report {
    json config = json::object();
    json results = json::object();
    json bounds = json::array();
    std::string csv;  ///< filled by subcommands that support --format csv
    bool csv_supported = false;
    bool failed = false;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_bound(Report& r, const Params& p, const std::string& name, const std::string& tag, const std::string& relation,
               double value, double bound, bool pass, bool enforced = true) {
    json b;
    b["name"] = name;
    b["tag"] = tag;
    b["m"] = p.m;
    b["d"] = p.d;
    b["relation"] = relation;
    b["value"] = value;
    b["bound"] = bound;
    b["pass"] = pass;
    b["enforced"] = enforced;
    r.bounds.push_back(std::move(b));
    if (enforced && !pass) r.failed = true;
}

json rational_json(const Rational& q) {
    json j;
    j["exact"] = to_string(q);
    j["value"] = to_double(q);
    return j;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

json witness_json(const std::optional<WindingWitness>& w) {
    if (!w) return nullptr;
    json j;
    j["cycle"] = w->cycle;
    j["winding"] = w->winding;
    return j;
}

TorusGraphSpec make_spec(const Params& p) { return TorusGraphSpec(p.m, p.d, parse_power(p.power)); }

void echo_graph(Report& r, const Params& p) {
    r.config["m"] = p.m;
    r.config["d"] = p.d;
    r.config["power"] = p.power;
}

// ---------------------------------------------------------------------------

void cmd_constants(const Params& p, Report& r) {
    r.config["m"] = p.m;
    r.config["d"] = p.d;
    const auto c = constants(p.m, p.d);
    r.results["lambda"] = c.lambda;
    r.results["Lambda"] = c.Lambda;
    r.results["mu"] = c.mu;
    r.results["rayleigh_inf"] = c.rayleigh_inf;
    r.results["rayleigh_one"] = c.rayleigh_one;
    r.results["fraction"] = c.fraction;

    const double three_d = std::pow(3.0, p.d);
    const double identity_gap = std::abs(c.mu * c.mu - 2.0 * (three_d - 1.0) * c.rayleigh_inf);
    add_bound(r, p, "mu_squared_identity", "edge_cheeger_constant", "|mu^2 - 2(3^d-1) R_inf| <=", identity_gap,
              1e-12 * std::max(1.0, c.mu * c.mu), identity_gap <= 1e-12 * std::max(1.0, c.mu * c.mu));
    const double asymptotic = std::sqrt(8.0 / 3.0) * std::numbers::pi * std::sqrt(static_cast<double>(p.d)) / p.m;
    add_bound(r, p, "fraction_vs_asymptotic", "edge_spine_fraction_asymptotic", "fraction <= 1.05 * sqrt(8/3) pi sqrt(d)/m",
              c.fraction, 1.05 * asymptotic, c.fraction <= 1.05 * asymptotic, false);
}

json certificate_json(const CutCertificate& cert) {
    json j;
    j["kind"] = to_string(cert.kind);
    j["threshold"] = cert.threshold;
    j["size"] = cert.W.size();
    j["boundary"] = cert.boundary_size;
    j["ratio"] = rational_json(cert.ratio);
    j["compared_value"] = rational_json(cert.compared_value());
    j["bound"] = cert.bound;
    j["bound_satisfied"] = cert.bound_satisfied;
    j["members"] = cert.W.members();
    return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "threshold,size,boundary,ratio_exact,ratio\n";
    for (const auto& row : rows)
        os << fmt_double(row.threshold) << ',' << row.size << ',' << row.boundary << ',' << to_string(row.ratio) << ','
           << fmt_double(to_double(row.ratio)) << '\n';
    return os.str();
}

void cmd_sweep(const Params& p, Report& r) {
    echo_graph(r, p);
    r.config["kind"] = p.kind;
    const auto spec = make_spec(p);
    const auto kind = parse_cut_kind(p.kind);
    const TensorProfile profile(sine_profile(p.m), p.d);
    const auto result = sweep(spec, profile, kind);
    r.results["best"] = certificate_json(result.best);
    json table = json::array();
    for (const auto& row : result.table)
        table.push_back({{"threshold", row.threshold},
                         {"size", row.size},
                         {"boundary", row.boundary},
                         {"ratio", rational_json(row.ratio)}});
    r.results["table"] = std::move(table);
    r.csv_supported = true;
    r.csv = sweep_csv(result.table);

    const bool trivial = !induced_nontrivial_cycle(spec, result.best.W);
    r.results["body_cycle_trivial"] = trivial;
    add_bound(r, p, "body_has_no_nontrivial_cycle", "dirichlet_body", "winding == 0", trivial ? 0.0 : 1.0, 0.0, trivial);
    if (kind == CutKind::Edge)
        add_bound(r, p, "edge_level_set_ratio", "edge_cheeger_dirichlet", "ratio <= sqrt(2 D R)",
                  to_double(result.best.ratio), result.best.bound, result.best.bound_satisfied);
    else
        add_bound(r, p, "vertex_level_set_ratio", "vertex_cheeger_dirichlet", "c/(1+c) <= 2 sqrt(R)",
                  to_double(result.best.compared_value()), result.best.bound, result.best.bound_satisfied, false);
}

std::string runs_csv(const MonteCarloResult& mc, std::uint64_t base_seed) {
    std::ostringstream os;
    os << "seed,spine_size,contribution_sum,shifts\n";
    for (std::size_t i = 0; i < mc.spine_size.per_run_sizes.size(); ++i)
        os << base_seed + i << ',' << mc.spine_size.per_run_sizes[i] << ',' << mc.contribution_sum.per_run_sizes[i]
           << ',' << mc.shifts_used[i] << '\n';
    return os.str();
}

json stats_json(const RunStats& s) {
    json j;
    j["runs"] = s.runs;
    j["mean"] = s.mean_size;
    j["std_error"] = s.std_error;
    j["bound"] = s.bound;
    return j;
}

void echo_runs(Report& r, const Params& p) {
    r.config["runs"] = p.runs;
    r.config["jobs"] = p.jobs;
}

void cmd_spine_edge(const Params& p, Report& r) {
    echo_graph(r, p);
    echo_runs(r, p);
    const auto spec = make_spec(p);
    const TensorProfile profile(sine_profile(p.m), p.d);
    const auto cert = sweep(spec, profile, CutKind::Edge).best;
    auto mc = monte_carlo_edge(spec, cert.W, p.runs, p.seed, p.jobs);

    const double n = static_cast<double>(spec.vertex_count());
    const double edges = static_cast<double>(spec.edge_count());
    const double expectation_bound = to_double(cert.ratio) * n;
    const double fraction_bound = 2.0 * cert.bound / static_cast<double>(spec.degree());
    mc.contribution_sum.bound = expectation_bound;
    mc.spine_size.bound = fraction_bound * edges;

    r.results["body"] = certificate_json(cert);
    r.results["edge_count"] = spec.edge_count();
    r.results["all_verified"] = true;
    r.results["union_size"] = stats_json(mc.spine_size);
    r.results["contribution_sum"] = stats_json(mc.contribution_sum);
    const double mean_fraction = mc.spine_size.mean_size / edges;
    r.results["mean_fraction"] = mean_fraction;
    json runs = json::array();
    for (std::size_t i = 0; i < p.runs; ++i)
        runs.push_back({{"seed", p.seed + i},
                        {"spine_size", mc.spine_size.per_run_sizes[i]},
                        {"contribution_sum", mc.contribution_sum.per_run_sizes[i]},
                        {"shifts", mc.shifts_used[i]}});
    r.results["runs"] = std::move(runs);
    r.csv_supported = true;
    r.csv = runs_csv(mc, p.seed);

    const double sum_limit = expectation_bound + 3.0 * mc.contribution_sum.std_error;
    add_bound(r, p, "edge_spine_expected_sum", "edge_spine_expectation", "mean sum|E_i| <= ratio(W) m^d + 3 se",
              mc.contribution_sum.mean_size, sum_limit, mc.contribution_sum.mean_size <= sum_limit);
    const double fraction_limit = fraction_bound + 3.0 * mc.spine_size.std_error / edges;
    add_bound(r, p, "edge_spine_fraction", "edge_spine_fraction", "mean |union E_i|/|E| <= 2 mu/D + 3 se/|E|",
              mean_fraction, fraction_limit, mean_fraction <= fraction_limit);
}

void cmd_spine_vertex(const Params& p, Report& r) {
    echo_graph(r, p);
    echo_runs(r, p);
    const auto spec = make_spec(p);
    const TensorProfile profile(sine_profile(p.m), p.d);
    const auto cert = sweep(spec, profile, CutKind::Vertex).best;
    auto mc = monte_carlo_vertex(spec, cert.W, p.runs, p.seed, p.jobs);

    const double n = static_cast<double>(spec.vertex_count());
    const double expected = to_double(cert.compared_value()) * n;
    mc.spine_size.bound = expected;

    r.results["body"] = certificate_json(cert);
    r.results["all_verified"] = true;
    r.results["spine_size"] = stats_json(mc.spine_size);
    r.results["expected_size"] = expected;
    json runs = json::array();
    for (std::size_t i = 0; i < p.runs; ++i)
        runs.push_back({{"seed", p.seed + i}, {"spine_size", mc.spine_size.per_run_sizes[i]}, {"shifts", mc.shifts_used[i]}});
    r.results["runs"] = std::move(runs);
    r.csv_supported = true;
    r.csv = runs_csv(mc, p.seed);

    const double se = mc.spine_size.std_error;
    const double gap = std::abs(mc.spine_size.mean_size - expected);
    add_bound(r, p, "vertex_spine_expected_size", "vertex_spine_expectation", "|mean - c/(1+c) m^d| <= 3 se", gap,
              3.0 * se + 1e-9 * n, gap <= 3.0 * se + 1e-9 * n);
    if (spec.power() == Power::One) {
        const double size_limit = 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(p.d)) * n / p.m;
        add_bound(r, p, "vertex_spine_size", "vertex_spine_size", "mean <= 2 pi sqrt(d) m^(d-1) + 3 se",
                  mc.spine_size.mean_size, size_limit + 3.0 * se, mc.spine_size.mean_size <= size_limit + 3.0 * se);
    }
}

void cmd_verify(const Params& p, Report& r) {
    echo_graph(r, p);
    const auto spec = make_spec(p);
    if (p.edge_spine.empty() == p.vertex_spine.empty())
        throw UsageError("verify needs exactly one of --edge-spine or --vertex-spine");

    SpineCheck check;
    std::size_t size = 0;
    if (!p.edge_spine.empty()) {
        r.config["edge_spine"] = p.edge_spine;
        EdgeSet candidate;
        if (p.edge_spine == "trivial") {
            if (spec.power() != Power::One) throw UsageError("--edge-spine trivial requires --power one");
            candidate = trivial_edge_spine(spec).edges;
        } else if (p.edge_spine != "empty") {
            throw UsageError("--edge-spine must be 'trivial' or 'empty'");
        }
        size = candidate.size();
        check = is_spine(spec, candidate);
        if (spec.power() == Power::One) {
            const auto cover = edge_disjoint_cycle_cover_check(spec);
            r.results["disjoint_cycles"] = cover.cycle_count;
            r.results["disjoint_cycles_ok"] = cover.ok();
            add_bound(r, p, "spine_size_lower_bound", "min_edge_spine_sum_power", "size >= disjoint nontrivial cycles",
                      static_cast<double>(size), static_cast<double>(cover.cycle_count),
                      !check.is_spine || size >= cover.cycle_count);
        }
    } else {
        r.config["vertex_spine"] = p.vertex_spine;
        VertexSet candidate(spec.vertex_count());
        if (p.vertex_spine == "trivial") {
            if (spec.power() != Power::Inf) throw UsageError("--vertex-spine trivial requires --power inf");
            candidate = trivial_vertex_spine(spec).vertices;
        } else if (p.vertex_spine != "empty") {
            throw UsageError("--vertex-spine must be 'trivial' or 'empty'");
        }
        size = candidate.size();
        check = is_spine(spec, candidate);
    }
    r.results["candidate_size"] = size;
    r.results["is_spine"] = check.is_spine;
    r.results["witness"] = witness_json(check.witness);
    add_bound(r, p, "candidate_is_spine", "spine_definition", "no nontrivial cycle survives", check.is_spine ? 1.0 : 0.0,
              1.0, check.is_spine);
}

void cmd_brute_min(const Params& p, Report& r) {
    echo_graph(r, p);
    r.config["kind"] = p.kind;
    const auto spec = make_spec(p);
    const auto kind = parse_cut_kind(p.kind);
    const auto res = brute_force_min_spine(spec, kind);
    r.results["result"] = res.size;
    r.results["lower_bound"] = res.lower_bound;
    r.results["candidates_checked"] = res.candidates_checked;
    if (kind == CutKind::Edge) {
        json edges = json::array();
        for (const auto& e : res.witness_edges) edges.push_back({e.u, e.v});
        r.results["witness"] = std::move(edges);
    } else {
        r.results["witness"] = res.witness_vertices;
    }

    const double slice = std::pow(static_cast<double>(p.m), p.d - 1);
    if (kind == CutKind::Edge && spec.power() == Power::One) {
        const double exact = p.d * slice;
        add_bound(r, p, "min_edge_spine", "min_edge_spine_sum_power", "size == d m^(d-1)", static_cast<double>(res.size),
                  exact, static_cast<double>(res.size) == exact);
    } else if (kind == CutKind::Vertex && spec.power() == Power::Inf) {
        const double exact = std::pow(static_cast<double>(p.m), p.d) - std::pow(static_cast<double>(p.m - 1), p.d);
        add_bound(r, p, "min_vertex_spine", "min_vertex_spine_and_power", "size == m^d - (m-1)^d",
                  static_cast<double>(res.size), exact, static_cast<double>(res.size) == exact);
    }
}

void cmd_flow_cert(const Params& p, Report& r) {
    echo_graph(r, p);
    r.config["c"] = p.c.empty() ? "certified" : p.c;
    r.config["vectors"] = p.vectors;
    const auto spec = make_spec(p);
    const SimpleGraph graph = SimpleGraph::from_torus(spec);
    const VertexSet U = dirichlet_set(spec);
    const Rational certified = certified_c(graph, U);
    const Rational c = p.c.empty() ? certified : parse_rational(p.c);
    if (c < 0) throw UsageError("--c must be nonnegative");

    const auto net = build_network(graph, U, c);
    const auto flow = max_flow(net);
    const Rational target = (1 + c) * static_cast<long long>(net.Y.size());
    const bool saturated = flow.value == target;
    r.results["free_vertices"] = net.Y.size();
    r.results["certified_c"] = rational_json(certified);
    r.results["c"] = rational_json(c);
    r.results["flow_value"] = rational_json(flow.value);
    r.results["target"] = rational_json(target);
    r.results["saturated"] = saturated;
    const bool expected_saturation = c <= certified;
    add_bound(r, p, "flow_saturation_matches_expansion", "vertex_cheeger_flow", "saturated iff c <= certified_c",
              saturated ? 1.0 : 0.0, expected_saturation ? 1.0 : 0.0, saturated == expected_saturation);
    if (!saturated) return;

    const auto h = extract_orientation(net, flow);
    r.results["orientation"] = {{"out_sum_ok", h.checks.out_sum_ok},
                                {"in_sum_ok", h.checks.in_sum_ok},
                                {"difference_ok", h.checks.difference_ok},
                                {"one_direction_ok", h.checks.one_direction_ok}};
    add_bound(r, p, "orientation_invariants", "vertex_cheeger_flow", "all four hold", h.checks.all() ? 1.0 : 0.0, 1.0,
              h.checks.all());

    Rng rng(p.seed);
    std::size_t passed = 0;
    double worst_rayleigh_margin = std::numeric_limits<double>::infinity();
    const double cd = to_double(c);
    const double floor = cd * cd / (4.0 + 2.0 * cd * cd);
    for (std::size_t k = 0; k < p.vectors; ++k) {
        std::vector<double> x(graph.vertex_count(), 0.0);
        for (VertexId v : net.Y) x[v] = 2.0 * rng.uniform01() - 1.0;
        const auto ineq = verify_inequalities(graph, U, c, h, x);
        passed += ineq.pass ? 1 : 0;
        double form = 0, norm = 0;
        for (const auto& [a, b] : graph.edges()) form += (x[a] - x[b]) * (x[a] - x[b]);
        for (double xi : x) norm += xi * xi;
        worst_rayleigh_margin = std::min(worst_rayleigh_margin, form / norm - floor);
    }
    r.results["inequality_vectors"] = p.vectors;
    r.results["inequality_passed"] = passed;
    r.results["rayleigh_floor"] = floor;
    r.results["worst_rayleigh_margin"] = p.vectors ? worst_rayleigh_margin : 0.0;
    add_bound(r, p, "flow_inequalities", "vertex_cheeger_flow", "all random Dirichlet vectors pass",
              static_cast<double>(passed), static_cast<double>(p.vectors), passed == p.vectors);
    if (p.vectors)
        add_bound(r, p, "rayleigh_floor", "vertex_cheeger_dirichlet", "x'Qx/|x|^2 - c^2/(4+2c^2) >= 0",
                  worst_rayleigh_margin, 0.0, worst_rayleigh_margin >= -1e-12);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--t-grid entries must be numbers, got '" + item + "'");
        }
    }
    if (grid.empty()) throw UsageError("--t-grid is empty");
    return grid;
}

json estimate_json(const continuous::AreaEstimate& e) {
    return {{"value", e.value}, {"std_error", e.std_error}, {"samples", e.samples_used}};
}

void cmd_continuous(const Params& p, Report& r) {
    r.config["d"] = p.d;
    r.config["samples"] = p.samples;
    r.config["epsilon"] = p.epsilon;
    r.config["t_grid"] = p.t_grid;
    r.config["spine_area"] = p.spine_area;
    r.config["jobs"] = p.jobs;
    continuous::MCConfig mc;
    mc.samples = p.samples;
    mc.strip_epsilon = p.epsilon;
    mc.seed = p.seed;
    mc.jobs = p.jobs;
    mc.coverage_samples = p.coverage_samples;
    const auto grid = parse_grid(p.t_grid);

    const auto scan = continuous::best_ratio_scan(p.d, grid, mc);
    json points = json::array();
    for (const auto& pt : scan.points)
        points.push_back({{"t", pt.t},
                          {"volume", estimate_json(pt.volume)},
                          {"surface", estimate_json(pt.surface)},
                          {"ratio", pt.ratio},
                          {"ratio_std_error", pt.ratio_std_error}});
    r.results["scan"] = {{"best_t", scan.best_t},
                         {"best_ratio", scan.best_ratio},
                         {"best_ratio_std_error", scan.best_ratio_std_error},
                         {"points", std::move(points)}};
    const double kappa = continuous::kappa(p.d);
    r.results["kappa"] = kappa;
    add_bound(r, p, "level_body_ratio", "continuous_cheeger_level_body", "min S/V <= 2 pi sqrt(d) + 3 se",
              scan.best_ratio, scan.bound + 3.0 * scan.best_ratio_std_error, scan.bound_satisfied);

    if (p.spine_area) {
        r.config["coverage_samples"] = p.coverage_samples;
        r.config["max_shifts"] = p.max_shifts;
        const auto area = continuous::estimate_spine_area(p.d, scan.best_t, p.max_shifts, mc);
        r.results["spine_area"] = {{"t", scan.best_t},
                                   {"estimate", estimate_json(area.area)},
                                   {"shifts", area.shifts.size()},
                                   {"shift_cap", area.shift_cap},
                                   {"volume_estimate", area.volume_estimate}};
        const double limit = 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(p.d)) + 3.0 * area.area.std_error;
        add_bound(r, p, "spine_area", "continuous_spine_area", "area <= 2 pi sqrt(d) + 3 se", area.area.value, limit,
                  area.area.value <= limit);
        const double floor = kappa / 2.0 - 3.0 * area.area.std_error;
        add_bound(r, p, "spine_area_isoperimetric_floor", "isoperimetric_floor", "area >= kappa_d/2 - 3 se",
                  area.area.value, floor, area.area.value >= floor, false);
    }
}

// ---------------------------------------------------------------------------

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

bool option_given(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    Params p;
    CLI::App app{"Spines in discrete and continuous tori: certificates, constructions and verifiers", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    struct Sub {
        const char* name;
        const char* help;
        const char* default_power;
    };
    const Sub subs[] = {
        {"constants", "Closed-form spectral constants for (m, d)", ""},
        {"sweep", "Level-set sweep of the sine tensor with its best cut certificate", "inf"},
        {"spine-edge", "Random-shift edge spines, Monte Carlo over seeds", "inf"},
        {"spine-vertex", "Random-shift vertex spines, Monte Carlo over seeds", "one"},
        {"verify", "Check a candidate spine by lifting to the universal cover", "one"},
        {"brute-min", "Exhaustive minimum spine on a tiny torus", "one"},
        {"flow-cert", "Flow certificate of vertex expansion with Dirichlet set U", "one"},
        {"continuous", "Monte Carlo level bodies and random-shift spine area in the unit torus", ""},
    };

    std::map<std::string, CLI::App*> commands;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        commands[s.name] = sub;
        sub->add_option("--seed", p.seed, "Base seed (recorded in every report)");
        sub->add_option("--output,-o", p.output, "Report path (default: $SPINES_OUTPUT_DIR/<command>.<ext> or stdout)");
        sub->add_option("--format", p.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--no-timestamp", p.no_timestamp, "Omit timestamp and wall-clock from the report");
        sub->add_option("--config", p.config, "key=value file; command-line flags take precedence");
        sub->add_option("--jobs", p.jobs, "Worker threads (1 gives bit-stable aggregation)")->check(CLI::Range(1U, 256U));
        const std::string name = s.name;
        if (name != "continuous") {
            sub->add_option("--m", p.m, "Cycle length m >= 3")->check(CLI::Range(3, 1 << 26));
        }
        sub->add_option("--d", p.d, "Dimension d >= 1")->check(CLI::Range(1, kMaxDim));
        if (*s.default_power) sub->add_option("--power", p.power, "one or inf")->check(CLI::IsMember({"one", "inf"}));
        if (name == "sweep" || name == "brute-min")
            sub->add_option("--kind", p.kind, "edge or vertex")->check(CLI::IsMember({"edge", "vertex"}));
        if (name == "spine-edge" || name == "spine-vertex")
            sub->add_option("--runs", p.runs, "Number of seeded runs")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
        if (name == "verify") {
            sub->add_option("--edge-spine", p.edge_spine, "trivial or empty");
            sub->add_option("--vertex-spine", p.vertex_spine, "trivial or empty");
        }
        if (name == "flow-cert") {
            sub->add_option("--c", p.c, "Expansion parameter as p/q (default: exhaustive certified value)");
            sub->add_option("--vectors", p.vectors, "Random Dirichlet vectors for the inequality check");
        }
        if (name == "continuous") {
            sub->add_option("--samples", p.samples, "Monte Carlo samples")->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40));
            sub->add_option("--epsilon", p.epsilon, "Coarea strip width")->check(CLI::PositiveNumber);
            sub->add_option("--t-grid", p.t_grid, "Comma-separated thresholds in (0,1)");
            sub->add_flag("--spine-area", p.spine_area, "Also estimate the random-shift spine area (d <= 3)");
            sub->add_option("--max-shifts", p.max_shifts, "Shift cap for coverage (0: default)");
            sub->add_option("--coverage-samples", p.coverage_samples, "Points in the coverage test")
                ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 30));
        }
    }

    std::vector<std::string> args = args_in;
    try {
        // Merge a config file under the command line: keys not given as flags are appended.
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config") path = args[i + 1];
            if (path.empty()) continue;
            for (const auto& [key, value] : read_config_file(path)) {
                if (key == "config" || option_given(args_in, key)) continue;
                if (value == "true" || value == "false") {
                    if (value == "true") args.push_back("--" + key);
                } else {
                    args.push_back("--" + key + "=" + value);
                }
            }
            break;
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return e.get_exit_code() == 0 ? code : kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    for (const auto& [name, sub] : commands)
        if (sub->parsed()) p.command = name;
    if (p.power.empty())
        for (const auto& s : subs)
            if (p.command == s.name) p.power = s.default_power;

    Report report;
    report.config["command"] = p.command;
    try {
        if (p.command == "constants") cmd_constants(p, report);
        else if (p.command == "sweep") cmd_sweep(p, report);
        else if (p.command == "spine-edge") cmd_spine_edge(p, report);
        else if (p.command == "spine-vertex") cmd_spine_vertex(p, report);
        else if (p.command == "verify") cmd_verify(p, report);
        else if (p.command == "brute-min") cmd_brute_min(p, report);
        else if (p.command == "flow-cert") cmd_flow_cert(p, report);
        else if (p.command == "continuous") cmd_continuous(p, report);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::InvalidArgument:
            case ErrorCode::TooLarge:
            case ErrorCode::DegenerateStrip: return kUsage;
            default: return kCheckFailed;
        }
    }
    report.config["seed"] = p.seed;
    report.config["format"] = p.format;

    if (p.format == "csv" && !report.csv_supported) {
        err << "error: --format csv is only available for sweep, spine-edge and spine-vertex\n";
        return kUsage;
    }

    std::string text;
    if (p.format == "csv") {
        text = report.csv;
    } else {
        json doc;
        doc["config"] = report.config;
        doc["results"] = report.results;
        doc["bounds"] = report.bounds;
        json meta;
        meta["tool"] = kToolName;
        meta["version"] = kVersion;
        meta["rng"] = Rng::kAlgorithm;
        meta["status"] = report.failed ? "fail" : "pass";
        if (!p.no_timestamp) {
            meta["timestamp"] = now_utc();
            meta["wall_clock_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        }
        doc["meta"] = std::move(meta);
        text = doc.dump(2) + "\n";
    }

    std::string path = p.output;
    if (path.empty())
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
            path = (std::filesystem::path(dir) / (p.command + "." + p.format)).string();
    if (path.empty()) {
        out << text;
    } else {
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            err << "error: cannot write report to '" << path << "'\n";
            return kUsage;
        }
        file << text;
    }
    if (report.failed) err << p.command << ": one or more enforced bounds failed\n";
    return report.failed ? kCheckFailed : kOk;
}

}  // namespace spines::cli
