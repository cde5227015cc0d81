// strucsense: sensor placement and observability certificates for networks.
//
// Exit codes: 0 ok, 1 input error, 2 a placement failed its certificate.
// STRUCSENSE_LOG=0|1|2 sets stderr verbosity (default 1).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <strucsense/strucsense.hpp>

using namespace strucsense;
using nlohmann::json;

namespace {

constexpr int kInputError = 1;
constexpr int kCertificationFailure = 2;

int log_level() {
    const char* env = std::getenv("STRUCSENSE_LOG");
    return env ? std::atoi(env) : 1;
}

template <typename... Args>
void log(int level, const Args&... args) {
    if (level > log_level())
        return;
    std::cerr << "strucsense: ";
    (std::cerr << ... << args) << '\n';
}

struct Output {
    std::string path;
    std::string format = "json";

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write '" + path + "'");
        out << text;
    }

    void write(const json& j) const { write(j.dump(2) + "\n"); }
};

double rounded(double x) { return std::isfinite(x) ? std::round(x * 1e12) / 1e12 : 0.0; }

json labels_of(const NetworkModel& m, const std::vector<Index>& states) {
    json out = json::array();
    for (Index s : states)
        out.push_back(m.qualified_label(s));
    return out;
}

json placement_json(const NetworkModel& m, const SensorPlacement& p) {
    json kinds = json::array();
    for (Index s : p.measured)
        kinds.push_back(std::string(to_string(m.kinds[s])));
    return {{"mode", std::string(to_string(p.mode))},
            {"measured", p.measured},
            {"labels", labels_of(m, p.measured)},
            {"kinds", kinds}};
}

std::string placement_csv(const NetworkModel& m, const SensorPlacement& p) {
    std::ostringstream os;
    os << "sensor,state,label,kind\n";
    for (Index k = 0; k < p.n_y(); ++k)
        os << k << ',' << p.measured[k] << ',' << m.qualified_label(p.measured[k]) << ','
           << to_string(m.kinds[p.measured[k]]) << '\n';
    return os.str();
}

SensorPlacement resolve_sensors(const NetworkModel& m, const std::vector<std::string>& tokens) {
    SensorPlacement p{{}, PlacementMode::cyclic};
    for (const auto& t : tokens)
        p.measured.push_back(m.resolve(t));
    return p;
}

SensorPlacement default_placement(const NetworkModel& m) {
    const StateGraph g = from_pattern(m.pattern);
    return place_cyclic(g, spanning_tree_dfs(g));
}

// ---------------------------------------------------------------- info

int cmd_info(const std::string& path, const Output& out) {
    const NetworkModel m = load_model(path);
    const StateGraph g = from_pattern(m.pattern);
    const NodeClassification c = classify_nodes(g);
    const Assumption1Report a1 = check_assumption1(m.pattern);

    json j{{"name", m.name},
           {"state_nodes", m.state_count()},
           {"cycles", cycle_count(g)},
           {"extreme", labels_of(m, c.extreme)},
           {"intersection", labels_of(m, c.intersection)},
           {"isolated", labels_of(m, c.isolated)},
           {"assumption1",
            {{"symmetric", a1.symmetric},
             {"fully_connected", a1.fully_connected},
             {"has_extreme", a1.has_extreme},
             {"star_components", a1.components.size()}}}};
    if (a1.first_asymmetry)
        j["assumption1"]["first_asymmetry"] = {a1.first_asymmetry->row, a1.first_asymmetry->col};
    if (m.network) {
        j["hydraulic_nodes"] = m.network->node_count();
        j["links"] = m.network->link_count();
    }

    if (out.format == "json") {
        out.write(j);
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "name,hydraulic_nodes,links,state_nodes,cycles,extreme_nodes,intersection_nodes\n"
           << m.name << ',' << (m.network ? std::to_string(m.network->node_count()) : "") << ','
           << (m.network ? std::to_string(m.network->link_count()) : "") << ',' << m.state_count() << ','
           << cycle_count(g) << ',' << c.n_e() << ',' << c.n_i() << '\n';
        out.write(os.str());
    } else {
        std::ostringstream os;
        os << "network       " << m.name << '\n';
        if (m.network)
            os << "hydraulic     " << m.network->node_count() << " nodes, " << m.network->link_count() << " links\n";
        os << "states        " << m.state_count() << '\n'
           << "cycles        " << cycle_count(g) << '\n'
           << "extreme       " << c.n_e() << ' ' << j["extreme"].dump() << '\n'
           << "intersection  " << c.n_i() << '\n'
           << "preconditions symmetric=" << a1.symmetric << " connected=" << a1.fully_connected
           << " extreme=" << a1.has_extreme << '\n';
        out.write(os.str());
    }
    return 0;
}

// ---------------------------------------------------------------- place

int cmd_place(const std::string& path, const std::string& mode, bool augment, const Output& out) {
    const NetworkModel m = load_model(path);
    const StateGraph g = from_pattern(m.pattern);
    const auto t0 = std::chrono::steady_clock::now();
    const SpanningTree t = spanning_tree_dfs(g);
    SensorPlacement p = mode == "tree" ? place_tree(g) : place_cyclic(g, t);
    log(2, "placement took ",
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), " s");

    std::vector<Index> added;
    if (augment)
        added = augment_until_certified(m.pattern, p);
    const Certificate cert = certify_sso(m.pattern, build_c_pattern(p, g.size()));
    const SensorCountReport r = sensor_count_report(g, t, p);

    json j = placement_json(m, p);
    j["certificate"] = to_json(cert);
    j["count_report"] = {{"n_e_graph", r.n_e_graph}, {"cycles", r.cycles}, {"sensors", r.sensors}, {"bound_ok", r.bound_ok}};
    if (augment)
        j["augmented"] = labels_of(m, added);

    if (out.format == "csv")
        out.write(placement_csv(m, p));
    else if (out.format == "text")
        out.write(std::to_string(p.n_y()) + " sensors: " + j["labels"].dump() +
                  "\ncertificate: " + (cert.sso ? "strongly structurally observable" : "NOT certified") + "\n");
    else
        out.write(j);

    if (!cert.sso) {
        for (const GraphVerdict* v : {&cert.a, &cert.abar})
            if (!v->colorable) {
                std::vector<Index> white = v->white_states(g.size());
                const std::size_t total = white.size();
                white.resize(std::min<std::size_t>(total, 10));
                log(1, "graph ", v->name, " stalls with ", total, " white states, first ", labels_of(m, white).dump());
            }
        log(1, "placement is not certified; rerun with --augment to add sensors until it is");
        return kCertificationFailure;
    }
    return 0;
}

// ---------------------------------------------------------------- certify

int cmd_certify(const std::string& path, const std::vector<std::string>& sensors, const Output& out) {
    const NetworkModel m = load_model(path);
    const SensorPlacement p = resolve_sensors(m, sensors);
    const Certificate cert = certify_sso(m.pattern, build_c_pattern(p, m.state_count()));
    json j = to_json(cert);
    j["sensors"] = labels_of(m, p.measured);
    if (out.format == "text")
        out.write(std::string(cert.sso ? "certified" : "not certified") + " (A: " +
                  (cert.a.colorable ? "colorable" : "stalls") + ", Abar: " +
                  (cert.abar.colorable ? "colorable" : "stalls") + ")\n");
    else
        out.write(j);
    return 0;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const std::string& path, const std::vector<std::string>& sensors, std::size_t trials,
               std::uint64_t seed, const Output& out) {
    const NetworkModel m = load_model(path);
    const SensorPlacement p = sensors.empty() ? default_placement(m) : resolve_sensors(m, sensors);
    const PatternMatrix c = build_c_pattern(p, m.state_count());
    const bool sso = certify_sso(m.pattern, c).sso;
    const OracleReport r = sample_and_check(m.pattern, c, trials, seed);
    const json j{{"sensors", labels_of(m, p.measured)},
                 {"certificate_sso", sso},
                 {"trials", r.trials},
                 {"passes", r.passes},
                 {"min_sigma_ratio", rounded(r.min_sigma_ratio)},
                 {"seed", r.seed}};
    if (sso && r.passes != r.trials)
        log(1, "certified placement failed ", r.trials - r.passes, " sampled rank tests");
    if (out.format == "text")
        out.write(std::to_string(r.passes) + "/" + std::to_string(r.trials) + " realizations observable\n");
    else
        out.write(j);
    return 0;
}

// ---------------------------------------------------------------- minimize

int cmd_minimize(const std::string& path, Index max_states, const Output& out) {
    const NetworkModel m = load_model(path);
    const MinimalPlacementResult r = exhaustive_min_sensors(m.pattern, max_states, 64, [](const ExhaustiveProgress& p) {
        if (log_level() >= 1)
            std::cerr << json{{"size", p.size}, {"checked", p.checked}, {"witnesses", p.witnesses}}.dump() << '\n';
    });
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back(labels_of(m, w));
    const json j{{"minimum_size", r.minimum_size},
                 {"witnesses", witnesses},
                 {"configurations_checked", r.configurations_checked},
                 {"heuristic_sensors", default_placement(m).n_y()}};
    if (out.format == "text")
        out.write("minimum " + std::to_string(r.minimum_size) + " sensors, " + std::to_string(r.witnesses.size()) +
                  " witnesses, " + std::to_string(r.configurations_checked) + " configurations\n");
    else
        out.write(j);
    return 0;
}

// ---------------------------------------------------------------- export-dot

int cmd_export_dot(const std::string& path, const std::string& stage, const std::vector<std::string>& sensors,
                   const std::string& which, const Output& out) {
    const NetworkModel m = load_model(path);
    const StateGraph g = from_pattern(m.pattern);
    if (stage == "graph") {
        out.write(dot::graph(m));
    } else if (stage == "tree") {
        out.write(dot::tree(m, spanning_tree_dfs(g)));
    } else {
        const SensorPlacement p = sensors.empty() ? default_placement(m) : resolve_sensors(m, sensors);
        if (stage == "placement") {
            out.write(dot::placement(m, p));
        } else {
            const Certificate cert = certify_sso(m.pattern, build_c_pattern(p, g.size()));
            out.write(dot::trace(m, p, which == "Abar" ? cert.abar : cert.a));
        }
    }
    return 0;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const std::vector<std::string>& paths, int repeats, const Output& out) {
    std::vector<std::filesystem::path> files(paths.begin(), paths.end());
    const BenchResult r = bench_files(files, repeats);
    for (const auto& f : r.failures)
        log(1, f);
    for (const BenchRow& row : r.rows)
        if (!row.certified)
            log(1, row.name, ": placement is not certified");

    if (out.format == "csv") {
        out.write(bench_csv(r.rows));
    } else if (out.format == "json") {
        json rows = json::array();
        for (const BenchRow& row : r.rows)
            rows.push_back(to_json(row));
        out.write(json{{"rows", rows}, {"failures", r.failures}});
    } else {
        out.write(bench_markdown(r.rows));
    }
    return r.failures.empty() ? 0 : kInputError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensor placement with strong structural observability certificates"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--out", out.path, "Write output to this file instead of stdout");

    auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--format", out.format, "Output format")
            ->check(CLI::IsMember(allowed))
            ->capture_default_str();
    };

    std::string path;
    std::vector<std::string> sensors;

    auto* info = app.add_subcommand("info", "Summarize a network: states, cycles, extreme nodes, structural preconditions");
    info->add_option("path", path, "INP, edge-list JSON or pattern JSON")->required();
    add_format(info, {"json", "csv", "text"});

    std::string mode = "cyclic";
    bool augment = false;
    auto* place = app.add_subcommand("place", "Compute and certify a sensor placement");
    place->add_option("path", path)->required();
    place->add_option("--mode", mode, "tree (all extreme nodes but one) or cyclic (spanning-tree leaves)")
        ->check(CLI::IsMember({"tree", "cyclic"}))
        ->capture_default_str();
    place->add_flag("--augment", augment, "Add sensors on stalled states until the placement certifies");
    add_format(place, {"json", "csv", "text"});

    auto* certify = app.add_subcommand("certify", "Certify a given sensor set");
    certify->add_option("path", path)->required();
    certify->add_option("--sensors", sensors, "State indices or labels (q:<link>, h:<node>)");
    add_format(certify, {"json", "text"});

    std::size_t trials = 100;
    std::uint64_t seed = 42;
    auto* oracle = app.add_subcommand("oracle", "Sample pattern realizations and run the Kalman rank test");
    oracle->add_option("path", path)->required();
    oracle->add_option("--sensors", sensors, "Sensor set; defaults to the cyclic placement");
    oracle->add_option("--trials", trials)->capture_default_str();
    oracle->add_option("--seed", seed)->capture_default_str();
    add_format(oracle, {"json", "text"});

    Index max_states = 16;
    auto* minimize = app.add_subcommand("minimize", "Exhaustive minimum certified sensor set (small inputs)");
    minimize->add_option("path", path)->required();
    minimize->add_option("--max-states", max_states)->capture_default_str();
    add_format(minimize, {"json", "text"});

    std::string stage = "graph", which = "A";
    auto* export_dot = app.add_subcommand("export-dot", "Graphviz rendering of a pipeline stage");
    export_dot->add_option("path", path)->required();
    export_dot->add_option("--stage", stage)
        ->check(CLI::IsMember({"graph", "tree", "placement", "trace"}))
        ->capture_default_str();
    export_dot->add_option("--sensors", sensors, "Sensor set for placement/trace; defaults to the cyclic placement");
    export_dot->add_option("--graph", which, "Colorability graph drawn by the trace stage")
        ->check(CLI::IsMember({"A", "Abar"}))
        ->capture_default_str();

    std::vector<std::string> paths;
    int repeats = 5;
    auto* bench = app.add_subcommand("bench", "Time spanning tree + placement on each network");
    bench->add_option("paths", paths);
    bench->add_option("--repeats", repeats, "Timed runs per network; the median is reported")->capture_default_str();
    out.format = "markdown";
    add_format(bench, {"json", "csv", "text", "markdown"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInputError;
    }
    if (!bench->parsed() && out.format == "markdown")
        out.format = "json";

    try {
        if (info->parsed())
            return cmd_info(path, out);
        if (place->parsed())
            return cmd_place(path, mode, augment, out);
        if (certify->parsed())
            return cmd_certify(path, sensors, out);
        if (oracle->parsed())
            return cmd_oracle(path, sensors, trials, seed, out);
        if (minimize->parsed())
            return cmd_minimize(path, max_states, out);
        if (export_dot->parsed())
            return cmd_export_dot(path, stage, sensors, which, out);
        return cmd_bench(paths, repeats, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
