#ifndef STRUCSENSE_BENCH_HPP_
#define STRUCSENSE_BENCH_HPP_

// Placement pipeline timing. Only the spanning tree and leaf placement are
// timed; parsing and certification run outside the clock.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forcing.hpp"
#include "model.hpp"
#include "netgraph.hpp"
#include "placement.hpp"
#include "spanning.hpp"

namespace strucsense {

struct BenchRow {
    std::string name;
    std::size_t state_nodes = 0;
    std::size_t cycles = 0;
    std::size_t extreme_nodes = 0;
    std::size_t sensors = 0;
    double elapsed_seconds = 0.0;
    bool certified = false;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<std::string> failures; ///< "path: message", input order
};

inline BenchRow bench_model(const NetworkModel& m, int repeats = 5) {
    using clock = std::chrono::steady_clock;
    const StateGraph g = from_pattern(m.pattern);

    std::vector<double> times;
    SensorPlacement p;
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        const auto t0 = clock::now();
        const SpanningTree t = spanning_tree_dfs(g);
        p = place_cyclic(g, t);
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());

    BenchRow row;
    row.name = m.name;
    row.state_nodes = g.size();
    row.cycles = cycle_count(g);
    row.extreme_nodes = classify_nodes(g).n_e();
    row.sensors = p.n_y();
    row.elapsed_seconds = times[times.size() / 2];
    row.certified = certify_sso(m.pattern, build_c_pattern(p, g.size())).sso;
    return row;
}

/// One row per readable file; files that fail to load are listed in
/// `failures` and skipped.
inline BenchResult bench_files(const std::vector<std::filesystem::path>& paths, int repeats = 5) {
    BenchResult res;
    for (const auto& path : paths) {
        try {
            res.rows.push_back(bench_model(load_model(path), repeats));
        } catch (const std::exception& e) {
            res.failures.push_back(path.string() + ": " + e.what());
        }
    }
    return res;
}

inline std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", s);
    return buf;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "name,state_nodes,cycles,extreme_nodes,sensors,elapsed_seconds,certified\n";
    for (const BenchRow& r : rows)
        os << r.name << ',' << r.state_nodes << ',' << r.cycles << ',' << r.extreme_nodes << ','
           << r.sensors << ',' << format_seconds(r.elapsed_seconds) << ',' << (r.certified ? "true" : "false")
           << '\n';
    return os.str();
}

inline std::string bench_markdown(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "| Network | State nodes | Cycles | Extreme nodes | Sensors | Time [s] | Certified |\n"
       << "|---|---:|---:|---:|---:|---:|---|\n";
    for (const BenchRow& r : rows)
        os << "| " << r.name << " | " << r.state_nodes << " | " << r.cycles << " | " << r.extreme_nodes
           << " | " << r.sensors << " | " << format_seconds(r.elapsed_seconds) << " | "
           << (r.certified ? "yes" : "no") << " |\n";
    return os.str();
}

/// Times are rounded to microseconds.
inline nlohmann::json to_json(const BenchRow& r) {
    return {{"name", r.name},
            {"state_nodes", r.state_nodes},
            {"cycles", r.cycles},
            {"extreme_nodes", r.extreme_nodes},
            {"sensors", r.sensors},
            {"elapsed_seconds", std::round(r.elapsed_seconds * 1e6) / 1e6},
            {"certified", r.certified}};
}

} // namespace strucsense

#endif
