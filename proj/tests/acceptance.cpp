// One PASS/FAIL/SKIP line per acceptance criterion. Exit status is nonzero if
// any criterion fails. Benchmark networks are looked up in STRUCSENSE_BENCH_DIR
// (default: <repo>/benchmarks, see tools/fetch_benchmarks.sh).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <strucsense/strucsense.hpp>

#include "support/generators.hpp"

using namespace strucsense;
namespace fs = std::filesystem;

namespace {

// Tolerances and bounds, fixed here rather than taken from the command line.
constexpr double kHanoiSeconds = 0.5;
constexpr double kLargeSeconds = 1.0;
constexpr double kTriangleSeconds = 0.1;
constexpr double kExhaustiveSeconds = 60.0;
constexpr double kRankTol = 1e-9;
constexpr std::uint64_t kOracleSeed = 42;
constexpr std::size_t kOracleTrials = 100;

enum class Status { pass, fail, skip };

struct Outcome {
    Status status;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
    std::string out;
    for (const auto& p : parts)
        out += (out.empty() ? "" : sep) + p;
    return out;
}

fs::path bench_dir() {
    if (const char* env = std::getenv("STRUCSENSE_BENCH_DIR"); env && *env)
        return env;
    return STRUCSENSE_DEFAULT_BENCH_DIR;
}

/// Case-insensitive lookup of <stem>.inp, since the toolboxes disagree on
/// capitalization (L-town / L-TOWN, AnyTown / Anytown).
std::optional<fs::path> find_bench(const std::string& stem) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    std::error_code ec;
    if (!fs::is_directory(bench_dir(), ec))
        return std::nullopt;
    for (const auto& e : fs::directory_iterator(bench_dir(), ec))
        if (lower(e.path().filename().string()) == lower(stem + ".inp"))
            return e.path();
    return std::nullopt;
}

std::vector<fs::path> fixtures() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(STRUCSENSE_FIXTURES))
        if (e.path().filename().string().rfind("malformed", 0) != 0)
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

struct TableRow {
    const char* stem;
    std::size_t states, cycles, extreme, sensors;
};

/// Returns nullopt when the network file is missing.
std::optional<Outcome> check_network(const TableRow& t, double limit, bool sensors_exact) {
    const auto path = find_bench(t.stem);
    if (!path)
        return std::nullopt;
    const NetworkModel m = load_model(*path);
    const BenchRow r = bench_model(m);
    std::vector<std::string> bad;
    auto expect = [&](const char* what, std::size_t got, std::size_t want) {
        if (got != want)
            bad.push_back(std::string(what) + " " + std::to_string(got) + " != " + std::to_string(want));
    };
    expect("states", r.state_nodes, t.states);
    expect("cycles", r.cycles, t.cycles);
    expect("extreme", r.extreme_nodes, t.extreme);
    if (sensors_exact)
        expect("sensors", r.sensors, t.sensors);
    if (!r.certified)
        bad.push_back("not certified");
    if (r.elapsed_seconds >= limit)
        bad.push_back("runtime " + fmt(r.elapsed_seconds) + " s >= " + fmt(limit, "%.1f"));
    const std::string summary = std::string(t.stem) + " " + std::to_string(r.state_nodes) + "/" +
                                std::to_string(r.cycles) + "/" + std::to_string(r.extreme_nodes) + " sensors " +
                                std::to_string(r.sensors) + " (table " + std::to_string(t.sensors) + ") " +
                                fmt(r.elapsed_seconds) + " s";
    if (bad.empty())
        return Outcome{Status::pass, summary};
    return Outcome{Status::fail, summary + " [" + join(bad, ", ") + "]"};
}

Outcome criterion1() {
    // sensors accepted in [max(n_e, cycles), n_e + 2 * cycles] = [3, 9]
    const TableRow hanoi{"Hanoi", 66, 3, 3, 6};
    const auto path = find_bench(hanoi.stem);
    if (!path)
        return {Status::skip, "Hanoi.inp not found in " + bench_dir().string()};
    auto out = *check_network(hanoi, kHanoiSeconds, false);
    const BenchRow r = bench_model(load_model(*path), 1);
    if (r.sensors < 3 || r.sensors > 9) {
        out.status = Status::fail;
        out.detail += " [sensor count outside [3, 9]]";
    } else if (r.sensors != hanoi.sensors) {
        out.detail += " [sensor count differs from 6, within [3, 9]]";
    }
    return out;
}

Outcome criterion2() {
    const TableRow rows[] = {{"L-town", 1694, 124, 37, 162},
                             {"AnyTown", 71, 19, 2, 24},
                             {"Net3", 216, 23, 16, 39},
                             {"D-town", 866, 53, 78, 131}};
    std::vector<std::string> parts;
    bool failed = false;
    std::size_t missing = 0;
    for (const TableRow& t : rows) {
        const auto o = check_network(t, kLargeSeconds, false);
        if (!o) {
            ++missing;
            parts.push_back(std::string(t.stem) + " not supplied");
            continue;
        }
        failed |= o->status == Status::fail;
        parts.push_back(o->detail);
    }
    if (failed)
        return {Status::fail, join(parts)};
    if (missing)
        return {Status::skip, join(parts)};
    return {Status::pass, join(parts)};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    const NetworkModel m = load_model(STRUCSENSE_FIXTURES "/triangle.inp");
    const NumericMatrix inc = incidence(*m.network).dense();
    const StateGraph g = from_pattern(m.pattern);
    const SensorPlacement p = place_cyclic(g, spanning_tree_dfs(g));
    const PatternMatrix c = build_c_pattern(p, g.size());
    const bool sso = certify_sso(m.pattern, c).sso;
    const OracleReport rep = sample_and_check(m.pattern, c, kOracleTrials, kOracleSeed,
                                              OracleConfig{.rank = {.tol = kRankTol}});
    const double elapsed = seconds_since(t0);

    NumericMatrix printed(4, 4);
    printed << -1, 1, 1, 0, 0, 0, -1, 1, 0, -1, 0, -1, 1, 0, 0, 0;
    std::size_t diag_star = 0, diag_unknown = 0;
    for (Index i = 0; i < m.pattern.rows(); ++i) {
        diag_star += m.pattern(i, i) == Entry::Star;
        diag_unknown += m.pattern(i, i) == Entry::Unknown;
    }

    std::vector<std::string> bad;
    if (inc != printed)
        bad.push_back("incidence differs");
    if (m.pattern.rows() != 8 || m.pattern.cols() != 8)
        bad.push_back("pattern not 8x8");
    if (diag_star != 4 || diag_unknown != 4)
        bad.push_back("diagonal " + std::to_string(diag_star) + " Star / " + std::to_string(diag_unknown) + " Unknown");
    if (p.n_y() != 2)
        bad.push_back(std::to_string(p.n_y()) + " sensors");
    if (!sso)
        bad.push_back("not certified");
    if (rep.passes != kOracleTrials)
        bad.push_back("oracle " + std::to_string(rep.passes) + "/" + std::to_string(kOracleTrials));
    if (elapsed >= kTriangleSeconds)
        bad.push_back("runtime " + fmt(elapsed) + " s");

    std::string sensors;
    for (Index v : p.measured)
        sensors += (sensors.empty() ? "" : ",") + m.qualified_label(v);
    const std::string summary = "sensors {" + sensors + "}, oracle " + std::to_string(rep.passes) + "/" +
                                std::to_string(kOracleTrials) + " seed 42, " + fmt(elapsed) + " s";
    return {bad.empty() ? Status::pass : Status::fail, summary + (bad.empty() ? "" : " [" + join(bad, ", ") + "]")};
}

Outcome criterion4() {
    std::vector<std::string> failing;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const Index n = std::uniform_int_distribution<Index>(2, 50)(rng);
        const PatternMatrix a = testgen::random_tree(n, testgen::Diagonal::any, rng);
        if (!certify_sso(a, build_c_pattern(place_tree(from_pattern(a)), n)).sso)
            failing.push_back(std::to_string(seed));
    }
    return {failing.empty() ? Status::pass : Status::fail,
            std::to_string(200 - failing.size()) + "/200 trees certified" +
                (failing.empty() ? "" : ", failing seeds " + join(failing, ","))};
}

Outcome criterion5() {
    std::vector<std::string> failing;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const Index n = std::uniform_int_distribution<Index>(4, 50)(rng);
        const PatternMatrix a = testgen::random_cyclic(n, 8, testgen::Diagonal::wdn, rng);
        const StateGraph g = from_pattern(a);
        if (!certify_sso(a, build_c_pattern(place_cyclic(g, spanning_tree_dfs(g)), n)).sso)
            failing.push_back(std::to_string(seed));
    }
    return {failing.empty() ? Status::pass : Status::fail,
            std::to_string(200 - failing.size()) + "/200 graphs certified" +
                (failing.empty() ? "" : ", failing seeds " + join(failing, ","))};
}

Outcome criterion6() {
    std::mt19937_64 rng(6);
    std::size_t mismatches = 0, orders = 0;
    for (int k = 0; k < 100; ++k) {
        const Index n = std::uniform_int_distribution<Index>(1, 60)(rng);
        const PatternMatrix a = k % 2 ? testgen::random_directed(n, 3.0 / n, rng)
                                      : testgen::random_cyclic(n, 6, testgen::Diagonal::any, rng);
        const PatternMatrix c =
            build_c_pattern({testgen::random_subset(a.rows(), 0.15, rng), PlacementMode::cyclic}, a.rows());
        const ObservabilityGraph g = build_observability_graph(a, c);
        const std::vector<bool> black = force_closure(g).black;
        for (int r = 0; r < 100; ++r, ++orders)
            mismatches += testgen::random_order_closure(g, rng) != black;
    }
    return {mismatches ? Status::fail : Status::pass,
            std::to_string(orders - mismatches) + "/" + std::to_string(orders) + " random orders agree"};
}

Outcome criterion7() {
    std::mt19937_64 rng(7);
    std::size_t pairs = 0, failures = 0, realizations = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<std::string> failing;
    while (pairs < 50) {
        const Index n = std::uniform_int_distribution<Index>(1, 20)(rng);
        PatternMatrix a;
        SensorPlacement p{testgen::random_subset(n, 0.3, rng), PlacementMode::cyclic};
        switch (pairs % 3) {
        case 0: a = testgen::random_cyclic(std::min<Index>(std::max<Index>(n, 4), 20), 5, testgen::Diagonal::wdn, rng); break;
        case 1: a = testgen::random_directed(n, 0.25, rng); break;
        default: a = testgen::random_tree(n, testgen::Diagonal::any, rng); break;
        }
        const PatternMatrix c = build_c_pattern(p, a.rows());
        if (!certify_sso(a, c).sso)
            continue;
        const std::uint64_t seed = rng();
        const OracleReport r = sample_and_check(a, c, 100, seed, OracleConfig{.rank = {.tol = kRankTol}});
        realizations += r.trials;
        if (r.passes != r.trials) {
            failures += r.trials - r.passes;
            failing.push_back("pair " + std::to_string(pairs) + " seed " + std::to_string(seed));
        }
        worst = std::min(worst, r.min_sigma_ratio);
        ++pairs;
    }
    return {failures ? Status::fail : Status::pass,
            std::to_string(realizations - failures) + "/" + std::to_string(realizations) +
                " realizations observable over 50 certified pairs, min sigma ratio " + fmt(worst, "%.2e") +
                (failing.empty() ? "" : ", failing " + join(failing, ","))};
}

Outcome criterion8() {
    std::vector<std::string> parts, bad;
    for (const fs::path& f : fixtures()) {
        const NetworkModel m = load_model(f);
        const Index n = m.pattern.rows();
        if (n > 12 || n == 0)
            continue;
        const StateGraph g = from_pattern(m.pattern);
        SensorPlacement h = place_cyclic(g, spanning_tree_dfs(g));
        augment_until_certified(m.pattern, h);

        const auto t0 = Clock::now();
        const MinimalPlacementResult res = exhaustive_min_sensors(m.pattern, 12);
        const double elapsed = seconds_since(t0);

        const std::string name = f.filename().string();
        parts.push_back(name + " min " + std::to_string(res.minimum_size) + " <= " + std::to_string(h.n_y()));
        if (res.minimum_size > h.n_y())
            bad.push_back(name + " minimum above heuristic");
        for (const auto& w : res.witnesses)
            if (!certify_sso(m.pattern, build_c_pattern({w, PlacementMode::cyclic}, n)).sso)
                bad.push_back(name + " witness does not certify");
        if (elapsed >= kExhaustiveSeconds)
            bad.push_back(name + " took " + fmt(elapsed, "%.1f") + " s");
    }
    if (parts.empty())
        return {Status::fail, "no fixture with n_x <= 12"};
    return {bad.empty() ? Status::pass : Status::fail, join(parts) + (bad.empty() ? "" : " [" + join(bad) + "]")};
}

Outcome criterion9() {
    std::vector<std::string> bad;
    std::size_t checked = 0;
    for (const fs::path& f : fixtures()) {
        const NetworkModel m = load_model(f);
        if (m.pattern.rows() == 0)
            continue;
        ++checked;
        if (certify_sso(m.pattern, PatternMatrix(0, m.pattern.rows())).sso)
            bad.push_back(f.filename().string() + " certifies without sensors");
    }
    PatternMatrix scalar = PatternMatrix::square(1);
    scalar.set(0, 0, Entry::Star);
    const Certificate c = certify_sso(scalar, PatternMatrix(0, 1));
    if (c.sso || !c.a.colorable || c.abar.colorable)
        bad.push_back("scalar [*] verdict A=" + std::to_string(c.a.colorable) + " Abar=" +
                      std::to_string(c.abar.colorable));
    return {bad.empty() ? Status::pass : Status::fail,
            std::to_string(checked) + " fixtures false with no sensors; scalar [*] fails on Abar only" +
                (bad.empty() ? "" : " [" + join(bad) + "]")};
}

} // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {Status::fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
        failed += o.status == Status::fail;
        std::printf("criterion %zu: %s  %s\n", i + 1, tag, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
