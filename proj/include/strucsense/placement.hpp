#ifndef STRUCSENSE_PLACEMENT_HPP_
#define STRUCSENSE_PLACEMENT_HPP_

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "forcing.hpp"
#include "netgraph.hpp"
#include "pattern.hpp"
#include "spanning.hpp"

namespace strucsense {

enum class PlacementMode { tree, cyclic };

inline std::string_view to_string(PlacementMode m) { return m == PlacementMode::tree ? "tree" : "cyclic"; }

/// Measured states, one sensor per state.
struct SensorPlacement {
    std::vector<Index> measured;
    PlacementMode mode = PlacementMode::cyclic;

    std::size_t n_y() const noexcept { return measured.size(); }
};

/// Sensors on every extreme node of a tree except the highest-indexed one
/// (n_e - 1 sensors). A single-node graph gets one sensor.
inline SensorPlacement place_tree(const StateGraph& g) {
    SensorPlacement p{{}, PlacementMode::tree};
    if (g.size() == 0)
        return p;
    if (const auto comps = connected_components_star(g); comps.size() > 1)
        throw PlacementError("tree placement needs a connected graph; found " + std::to_string(comps.size()) +
                             " star components");
    if (cycle_count(g) > 0) {
        const Edge chord = removed_chords(g, spanning_tree_dfs(g)).front();
        throw PlacementError("tree placement needs an acyclic graph; edge " + std::to_string(chord.a) + "-" +
                             std::to_string(chord.b) + " closes a cycle");
    }
    if (g.size() == 1) {
        p.measured = {0};
        return p;
    }
    p.measured = classify_nodes(g).extreme;
    p.measured.pop_back(); // a tree with >= 2 nodes has >= 2 extreme nodes
    return p;
}

/// Sensors on every node of degree < 2 in the spanning tree (tree leaves and
/// isolated nodes). Multi-component forests are handled per component.
inline SensorPlacement place_cyclic(const StateGraph& g, const SpanningTree& t) {
    if (t.size() != g.size())
        throw DimensionError("place_cyclic: tree and graph sizes differ");
    SensorPlacement p{{}, PlacementMode::cyclic};
    const auto deg = t.degrees();
    for (Index v = 0; v < g.size(); ++v)
        if (deg[v] < 2)
            p.measured.push_back(v);
    return p;
}

/// n_y x n_x output pattern with row i measuring state measured[i].
inline PatternMatrix build_c_pattern(const SensorPlacement& p, Index n_x) {
    PatternMatrix c(p.n_y(), n_x);
    std::vector<bool> used(n_x, false);
    for (Index i = 0; i < p.n_y(); ++i) {
        const Index s = p.measured[i];
        if (s >= n_x)
            throw InputError("sensor on state " + std::to_string(s) + " but only " + std::to_string(n_x) +
                             " states exist");
        if (used[s])
            throw InputError("state " + std::to_string(s) + " measured twice");
        used[s] = true;
        c.set(i, s, Entry::Star);
    }
    return c;
}

/// Numeric output matrix with unit entries.
inline NumericMatrix output_matrix(const SensorPlacement& p, Index n_x) {
    return sample_realization(build_c_pattern(p, n_x), 0, SampleConfig{.unit_stars = true});
}

struct SensorCountReport {
    std::size_t n_e_graph = 0;
    std::size_t cycles = 0;
    std::size_t sensors = 0;
    bool bound_ok = false;
};

/// Compares the placement size with the extreme-node and cycle counts:
/// n_e <= sensors <= n_e + 2 * cycles, and sensors >= cycles when cyclic.
inline SensorCountReport sensor_count_report(const StateGraph& g, const SpanningTree& t,
                                             const SensorPlacement& p) {
    if (t.size() != g.size())
        throw DimensionError("sensor_count_report: tree and graph sizes differ");
    SensorCountReport r;
    r.n_e_graph = classify_nodes(g).n_e();
    r.cycles = cycle_count(g);
    r.sensors = p.n_y();
    r.bound_ok = r.sensors >= r.n_e_graph && (r.cycles == 0 || r.sensors >= r.cycles) &&
                 r.sensors <= r.n_e_graph + 2 * r.cycles;
    return r;
}

/// Adds sensors until the placement certifies: while a colorability graph
/// stalls, measure its lowest-indexed white state. Returns the states added.
/// Not part of the DFS-leaf rule; the rule alone does not always certify.
inline std::vector<Index> augment_until_certified(const PatternMatrix& a, SensorPlacement& p) {
    std::vector<Index> added;
    for (;;) {
        const Certificate cert = certify_sso(a, build_c_pattern(p, a.rows()));
        if (cert.sso)
            return added;
        const GraphVerdict& stuck = cert.a.colorable ? cert.abar : cert.a;
        const Index next = stuck.white_states(a.rows()).front();
        p.measured.push_back(next);
        added.push_back(next);
    }
}

} // namespace strucsense

#endif
