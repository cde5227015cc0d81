#ifndef STRUCSENSE_FORCING_HPP_
#define STRUCSENSE_FORCING_HPP_

// Color-change rule and the two-graph strong structural observability test.
//
// Node v forces u when (v,u) is a star edge, u is white, and every other
// out-neighbor of v (star or unknown, self-loops included) is black. v may
// itself be white; sensor nodes rely on this. The final black set does not
// depend on the order in which forces are applied.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "pattern.hpp"

namespace strucsense {

/// Graph G([A^T, C^T]): nodes [0, n_x) are states, [n_x, n_x + n_y) sensors.
struct ObservabilityGraph {
    Index state_count = 0;
    Index sensor_count = 0;
    std::vector<std::vector<Index>> star_out;
    std::vector<std::vector<Index>> unknown_out;
    std::vector<std::vector<Index>> in; ///< in-neighbors over both kinds

    Index size() const noexcept { return state_count + sensor_count; }
    bool is_sensor(Index v) const noexcept { return v >= state_count; }

    bool has_star_edge(Index v, Index u) const {
        return std::binary_search(star_out[v].begin(), star_out[v].end(), u);
    }
};

namespace detail {

inline ObservabilityGraph make_obs_graph(Index states, Index sensors) {
    ObservabilityGraph g;
    g.state_count = states;
    g.sensor_count = sensors;
    g.star_out.assign(states + sensors, {});
    g.unknown_out.assign(states + sensors, {});
    g.in.assign(states + sensors, {});
    return g;
}

inline void add_edge(ObservabilityGraph& g, Index from, Index to, Entry e) {
    (e == Entry::Star ? g.star_out : g.unknown_out)[from].push_back(to);
    g.in[to].push_back(from);
}

inline void finish(ObservabilityGraph& g) {
    for (auto* lists : {&g.star_out, &g.unknown_out, &g.in})
        for (auto& l : *lists)
            std::sort(l.begin(), l.end());
}

} // namespace detail

/// State edge i -> j iff A(i,j) is non-Zero (x_j enters the dynamics of x_i,
/// so knowing x_i's trajectory constrains x_j). Under a symmetric pattern this
/// is the same as reading A^T. Sensor k has one star edge to the state it
/// measures.
inline ObservabilityGraph build_observability_graph(const PatternMatrix& a, const PatternMatrix& c) {
    if (!a.is_square())
        throw DimensionError("observability graph: state pattern must be square");
    if (c.cols() != a.rows())
        throw DimensionError("observability graph: output pattern has " + std::to_string(c.cols()) +
                             " columns, expected " + std::to_string(a.rows()));
    const Index nx = a.rows();
    ObservabilityGraph g = detail::make_obs_graph(nx, c.rows());
    for (const auto& [pos, e] : a.nonzeros())
        detail::add_edge(g, pos.row, pos.col, e);

    std::vector<std::size_t> stars_in_row(c.rows(), 0);
    for (const auto& [pos, e] : c.nonzeros()) {
        if (e != Entry::Star)
            throw InputError("output pattern may only hold Zero or Star entries");
        if (++stars_in_row[pos.row] > 1)
            throw InputError("output row " + std::to_string(pos.row) + " measures more than one state");
        detail::add_edge(g, nx + pos.row, pos.col, Entry::Star);
    }
    for (Index k = 0; k < c.rows(); ++k)
        if (stars_in_row[k] == 0)
            throw InputError("output row " + std::to_string(k) + " has no Star entry");
    detail::finish(g);
    return g;
}

struct Force {
    Index forcer;
    Index forced;
    auto operator<=>(const Force&) const = default;
};

struct ColoringState {
    std::vector<bool> black;
    std::vector<Force> trace;
};

/// The unique white out-neighbor of v when v may force it.
inline std::optional<Index> forcing_target(const ObservabilityGraph& g, const std::vector<bool>& black,
                                           Index v) {
    std::optional<Index> white;
    std::size_t whites = 0;
    for (const auto* list : {&g.star_out[v], &g.unknown_out[v]})
        for (Index u : *list)
            if (!black[u] && ++whites == 1)
                white = u;
    if (whites == 1 && g.has_star_edge(v, *white))
        return white;
    return std::nullopt;
}

/// Applies the color-change rule to a fixpoint. Ready forcers are served
/// sensors first, then black states, then white states, lowest index first
/// within each group, so the trace is deterministic and follows the way
/// coloring spreads out from the sensors.
inline ColoringState force_closure(const ObservabilityGraph& g) {
    const Index n = g.size();
    ColoringState s;
    s.black.assign(n, false);

    auto rank = [&](Index v) { return g.is_sensor(v) ? 0 : s.black[v] ? 1 : 2; };
    std::vector<std::size_t> white_out(n);
    std::set<std::pair<int, Index>> ready;
    for (Index v = 0; v < n; ++v) {
        white_out[v] = g.star_out[v].size() + g.unknown_out[v].size();
        if (white_out[v] == 1)
            ready.insert({rank(v), v});
    }

    while (!ready.empty()) {
        const Index v = ready.begin()->second;
        ready.erase(ready.begin());
        if (white_out[v] != 1)
            continue;
        const auto target = forcing_target(g, s.black, v);
        if (!target)
            continue; // only white out-neighbor sits behind an unknown edge
        const Index u = *target;
        if (ready.erase({2, u}))
            ready.insert({1, u});
        s.black[u] = true;
        s.trace.push_back({v, u});
        for (Index w : g.in[u])
            if (--white_out[w] == 1)
                ready.insert({rank(w), w});
    }
    return s;
}

/// Same fixpoint by rescanning every node after each force. O(n * forces * deg);
/// kept as a reference for differential tests.
inline ColoringState force_closure_reference(const ObservabilityGraph& g) {
    ColoringState s;
    s.black.assign(g.size(), false);
    for (bool progress = true; progress;) {
        progress = false;
        for (Index v = 0; v < g.size(); ++v) {
            if (auto u = forcing_target(g, s.black, v)) {
                s.black[*u] = true;
                s.trace.push_back({v, *u});
                progress = true;
                break;
            }
        }
    }
    return s;
}

/// Re-applies `trace` from all-white, validating each step. Returns the black
/// set, or nullopt if some step is not a legal force.
inline std::optional<std::vector<bool>> replay_trace(const ObservabilityGraph& g,
                                                     const std::vector<Force>& trace) {
    std::vector<bool> black(g.size(), false);
    for (const Force& f : trace) {
        if (f.forcer >= g.size() || f.forced >= g.size())
            return std::nullopt;
        const auto target = forcing_target(g, black, f.forcer);
        if (!target || *target != f.forced)
            return std::nullopt;
        black[f.forced] = true;
    }
    return black;
}

inline bool all_states_black(const ObservabilityGraph& g, const std::vector<bool>& black) {
    for (Index v = 0; v < g.state_count; ++v)
        if (!black[v])
            return false;
    return true;
}

/// Every state node ends black; sensor nodes are exempt.
inline bool is_colorable(const ObservabilityGraph& g) {
    return all_states_black(g, force_closure(g).black);
}

struct GraphVerdict {
    std::string name;
    bool colorable = false;
    ColoringState coloring;

    std::vector<Index> white_states(Index state_count) const {
        std::vector<Index> w;
        for (Index v = 0; v < state_count; ++v)
            if (!coloring.black[v])
                w.push_back(v);
        return w;
    }
};

struct Certificate {
    GraphVerdict a;    ///< G([A^T, C^T])
    GraphVerdict abar; ///< G([Abar^T, C^T])
    bool sso = false;
};

inline GraphVerdict colorability(const ObservabilityGraph& g, std::string name) {
    GraphVerdict v{std::move(name), false, force_closure(g)};
    v.colorable = all_states_black(g, v.coloring.black);
    return v;
}

/// Strong structural observability holds iff both graphs are colorable.
inline Certificate certify_sso(const PatternMatrix& a, const PatternMatrix& c) {
    Certificate cert;
    cert.a = colorability(build_observability_graph(a, c), "A");
    cert.abar = colorability(build_observability_graph(make_abar(a), c), "Abar");
    cert.sso = cert.a.colorable && cert.abar.colorable;
    return cert;
}

inline nlohmann::json to_json(const GraphVerdict& v) {
    nlohmann::json trace = nlohmann::json::array();
    for (const Force& f : v.coloring.trace)
        trace.push_back({f.forcer, f.forced});
    return {{"name", v.name}, {"colorable", v.colorable}, {"trace", trace}};
}

inline nlohmann::json to_json(const Certificate& c) {
    return {{"sso", c.sso}, {"graphs", {to_json(c.a), to_json(c.abar)}}};
}

} // namespace strucsense

#endif
