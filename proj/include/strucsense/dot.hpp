#ifndef STRUCSENSE_DOT_HPP_
#define STRUCSENSE_DOT_HPP_

// Graphviz DOT writers. Star edges are solid, unknown edges dashed, removed
// chords dotted; flows are boxes, heads circles, sensors red hexagons.

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "forcing.hpp"
#include "model.hpp"
#include "netgraph.hpp"
#include "placement.hpp"
#include "spanning.hpp"

namespace strucsense::dot {

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

inline std::string state_id(Index s) { return "s" + std::to_string(s); }
inline std::string sensor_id(Index k) { return "y" + std::to_string(k); }

namespace detail {

inline const char* shape(StateKind k) {
    switch (k) {
    case StateKind::flow: return "box";
    case StateKind::head: return "circle";
    default: return "ellipse";
    }
}

class Writer {
public:
    Writer(const NetworkModel& m, bool directed) : m_(m), directed_(directed) {
        os_ << (directed ? "digraph " : "graph ") << quote(m.name.empty() ? "network" : m.name) << " {\n";
        os_ << "  node [fontsize=10];\n";
    }

    void states(const std::vector<std::string>& extra = {}) {
        for (Index s = 0; s < m_.state_count(); ++s) {
            os_ << "  " << state_id(s) << " [label=" << quote(m_.qualified_label(s))
                << ", shape=" << shape(m_.kinds[s]);
            if (s < extra.size() && !extra[s].empty())
                os_ << ", " << extra[s];
            os_ << "];\n";
        }
    }

    void sensors(const SensorPlacement& p, bool with_edges = true) {
        for (Index k = 0; k < p.n_y(); ++k) {
            os_ << "  " << sensor_id(k) << " [label=" << quote("y" + std::to_string(k + 1))
                << ", shape=hexagon, style=filled, fillcolor=red, fontcolor=white];\n";
            if (with_edges)
                edge(sensor_id(k), state_id(p.measured[k]), "color=red");
        }
    }

    void edge(const std::string& a, const std::string& b, const std::string& attrs = {}) {
        os_ << "  " << a << (directed_ ? " -> " : " -- ") << b;
        if (!attrs.empty())
            os_ << " [" << attrs << "]";
        os_ << ";\n";
    }

    /// Graph edges; undirected writers emit each symmetric pair once.
    void graph_edges(const StateGraph& g, const std::set<Edge>& dotted = {}) {
        auto emit = [&](const std::vector<Edge>& es, const char* style) {
            for (const Edge& e : es) {
                if (!directed_ && e.a > e.b)
                    continue;
                const bool chord = dotted.contains(undirected(e.a, e.b));
                edge(state_id(e.a), state_id(e.b), std::string("style=") + (chord ? "dotted" : style));
            }
        };
        emit(g.star_edges(), "solid");
        emit(g.unknown_edges(), "dashed");
    }

    std::string finish() {
        os_ << "}\n";
        return os_.str();
    }

private:
    const NetworkModel& m_;
    bool directed_;
    std::ostringstream os_;
};

} // namespace detail

/// Structured state graph.
inline std::string graph(const NetworkModel& m) {
    const StateGraph g = from_pattern(m.pattern);
    detail::Writer w(m, !g.symmetric());
    w.states();
    w.graph_edges(g);
    return w.finish();
}

/// Spanning tree in bold, removed chords dotted.
inline std::string tree(const NetworkModel& m, const SpanningTree& t) {
    const StateGraph g = from_pattern(m.pattern);
    const auto chords = removed_chords(g, t);
    detail::Writer w(m, false);
    w.states();
    for (const Edge& e : t.tree_edges)
        w.edge(state_id(e.a), state_id(e.b), "style=bold");
    for (const Edge& e : chords)
        w.edge(state_id(e.a), state_id(e.b), "style=dotted");
    return w.finish();
}

/// State graph with sensor nodes attached.
inline std::string placement(const NetworkModel& m, const SensorPlacement& p) {
    const StateGraph g = from_pattern(m.pattern);
    detail::Writer w(m, !g.symmetric());
    w.states();
    w.graph_edges(g);
    w.sensors(p);
    return w.finish();
}

/// One colorability run: forced states are filled black and carry the step
/// at which they were forced; force edges are bold and numbered.
inline std::string trace(const NetworkModel& m, const SensorPlacement& p, const GraphVerdict& v) {
    std::vector<std::string> extra(m.state_count());
    for (Index step = 0; step < v.coloring.trace.size(); ++step) {
        const Force& f = v.coloring.trace[step];
        if (f.forced < m.state_count())
            extra[f.forced] = "style=filled, fillcolor=black, fontcolor=white, xlabel=" +
                              quote("t" + std::to_string(step + 1));
    }
    detail::Writer w(m, true);
    w.states(extra);
    w.sensors(p, false);
    for (Index step = 0; step < v.coloring.trace.size(); ++step) {
        const Force& f = v.coloring.trace[step];
        const std::string from = f.forcer < m.state_count() ? state_id(f.forcer) : sensor_id(f.forcer - m.state_count());
        w.edge(from, state_id(f.forced), "style=bold, label=" + quote(std::to_string(step + 1)));
    }
    return w.finish();
}

} // namespace strucsense::dot

#endif
