#ifndef STRUCSENSE_NETGRAPH_HPP_
#define STRUCSENSE_NETGRAPH_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "pattern.hpp"

namespace strucsense {

/// Ordered node pair. Undirected edges are stored with a <= b.
struct Edge {
    Index a;
    Index b;
    auto operator<=>(const Edge&) const = default;
};

inline Edge undirected(Index u, Index v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Graph of a square pattern: Star entries give star edges, Unknown entries
/// unknown edges. Self-loops are kept. Adjacency lists are sorted ascending.
class StateGraph {
public:
    StateGraph() = default;

    /// Builds from explicit ordered edge lists; duplicates are merged.
    StateGraph(Index n, std::vector<Edge> star, std::vector<Edge> unknown) : n_(n) {
        auto normalize = [n](std::vector<Edge>& es) {
            for (const Edge& e : es)
                if (e.a >= n || e.b >= n)
                    throw InputError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                     ") outside node range " + std::to_string(n));
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
        };
        normalize(star);
        normalize(unknown);
        std::vector<Edge> both;
        std::set_intersection(star.begin(), star.end(), unknown.begin(), unknown.end(),
                              std::back_inserter(both));
        if (!both.empty())
            throw InputError("edge (" + std::to_string(both.front().a) + "," +
                             std::to_string(both.front().b) + ") is both star and unknown");
        star_ = std::move(star);
        unknown_ = std::move(unknown);

        star_out_.assign(n, {});
        unknown_out_.assign(n, {});
        for (const Edge& e : star_)
            star_out_[e.a].push_back(e.b);
        for (const Edge& e : unknown_)
            unknown_out_[e.a].push_back(e.b);
        // edges arrive sorted by (a, b) so every list is already ascending
        symmetric_ = is_closed_under_reversal(star_) && is_closed_under_reversal(unknown_);
    }

    Index size() const noexcept { return n_; }
    const std::vector<Edge>& star_edges() const noexcept { return star_; }
    const std::vector<Edge>& unknown_edges() const noexcept { return unknown_; }
    std::span<const Index> star_out(Index v) const { return star_out_.at(v); }
    std::span<const Index> unknown_out(Index v) const { return unknown_out_.at(v); }
    bool symmetric() const noexcept { return symmetric_; }

    bool operator==(const StateGraph& o) const {
        return n_ == o.n_ && star_ == o.star_ && unknown_ == o.unknown_;
    }

    /// Distinct undirected star pairs {a,b}, a < b; self-loops dropped.
    std::vector<Edge> undirected_star_edges() const {
        std::vector<Edge> out;
        out.reserve(star_.size());
        for (const Edge& e : star_)
            if (e.a != e.b)
                out.push_back(undirected(e.a, e.b));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Undirected star adjacency without self-loops, ascending.
    std::vector<std::vector<Index>> star_neighbors() const {
        std::vector<std::vector<Index>> adj(n_);
        for (const Edge& e : undirected_star_edges()) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        for (auto& l : adj)
            std::sort(l.begin(), l.end());
        return adj;
    }

    /// Distinct neighbors over both edge kinds and both directions, no self.
    std::vector<std::vector<Index>> neighbors() const {
        std::vector<std::vector<Index>> adj(n_);
        for (const auto* es : {&star_, &unknown_})
            for (const Edge& e : *es)
                if (e.a != e.b) {
                    adj[e.a].push_back(e.b);
                    adj[e.b].push_back(e.a);
                }
        for (auto& l : adj) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
        return adj;
    }

private:
    static bool is_closed_under_reversal(const std::vector<Edge>& es) {
        return std::all_of(es.begin(), es.end(), [&](const Edge& e) {
            return std::binary_search(es.begin(), es.end(), Edge{e.b, e.a});
        });
    }

    Index n_ = 0;
    std::vector<Edge> star_;
    std::vector<Edge> unknown_;
    std::vector<std::vector<Index>> star_out_;
    std::vector<std::vector<Index>> unknown_out_;
    bool symmetric_ = true;
};

/// Edge (i,j) exists iff entry (i,j) of the pattern (or of its transpose) is
/// non-Zero.
inline StateGraph from_pattern(const PatternMatrix& a, bool transpose = false) {
    if (!a.is_square())
        throw DimensionError("from_pattern: pattern must be square");
    std::vector<Edge> star, unknown;
    for (const auto& [pos, e] : a.nonzeros()) {
        const Edge edge = transpose ? Edge{pos.col, pos.row} : Edge{pos.row, pos.col};
        (e == Entry::Star ? star : unknown).push_back(edge);
    }
    return StateGraph(a.rows(), std::move(star), std::move(unknown));
}

inline PatternMatrix to_pattern(const StateGraph& g) {
    PatternMatrix a = PatternMatrix::square(g.size());
    for (const Edge& e : g.star_edges())
        a.set(e.a, e.b, Entry::Star);
    for (const Edge& e : g.unknown_edges())
        a.set(e.a, e.b, Entry::Unknown);
    return a;
}

struct NodeClassification {
    std::vector<Index> extreme;      ///< exactly one neighbor
    std::vector<Index> intersection; ///< three or more neighbors
    std::vector<Index> isolated;     ///< no neighbor
    std::size_t degree_two = 0;

    std::size_t n_e() const noexcept { return extreme.size(); }
    std::size_t n_i() const noexcept { return intersection.size(); }
};

inline NodeClassification classify_nodes(const StateGraph& g) {
    NodeClassification c;
    const auto adj = g.neighbors();
    for (Index v = 0; v < g.size(); ++v) {
        switch (adj[v].size()) {
        case 0: c.isolated.push_back(v); break;
        case 1: c.extreme.push_back(v); break;
        case 2: ++c.degree_two; break;
        default: c.intersection.push_back(v);
        }
    }
    return c;
}

/// Components of the undirected star-edge graph, each ascending, ordered by
/// smallest member.
inline std::vector<std::vector<Index>> connected_components_star(const StateGraph& g) {
    const auto adj = g.star_neighbors();
    std::vector<bool> seen(g.size(), false);
    std::vector<std::vector<Index>> comps;
    std::vector<Index> stack;
    for (Index root = 0; root < g.size(); ++root) {
        if (seen[root])
            continue;
        auto& comp = comps.emplace_back();
        seen[root] = true;
        stack.push_back(root);
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Index w : adj[u])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
    }
    return comps;
}

/// Cyclomatic number of the star graph: edges - nodes + components.
inline std::size_t cycle_count(const StateGraph& g) {
    return g.undirected_star_edges().size() + connected_components_star(g).size() - g.size();
}

struct Assumption1Report {
    bool symmetric = false;
    bool fully_connected = false;
    bool has_extreme = false;
    std::optional<Position> first_asymmetry;
    std::vector<std::vector<Index>> components;
    std::vector<Index> extreme;

    bool all() const noexcept { return symmetric && fully_connected && has_extreme; }
};

/// Symmetry, star-connectivity and existence of an extreme node.
inline Assumption1Report check_assumption1(const PatternMatrix& a) {
    if (!a.is_square())
        throw DimensionError("check_assumption1: pattern must be square");
    Assumption1Report r;
    r.first_asymmetry = a.first_asymmetry();
    r.symmetric = !r.first_asymmetry;
    const StateGraph g = from_pattern(a, true);
    r.components = connected_components_star(g);
    r.fully_connected = r.components.size() <= 1;
    r.extreme = classify_nodes(g).extreme;
    r.has_extreme = !r.extreme.empty();
    return r;
}

} // namespace strucsense

#endif
