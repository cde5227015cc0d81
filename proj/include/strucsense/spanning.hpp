#ifndef STRUCSENSE_SPANNING_HPP_
#define STRUCSENSE_SPANNING_HPP_

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "netgraph.hpp"

namespace strucsense {

/// Spanning forest of the star graph, one root per star component.
struct SpanningTree {
    std::vector<std::optional<Index>> parent;
    std::vector<Index> roots;
    std::vector<Edge> tree_edges; ///< undirected, a < b, ascending
    std::vector<bool> visited;

    Index size() const noexcept { return parent.size(); }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(size(), 0);
        for (const Edge& e : tree_edges) {
            ++deg[e.a];
            ++deg[e.b];
        }
        return deg;
    }
};

/// Depth-first spanning forest over star edges. Self-loops are ignored,
/// neighbors are explored in ascending order and each component is rooted at
/// its lowest index. A tree edge is added exactly when an unvisited node is
/// reached. Runs in O(n + m) with an explicit stack.
inline SpanningTree spanning_tree_dfs(const StateGraph& g) {
    const Index n = g.size();
    const auto adj = g.star_neighbors();

    SpanningTree t;
    t.parent.assign(n, std::nullopt);
    t.visited.assign(n, false);
    t.tree_edges.reserve(n);

    // (node, position of the next neighbor to try)
    std::vector<std::pair<Index, std::size_t>> stack;
    for (Index root = 0; root < n; ++root) {
        if (t.visited[root])
            continue;
        t.roots.push_back(root);
        t.visited[root] = true;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            const auto& nbrs = adj[u];
            while (next < nbrs.size() && t.visited[nbrs[next]])
                ++next;
            if (next == nbrs.size()) {
                stack.pop_back();
                continue;
            }
            const Index w = nbrs[next++];
            t.visited[w] = true;
            t.parent[w] = u;
            t.tree_edges.push_back(undirected(u, w));
            stack.emplace_back(w, 0);
        }
    }
    std::sort(t.tree_edges.begin(), t.tree_edges.end());
    return t;
}

/// Star edges of `g` (self-loops excluded) that are not in the tree.
inline std::vector<Edge> removed_chords(const StateGraph& g, const SpanningTree& t) {
    if (t.size() != g.size())
        throw DimensionError("removed_chords: tree and graph sizes differ");
    std::vector<Edge> chords;
    const auto all = g.undirected_star_edges();
    std::set_difference(all.begin(), all.end(), t.tree_edges.begin(), t.tree_edges.end(),
                        std::back_inserter(chords));
    return chords;
}

} // namespace strucsense

#endif
