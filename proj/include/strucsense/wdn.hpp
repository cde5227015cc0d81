#ifndef STRUCSENSE_WDN_HPP_
#define STRUCSENSE_WDN_HPP_

// Water-network topology: EPANET INP subset, incidence matrix and the
// structured flow/head state pattern.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "netgraph.hpp"
#include "pattern.hpp"

namespace strucsense {

enum class NodeKind { junction, reservoir, tank };
enum class LinkKind { pipe, pump, valve };

inline std::string_view to_string(NodeKind k) {
    switch (k) {
    case NodeKind::reservoir: return "reservoir";
    case NodeKind::tank: return "tank";
    default: return "junction";
    }
}

inline std::string_view to_string(LinkKind k) {
    switch (k) {
    case LinkKind::pump: return "pump";
    case LinkKind::valve: return "valve";
    default: return "pipe";
    }
}

struct Coordinates {
    double x = 0.0;
    double y = 0.0;
};

struct HydraulicNode {
    std::string id;
    NodeKind kind = NodeKind::junction;
    std::optional<Coordinates> xy;
};

struct Link {
    std::string id;
    LinkKind kind = LinkKind::pipe;
    std::string from;
    std::string to;
};

/// Nodes and links in declaration order. Labels are unique per table and
/// every link endpoint names a declared node.
class WdnNetwork {
public:
    WdnNetwork() = default;

    WdnNetwork(std::vector<HydraulicNode> nodes, std::vector<Link> links)
        : nodes_(std::move(nodes)), links_(std::move(links)) {
        for (Index i = 0; i < nodes_.size(); ++i)
            if (!node_index_.emplace(nodes_[i].id, i).second)
                throw InputError("duplicate node label '" + nodes_[i].id + "'");
        std::unordered_map<std::string, Index> seen;
        for (Index i = 0; i < links_.size(); ++i) {
            if (!seen.emplace(links_[i].id, i).second)
                throw InputError("duplicate link label '" + links_[i].id + "'");
            for (const auto* end : {&links_[i].from, &links_[i].to})
                if (!node_index_.contains(*end))
                    throw InputError("link '" + links_[i].id + "' references undeclared node '" + *end + "'");
        }
    }

    const std::vector<HydraulicNode>& nodes() const noexcept { return nodes_; }
    const std::vector<Link>& links() const noexcept { return links_; }
    Index node_count() const noexcept { return nodes_.size(); }
    Index link_count() const noexcept { return links_.size(); }

    std::optional<Index> node_index(const std::string& id) const {
        auto it = node_index_.find(id);
        return it == node_index_.end() ? std::nullopt : std::optional<Index>(it->second);
    }

private:
    std::vector<HydraulicNode> nodes_;
    std::vector<Link> links_;
    std::unordered_map<std::string, Index> node_index_;
};

namespace detail {

inline std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

inline std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace detail

/// Reads the topology sections of an EPANET INP file. ';' starts a comment,
/// section names are case-insensitive, and sections other than
/// JUNCTIONS/RESERVOIRS/TANKS/PIPES/PUMPS/VALVES/COORDINATES are skipped.
inline WdnNetwork parse_inp(std::string_view text) {
    enum class Section { other, junctions, reservoirs, tanks, pipes, pumps, valves, coordinates };
    struct PendingLink {
        Link link;
        std::size_t line;
    };

    std::vector<HydraulicNode> nodes;
    std::unordered_map<std::string, std::size_t> node_line;
    std::vector<PendingLink> links;
    std::unordered_map<std::string, std::size_t> link_line;
    std::vector<std::pair<std::string, Coordinates>> coords;
    bool saw_link_section = false;

    Section section = Section::other;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto c = line.find(';'); c != std::string_view::npos)
            line = line.substr(0, c);
        const auto tok = detail::split_ws(line);
        if (tok.empty())
            continue;

        if (tok[0].front() == '[') {
            const std::string name = detail::upper(tok[0]);
            section = name == "[JUNCTIONS]"    ? Section::junctions
                      : name == "[RESERVOIRS]" ? Section::reservoirs
                      : name == "[TANKS]"      ? Section::tanks
                      : name == "[PIPES]"      ? Section::pipes
                      : name == "[PUMPS]"      ? Section::pumps
                      : name == "[VALVES]"     ? Section::valves
                      : name == "[COORDINATES]" ? Section::coordinates
                                                : Section::other;
            saw_link_section |= section == Section::pipes || section == Section::pumps || section == Section::valves;
            continue;
        }

        switch (section) {
        case Section::junctions:
        case Section::reservoirs:
        case Section::tanks: {
            const NodeKind kind = section == Section::junctions    ? NodeKind::junction
                                  : section == Section::reservoirs ? NodeKind::reservoir
                                                                   : NodeKind::tank;
            std::string id(tok[0]);
            if (auto [it, fresh] = node_line.emplace(id, line_no); !fresh)
                throw ParseError("duplicate node label '" + id + "' (first declared on line " +
                                     std::to_string(it->second) + ")",
                                 line_no);
            nodes.push_back({std::move(id), kind, std::nullopt});
            break;
        }
        case Section::pipes:
        case Section::pumps:
        case Section::valves: {
            if (tok.size() < 3)
                throw ParseError("link row needs an id and two node labels", line_no);
            const LinkKind kind = section == Section::pipes   ? LinkKind::pipe
                                  : section == Section::pumps ? LinkKind::pump
                                                              : LinkKind::valve;
            std::string id(tok[0]);
            if (auto [it, fresh] = link_line.emplace(id, line_no); !fresh)
                throw ParseError("duplicate link label '" + id + "' (first declared on line " +
                                     std::to_string(it->second) + ")",
                                 line_no);
            links.push_back({{std::move(id), kind, std::string(tok[1]), std::string(tok[2])}, line_no});
            break;
        }
        case Section::coordinates: {
            if (tok.size() < 3)
                throw ParseError("coordinate row needs a node label, x and y", line_no);
            const auto x = detail::to_double(tok[1]);
            const auto y = detail::to_double(tok[2]);
            if (!x || !y)
                throw ParseError("coordinates must be numeric", line_no);
            coords.emplace_back(std::string(tok[0]), Coordinates{*x, *y});
            break;
        }
        case Section::other:
            break;
        }
    }

    if (!saw_link_section)
        throw ParseError("no [PIPES], [PUMPS] or [VALVES] section found", line_no);

    for (const PendingLink& p : links)
        for (const auto* end : {&p.link.from, &p.link.to})
            if (!node_line.contains(*end))
                throw ParseError("link '" + p.link.id + "' references undeclared node '" + *end + "'", p.line);

    std::unordered_map<std::string, Index> index;
    for (Index i = 0; i < nodes.size(); ++i)
        index.emplace(nodes[i].id, i);
    for (auto& [id, xy] : coords)
        if (auto it = index.find(id); it != index.end())
            nodes[it->second].xy = xy;

    std::vector<Link> plain;
    plain.reserve(links.size());
    for (PendingLink& p : links)
        plain.push_back(std::move(p.link));
    return WdnNetwork(std::move(nodes), std::move(plain));
}

/// Minimal INP text holding only the topology sections. A section header is
/// repeated whenever the kind changes, so declaration order survives.
inline std::string write_inp(const WdnNetwork& net) {
    std::ostringstream os;
    os.precision(17);
    auto node_header = [](NodeKind k) {
        return k == NodeKind::junction ? "[JUNCTIONS]" : k == NodeKind::reservoir ? "[RESERVOIRS]" : "[TANKS]";
    };
    auto link_header = [](LinkKind k) {
        return k == LinkKind::pipe ? "[PIPES]" : k == LinkKind::pump ? "[PUMPS]" : "[VALVES]";
    };
    std::string_view open;
    for (const auto& n : net.nodes()) {
        if (node_header(n.kind) != open)
            os << (open.empty() ? "" : "\n") << (open = node_header(n.kind)) << '\n';
        os << n.id << '\n';
    }
    os << '\n';
    open = {};
    if (net.links().empty())
        os << "[PIPES]\n";
    for (const auto& l : net.links()) {
        if (link_header(l.kind) != open)
            os << (open.empty() ? "" : "\n") << (open = link_header(l.kind)) << '\n';
        os << l.id << ' ' << l.from << ' ' << l.to << '\n';
    }
    os << "\n[COORDINATES]\n";
    for (const auto& n : net.nodes())
        if (n.xy)
            os << n.id << ' ' << n.xy->x << ' ' << n.xy->y << '\n';
    os << "\n[END]\n";
    return os.str();
}

/// Node x link incidence: +1 at a link's from-node, -1 at its to-node.
/// Stored per column since every column has exactly those two entries.
class IncidenceMatrix {
public:
    struct Column {
        Index tail;
        Index head;
    };

    IncidenceMatrix(Index nodes, std::vector<Column> columns) : nodes_(nodes), columns_(std::move(columns)) {
        for (Index j = 0; j < columns_.size(); ++j) {
            const Column& c = columns_[j];
            if (c.tail >= nodes_ || c.head >= nodes_)
                throw InputError("incidence column " + std::to_string(j) + " references a missing node");
            if (c.tail == c.head)
                throw InputError("incidence column " + std::to_string(j) + " connects a node to itself");
        }
    }

    Index rows() const noexcept { return nodes_; }
    Index cols() const noexcept { return columns_.size(); }
    const std::vector<Column>& columns() const noexcept { return columns_; }

    double operator()(Index i, Index j) const {
        const Column& c = columns_.at(j);
        return i == c.tail ? 1.0 : i == c.head ? -1.0 : 0.0;
    }

    NumericMatrix dense() const {
        NumericMatrix m = NumericMatrix::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
        for (Index j = 0; j < cols(); ++j) {
            m(static_cast<Eigen::Index>(columns_[j].tail), static_cast<Eigen::Index>(j)) = 1.0;
            m(static_cast<Eigen::Index>(columns_[j].head), static_cast<Eigen::Index>(j)) = -1.0;
        }
        return m;
    }

    std::string to_csv() const {
        std::string out;
        for (Index i = 0; i < rows(); ++i) {
            for (Index j = 0; j < cols(); ++j) {
                if (j)
                    out += ',';
                const double v = (*this)(i, j);
                out += v > 0 ? "1" : v < 0 ? "-1" : "0";
            }
            out += '\n';
        }
        return out;
    }

private:
    Index nodes_;
    std::vector<Column> columns_;
};

inline IncidenceMatrix incidence(const WdnNetwork& net) {
    std::vector<IncidenceMatrix::Column> cols;
    cols.reserve(net.link_count());
    for (const Link& l : net.links()) {
        const Index tail = *net.node_index(l.from), head = *net.node_index(l.to);
        if (tail == head)
            throw InputError("link '" + l.id + "' starts and ends at node '" + l.from + "'");
        cols.push_back({tail, head});
    }
    return IncidenceMatrix(net.node_count(), std::move(cols));
}

/// (m+n) x (m+n) state pattern, flows q_1..q_m first, then heads h_1..h_n:
///
///   [ diag(*)     pat(inc)^T ]
///   [ pat(inc)    diag(?)    ]
inline PatternMatrix build_structured_wdn(const IncidenceMatrix& inc) {
    const Index m = inc.cols(), n = inc.rows();
    PatternMatrix a = PatternMatrix::square(m + n);
    for (Index q = 0; q < m; ++q) {
        a.set(q, q, Entry::Star);
        for (Index h : {inc.columns()[q].tail, inc.columns()[q].head})
            a.set_symmetric(q, m + h, Entry::Star);
    }
    for (Index h = 0; h < n; ++h)
        a.set(m + h, m + h, Entry::Unknown);
    return a;
}

/// Edge-list JSON {"n":N,"star":[[i,j],...],"unknown":[[i,j],...]}; every
/// pair is added in both directions.
inline StateGraph parse_edge_list(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    try {
        const Index n = j.at("n").get<Index>();
        auto load = [&](const char* key) {
            std::vector<Edge> edges;
            if (!j.contains(key))
                return edges;
            for (const auto& p : j.at(key)) {
                if (!p.is_array() || p.size() != 2)
                    throw InputError(std::string("edge list: '") + key + "' entries must be [i,j] pairs");
                const Index a = p[0].get<Index>(), b = p[1].get<Index>();
                if (a >= n || b >= n)
                    throw InputError("edge list: pair [" + std::to_string(a) + "," + std::to_string(b) +
                                     "] outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
                edges.push_back({a, b});
                edges.push_back({b, a});
            }
            return edges;
        };
        return StateGraph(n, load("star"), load("unknown"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("edge list: ") + e.what());
    }
}

} // namespace strucsense

#endif
