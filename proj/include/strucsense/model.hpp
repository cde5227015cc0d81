#ifndef STRUCSENSE_MODEL_HPP_
#define STRUCSENSE_MODEL_HPP_

// A structured state model ready for placement: the state pattern plus
// labels, loaded from an EPANET INP, an edge-list JSON or a pattern JSON.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "netgraph.hpp"
#include "pattern.hpp"
#include "wdn.hpp"

namespace strucsense {

enum class StateKind { flow, head, generic };

inline std::string_view to_string(StateKind k) {
    switch (k) {
    case StateKind::flow: return "flow";
    case StateKind::head: return "head";
    default: return "state";
    }
}

struct NetworkModel {
    std::string name;
    PatternMatrix pattern;
    std::vector<std::string> labels; ///< original network labels (link/node ids)
    std::vector<StateKind> kinds;
    std::optional<WdnNetwork> network;

    Index state_count() const noexcept { return pattern.rows(); }

    /// "q:<link>" / "h:<node>" for water networks, the bare label otherwise.
    std::string qualified_label(Index s) const {
        switch (kinds.at(s)) {
        case StateKind::flow: return "q:" + labels[s];
        case StateKind::head: return "h:" + labels[s];
        default: return labels[s];
        }
    }

    /// Accepts a state index, a qualified label or an unambiguous bare label.
    Index resolve(std::string_view token) const {
        Index idx = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
        const bool numeric = ec == std::errc() && ptr == token.data() + token.size();
        std::optional<Index> hit;
        std::size_t matches = 0;
        for (Index s = 0; s < state_count(); ++s)
            if (qualified_label(s) == token || labels[s] == token) {
                hit = s;
                ++matches;
            }
        if (matches == 1)
            return *hit;
        if (matches > 1)
            throw InputError("label '" + std::string(token) + "' is ambiguous; qualify it as q:" +
                             std::string(token) + " or h:" + std::string(token));
        if (numeric && idx < state_count())
            return idx;
        throw InputError("unknown state '" + std::string(token) + "'");
    }
};

inline NetworkModel model_from_wdn(WdnNetwork net, std::string name = {}) {
    NetworkModel m;
    m.name = std::move(name);
    m.pattern = build_structured_wdn(incidence(net));
    for (const Link& l : net.links()) {
        m.labels.push_back(l.id);
        m.kinds.push_back(StateKind::flow);
    }
    for (const HydraulicNode& h : net.nodes()) {
        m.labels.push_back(h.id);
        m.kinds.push_back(StateKind::head);
    }
    m.network = std::move(net);
    return m;
}

inline NetworkModel model_from_pattern(PatternMatrix a, std::string name = {},
                                       std::vector<std::string> labels = {}) {
    NetworkModel m;
    m.name = std::move(name);
    if (labels.empty())
        for (Index i = 0; i < a.rows(); ++i)
            labels.push_back(std::to_string(i));
    if (labels.size() != a.rows())
        throw InputError("label count does not match the number of states");
    m.labels = std::move(labels);
    m.kinds.assign(a.rows(), StateKind::generic);
    m.pattern = std::move(a);
    return m;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// `.inp` files are read as EPANET networks. JSON holding "rows" is a pattern
/// matrix, JSON holding "n" an edge list; both may carry a "labels" array.
inline NetworkModel load_model(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const std::string name = path.stem().string();
    std::string ext = path.extension().string();
    for (char& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".inp")
        return model_from_wdn(parse_inp(text), name);

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("rows"))
        return model_from_pattern(pattern_from_json(j), name, std::move(labels));
    return model_from_pattern(to_pattern(parse_edge_list(text)), name, std::move(labels));
}

} // namespace strucsense

#endif
