#ifndef STRUCSENSE_PATTERN_HPP_
#define STRUCSENSE_PATTERN_HPP_

// Pattern matrices over {0, *, ?} and their numeric pattern classes.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "error.hpp"

namespace strucsense {

using Index = std::size_t;
using NumericMatrix = Eigen::MatrixXd;

/// One pattern entry: Zero forces 0, Star forces a nonzero, Unknown is free.
enum class Entry : std::uint8_t { Zero, Star, Unknown };

inline char to_char(Entry e) {
    switch (e) {
    case Entry::Star: return '*';
    case Entry::Unknown: return '?';
    default: return '0';
    }
}

struct Position {
    Index row;
    Index col;
    auto operator<=>(const Position&) const = default;
};

/// Sparse pattern matrix; positions not stored are Zero.
class PatternMatrix {
public:
    PatternMatrix() = default;
    PatternMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

    static PatternMatrix square(Index n) { return PatternMatrix(n, n); }

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Entry operator()(Index i, Index j) const {
        check_bounds(i, j);
        auto it = entries_.find({i, j});
        return it == entries_.end() ? Entry::Zero : it->second;
    }

    void set(Index i, Index j, Entry e) {
        check_bounds(i, j);
        if (e == Entry::Zero)
            entries_.erase({i, j});
        else
            entries_[{i, j}] = e;
    }

    /// Sets (i,j) and (j,i).
    void set_symmetric(Index i, Index j, Entry e) {
        set(i, j, e);
        set(j, i, e);
    }

    /// Non-Zero entries in row-major order.
    const std::map<Position, Entry>& nonzeros() const noexcept { return entries_; }

    std::size_t count(Entry e) const {
        if (e == Entry::Zero)
            return rows_ * cols_ - entries_.size();
        std::size_t c = 0;
        for (const auto& [pos, v] : entries_)
            c += (v == e);
        return c;
    }

    /// First position (row-major) where entry(i,j) != entry(j,i), if any.
    std::optional<Position> first_asymmetry() const {
        if (!is_square())
            return Position{0, 0};
        for (const auto& [pos, v] : entries_) {
            auto it = entries_.find({pos.col, pos.row});
            if (it == entries_.end() || it->second != v)
                return pos;
        }
        return std::nullopt;
    }

    bool is_symmetric() const { return is_square() && !first_asymmetry(); }

    PatternMatrix transpose() const {
        PatternMatrix t(cols_, rows_);
        for (const auto& [pos, v] : entries_)
            t.entries_[{pos.col, pos.row}] = v;
        return t;
    }

    bool operator==(const PatternMatrix&) const = default;

private:
    void check_bounds(Index i, Index j) const {
        if (i >= rows_ || j >= cols_)
            throw DimensionError("pattern position (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    Index rows_ = 0;
    Index cols_ = 0;
    std::map<Position, Entry> entries_;
};

/// Diagonal rewrite used by the second colorability graph: Star where the
/// diagonal is Zero, Unknown otherwise. Off-diagonal entries are kept.
inline PatternMatrix make_abar(const PatternMatrix& a) {
    if (!a.is_square())
        throw DimensionError("make_abar: pattern must be square");
    PatternMatrix out = a;
    for (Index i = 0; i < a.rows(); ++i)
        out.set(i, i, a(i, i) == Entry::Zero ? Entry::Star : Entry::Unknown);
    return out;
}

/// True iff X lies in the pattern class of `a`.
inline bool is_member(const NumericMatrix& x, const PatternMatrix& a) {
    if (static_cast<Index>(x.rows()) != a.rows() || static_cast<Index>(x.cols()) != a.cols())
        throw DimensionError("is_member: dimension mismatch");
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            const double v = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (!std::isfinite(v))
                return false;
            const Entry e = a(i, j);
            if (e == Entry::Zero && v != 0.0)
                return false;
            if (e == Entry::Star && v == 0.0)
                return false;
        }
    }
    return true;
}

struct SampleConfig {
    double star_min = 0.5;  ///< magnitude range of nonzero draws
    double star_max = 2.0;
    double zero_prob = 0.5; ///< probability an Unknown entry is exactly 0
    bool unit_stars = false; ///< emit exactly 1.0 for Star (output matrices)
};

/// Draws one member of the pattern class; deterministic in `seed`.
inline NumericMatrix sample_realization(const PatternMatrix& a, std::uint64_t seed,
                                        const SampleConfig& cfg = {}) {
    if (!(cfg.star_min > 0.0) || !(cfg.star_min <= cfg.star_max) || !std::isfinite(cfg.star_max))
        throw InputError("sample_realization: star range must satisfy 0 < min <= max < inf");
    if (!(cfg.zero_prob >= 0.0 && cfg.zero_prob <= 1.0))
        throw InputError("sample_realization: zero_prob must lie in [0, 1]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(cfg.star_min, cfg.star_max);
    std::bernoulli_distribution negative(0.5);
    std::bernoulli_distribution zero(cfg.zero_prob);
    auto draw = [&] {
        if (cfg.unit_stars)
            return 1.0;
        const double m = magnitude(rng);
        return negative(rng) ? -m : m;
    };

    NumericMatrix x = NumericMatrix::Zero(static_cast<Eigen::Index>(a.rows()),
                                          static_cast<Eigen::Index>(a.cols()));
    for (const auto& [pos, e] : a.nonzeros()) {
        double v = 0.0;
        if (e == Entry::Star)
            v = draw();
        else if (!zero(rng))
            v = draw();
        x(static_cast<Eigen::Index>(pos.row), static_cast<Eigen::Index>(pos.col)) = v;
    }
    return x;
}

inline nlohmann::json to_json(const PatternMatrix& a) {
    nlohmann::json star = nlohmann::json::array(), unknown = nlohmann::json::array();
    for (const auto& [pos, e] : a.nonzeros())
        (e == Entry::Star ? star : unknown).push_back({pos.row, pos.col});
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"star", star}, {"unknown", unknown}};
}

inline PatternMatrix pattern_from_json(const nlohmann::json& j) {
    try {
        PatternMatrix a(j.at("rows").get<Index>(), j.at("cols").get<Index>());
        auto load = [&](const char* key, Entry e) {
            if (!j.contains(key))
                return;
            for (const auto& p : j.at(key)) {
                if (!p.is_array() || p.size() != 2)
                    throw InputError(std::string("pattern json: '") + key + "' entries must be [i,j] pairs");
                const Index r = p[0].get<Index>(), c = p[1].get<Index>();
                if (a(r, c) != Entry::Zero)
                    throw InputError("pattern json: position listed twice");
                a.set(r, c, e);
            }
        };
        load("star", Entry::Star);
        load("unknown", Entry::Unknown);
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("pattern json: ") + e.what());
    }
}

} // namespace strucsense

#endif
