#ifndef STRUCSENSE_ORACLE_HPP_
#define STRUCSENSE_ORACLE_HPP_

// Numerical falsification harness for the colorability certificate.
//
// The certificate is the proof object. The oracle samples members of the
// pattern class and checks Kalman observability of each; a sampled pass never
// proves strong structural observability, a sampled failure refutes it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "forcing.hpp"
#include "pattern.hpp"
#include "placement.hpp"

namespace strucsense {

struct RankTestConfig {
    double tol = 1e-9;     ///< relative singular-value threshold
    Index max_states = 30;
};

struct RankResult {
    bool observable = false;
    Index rank = 0;
    double sigma_ratio = 0.0; ///< sigma_min / sigma_max of the stacked blocks, 0 if deficient
};

/// Kalman rank of [C; CA; ...; CA^{n-1}], computed block by block: each new
/// block is the previous block's fresh directions times A, projected off the
/// span found so far and normalized. The stacked residual blocks span the same
/// row space as the raw stack but do not blow up with the power of A.
inline RankResult observability_rank(const NumericMatrix& a, const NumericMatrix& c,
                                     const RankTestConfig& cfg = {}) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n)
        throw DimensionError("rank test: A must be square");
    if (c.cols() != n)
        throw DimensionError("rank test: C must have as many columns as A");
    if (static_cast<Index>(n) > cfg.max_states)
        throw InputError("rank test: " + std::to_string(n) + " states exceed the cap of " +
                         std::to_string(cfg.max_states));
    if (!a.allFinite() || !c.allFinite())
        throw InputError("rank test: non-finite entries");

    RankResult r;
    if (n == 0) {
        r.observable = true;
        r.sigma_ratio = 1.0;
        return r;
    }

    NumericMatrix basis(0, n); // orthonormal rows
    std::vector<double> sigmas;
    NumericMatrix block = c;
    for (Eigen::Index power = 0; power < n && block.rows() > 0 && basis.rows() < n; ++power) {
        const double scale = block.norm();
        if (scale == 0.0)
            break;
        NumericMatrix residual = block / scale;
        if (basis.rows() > 0) {
            // two passes of classical Gram-Schmidt keep the projection orthogonal
            for (int pass = 0; pass < 2; ++pass)
                residual -= (residual * basis.transpose()) * basis;
        }
        Eigen::JacobiSVD<NumericMatrix> svd(residual, Eigen::ComputeThinV);
        const auto& s = svd.singularValues();
        Eigen::Index fresh = 0;
        while (fresh < s.size() && s(fresh) > cfg.tol)
            ++fresh;
        if (fresh == 0)
            break;
        for (Eigen::Index k = 0; k < fresh; ++k)
            sigmas.push_back(s(k));
        const NumericMatrix directions = svd.matrixV().leftCols(fresh).transpose();
        NumericMatrix grown(basis.rows() + fresh, n);
        grown << basis, directions;
        basis = std::move(grown);
        block = directions * a;
    }

    r.rank = static_cast<Index>(basis.rows());
    r.observable = r.rank == static_cast<Index>(n);
    if (r.observable) {
        const auto [lo, hi] = std::minmax_element(sigmas.begin(), sigmas.end());
        r.sigma_ratio = *lo / *hi;
    }
    return r;
}

inline bool observability_rank_test(const NumericMatrix& a, const NumericMatrix& c, double tol = 1e-9) {
    return observability_rank(a, c, RankTestConfig{.tol = tol}).observable;
}

struct OracleReport {
    std::size_t trials = 0;
    std::size_t passes = 0;
    double min_sigma_ratio = 0.0;
    std::uint64_t seed = 0;
};

struct OracleConfig {
    SampleConfig state_sampling{};
    /// Output entries fixed at 1 (unit sensors). When false, output Stars are
    /// sampled like state Stars.
    bool unit_outputs = true;
    RankTestConfig rank{};
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Draws `trials` realizations of (A, C) and counts rank-test passes. Trial k
/// uses seeds derived from (seed, k), so trials are independent.
inline OracleReport sample_and_check(const PatternMatrix& a_pattern, const PatternMatrix& c_pattern,
                                     std::size_t trials, std::uint64_t seed, const OracleConfig& cfg = {}) {
    if (!a_pattern.is_square() || c_pattern.cols() != a_pattern.rows())
        throw DimensionError("sample_and_check: pattern dimensions do not match");
    if (a_pattern.rows() > cfg.rank.max_states)
        throw InputError("sample_and_check: " + std::to_string(a_pattern.rows()) + " states exceed the cap of " +
                         std::to_string(cfg.rank.max_states));

    SampleConfig c_cfg = cfg.state_sampling;
    c_cfg.unit_stars = cfg.unit_outputs;

    OracleReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.min_sigma_ratio = trials ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        const std::uint64_t base = detail::splitmix64(seed ^ detail::splitmix64(k));
        const NumericMatrix a = sample_realization(a_pattern, base, cfg.state_sampling);
        const NumericMatrix c = sample_realization(c_pattern, detail::splitmix64(base), c_cfg);
        const RankResult r = observability_rank(a, c, cfg.rank);
        rep.passes += r.observable;
        rep.min_sigma_ratio = std::min(rep.min_sigma_ratio, r.sigma_ratio);
    }
    return rep;
}

struct MinimalPlacementResult {
    std::size_t minimum_size = 0;
    std::vector<std::vector<Index>> witnesses;
    std::uint64_t configurations_checked = 0;
};

struct ExhaustiveProgress {
    std::size_t size;
    std::uint64_t checked;
    std::size_t witnesses;
};

/// Smallest certifying sensor set by brute force: subsets by increasing size,
/// lexicographic within a size. Stops after the first size with a witness,
/// collecting up to `witness_cap` of them.
inline MinimalPlacementResult exhaustive_min_sensors(const PatternMatrix& a, Index max_states = 16,
                                                     std::size_t witness_cap = 64,
                                                     const std::function<void(const ExhaustiveProgress&)>& progress = {}) {
    if (!a.is_square())
        throw DimensionError("exhaustive_min_sensors: pattern must be square");
    const Index n = a.rows();
    if (n > max_states) {
        const std::string count = n < 64 ? std::to_string((std::uint64_t{1} << n) - 1) : "2^" + std::to_string(n) + " - 1";
        throw InputError("refusing exhaustive search: " + std::to_string(n) + " states give " + count +
                         " sensor configurations (cap is " + std::to_string(max_states) + " states)");
    }

    MinimalPlacementResult res;
    for (Index k = 0; k <= n; ++k) {
        std::vector<Index> subset(k);
        for (Index i = 0; i < k; ++i)
            subset[i] = i;
        for (;;) {
            ++res.configurations_checked;
            const SensorPlacement p{subset, PlacementMode::cyclic};
            if (certify_sso(a, build_c_pattern(p, n)).sso)
                res.witnesses.push_back(subset);
            if (res.witnesses.size() >= witness_cap)
                break;
            // next k-combination in lexicographic order
            Index i = k;
            while (i > 0 && subset[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++subset[i - 1];
            for (Index j = i; j < k; ++j)
                subset[j] = subset[j - 1] + 1;
        }
        if (progress)
            progress({k, res.configurations_checked, res.witnesses.size()});
        if (!res.witnesses.empty()) {
            res.minimum_size = k;
            return res;
        }
    }
    res.minimum_size = n; // n == 0
    return res;
}

} // namespace strucsense

#endif
