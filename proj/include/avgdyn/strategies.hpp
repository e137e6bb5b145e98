#pragma once

// Strategy generators: the red-by-blue double loop, the moving window, the
// greedy sorted-order strategy for arbitrary initial levels, and the discrete
// countercurrent heat-exchanger model.

#include <functional>
#include <optional>
#include <utility>

#include "avgdyn/tanks.hpp"

namespace avgdyn::strategies {

using tanks::AverageStep;
using tanks::Color;
using tanks::PairStep;
using tanks::Step;
using tanks::Strategy;
using tanks::TankConfig;

// Tank layout used by the full/empty generators: reds at 0..n-1, blues at
// n..2n-1.

inline std::vector<int> red_indices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

inline std::vector<int> blue_indices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n + i;
    return v;
}

// Every red equilibrated with every blue, then each color averaged.
inline Strategy naive_strategy(int n) {
    if (n < 0) throw std::invalid_argument("naive_strategy: n must be >= 0");
    Strategy s;
    s.n_tanks = 2 * n;
    if (n == 0) return s;
    s.steps.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.steps.push_back(PairStep{i, n + j});
    s.steps.push_back(AverageStep{{red_indices(n)}});
    s.steps.push_back(AverageStep{{blue_indices(n)}});
    return s;
}

// Red tank i (1-based) equilibrates with blue tanks i..i+k-1, for
// i = 1..n-k+1; reds with i > n-k+1 are never touched before the final
// averages.
inline Strategy moving_window_strategy(int n, int k) {
    if (n < 1) throw std::invalid_argument("moving_window_strategy: n must be >= 1");
    if (k < 1 || k > n) throw std::invalid_argument("moving_window_strategy: k must be in [1, n]");
    Strategy s;
    s.n_tanks = 2 * n;
    s.steps.reserve(static_cast<std::size_t>(n - k + 1) * static_cast<std::size_t>(k) + 2);
    for (int i = 1; i <= n - k + 1; ++i)
        for (int j = i; j <= i + k - 1; ++j) s.steps.push_back(PairStep{i - 1, n + j - 1});
    s.steps.push_back(AverageStep{{red_indices(n)}});
    s.steps.push_back(AverageStep{{blue_indices(n)}});
    return s;
}

// floor(sqrt(n+2)), clamped to [1, n].
inline int default_window_width(int n) {
    if (n < 1) throw std::invalid_argument("default_window_width: n must be >= 1");
    long k = isqrt_floor(static_cast<long>(n) + 2);
    if (k < 1) k = 1;
    if (k > n) k = n;
    return static_cast<int>(k);
}

// Streaming full/empty simulators. These avoid materializing the step list
// (the double loop is n^2 steps; sweeps go up to n = 10^4). The observer is
// called after every pair step as obs(i, j, red_level, blue_level) with
// 1-based window indices.

template <class S, class PairObs>
TankConfig<S> simulate_naive_full_empty(int n, bool include_averages, PairObs&& obs) {
    auto cfg = tanks::full_empty_config<S>(n);
    auto& lv = cfg.levels;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            tanks::equilibrate_inplace(lv, i, n + j);
            obs(i + 1, j + 1, lv[static_cast<std::size_t>(i)],
                lv[static_cast<std::size_t>(n + j)]);
        }
    }
    if (include_averages && n > 0) {
        tanks::average_blocks_inplace(lv, {red_indices(n), blue_indices(n)});
    }
    return cfg;
}

template <class S>
TankConfig<S> simulate_naive_full_empty(int n, bool include_averages = true) {
    return simulate_naive_full_empty<S>(n, include_averages,
                                        [](int, int, const S&, const S&) {});
}

template <class S, class PairObs>
TankConfig<S> simulate_window_full_empty(int n, int k, bool include_averages, PairObs&& obs) {
    if (k < 1 || k > n) throw std::invalid_argument("simulate_window_full_empty: k out of range");
    auto cfg = tanks::full_empty_config<S>(n);
    auto& lv = cfg.levels;
    for (int i = 1; i <= n - k + 1; ++i) {
        for (int j = i; j <= i + k - 1; ++j) {
            tanks::equilibrate_inplace(lv, i - 1, n + j - 1);
            obs(i, j, lv[static_cast<std::size_t>(i - 1)],
                lv[static_cast<std::size_t>(n + j - 1)]);
        }
    }
    if (include_averages) {
        tanks::average_blocks_inplace(lv, {red_indices(n), blue_indices(n)});
    }
    return cfg;
}

template <class S>
TankConfig<S> simulate_window_full_empty(int n, int k, bool include_averages = true) {
    return simulate_window_full_empty<S>(n, k, include_averages,
                                         [](int, int, const S&, const S&) {});
}

// Selection rule for the greedy strategy: given the number of eligible
// red-directly-left-of-blue positions, returns which one to equilibrate.
// The default picks the leftmost. Total transfer is selection-independent;
// per-tank outcomes need not be.
using GreedyChooser = std::function<std::size_t(std::size_t eligible_count)>;

template <class S>
struct GreedyResult {
    Strategy strategy;
    TankConfig<S> final_config;
};

// Sort all tanks by decreasing level, breaking ties so that red tanks sit to
// the right of blue tanks of the same level (same-color ties keep original
// index order). While some red tank is directly left of a blue tank,
// equilibrate such a pair and swap their positions. Each step removes exactly
// one red-left-of-blue inversion, so the loop terminates.
template <class S>
GreedyResult<S> greedy_optimal_strategy(const TankConfig<S>& config,
                                        const GreedyChooser& choose = {}) {
    tanks::validate_config(config);
    const int n = static_cast<int>(config.size());

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const S& la = config.levels[static_cast<std::size_t>(a)];
        const S& lb = config.levels[static_cast<std::size_t>(b)];
        if (la != lb) return la > lb;
        return config.colors[static_cast<std::size_t>(a)] == Color::Blue &&
               config.colors[static_cast<std::size_t>(b)] == Color::Red;
    });

    GreedyResult<S> result;
    result.strategy.n_tanks = n;
    result.final_config = config;
    auto& lv = result.final_config.levels;
    auto is_red = [&](int t) { return config.colors[static_cast<std::size_t>(t)] == Color::Red; };

    std::vector<std::size_t> eligible;
    for (;;) {
        eligible.clear();
        for (std::size_t p = 0; p + 1 < order.size(); ++p) {
            if (is_red(order[p]) && !is_red(order[p + 1])) eligible.push_back(p);
        }
        if (eligible.empty()) break;
        std::size_t pick = choose ? choose(eligible.size()) : 0;
        if (pick >= eligible.size())
            throw std::invalid_argument("greedy_optimal_strategy: chooser out of range");
        std::size_t p = eligible[pick];
        int red = order[p];
        int blue = order[p + 1];
        result.strategy.steps.push_back(PairStep{red, blue});
        tanks::equilibrate_inplace(lv, red, blue);
        std::swap(order[p], order[p + 1]);
    }
    return result;
}

// Discrete countercurrent heat exchanger. Hot chunks (level 1) run top to
// bottom through the left tube, cold chunks (level 0) bottom to top through
// the right tube; the tubes have `capacity` contact slots (all n fit when
// unlimited). Hot and cold moves alternate, and after each half-move every
// co-located hot/cold pair equilibrates. Hot chunk i meets cold chunk j
// exactly when the red-by-blue double loop equilibrates red i with blue j:
// the meetings sweep the anti-diagonals i+j = const in increasing order,
// which is a topological order of the double loop's data dependencies.
template <class S>
struct HeatExchangerResult {
    std::vector<S> hot;   // exit levels of the initially-full chunks, entry order
    std::vector<S> cold;  // exit levels of the initially-empty chunks, entry order
};

template <class S>
HeatExchangerResult<S> heat_exchanger_simulate(int n, std::optional<int> capacity = std::nullopt) {
    if (n < 1) throw std::invalid_argument("heat_exchanger_simulate: n must be >= 1");
    const int cap = capacity.value_or(n);
    if (cap < 1 || cap > n)
        throw std::invalid_argument("heat_exchanger_simulate: capacity must be in [1, n]");

    HeatExchangerResult<S> res;
    res.hot.assign(static_cast<std::size_t>(n), scalar_from_int<S>(1));
    res.cold.assign(static_cast<std::size_t>(n), scalar_from_int<S>(0));

    constexpr int kEmpty = -1;
    // slot 0 = bottom, cap-1 = top; hot enters at the top, cold at the bottom
    std::vector<int> hot_slot(static_cast<std::size_t>(cap), kEmpty);
    std::vector<int> cold_slot(static_cast<std::size_t>(cap), kEmpty);
    int hot_entered = 0;
    int cold_entered = 0;

    auto exchange = [&]() {
        for (int s = 0; s < cap; ++s) {
            int h = hot_slot[static_cast<std::size_t>(s)];
            int c = cold_slot[static_cast<std::size_t>(s)];
            if (h != kEmpty && c != kEmpty) {
                S m = half_sum(res.hot[static_cast<std::size_t>(h)],
                               res.cold[static_cast<std::size_t>(c)]);
                res.hot[static_cast<std::size_t>(h)] = m;
                res.cold[static_cast<std::size_t>(c)] = std::move(m);
            }
        }
    };
    auto tube_empty = [&](const std::vector<int>& tube) {
        for (int v : tube)
            if (v != kEmpty) return false;
        return true;
    };

    for (;;) {
        // hot half-move: shift down one slot, exit at the bottom
        for (int s = 0; s + 1 < cap; ++s)
            hot_slot[static_cast<std::size_t>(s)] = hot_slot[static_cast<std::size_t>(s + 1)];
        hot_slot[static_cast<std::size_t>(cap - 1)] = hot_entered < n ? hot_entered++ : kEmpty;
        exchange();

        // cold half-move: shift up one slot, exit at the top
        for (int s = cap - 1; s > 0; --s)
            cold_slot[static_cast<std::size_t>(s)] = cold_slot[static_cast<std::size_t>(s - 1)];
        cold_slot[0] = cold_entered < n ? cold_entered++ : kEmpty;
        exchange();

        if (hot_entered == n && cold_entered == n && tube_empty(hot_slot) &&
            tube_empty(cold_slot))
            break;
    }
    return res;
}

}  // namespace avgdyn::strategies
