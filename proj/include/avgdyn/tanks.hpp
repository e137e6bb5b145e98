#pragma once

// Water-tank state, the two averaging primitives (pairwise equilibration and
// partition averaging), strategy execution, and compilation of strategies to
// doubly stochastic transfer matrices.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "avgdyn/rational.hpp"

namespace avgdyn::tanks {

enum class Color { Red, Blue };

struct invalid_step_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invalid_partition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Equilibrate tanks a and b (replace both levels by their mean).
struct PairStep {
    int a = 0;
    int b = 0;
};

// Replace the levels inside each block by the block mean; indices outside all
// blocks are untouched. Blocks must be disjoint and nonempty.
struct AverageStep {
    std::vector<std::vector<int>> blocks;
};

using Step = std::variant<PairStep, AverageStep>;

struct Strategy {
    int n_tanks = 0;
    std::vector<Step> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

template <class S>
struct TankConfig {
    std::vector<S> levels;
    std::vector<Color> colors;

    std::size_t size() const { return levels.size(); }
};

template <class S>
TankConfig<S> full_empty_config(int n) {
    TankConfig<S> cfg;
    cfg.levels.assign(static_cast<std::size_t>(2 * n), scalar_from_int<S>(0));
    cfg.colors.assign(static_cast<std::size_t>(2 * n), Color::Blue);
    for (int i = 0; i < n; ++i) {
        cfg.levels[static_cast<std::size_t>(i)] = scalar_from_int<S>(1);
        cfg.colors[static_cast<std::size_t>(i)] = Color::Red;
    }
    return cfg;
}

template <class S>
void validate_config(const TankConfig<S>& cfg) {
    if (cfg.levels.size() != cfg.colors.size())
        throw dimension_mismatch_error("TankConfig: levels/colors length mismatch");
    if constexpr (!is_rational_v<S>) {
        for (const S& v : cfg.levels)
            if (!std::isfinite(v)) throw std::invalid_argument("TankConfig: non-finite level");
    }
}

inline void validate_pair(int n, int a, int b) {
    if (a == b) throw invalid_step_error("Pair step: indices must differ");
    if (a < 0 || b < 0 || a >= n || b >= n)
        throw invalid_step_error("Pair step: index out of range");
}

inline void validate_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& block : blocks) {
        if (block.empty()) throw invalid_partition_error("Average step: empty block");
        for (int idx : block) {
            if (idx < 0 || idx >= n)
                throw invalid_partition_error("Average step: index out of range");
            if (seen[static_cast<std::size_t>(idx)])
                throw invalid_partition_error("Average step: overlapping blocks");
            seen[static_cast<std::size_t>(idx)] = 1;
        }
    }
}

inline void validate_strategy(const Strategy& strategy) {
    for (const Step& step : strategy.steps) {
        if (const auto* p = std::get_if<PairStep>(&step)) {
            validate_pair(strategy.n_tanks, p->a, p->b);
        } else {
            validate_blocks(strategy.n_tanks, std::get<AverageStep>(step).blocks);
        }
    }
}

// In-place primitives; hot paths use these after validating once up front.

template <class S>
void equilibrate_inplace(std::vector<S>& levels, int a, int b) {
    S m = half_sum(levels[static_cast<std::size_t>(a)], levels[static_cast<std::size_t>(b)]);
    levels[static_cast<std::size_t>(a)] = m;
    levels[static_cast<std::size_t>(b)] = std::move(m);
}

template <class S>
void average_blocks_inplace(std::vector<S>& levels, const std::vector<std::vector<int>>& blocks) {
    for (const auto& block : blocks) {
        S sum = scalar_from_int<S>(0);
        for (int idx : block) sum += levels[static_cast<std::size_t>(idx)];
        S mean = sum / scalar_from_int<S>(static_cast<long>(block.size()));
        for (int idx : block) levels[static_cast<std::size_t>(idx)] = mean;
    }
}

template <class S>
void apply_step_inplace(std::vector<S>& levels, const Step& step) {
    if (const auto* p = std::get_if<PairStep>(&step)) {
        equilibrate_inplace(levels, p->a, p->b);
    } else {
        average_blocks_inplace(levels, std::get<AverageStep>(step).blocks);
    }
}

template <class S>
TankConfig<S> equilibrate_pair(TankConfig<S> config, int a, int b) {
    validate_config(config);
    validate_pair(static_cast<int>(config.size()), a, b);
    equilibrate_inplace(config.levels, a, b);
    return config;
}

template <class S>
std::vector<S> average_partition(std::vector<S> levels, const std::vector<std::vector<int>>& blocks) {
    validate_blocks(static_cast<int>(levels.size()), blocks);
    average_blocks_inplace(levels, blocks);
    return levels;
}

// Runs the strategy; the observer is invoked as obs(step_index, step, levels)
// after every step. Used for trace capture and the per-step bound checks.
template <class S, class Observer>
TankConfig<S> run_strategy(TankConfig<S> config, const Strategy& strategy, Observer&& obs) {
    validate_config(config);
    if (static_cast<int>(config.size()) != strategy.n_tanks)
        throw dimension_mismatch_error("run_strategy: config size != strategy.n_tanks");
    validate_strategy(strategy);
    for (std::size_t s = 0; s < strategy.steps.size(); ++s) {
        apply_step_inplace(config.levels, strategy.steps[s]);
        obs(s, strategy.steps[s], config.levels);
    }
    return config;
}

template <class S>
TankConfig<S> run_strategy(TankConfig<S> config, const Strategy& strategy) {
    return run_strategy(std::move(config), strategy,
                        [](std::size_t, const Step&, const std::vector<S>&) {});
}

// Full level vector after each step; trace[0] is the state after step 0.
template <class S>
std::pair<TankConfig<S>, std::vector<std::vector<S>>> run_strategy_traced(TankConfig<S> config,
                                                                          const Strategy& strategy) {
    std::vector<std::vector<S>> trace;
    trace.reserve(strategy.steps.size());
    auto out = run_strategy(std::move(config), strategy,
                            [&](std::size_t, const Step&, const std::vector<S>& lv) {
                                trace.push_back(lv);
                            });
    return {std::move(out), std::move(trace)};
}

template <class S>
struct TransferMatrix {
    int n = 0;
    std::vector<S> entries;  // row-major, n*n

    static TransferMatrix identity(int n) {
        TransferMatrix m;
        m.n = n;
        m.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                         scalar_from_int<S>(0));
        for (int i = 0; i < n; ++i) m.at(i, i) = scalar_from_int<S>(1);
        return m;
    }

    S& at(int r, int c) {
        return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(c)];
    }
    const S& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(c)];
    }
};

// D with apply_matrix(D, x) == run_strategy(x, S) for all x. Each step acts on
// the rows of the accumulated matrix, i.e. D is the ordered product of the
// per-step doubly stochastic matrices.
template <class S>
TransferMatrix<S> strategy_matrix(const Strategy& strategy) {
    validate_strategy(strategy);
    const int n = strategy.n_tanks;
    auto mat = TransferMatrix<S>::identity(n);
    auto row = [&](int r) { return mat.entries.begin() + static_cast<std::ptrdiff_t>(r) * n; };
    for (const Step& step : strategy.steps) {
        if (const auto* p = std::get_if<PairStep>(&step)) {
            auto ra = row(p->a);
            auto rb = row(p->b);
            for (int c = 0; c < n; ++c) {
                S m = half_sum(ra[c], rb[c]);
                ra[c] = m;
                rb[c] = std::move(m);
            }
        } else {
            for (const auto& block : std::get<AverageStep>(step).blocks) {
                const S divisor = scalar_from_int<S>(static_cast<long>(block.size()));
                for (int c = 0; c < n; ++c) {
                    S sum = scalar_from_int<S>(0);
                    for (int r : block) sum += row(r)[c];
                    S mean = sum / divisor;
                    for (int r : block) row(r)[c] = mean;
                }
            }
        }
    }
    return mat;
}

template <class S>
std::vector<S> apply_matrix(const TransferMatrix<S>& matrix, const std::vector<S>& levels) {
    if (static_cast<int>(levels.size()) != matrix.n)
        throw dimension_mismatch_error("apply_matrix: dimension mismatch");
    std::vector<S> out(levels.size(), scalar_from_int<S>(0));
    for (int r = 0; r < matrix.n; ++r) {
        S acc = scalar_from_int<S>(0);
        for (int c = 0; c < matrix.n; ++c)
            acc += matrix.at(r, c) * levels[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = std::move(acc);
    }
    return out;
}

// Row and column sums 1, entries >= 0; exact when S is rational, within tol
// otherwise.
template <class S>
bool is_doubly_stochastic(const TransferMatrix<S>& matrix, const S& tol = backend_tolerance<S>()) {
    const int n = matrix.n;
    const S one = scalar_from_int<S>(1);
    for (int r = 0; r < n; ++r) {
        S sum = scalar_from_int<S>(0);
        for (int c = 0; c < n; ++c) {
            if (matrix.at(r, c) < -tol) return false;
            sum += matrix.at(r, c);
        }
        if (scalar_abs<S>(sum - one) > tol) return false;
    }
    for (int c = 0; c < n; ++c) {
        S sum = scalar_from_int<S>(0);
        for (int r = 0; r < n; ++r) sum += matrix.at(r, c);
        if (scalar_abs<S>(sum - one) > tol) return false;
    }
    return true;
}

template <class S>
S total_level(const std::vector<S>& levels) {
    S sum = scalar_from_int<S>(0);
    for (const S& v : levels) sum += v;
    return sum;
}

// Net water gained by the blue tanks.
template <class S>
S transferred_to_blue(const TankConfig<S>& initial, const TankConfig<S>& final_config) {
    if (initial.size() != final_config.size() || initial.colors != final_config.colors)
        throw dimension_mismatch_error("transferred_to_blue: configs do not match");
    S sum = scalar_from_int<S>(0);
    for (std::size_t i = 0; i < initial.size(); ++i) {
        if (initial.colors[i] == Color::Blue)
            sum += final_config.levels[i] - initial.levels[i];
    }
    return sum;
}

// Study aid: an Average block is the limit of repeated pairwise equilibration.
// Expands each block into `rounds` rounds of all-pairs equilibrations.
inline std::vector<Step> expand_average(const AverageStep& avg, int rounds) {
    std::vector<Step> steps;
    for (int r = 0; r < rounds; ++r) {
        for (const auto& block : avg.blocks) {
            for (std::size_t i = 0; i < block.size(); ++i)
                for (std::size_t j = i + 1; j < block.size(); ++j)
                    steps.push_back(PairStep{block[i], block[j]});
        }
    }
    return steps;
}

}  // namespace avgdyn::tanks
