#pragma once

// Finite averaging dynamics: approximate the action of a permutation of N
// equal-measure cells on a block-constant function by a composition of
// partition-averaging operators.
//
// Every permutation factors into two involutions; each involution is handled
// transposition by transposition, and each transposition (a b) is realized
// approximately by running the moving-window tank strategy on m equal
// sub-cells of a (the "full" side) against the m sub-cells of b. The strategy
// is linear in the values, so values within 2/sqrt(m) of a perfect swap are
// guaranteed regardless of what the two cell values are.

#include <optional>

#include "avgdyn/strategies.hpp"
#include "avgdyn/tanks.hpp"

namespace avgdyn::dynamics {

using Permutation = std::vector<int>;  // images: c -> perm[c]

inline void validate_permutation(const Permutation& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<char> seen(perm.size(), 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

inline bool is_identity(const Permutation& perm) {
    for (std::size_t c = 0; c < perm.size(); ++c)
        if (perm[c] != static_cast<int>(c)) return false;
    return true;
}

inline Permutation compose(const Permutation& f, const Permutation& g) {
    // (f ∘ g)[c] = f[g[c]]
    Permutation out(g.size());
    for (std::size_t c = 0; c < g.size(); ++c)
        out[c] = f[static_cast<std::size_t>(g[c])];
    return out;
}

inline bool is_involution(const Permutation& perm) {
    for (std::size_t c = 0; c < perm.size(); ++c)
        if (perm[static_cast<std::size_t>(perm[c])] != static_cast<int>(c)) return false;
    return true;
}

// perm = inv1 ∘ inv2 with both factors involutions. Each cycle
// (c_0 c_1 ... c_{m-1}) is split by the reversal trick:
// inv2: c_t -> c_{(m-t) mod m}, inv1: c_t -> c_{(m+1-t) mod m}.
inline std::pair<Permutation, Permutation> involution_decompose(const Permutation& perm) {
    validate_permutation(perm);
    const int n = static_cast<int>(perm.size());
    Permutation inv1(perm.size()), inv2(perm.size());
    std::vector<char> seen(perm.size(), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> cycle;
        for (int x = s; !seen[static_cast<std::size_t>(x)]; x = perm[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = 1;
            cycle.push_back(x);
        }
        const int m = static_cast<int>(cycle.size());
        for (int t = 0; t < m; ++t) {
            inv2[static_cast<std::size_t>(cycle[static_cast<std::size_t>(t)])] =
                cycle[static_cast<std::size_t>((m - t) % m)];
            inv1[static_cast<std::size_t>(cycle[static_cast<std::size_t>(t)])] =
                cycle[static_cast<std::size_t>((m + 1 - t) % m)];
        }
    }
    return {inv1, inv2};
}

// One partition-averaging operator: disjoint blocks of sub-cell indices.
using Partition = std::vector<std::vector<int>>;

struct AveragingPlan {
    int cells = 0;
    int subdivision = 1;
    std::vector<Partition> steps;

    int sub_count() const { return cells * subdivision; }
};

// Approximately swaps the values of cells a and b: the moving-window strategy
// (width floor(sqrt(m+2))) on the m sub-cells of a against those of b, then
// one block average per cell. On values constant per cell this leaves
// |new_a - old_b| <= (2/sqrt(m)) * |old_a - old_b|, and symmetrically.
inline AveragingPlan approximate_swap_plan(int cells, int cell_a, int cell_b, int m) {
    if (cell_a == cell_b) throw std::invalid_argument("approximate_swap_plan: cells must differ");
    if (cell_a < 0 || cell_b < 0 || cell_a >= cells || cell_b >= cells)
        throw std::invalid_argument("approximate_swap_plan: cell out of range");
    if (m < 1) throw std::invalid_argument("approximate_swap_plan: m must be >= 1");

    AveragingPlan plan;
    plan.cells = cells;
    plan.subdivision = m;
    auto sub_a = [&](int t) { return cell_a * m + t; };  // plays the full tank i
    auto sub_b = [&](int t) { return cell_b * m + t; };  // plays the empty tank j

    const int k = strategies::default_window_width(m);
    for (int i = 1; i <= m - k + 1; ++i)
        for (int j = i; j <= i + k - 1; ++j)
            plan.steps.push_back(Partition{{sub_a(i - 1), sub_b(j - 1)}});

    Partition avg_a(1), avg_b(1);
    for (int t = 0; t < m; ++t) {
        avg_a[0].push_back(sub_a(t));
        avg_b[0].push_back(sub_b(t));
    }
    plan.steps.push_back(std::move(avg_a));
    plan.steps.push_back(std::move(avg_b));
    return plan;
}

// Concatenation; sup-norm errors compose additively because partition
// averaging is contractive. Plans without steps are compatible with anything.
inline AveragingPlan compose_plans(const AveragingPlan& p1, const AveragingPlan& p2) {
    if (p1.steps.empty()) return p2;
    if (p2.steps.empty()) return p1;
    if (p1.cells != p2.cells || p1.subdivision != p2.subdivision)
        throw std::invalid_argument("compose_plans: incompatible subdivision factors");
    AveragingPlan out = p1;
    out.steps.insert(out.steps.end(), p2.steps.begin(), p2.steps.end());
    return out;
}

// Replicates each cell value over its sub-cells.
template <class S>
std::vector<S> expand_to_subcells(const std::vector<S>& values, int m) {
    std::vector<S> out;
    out.reserve(values.size() * static_cast<std::size_t>(m));
    for (const S& v : values)
        for (int t = 0; t < m; ++t) out.push_back(v);
    return out;
}

// Cell value = mean over the cell's sub-cells (all equal measure). Cells
// whose sub-values are already identical (untouched cells, and swapped cells
// after their closing block average) pass through unchanged.
template <class S>
std::vector<S> collapse_to_cells(const std::vector<S>& sub_values, int cells, int m) {
    std::vector<S> out(static_cast<std::size_t>(cells), scalar_from_int<S>(0));
    for (int c = 0; c < cells; ++c) {
        const S& first = sub_values[static_cast<std::size_t>(c * m)];
        bool constant = true;
        for (int t = 1; t < m && constant; ++t)
            constant = sub_values[static_cast<std::size_t>(c * m + t)] == first;
        if (constant) {
            out[static_cast<std::size_t>(c)] = first;
            continue;
        }
        S sum = scalar_from_int<S>(0);
        for (int t = 0; t < m; ++t) sum += sub_values[static_cast<std::size_t>(c * m + t)];
        out[static_cast<std::size_t>(c)] = sum / scalar_from_int<S>(m);
    }
    return out;
}

template <class S>
void apply_plan_to_subcells(const AveragingPlan& plan, std::vector<S>& sub_values) {
    if (static_cast<int>(sub_values.size()) != plan.sub_count())
        throw std::invalid_argument("apply_plan_to_subcells: size mismatch");
    for (const Partition& partition : plan.steps)
        tanks::average_blocks_inplace(sub_values, partition);
}

// Runs the plan on a cell-level function and reads the result back at cell
// level (final per-cell averaging).
template <class S>
std::vector<S> apply_plan(const AveragingPlan& plan, const std::vector<S>& values) {
    if (static_cast<int>(values.size()) != plan.cells)
        throw std::invalid_argument("apply_plan: value count != cells");
    auto sub = expand_to_subcells(values, plan.subdivision);
    apply_plan_to_subcells(plan, sub);
    return collapse_to_cells(sub, plan.cells, plan.subdivision);
}

template <class S>
std::vector<S> compose_with_permutation(const std::vector<S>& values, const Permutation& perm) {
    std::vector<S> out(values.size(), scalar_from_int<S>(0));
    for (std::size_t c = 0; c < values.size(); ++c)
        out[c] = values[static_cast<std::size_t>(perm[c])];
    return out;
}

template <class S>
double sup_distance(const std::vector<S>& f, const std::vector<S>& g) {
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        d = std::max(d, std::fabs(to_double(f[i]) - to_double(g[i])));
    return d;
}

template <class S>
double value_range(const std::vector<S>& f) {
    if (f.empty()) return 0.0;
    double lo = to_double(f[0]), hi = to_double(f[0]);
    for (const S& v : f) {
        lo = std::min(lo, to_double(v));
        hi = std::max(hi, to_double(v));
    }
    return hi - lo;
}

// Smallest m with (2/sqrt(m)) * range <= eps/2: one involution layer's error
// budget; two layers stay below eps.
inline int choose_subdivision(double range, double eps) {
    if (eps <= 0) throw std::invalid_argument("choose_subdivision: eps must be > 0");
    if (range <= 0) return 1;
    const double m_real = 16.0 * range * range / (eps * eps);
    int m = static_cast<int>(std::ceil(m_real));
    if (m < 1) m = 1;
    while (2.0 / std::sqrt(static_cast<double>(m)) * range > eps / 2.0) ++m;
    return m;
}

template <class S>
struct ApproximationResult {
    AveragingPlan plan;
    std::vector<S> result;
    std::pair<Permutation, Permutation> involutions;
};

// Builds and runs a plan with ||result - f∘perm||_inf < eps. The factor
// inv1's transposition plans run first: applying a plan for X and then a
// plan for Y realizes f -> (f∘X)∘Y = f∘(X∘Y), so the pullback order matches
// perm = inv1 ∘ inv2.
template <class S>
ApproximationResult<S> approximate_permutation(const std::vector<S>& values,
                                               const Permutation& perm, double eps) {
    if (eps <= 0) throw std::invalid_argument("approximate_permutation: eps must be > 0");
    if (values.size() != perm.size())
        throw std::invalid_argument("approximate_permutation: size mismatch");
    validate_permutation(perm);

    const int cells = static_cast<int>(perm.size());
    ApproximationResult<S> out;
    out.involutions = involution_decompose(perm);
    if (is_identity(perm)) {
        out.plan.cells = cells;
        out.plan.subdivision = 1;
        out.result = values;
        return out;
    }

    const int m = choose_subdivision(value_range(values), eps);
    out.plan.cells = cells;
    out.plan.subdivision = m;
    for (const Permutation* inv : {&out.involutions.first, &out.involutions.second}) {
        for (int c = 0; c < cells; ++c) {
            const int image = (*inv)[static_cast<std::size_t>(c)];
            if (image > c) {
                auto swap_plan = approximate_swap_plan(cells, c, image, m);
                out.plan.steps.insert(out.plan.steps.end(), swap_plan.steps.begin(),
                                      swap_plan.steps.end());
            }
        }
    }
    out.result = apply_plan(out.plan, values);
    return out;
}

}  // namespace avgdyn::dynamics
