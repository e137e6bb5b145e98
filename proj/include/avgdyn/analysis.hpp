#pragma once

// Bound verification for the moving-window strategy, residual sweeps with the
// asymptotic-coefficient fit, and the exhaustive small-instance optimality
// oracle.

#include <cstdint>
#include <optional>
#include <string>

#include "avgdyn/strategies.hpp"
#include "avgdyn/tanks.hpp"

namespace avgdyn::analysis {

struct CheckReport {
    bool pass = true;
    std::string first_violation;  // empty when pass
};

// Bound on both tank levels right after the window step equilibrating red i
// with blue j (1-based, i <= j <= i+k-1): (k + i - j) / (k + 1).
template <class S>
S lemma_bound(int i, int j, int k) {
    if (i < 1) throw std::invalid_argument("lemma_bound: i must be >= 1");
    if (j < i || j > i + k - 1) throw std::invalid_argument("lemma_bound: j outside window");
    return scalar_ratio<S>(k + i - j, k + 1);
}

// Runs the moving-window strategy and checks the per-step bound after every
// pair equilibration.
template <class S>
CheckReport verify_lemma_bounds(int n, int k) {
    CheckReport report;
    strategies::simulate_window_full_empty<S>(
        n, k, /*include_averages=*/true, [&](int i, int j, const S& red, const S& blue) {
            if (!report.pass) return;
            S bound = lemma_bound<S>(i, j, k);
            if (red > bound || blue > bound) {
                report.pass = false;
                report.first_violation = "step (i=" + std::to_string(i) + ", j=" +
                                         std::to_string(j) + "): levels " + format_scalar(red) +
                                         ", " + format_scalar(blue) + " exceed " +
                                         format_scalar(bound);
            }
        });
    return report;
}

// Water left in the red tanks before the final averages:
// (n - k + 1)/(k + 1) + (k - 1).
template <class S>
S total_red_bound(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("total_red_bound: k out of range");
    return scalar_ratio<S>(n - k + 1, k + 1) + scalar_from_int<S>(k - 1);
}

// Moving window at the default width: every red tank ends below 2/sqrt(n),
// and the closed-form red total stays below 2*sqrt(n).
CheckReport theorem_bound_check(int n);

struct SweepRecord {
    long n = 0;
    double residual_per_red = 0.0;
    std::string strategy_id;
};

enum class SweepStrategy { Naive, Window };

std::string to_string(SweepStrategy s);

// Residual water per red tank on the full/empty start, float backend.
// The window strategy uses the default width.
std::vector<SweepRecord> residual_sweep(const std::vector<long>& ns, SweepStrategy strategy);

struct FitResult {
    double a = 0.0;          // coefficient of n^(-1/2)
    double b = 0.0;          // coefficient of n^(-3/2)
    double rms_error = 0.0;
};

// Least-squares fit of residual(n) = a*n^(-1/2) + b*n^(-3/2).
// Throws std::invalid_argument when the design matrix is degenerate
// (fewer than two distinct n). Callers should supply >= 3 distinct n.
FitResult conjecture_fit(const std::vector<SweepRecord>& records);

struct BruteForceResult {
    Rational best_transfer;
    std::vector<tanks::PairStep> witness;
};

inline constexpr int kBruteForceMaxTanks = 6;
inline constexpr int kBruteForceMaxLen = 8;

// Exhaustive search over all equilibration sequences of length <= max_len
// (including the empty sequence), exact rationals. Hard limits: at most 6
// tanks and max_len <= 8.
BruteForceResult brute_force_optimal(const tanks::TankConfig<Rational>& config, int max_len);

}  // namespace avgdyn::analysis
