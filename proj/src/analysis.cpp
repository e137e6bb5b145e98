#include "avgdyn/analysis.hpp"

#include <cmath>
#include <set>

namespace avgdyn::analysis {

CheckReport theorem_bound_check(int n) {
    if (n < 1) throw std::invalid_argument("theorem_bound_check: n must be >= 1");
    const int k = strategies::default_window_width(n);
    const double per_red_bound = 2.0 / std::sqrt(static_cast<double>(n));

    CheckReport report;
    auto cfg = strategies::simulate_window_full_empty<double>(n, k, /*include_averages=*/true);
    for (int i = 0; i < n; ++i) {
        double level = cfg.levels[static_cast<std::size_t>(i)];
        if (!(level < per_red_bound)) {
            report.pass = false;
            report.first_violation = "red tank " + std::to_string(i + 1) + " level " +
                                     format_scalar(level) + " not below 2/sqrt(n) = " +
                                     format_scalar(per_red_bound);
            return report;
        }
    }

    // floor(sqrt(n+2)) lies in [1, n] for every n >= 1, so k is exactly it
    const double total_bound = total_red_bound<double>(n, k);
    if (!(total_bound < 2.0 * std::sqrt(static_cast<double>(n)))) {
        report.pass = false;
        report.first_violation = "closed-form red total " + format_scalar(total_bound) +
                                 " not below 2*sqrt(n)";
    }
    return report;
}

std::string to_string(SweepStrategy s) {
    return s == SweepStrategy::Naive ? "naive" : "window";
}

std::vector<SweepRecord> residual_sweep(const std::vector<long>& ns, SweepStrategy strategy) {
    std::vector<SweepRecord> records;
    records.reserve(ns.size());
    for (long n : ns) {
        if (n < 1) throw std::invalid_argument("residual_sweep: n must be >= 1");
        const int ni = static_cast<int>(n);
        tanks::TankConfig<double> cfg =
            strategy == SweepStrategy::Naive
                ? strategies::simulate_naive_full_empty<double>(ni)
                : strategies::simulate_window_full_empty<double>(
                      ni, strategies::default_window_width(ni));
        records.push_back({n, cfg.levels[0], to_string(strategy)});
    }
    return records;
}

FitResult conjecture_fit(const std::vector<SweepRecord>& records) {
    std::set<long> distinct;
    for (const auto& r : records) distinct.insert(r.n);
    if (distinct.size() < 2)
        throw std::invalid_argument("conjecture_fit: degenerate design matrix (need >= 2 distinct n)");

    // Normal equations for the two-basis fit phi1 = n^(-1/2), phi2 = n^(-3/2).
    double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
    for (const auto& r : records) {
        const double n = static_cast<double>(r.n);
        const double p1 = 1.0 / std::sqrt(n);
        const double p2 = p1 / n;
        s11 += p1 * p1;
        s12 += p1 * p2;
        s22 += p2 * p2;
        t1 += p1 * r.residual_per_red;
        t2 += p2 * r.residual_per_red;
    }
    const double det = s11 * s22 - s12 * s12;
    if (std::fabs(det) < 1e-300)
        throw std::invalid_argument("conjecture_fit: degenerate design matrix");

    FitResult fit;
    fit.a = (t1 * s22 - t2 * s12) / det;
    fit.b = (s11 * t2 - s12 * t1) / det;
    double sq = 0;
    for (const auto& r : records) {
        const double n = static_cast<double>(r.n);
        const double pred = fit.a / std::sqrt(n) + fit.b / (n * std::sqrt(n));
        sq += (r.residual_per_red - pred) * (r.residual_per_red - pred);
    }
    fit.rms_error = std::sqrt(sq / static_cast<double>(records.size()));
    return fit;
}

namespace {

struct BruteForceSearch {
    const std::vector<tanks::Color>& colors;
    int max_len;
    std::vector<std::pair<int, int>> pairs;
    std::vector<tanks::PairStep> current;
    Rational best;
    std::vector<tanks::PairStep> best_witness;

    // `transfer` tracks blue-gain relative to the initial config so leaves
    // need no rescan.
    void dfs(std::vector<Rational>& lv, const Rational& transfer, int depth) {
        if (transfer > best) {
            best = transfer;
            best_witness = current;
        }
        if (depth == max_len) return;
        for (const auto& [a, b] : pairs) {
            const std::size_t ua = static_cast<std::size_t>(a);
            const std::size_t ub = static_cast<std::size_t>(b);
            if (lv[ua] == lv[ub]) continue;  // no-op step can never help
            const Rational old_a = lv[ua];
            const Rational old_b = lv[ub];
            const Rational mean = half_sum(old_a, old_b);
            Rational delta(0);
            if (colors[ua] == tanks::Color::Blue) delta += mean - old_a;
            if (colors[ub] == tanks::Color::Blue) delta += mean - old_b;
            lv[ua] = mean;
            lv[ub] = mean;
            current.push_back(tanks::PairStep{a, b});
            dfs(lv, transfer + delta, depth + 1);
            current.pop_back();
            lv[ua] = old_a;
            lv[ub] = old_b;
        }
    }
};

}  // namespace

BruteForceResult brute_force_optimal(const tanks::TankConfig<Rational>& config, int max_len) {
    tanks::validate_config(config);
    const int n = static_cast<int>(config.size());
    if (n > kBruteForceMaxTanks)
        throw std::invalid_argument("brute_force_optimal: more than 6 tanks");
    if (max_len < 0 || max_len > kBruteForceMaxLen)
        throw std::invalid_argument("brute_force_optimal: max_len outside [0, 8]");

    BruteForceSearch search{config.colors, max_len, {}, {}, Rational(0), {}};
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) search.pairs.emplace_back(a, b);

    std::vector<Rational> lv = config.levels;
    search.dfs(lv, Rational(0), 0);
    return {search.best, search.best_witness};
}

}  // namespace avgdyn::analysis
