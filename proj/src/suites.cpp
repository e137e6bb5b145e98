#include "avgdyn/suites.hpp"

#include <random>

#include "avgdyn/analysis.hpp"
#include "avgdyn/dynamics.hpp"
#include "avgdyn/hull.hpp"
#include "avgdyn/majorization.hpp"
#include "avgdyn/strategies.hpp"
#include "avgdyn/tanks.hpp"

namespace avgdyn::suites {

namespace {

Rational random_level(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(0, 12);
    std::uniform_int_distribution<int> den(1, 6);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

tanks::TankConfig<Rational> random_config(std::mt19937_64& rng, int reds, int blues) {
    tanks::TankConfig<Rational> cfg;
    for (int i = 0; i < reds + blues; ++i) {
        cfg.levels.push_back(random_level(rng));
        cfg.colors.push_back(i < reds ? tanks::Color::Red : tanks::Color::Blue);
    }
    return cfg;
}

CheckResult check(const std::string& name, bool pass, const std::string& detail = "") {
    return {name, pass, pass ? "" : detail};
}

}  // namespace

std::vector<CheckResult> bounds_suite() {
    std::vector<CheckResult> out;

    for (auto [n, k] : {std::pair{2, 2}, std::pair{100, 10}}) {
        auto report = analysis::verify_lemma_bounds<Rational>(n, k);
        out.push_back(check("lemma_bound_exact_n" + std::to_string(n), report.pass,
                            report.first_violation));
    }
    {
        auto report = analysis::verify_lemma_bounds<double>(1000, 31);
        out.push_back(check("lemma_bound_float_n1000", report.pass, report.first_violation));
    }

    for (auto [n, k] : {std::pair{2, 2}, std::pair{100, 10}}) {
        auto cfg = strategies::simulate_window_full_empty<Rational>(n, k, false);
        Rational red_total(0);
        for (int i = 0; i < n; ++i) red_total += cfg.levels[static_cast<std::size_t>(i)];
        bool ok = red_total <= analysis::total_red_bound<Rational>(n, k);
        out.push_back(check("total_red_bound_exact_n" + std::to_string(n), ok,
                            "red total " + format_scalar(red_total)));
    }
    {
        auto cfg = strategies::simulate_window_full_empty<double>(1000, 31, false);
        double red_total = 0;
        for (int i = 0; i < 1000; ++i) red_total += cfg.levels[static_cast<std::size_t>(i)];
        bool ok = red_total <= analysis::total_red_bound<double>(1000, 31) + 1e-9;
        out.push_back(check("total_red_bound_float_n1000", ok,
                            "red total " + format_scalar(red_total)));
    }

    for (int n : {4, 16, 100, 10000}) {
        auto report = analysis::theorem_bound_check(n);
        out.push_back(check("theorem_bound_n" + std::to_string(n), report.pass,
                            report.first_violation));
    }
    return out;
}

std::vector<CheckResult> optimality_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    bool greedy_matches_brute = true;
    std::string detail;
    for (int trial = 0; trial < 100 && greedy_matches_brute; ++trial) {
        auto cfg = random_config(rng, 2, 2);
        auto brute = analysis::brute_force_optimal(cfg, 6);
        auto greedy = strategies::greedy_optimal_strategy(cfg);
        Rational transfer = tanks::transferred_to_blue(cfg, greedy.final_config);
        if (transfer != brute.best_transfer) {
            greedy_matches_brute = false;
            detail = "trial " + std::to_string(trial) + ": greedy " + format_scalar(transfer) +
                     " vs brute " + format_scalar(brute.best_transfer);
        }
    }
    out.push_back(check("greedy_equals_brute_force_2plus2", greedy_matches_brute, detail));

    bool totals_match = true;
    for (int n = 1; n <= 8 && totals_match; ++n) {
        auto start = tanks::full_empty_config<Rational>(n);
        auto naive_final = tanks::run_strategy(start, strategies::naive_strategy(n));
        auto greedy = strategies::greedy_optimal_strategy(start);
        totals_match = tanks::transferred_to_blue(start, naive_final) ==
                       tanks::transferred_to_blue(start, greedy.final_config);
    }
    out.push_back(check("greedy_total_equals_naive_total_n1to8", totals_match));

    bool invariant = true;
    for (int trial = 0; trial < 50 && invariant; ++trial) {
        std::uniform_int_distribution<int> reds_d(1, 3), blues_d(1, 2);
        auto cfg = random_config(rng, reds_d(rng), blues_d(rng));
        auto leftmost = strategies::greedy_optimal_strategy(cfg);
        auto random_rule = strategies::greedy_optimal_strategy<Rational>(
            cfg, [&](std::size_t count) {
                return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
            });
        invariant = tanks::transferred_to_blue(cfg, leftmost.final_config) ==
                    tanks::transferred_to_blue(cfg, random_rule.final_config);
    }
    out.push_back(check("greedy_tiebreak_total_invariance", invariant));
    return out;
}

std::vector<CheckResult> matrix_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    bool faithful = true;
    bool stochastic = true;
    for (int trial = 0; trial < 50 && faithful && stochastic; ++trial) {
        std::uniform_int_distribution<int> size_d(2, 16), len_d(0, 50);
        const int n = size_d(rng);
        tanks::Strategy strategy;
        strategy.n_tanks = n;
        std::uniform_int_distribution<int> idx(0, n - 1);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        const int len = len_d(rng);
        for (int s = 0; s < len; ++s) {
            if (coin(rng) < 0.85) {
                int a = idx(rng), b = idx(rng);
                while (b == a) b = idx(rng);
                strategy.steps.push_back(tanks::PairStep{a, b});
            } else {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int t = 0; t < n; ++t) perm[static_cast<std::size_t>(t)] = t;
                std::shuffle(perm.begin(), perm.end(), rng);
                std::uniform_int_distribution<int> bsz(2, std::max(2, n / 2));
                int take = std::min(n, bsz(rng));
                std::vector<std::vector<int>> blocks{{perm.begin(), perm.begin() + take}};
                strategy.steps.push_back(tanks::AverageStep{blocks});
            }
        }
        auto mat = tanks::strategy_matrix<Rational>(strategy);
        stochastic = tanks::is_doubly_stochastic(mat);
        tanks::TankConfig<Rational> cfg;
        for (int t = 0; t < n; ++t) {
            cfg.levels.push_back(random_level(rng));
            cfg.colors.push_back(tanks::Color::Red);
        }
        auto direct = tanks::run_strategy(cfg, strategy);
        faithful = tanks::apply_matrix(mat, cfg.levels) == direct.levels;
    }
    out.push_back(check("strategy_matrix_faithful_exact", faithful));
    out.push_back(check("strategy_matrix_doubly_stochastic_exact", stochastic));
    return out;
}

std::vector<CheckResult> majorization_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    bool chain_ok = true;
    bool matrix_agrees = true;
    for (int trial = 0; trial < 100 && chain_ok && matrix_agrees; ++trial) {
        std::uniform_int_distribution<int> dim_d(2, 5);
        const int n = dim_d(rng);
        std::vector<Rational> x;
        for (int t = 0; t < n; ++t) x.push_back(random_level(rng));
        std::uniform_int_distribution<int> idx(0, n - 1);
        int a = idx(rng), b = idx(rng);
        while (b == a) b = idx(rng);
        int i = x[static_cast<std::size_t>(a)] <= x[static_cast<std::size_t>(b)] ? a : b;
        int j = i == a ? b : a;
        std::uniform_int_distribution<int> lam_num(0, 8);
        majorization::RobinHoodOp<Rational> op{i, j, Rational(lam_num(rng)) / 16};
        auto y = majorization::apply_robin_hood(x, op);
        chain_ok = x[static_cast<std::size_t>(i)] <= y[static_cast<std::size_t>(i)] &&
                   y[static_cast<std::size_t>(i)] <= y[static_cast<std::size_t>(j)] &&
                   y[static_cast<std::size_t>(j)] <= x[static_cast<std::size_t>(j)] &&
                   tanks::total_level(x) == tanks::total_level(y);
        auto mat = majorization::robin_hood_matrix(op, n);
        matrix_agrees = tanks::apply_matrix(mat, x) == y &&
                        tanks::is_doubly_stochastic(mat);
    }
    out.push_back(check("robin_hood_chain_exact", chain_ok));
    out.push_back(check("robin_hood_matrix_agrees_exact", matrix_agrees));

    bool reach_majorized = true;
    for (int n = 2; n <= 5 && reach_majorized; ++n) {
        std::vector<double> x;
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int t = 0; t < n; ++t) x.push_back(uni(rng));
        auto cloud = majorization::sample_reachable(x, 8, 2500 / n, rng);
        for (std::size_t p = 0; p < cloud.size() && reach_majorized; ++p) {
            std::vector<double> y(cloud.point(p), cloud.point(p) + n);
            reach_majorized = majorization::majorizes(x, y, 1e-12);
        }
    }
    out.push_back(check("reachable_points_majorized", reach_majorized));

    bool diagonals = true;
    for (int len : {0, 1, 5, 8}) {
        auto mats = majorization::monoid_sample(3, len, 250, rng);
        for (const auto& m : mats)
            for (int d = 0; d < 3 && diagonals; ++d) diagonals = m.at(d, d) > 0.0;
    }
    out.push_back(check("monoid_products_positive_diagonal", diagonals));
    return out;
}

std::vector<CheckResult> dynamics_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    bool decomp_ok = true;
    for (int trial = 0; trial < 60 && decomp_ok; ++trial) {
        std::uniform_int_distribution<int> size_d(1, 9);
        dynamics::Permutation perm(static_cast<std::size_t>(size_d(rng)));
        for (std::size_t c = 0; c < perm.size(); ++c) perm[c] = static_cast<int>(c);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto [inv1, inv2] = dynamics::involution_decompose(perm);
        decomp_ok = dynamics::is_involution(inv1) && dynamics::is_involution(inv2) &&
                    dynamics::compose(inv1, inv2) == perm;
    }
    out.push_back(check("involution_decomposition", decomp_ok));

    bool approx_ok = true;
    std::string detail;
    const double eps = 0.1;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int cells : {2, 4, 8}) {
        for (int trial = 0; trial < 10 && approx_ok; ++trial) {
            std::vector<double> f;
            for (int c = 0; c < cells; ++c) f.push_back(uni(rng));
            dynamics::Permutation perm(static_cast<std::size_t>(cells));
            for (int c = 0; c < cells; ++c) perm[static_cast<std::size_t>(c)] = c;
            std::shuffle(perm.begin(), perm.end(), rng);
            auto approx = dynamics::approximate_permutation(f, perm, eps);
            double err = dynamics::sup_distance(approx.result,
                                                dynamics::compose_with_permutation(f, perm));
            if (!(err < eps)) {
                approx_ok = false;
                detail = "cells " + std::to_string(cells) + ": error " + format_scalar(err);
            }
        }
    }
    out.push_back(check("approximate_permutation_error_below_eps", approx_ok, detail));

    bool contractive = true;
    bool mean_conserved = true;
    for (int trial = 0; trial < 40 && contractive && mean_conserved; ++trial) {
        std::uniform_int_distribution<int> size_d(4, 24);
        const int n = size_d(rng);
        std::vector<double> g, h;
        for (int t = 0; t < n; ++t) {
            g.push_back(uni(rng));
            h.push_back(uni(rng));
        }
        // random partition of a random subset
        std::vector<int> shuffled(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) shuffled[static_cast<std::size_t>(t)] = t;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<std::vector<int>> blocks;
        std::size_t pos = 0;
        std::uniform_int_distribution<std::size_t> bsz(1, 4);
        while (pos < shuffled.size()) {
            std::size_t take = std::min(bsz(rng), shuffled.size() - pos);
            blocks.emplace_back(shuffled.begin() + static_cast<std::ptrdiff_t>(pos),
                                shuffled.begin() + static_cast<std::ptrdiff_t>(pos + take));
            pos += take;
        }
        auto eg = tanks::average_partition(g, blocks);
        auto eh = tanks::average_partition(h, blocks);
        contractive = dynamics::sup_distance(eg, eh) <= dynamics::sup_distance(g, h) + 1e-12;
        double before = 0, after = 0;
        for (int t = 0; t < n; ++t) {
            before += g[static_cast<std::size_t>(t)];
            after += eg[static_cast<std::size_t>(t)];
        }
        mean_conserved = std::fabs(before - after) < 1e-9;
    }
    out.push_back(check("partition_averaging_contractive", contractive));
    out.push_back(check("partition_averaging_conserves_mean", mean_conserved));
    return out;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
    };
    if (suite == "bounds" || suite == "all") append(bounds_suite());
    if (suite == "optimality" || suite == "all") append(optimality_suite(seed));
    if (suite == "matrix" || suite == "all") append(matrix_suite(seed));
    if (suite == "majorization" || suite == "all") append(majorization_suite(seed));
    if (suite == "dynamics" || suite == "all") append(dynamics_suite(seed));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

}  // namespace avgdyn::suites
