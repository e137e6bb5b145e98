#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "avgdyn/analysis.hpp"
#include "test_support.hpp"

using namespace avgdyn;
using tanks::Color;
using testsupport::random_config;

TEST_CASE("lemma_bound closed form") {
    CHECK(analysis::lemma_bound<Rational>(3, 3, 4) == Rational(4, 5));   // i = j -> k/(k+1)
    CHECK(analysis::lemma_bound<Rational>(2, 5, 4) == Rational(1, 5));   // j = i+k-1 -> 1/(k+1)
    CHECK(analysis::lemma_bound<Rational>(1, 1, 1) == Rational(1, 2));
    CHECK_THROWS_AS((void)analysis::lemma_bound<Rational>(1, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)analysis::lemma_bound<Rational>(2, 1, 2), std::invalid_argument);
}

TEST_CASE("verify_lemma_bounds passes on instrumented runs") {
    CHECK(analysis::verify_lemma_bounds<Rational>(1, 1).pass);
    CHECK(analysis::verify_lemma_bounds<Rational>(2, 2).pass);
    CHECK(analysis::verify_lemma_bounds<Rational>(100, 10).pass);
    CHECK(analysis::verify_lemma_bounds<double>(1000, 31).pass);
}

TEST_CASE("total_red_bound closed form and comparison") {
    CHECK(analysis::total_red_bound<Rational>(4, 2) == Rational(2));
    const int n = 7;
    CHECK(analysis::total_red_bound<Rational>(n, n) ==
          Rational(1, n + 1) + Rational(n - 1));  // k = n substitution
    CHECK(analysis::total_red_bound<Rational>(2, 2) == Rational(4, 3));

    auto pre = strategies::simulate_window_full_empty<Rational>(2, 2, /*include_averages=*/false);
    Rational red_total = pre.levels[0] + pre.levels[1];
    CHECK(red_total == Rational(5, 4));
    CHECK(red_total <= analysis::total_red_bound<Rational>(2, 2));

    CHECK_THROWS_AS((void)analysis::total_red_bound<Rational>(4, 5), std::invalid_argument);
}

TEST_CASE("theorem_bound_check") {
    CHECK(analysis::theorem_bound_check(1).pass);
    CHECK(analysis::theorem_bound_check(4).pass);
    CHECK(analysis::theorem_bound_check(100).pass);
}

TEST_CASE("float sweep residuals match the exact backend at n = 256") {
    auto records = analysis::residual_sweep({256}, analysis::SweepStrategy::Naive);
    auto exact = strategies::simulate_naive_full_empty<Rational>(256);
    CHECK(std::fabs(records[0].residual_per_red - to_double(exact.levels[0])) < 1e-9);
}

TEST_CASE("residual sweep small values and monotonicity") {
    auto records = analysis::residual_sweep({1, 2, 4, 8, 16}, analysis::SweepStrategy::Naive);
    CHECK(records[0].residual_per_red == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(records[1].residual_per_red == doctest::Approx(0.375).epsilon(1e-12));
    for (std::size_t t = 1; t < records.size(); ++t)
        CHECK(records[t].residual_per_red < records[t - 1].residual_per_red);

    auto window = analysis::residual_sweep({100}, analysis::SweepStrategy::Window);
    CHECK(window[0].strategy_id == "window");
    CHECK(window[0].residual_per_red < 0.2);  // theorem bound at n = 100
}

TEST_CASE("conjecture_fit recovers its own model") {
    const double a = 1.0 / std::sqrt(std::acos(-1.0));
    const double b = -0.1;
    std::vector<analysis::SweepRecord> records;
    for (long n : {100L, 400L, 1600L, 6400L}) {
        double nn = static_cast<double>(n);
        records.push_back({n, a / std::sqrt(nn) + b / (nn * std::sqrt(nn)), "synthetic"});
    }
    auto fit = analysis::conjecture_fit(records);
    CHECK(std::fabs(fit.a - a) < 1e-10);
    CHECK(std::fabs(fit.b - b) < 1e-7);
    CHECK(fit.rms_error < 1e-12);
}

TEST_CASE("conjecture_fit rejects degenerate input") {
    std::vector<analysis::SweepRecord> same{{100, 0.05, "naive"}, {100, 0.06, "naive"},
                                            {100, 0.07, "naive"}};
    CHECK_THROWS_AS((void)analysis::conjecture_fit(same), std::invalid_argument);
    CHECK_THROWS_AS((void)analysis::conjecture_fit({}), std::invalid_argument);
}

TEST_CASE("brute force on the named examples") {
    auto start = tanks::full_empty_config<Rational>(2);
    auto res = analysis::brute_force_optimal(start, 6);
    CHECK(res.best_transfer == Rational(5, 4));
    CHECK(res.witness.size() <= 6);

    tanks::TankConfig<Rational> one{{Rational(1), Rational(0)}, {Color::Red, Color::Blue}};
    CHECK(analysis::brute_force_optimal(one, 2).best_transfer == Rational(1, 2));

    tanks::TankConfig<Rational> reversed{{Rational(0), Rational(1)}, {Color::Red, Color::Blue}};
    auto nothing = analysis::brute_force_optimal(reversed, 4);
    CHECK(nothing.best_transfer == Rational(0));
    CHECK(nothing.witness.empty());
}

TEST_CASE("brute force enforces its search limits") {
    auto big = tanks::full_empty_config<Rational>(4);  // 8 tanks
    CHECK_THROWS_AS((void)analysis::brute_force_optimal(big, 2), std::invalid_argument);
    auto ok = tanks::full_empty_config<Rational>(2);
    CHECK_THROWS_AS((void)analysis::brute_force_optimal(ok, 9), std::invalid_argument);
}

TEST_CASE("greedy equals the exhaustive oracle on random 2+2 configs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto cfg = random_config(rng, 2, 2);
        auto brute = analysis::brute_force_optimal(cfg, 6);
        auto greedy = strategies::greedy_optimal_strategy(cfg);
        CHECK(tanks::transferred_to_blue(cfg, greedy.final_config) == brute.best_transfer);
    }
}

TEST_CASE("brute force witness replays to the reported transfer") {
    std::mt19937_64 rng(13);
    auto cfg = random_config(rng, 2, 2);
    auto res = analysis::brute_force_optimal(cfg, 5);
    auto lv = cfg.levels;
    for (const auto& p : res.witness) tanks::equilibrate_inplace(lv, p.a, p.b);
    Rational transfer(0);
    for (std::size_t t = 0; t < lv.size(); ++t)
        if (cfg.colors[t] == Color::Blue) transfer += lv[t] - cfg.levels[t];
    CHECK(transfer == res.best_transfer);
}
