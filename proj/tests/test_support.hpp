#pragma once

// Shared helpers for the test binaries: deterministic random configs and
// strategies over small rationals.

#include <random>

#include "avgdyn/tanks.hpp"

namespace avgdyn::testsupport {

inline Rational random_level(std::mt19937_64& rng, int max_num = 12, int max_den = 6) {
    std::uniform_int_distribution<int> num(0, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline tanks::TankConfig<Rational> random_config(std::mt19937_64& rng, int reds, int blues) {
    tanks::TankConfig<Rational> cfg;
    for (int i = 0; i < reds + blues; ++i) {
        cfg.levels.push_back(random_level(rng));
        cfg.colors.push_back(i < reds ? tanks::Color::Red : tanks::Color::Blue);
    }
    return cfg;
}

// Random mix of pair steps and the occasional partition average.
inline tanks::Strategy random_strategy(std::mt19937_64& rng, int n, int max_len) {
    tanks::Strategy strategy;
    strategy.n_tanks = n;
    std::uniform_int_distribution<int> len_d(0, max_len);
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int len = len_d(rng);
    for (int s = 0; s < len; ++s) {
        if (n >= 2 && coin(rng) < 0.85) {
            int a = idx(rng), b = idx(rng);
            while (b == a) b = idx(rng);
            strategy.steps.push_back(tanks::PairStep{a, b});
        } else {
            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int t = 0; t < n; ++t) perm[static_cast<std::size_t>(t)] = t;
            std::shuffle(perm.begin(), perm.end(), rng);
            std::uniform_int_distribution<int> take_d(1, n);
            int take = take_d(rng);
            strategy.steps.push_back(
                tanks::AverageStep{{{perm.begin(), perm.begin() + take}}});
        }
    }
    return strategy;
}

}  // namespace avgdyn::testsupport
