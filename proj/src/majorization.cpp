#include "avgdyn/majorization.hpp"

namespace avgdyn::majorization {

std::vector<TransferMatrix<double>> monoid_sample(int n, int length, int samples,
                                                  std::mt19937_64& rng) {
    if (n < 2) throw std::invalid_argument("monoid_sample: n must be >= 2");
    if (length < 0) throw std::invalid_argument("monoid_sample: length must be >= 0");
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> lam(0.0, 0.5);

    std::vector<TransferMatrix<double>> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        auto prod = TransferMatrix<double>::identity(n);
        for (int step = 0; step < length; ++step) {
            int i = pick(rng);
            int j = pick(rng);
            while (j == i) j = pick(rng);
            RobinHoodOp<double> op{std::min(i, j), std::max(i, j), lam(rng)};
            prod = matrix_product(robin_hood_matrix(op, n), prod);
        }
        if (!tanks::is_doubly_stochastic(prod, 1e-9))
            throw std::runtime_error("monoid_sample: product lost double stochasticity");
        out.push_back(std::move(prod));
    }
    return out;
}

PointCloud sample_reachable(const std::vector<double>& x, int depth, int samples,
                            std::mt19937_64& rng) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("sample_reachable: empty start point");
    if (depth < 0) throw std::invalid_argument("sample_reachable: depth must be >= 0");

    PointCloud cloud;
    cloud.dim = n;
    cloud.data.reserve(static_cast<std::size_t>(samples) *
                       (static_cast<std::size_t>(depth) + 1) * static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> lam(0.0, 0.5);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<double> point(x.begin(), x.end());
    for (int s = 0; s < samples; ++s) {
        point.assign(x.begin(), x.end());
        cloud.push_back(point);
        for (int d = 0; d < depth; ++d) {
            if (n < 2) break;
            int a = pick(rng);
            int b = pick(rng);
            while (b == a) b = pick(rng);
            const int i = point[static_cast<std::size_t>(a)] <= point[static_cast<std::size_t>(b)]
                              ? a
                              : b;
            const int j = i == a ? b : a;
            // atom on full equilibration so extreme trajectories get sampled
            const double l = coin(rng) < 0.25 ? 0.5 : lam(rng);
            const double xi = point[static_cast<std::size_t>(i)];
            const double xj = point[static_cast<std::size_t>(j)];
            point[static_cast<std::size_t>(i)] = (1.0 - l) * xi + l * xj;
            point[static_cast<std::size_t>(j)] = l * xi + (1.0 - l) * xj;
            cloud.push_back(point);
        }
    }
    return cloud;
}

}  // namespace avgdyn::majorization
