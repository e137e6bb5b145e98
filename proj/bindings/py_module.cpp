// Python bindings for the main operations. Exact rational results cross the
// boundary as "p/q" strings; float-backend results as plain floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>

#include "avgdyn/analysis.hpp"
#include "avgdyn/dynamics.hpp"
#include "avgdyn/hull.hpp"
#include "avgdyn/majorization.hpp"
#include "avgdyn/strategies.hpp"
#include "avgdyn/tanks.hpp"

namespace py = pybind11;
using namespace avgdyn;

namespace {

tanks::TankConfig<double> make_config(const std::vector<double>& levels,
                                      const std::vector<std::string>& colors) {
    if (levels.size() != colors.size())
        throw std::invalid_argument("levels and colors must have equal length");
    tanks::TankConfig<double> cfg;
    cfg.levels = levels;
    for (const auto& c : colors) {
        if (c != "red" && c != "blue") throw std::invalid_argument("color must be red or blue");
        cfg.colors.push_back(c == "red" ? tanks::Color::Red : tanks::Color::Blue);
    }
    return cfg;
}

tanks::Strategy build_strategy(const std::string& name, int n, std::optional<int> k) {
    if (name == "naive") return strategies::naive_strategy(n);
    if (name == "window")
        return strategies::moving_window_strategy(n,
                                                  k.value_or(strategies::default_window_width(n)));
    throw std::invalid_argument("strategy must be naive or window");
}

template <class S>
py::dict config_dict(const tanks::TankConfig<S>& initial, const tanks::TankConfig<S>& final_cfg) {
    py::dict out;
    py::list levels;
    py::list colors;
    for (std::size_t t = 0; t < final_cfg.size(); ++t) {
        if constexpr (is_rational_v<S>)
            levels.append(format_scalar(final_cfg.levels[t]));
        else
            levels.append(final_cfg.levels[t]);
        colors.append(final_cfg.colors[t] == tanks::Color::Red ? "red" : "blue");
    }
    out["levels"] = levels;
    out["colors"] = colors;
    S transferred = tanks::transferred_to_blue(initial, final_cfg);
    if constexpr (is_rational_v<S>)
        out["transferred_to_blue"] = format_scalar(transferred);
    else
        out["transferred_to_blue"] = transferred;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Iterated-averaging dynamics: tank strategies, bounds, majorization tools";

    m.def(
        "simulate_full_empty",
        [](const std::string& strategy, int n, std::optional<int> k) {
            auto start = tanks::full_empty_config<double>(n);
            auto final_cfg = tanks::run_strategy(start, build_strategy(strategy, n, k));
            return config_dict(start, final_cfg);
        },
        py::arg("strategy"), py::arg("n"), py::arg("k") = std::nullopt,
        "Run naive/window on the full/empty start (float backend).");

    m.def(
        "simulate_full_empty_exact",
        [](const std::string& strategy, int n, std::optional<int> k) {
            auto start = tanks::full_empty_config<Rational>(n);
            auto final_cfg = tanks::run_strategy(start, build_strategy(strategy, n, k));
            return config_dict(start, final_cfg);
        },
        py::arg("strategy"), py::arg("n"), py::arg("k") = std::nullopt,
        "Exact rational backend; levels are returned as p/q strings.");

    m.def(
        "greedy_strategy",
        [](const std::vector<double>& levels, const std::vector<std::string>& colors) {
            auto cfg = make_config(levels, colors);
            auto res = strategies::greedy_optimal_strategy(cfg);
            py::dict out = config_dict(cfg, res.final_config);
            py::list steps;
            for (const auto& step : res.strategy.steps) {
                const auto& p = std::get<tanks::PairStep>(step);
                steps.append(py::make_tuple(p.a, p.b));
            }
            out["steps"] = steps;
            return out;
        },
        py::arg("levels"), py::arg("colors"),
        "Greedy sorted-order strategy for arbitrary initial levels.");

    m.def(
        "heat_exchanger",
        [](int n, std::optional<int> capacity) {
            auto res = strategies::heat_exchanger_simulate<double>(n, capacity);
            py::dict out;
            out["hot"] = res.hot;
            out["cold"] = res.cold;
            return out;
        },
        py::arg("n"), py::arg("capacity") = std::nullopt,
        "Discrete countercurrent heat exchanger (unlimited capacity when omitted).");

    m.def("default_window_width", &strategies::default_window_width, py::arg("n"));
    m.def("lemma_bound", &analysis::lemma_bound<double>, py::arg("i"), py::arg("j"), py::arg("k"));
    m.def("total_red_bound", &analysis::total_red_bound<double>, py::arg("n"), py::arg("k"));

    m.def(
        "verify_lemma_bounds",
        [](int n, int k) {
            auto report = analysis::verify_lemma_bounds<double>(n, k);
            return py::make_tuple(report.pass, report.first_violation);
        },
        py::arg("n"), py::arg("k"));

    m.def(
        "theorem_bound_check",
        [](int n) {
            auto report = analysis::theorem_bound_check(n);
            return py::make_tuple(report.pass, report.first_violation);
        },
        py::arg("n"));

    m.def(
        "residual_sweep",
        [](const std::vector<long>& ns, const std::string& strategy) {
            auto kind = strategy == "naive" ? analysis::SweepStrategy::Naive
                                            : analysis::SweepStrategy::Window;
            if (strategy != "naive" && strategy != "window")
                throw std::invalid_argument("strategy must be naive or window");
            py::list out;
            for (const auto& r : analysis::residual_sweep(ns, kind)) {
                py::dict d;
                d["n"] = r.n;
                d["strategy"] = r.strategy_id;
                d["residual_per_red"] = r.residual_per_red;
                out.append(d);
            }
            return out;
        },
        py::arg("ns"), py::arg("strategy") = "naive");

    m.def(
        "conjecture_fit",
        [](const std::vector<std::pair<long, double>>& records) {
            std::vector<analysis::SweepRecord> recs;
            for (const auto& [n, res] : records) recs.push_back({n, res, "naive"});
            auto fit = analysis::conjecture_fit(recs);
            py::dict d;
            d["a"] = fit.a;
            d["b"] = fit.b;
            d["rms_error"] = fit.rms_error;
            return d;
        },
        py::arg("records"), "records: list of (n, residual_per_red) pairs.");

    m.def(
        "brute_force_optimal",
        [](const std::vector<std::string>& levels, const std::vector<std::string>& colors,
           int max_len) {
            if (levels.size() != colors.size())
                throw std::invalid_argument("levels and colors must have equal length");
            tanks::TankConfig<Rational> cfg;
            for (std::size_t t = 0; t < levels.size(); ++t) {
                cfg.levels.push_back(parse_rational(levels[t]));
                cfg.colors.push_back(colors[t] == "red" ? tanks::Color::Red : tanks::Color::Blue);
            }
            auto res = analysis::brute_force_optimal(cfg, max_len);
            py::list witness;
            for (const auto& s : res.witness) witness.append(py::make_tuple(s.a, s.b));
            return py::make_tuple(format_scalar(res.best_transfer), witness);
        },
        py::arg("levels"), py::arg("colors"), py::arg("max_len"),
        "Exhaustive optimum over pair sequences; levels as exact 'p/q' strings.");

    m.def("majorizes", &majorization::majorizes<double>, py::arg("x"), py::arg("y"),
          py::arg("tol") = 1e-12);

    m.def(
        "apply_robin_hood",
        [](const std::vector<double>& x, int i, int j, double lam) {
            return majorization::apply_robin_hood(x, majorization::RobinHoodOp<double>{i, j, lam});
        },
        py::arg("x"), py::arg("i"), py::arg("j"), py::arg("lam"));

    m.def(
        "robin_hood_matrix",
        [](int n, int i, int j, double lam) {
            auto mat = majorization::robin_hood_matrix(majorization::RobinHoodOp<double>{i, j, lam},
                                                       n);
            std::vector<std::vector<double>> rows;
            for (int r = 0; r < n; ++r) {
                std::vector<double> row;
                for (int c = 0; c < n; ++c) row.push_back(mat.at(r, c));
                rows.push_back(std::move(row));
            }
            return rows;
        },
        py::arg("n"), py::arg("i"), py::arg("j"), py::arg("lam"));

    m.def(
        "sample_reachable",
        [](const std::vector<double>& x, int depth, int samples, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            auto cloud = majorization::sample_reachable(x, depth, samples, rng);
            std::vector<std::vector<double>> out;
            out.reserve(cloud.size());
            for (std::size_t p = 0; p < cloud.size(); ++p)
                out.emplace_back(cloud.point(p), cloud.point(p) + cloud.dim);
            return out;
        },
        py::arg("x"), py::arg("depth"), py::arg("samples"), py::arg("seed") = 0);

    m.def(
        "reachable_hull",
        [](const std::vector<double>& x, int depth, int samples, std::uint64_t seed,
           long closure_trials) {
            std::mt19937_64 rng(seed);
            auto cloud = majorization::sample_reachable(x, depth, samples, rng);
            auto hull = majorization::hull_in_sum_plane(cloud);
            auto closure = majorization::hull_closure_test(x, hull, closure_trials, rng);
            py::dict out;
            out["hull_dim"] = hull.hull_dim;
            out["vertices"] = hull.vertices;
            out["facets"] = hull.facets;
            out["closure_violation_rate"] = closure.violation_rate();
            out["closure_max_penetration"] = closure.max_penetration;
            return out;
        },
        py::arg("x"), py::arg("depth"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("closure_trials") = 1000,
        "Hull of a sampled reachable cloud plus its empirical closure report.");

    m.def("involution_decompose", &dynamics::involution_decompose, py::arg("perm"));

    m.def(
        "approximate_permutation",
        [](const std::vector<double>& values, const std::vector<int>& perm, double eps) {
            auto approx = dynamics::approximate_permutation(values, perm, eps);
            auto target = dynamics::compose_with_permutation(values, perm);
            py::dict out;
            out["result"] = approx.result;
            out["target"] = target;
            out["sup_error"] = dynamics::sup_distance(approx.result, target);
            out["subdivision_m"] = approx.plan.subdivision;
            out["plan_steps"] = approx.plan.steps.size();
            return out;
        },
        py::arg("values"), py::arg("perm"), py::arg("eps"),
        "Approximate values∘perm by a composition of partition averagings.");
}
