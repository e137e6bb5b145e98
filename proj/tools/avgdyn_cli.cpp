// avgdyn command-line interface: simulations, residual sweeps, verification
// suites, reachable-set exploration and averaging-dynamics demos. All
// randomness flows from the single --seed flag; identical flags and seed
// produce byte-identical output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "avgdyn/analysis.hpp"
#include "avgdyn/dynamics.hpp"
#include "avgdyn/hull.hpp"
#include "avgdyn/majorization.hpp"
#include "avgdyn/strategies.hpp"
#include "avgdyn/suites.hpp"
#include "avgdyn/tanks.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace avgdyn;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) throw UsageError("empty entry in list: " + text);
        out.push_back(std::stol(tok));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) {
        if (tok.empty()) throw UsageError("empty entry in list: " + text);
        out.push_back(std::stod(tok));
    }
    return out;
}

// Accepts the CSV this tool writes (tank,color,level) as well as the shorter
// color,level form; levels may be decimals or p/q.
tanks::TankConfig<Rational> load_config_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open initial config: " + path);
    tanks::TankConfig<Rational> cfg;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (first) {
            first = false;
            if (!fields.empty() && (fields[0] == "tank" || fields[0] == "color")) continue;
        }
        std::string color, level;
        if (fields.size() == 3) {
            color = fields[1];
            level = fields[2];
        } else if (fields.size() == 2) {
            color = fields[0];
            level = fields[1];
        } else {
            throw UsageError("bad config row: " + line);
        }
        if (color != "red" && color != "blue") throw UsageError("bad color: " + color);
        cfg.colors.push_back(color == "red" ? tanks::Color::Red : tanks::Color::Blue);
        cfg.levels.push_back(parse_rational(level));
    }
    if (cfg.levels.empty()) throw UsageError("initial config is empty: " + path);
    return cfg;
}

std::string color_name(tanks::Color c) { return c == tanks::Color::Red ? "red" : "blue"; }

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw UsageError("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

template <class S>
void write_levels_csv(std::ostream& os, const tanks::TankConfig<S>& cfg) {
    os << "tank,color,level\n";
    for (std::size_t t = 0; t < cfg.size(); ++t)
        os << t << ',' << color_name(cfg.colors[t]) << ',' << format_scalar(cfg.levels[t])
           << '\n';
}

template <class S>
void write_trace_csv(std::ostream& os, const tanks::TankConfig<S>& initial,
                     const std::vector<std::vector<S>>& trace) {
    os << "step,tank,color,level\n";
    auto row = [&](std::size_t step, const std::vector<S>& levels) {
        for (std::size_t t = 0; t < levels.size(); ++t)
            os << step << ',' << t << ',' << color_name(initial.colors[t]) << ','
               << format_scalar(levels[t]) << '\n';
    };
    row(0, initial.levels);
    for (std::size_t s = 0; s < trace.size(); ++s) row(s + 1, trace[s]);
}

// ----------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string strategy;
    int n = -1;
    int k = -1;  // window width or heat capacity; -1 = default
    bool exact = false;
    bool trace = false;
    std::string initial = "full-empty";
    std::string out;
};

template <class S>
json summarize(const tanks::TankConfig<S>& initial, const tanks::TankConfig<S>& final_cfg,
               std::size_t n_steps) {
    S transferred = tanks::transferred_to_blue(initial, final_cfg);
    long reds = 0;
    S red_total = scalar_from_int<S>(0);
    for (std::size_t t = 0; t < final_cfg.size(); ++t) {
        if (final_cfg.colors[t] == tanks::Color::Red) {
            ++reds;
            red_total += final_cfg.levels[t];
        }
    }
    json j;
    j["steps"] = n_steps;
    if constexpr (is_rational_v<S>) {
        j["total_transferred_to_blue"] = format_scalar(transferred);
        j["residual_per_red"] =
            reds == 0 ? json() : json(format_scalar(S(red_total / scalar_from_int<S>(reds))));
    } else {
        j["total_transferred_to_blue"] = transferred;
        j["residual_per_red"] = reds == 0 ? json() : json(red_total / static_cast<double>(reds));
    }
    return j;
}

template <class S>
int run_simulate_backend(const SimulateArgs& args) {
    std::optional<tanks::TankConfig<S>> initial;
    int n = args.n;

    if (args.initial != "full-empty") {
        auto exact_cfg = load_config_csv(args.initial);
        tanks::TankConfig<S> cfg;
        cfg.colors = exact_cfg.colors;
        for (const auto& v : exact_cfg.levels) {
            if constexpr (is_rational_v<S>)
                cfg.levels.push_back(v);
            else
                cfg.levels.push_back(to_double(v));
        }
        initial = std::move(cfg);
    }

    json summary;
    summary["strategy"] = args.strategy;
    summary["exact"] = args.exact;

    tanks::TankConfig<S> start;
    tanks::Strategy strategy;

    if (args.strategy == "heat") {
        if (initial) throw UsageError("heat model runs on the full/empty start only");
        if (n < 1) throw UsageError("--n must be >= 1 for heat");
        std::optional<int> cap;
        if (args.k >= 0) cap = args.k;
        if (cap && (*cap < 1 || *cap > n)) throw UsageError("heat capacity must be in [1, n]");
        auto res = strategies::heat_exchanger_simulate<S>(n, cap);
        start = tanks::full_empty_config<S>(n);
        tanks::TankConfig<S> final_cfg = start;
        for (int i = 0; i < n; ++i) {
            final_cfg.levels[static_cast<std::size_t>(i)] = res.hot[static_cast<std::size_t>(i)];
            final_cfg.levels[static_cast<std::size_t>(n + i)] =
                res.cold[static_cast<std::size_t>(i)];
        }
        summary["n"] = n;
        summary["capacity"] = args.k >= 0 ? json(args.k) : json("unlimited");
        summary.update(summarize(start, final_cfg, 0));
        OutputTarget target(args.out);
        write_levels_csv(target.out(), final_cfg);
        std::cout << summary.dump(2) << '\n';
        return 0;
    }

    if (args.strategy == "greedy") {
        if (initial) {
            start = *initial;
        } else {
            if (n < 0) throw UsageError("--n required with full-empty start");
            start = tanks::full_empty_config<S>(n);
        }
        auto res = strategies::greedy_optimal_strategy<S>(start);
        strategy = res.strategy;
        summary["n"] = static_cast<long>(start.size());
    } else if (args.strategy == "naive" || args.strategy == "window") {
        if (initial) {
            // layout must be n reds then n blues
            const int total = static_cast<int>(initial->size());
            if (total % 2 != 0) throw UsageError("naive/window need n reds then n blues");
            n = total / 2;
            for (int t = 0; t < total; ++t) {
                bool red = t < n;
                if ((initial->colors[static_cast<std::size_t>(t)] == tanks::Color::Red) != red)
                    throw UsageError("naive/window need n reds then n blues");
            }
            start = *initial;
        } else {
            if (n < 0) throw UsageError("--n required with full-empty start");
            start = tanks::full_empty_config<S>(n);
        }
        summary["n"] = n;
        if (args.strategy == "naive") {
            strategy = strategies::naive_strategy(n);
        } else {
            if (n < 1) throw UsageError("--n must be >= 1 for window");
            int k = args.k >= 0 ? args.k : strategies::default_window_width(n);
            if (k < 1 || k > n) throw UsageError("window width must be in [1, n]");
            summary["k"] = k;
            strategy = strategies::moving_window_strategy(n, k);
        }
    } else {
        throw UsageError("unknown strategy: " + args.strategy);
    }

    OutputTarget target(args.out);
    if (args.trace) {
        auto [final_cfg, trace] = tanks::run_strategy_traced(start, strategy);
        summary.update(summarize(start, final_cfg, strategy.size()));
        write_trace_csv(target.out(), start, trace);
    } else {
        auto final_cfg = tanks::run_strategy(start, strategy);
        summary.update(summarize(start, final_cfg, strategy.size()));
        write_levels_csv(target.out(), final_cfg);
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_simulate(const SimulateArgs& args) {
    if (args.exact) return run_simulate_backend<Rational>(args);
    return run_simulate_backend<double>(args);
}

// ----------------------------------------------------------------------
// sweep

int run_sweep(const std::string& ns_text, const std::string& strategy, bool fit,
              const std::string& out_path) {
    auto ns = parse_long_list(ns_text);
    if (ns.empty()) throw UsageError("--ns must list at least one n");
    analysis::SweepStrategy kind;
    if (strategy == "naive")
        kind = analysis::SweepStrategy::Naive;
    else if (strategy == "window")
        kind = analysis::SweepStrategy::Window;
    else
        throw UsageError("unknown sweep strategy: " + strategy);

    auto records = analysis::residual_sweep(ns, kind);
    OutputTarget target(out_path);
    target.out() << "n,strategy,residual_per_red\n";
    for (const auto& r : records)
        target.out() << r.n << ',' << r.strategy_id << ',' << format_scalar(r.residual_per_red)
                     << '\n';
    if (fit) {
        auto f = analysis::conjecture_fit(records);
        json j;
        j["fit"] = {{"a", f.a}, {"b", f.b}, {"rms_error", f.rms_error}};
        j["note"] = "leading coefficient near 1/sqrt(pi) = 0.5641895835 supports the "
                    "conjectured residual law; evidence, not proof";
        std::cout << j.dump(2) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------------
// verify

int run_verify(const std::string& suite, std::uint64_t seed) {
    static const std::vector<std::string> known = {"bounds",       "optimality", "matrix",
                                                   "majorization", "dynamics",   "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw UsageError("unknown suite: " + suite);

    auto checks = suites::run_suite(suite, seed);
    bool pass = true;
    json arr = json::array();
    for (const auto& c : checks) {
        pass = pass && c.pass;
        json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(j);
    }
    json report;
    report["suite"] = suite;
    report["seed"] = seed;
    report["checks"] = arr;
    report["pass"] = pass;
    std::cout << report.dump(2) << '\n';
    return pass ? 0 : 1;
}

// ----------------------------------------------------------------------
// reach

int run_reach(const std::string& x_text, int depth, int samples, bool hull, long closure_trials,
              const std::string& out_path, std::mt19937_64& rng) {
    auto x = parse_double_list(x_text);
    if (x.empty()) throw UsageError("--x must list coordinates");
    if (hull && (x.size() < 3 || x.size() > 4))
        throw UsageError("--hull requires n in {3, 4}");

    auto cloud = majorization::sample_reachable(x, depth, samples, rng);
    {
        OutputTarget target(out_path);
        for (std::size_t c = 0; c < x.size(); ++c)
            target.out() << (c ? "," : "") << 'x' << (c + 1);
        target.out() << '\n';
        for (std::size_t p = 0; p < cloud.size(); ++p) {
            const double* row = cloud.point(p);
            for (int c = 0; c < cloud.dim; ++c)
                target.out() << (c ? "," : "") << format_scalar(row[c]);
            target.out() << '\n';
        }
    }

    if (hull) {
        auto h = majorization::hull_in_sum_plane(cloud);
        json jh;
        jh["ambient_dim"] = h.ambient_dim;
        jh["hull_dim"] = h.hull_dim;
        jh["vertices"] = h.vertices;
        jh["facets"] = h.facets;
        auto closure = majorization::hull_closure_test(x, h, closure_trials, rng);
        json jc;
        jc["trials"] = closure.trials;
        jc["violations"] = closure.violations;
        jc["violation_rate"] = closure.violation_rate();
        jc["max_penetration"] = closure.max_penetration;
        jc["tolerance"] = closure.tolerance;
        json report;
        report["hull"] = jh;
        report["closure"] = jc;
        report["note"] = "sampled evidence for convexity of the reachable set; "
                         "violations indicate unconverged sampling, not a disproof";
        std::cout << report.dump(2) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------------
// dynamics

int run_dynamics(int cells, double eps, const std::string& f_path, const std::string& perm_text,
                 const std::string& plan_out, std::mt19937_64& rng) {
    if (eps <= 0) throw UsageError("--eps must be > 0");
    if (cells < 1) throw UsageError("--cells must be >= 1");

    std::vector<double> values;
    if (!f_path.empty()) {
        std::ifstream in(f_path);
        if (!in) throw UsageError("cannot open --f file: " + f_path);
        std::string tok;
        while (std::getline(in, tok)) {
            for (const auto& field : split(tok, ','))
                if (!field.empty()) values.push_back(std::stod(field));
        }
        if (static_cast<int>(values.size()) != cells)
            throw UsageError("--f must provide exactly --cells values");
    } else {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int c = 0; c < cells; ++c) values.push_back(uni(rng));
    }

    dynamics::Permutation perm;
    if (!perm_text.empty()) {
        for (long v : parse_long_list(perm_text)) perm.push_back(static_cast<int>(v));
        if (static_cast<int>(perm.size()) != cells)
            throw UsageError("--perm must list exactly --cells images");
        dynamics::validate_permutation(perm);
    } else {
        for (int c = 0; c < cells; ++c) perm.push_back(c);
        std::shuffle(perm.begin(), perm.end(), rng);
    }

    auto approx = dynamics::approximate_permutation(values, perm, eps);
    auto target = dynamics::compose_with_permutation(values, perm);
    const double err = dynamics::sup_distance(approx.result, target);

    json j;
    j["cells"] = cells;
    j["eps"] = eps;
    j["perm"] = perm;
    j["subdivision_m"] = approx.plan.subdivision;
    j["plan_steps"] = approx.plan.steps.size();
    j["sup_error"] = err;
    j["pass"] = err < eps;
    std::cout << j.dump(2) << '\n';

    if (!plan_out.empty()) {
        json jp;
        jp["cells"] = approx.plan.cells;
        jp["subdivision"] = approx.plan.subdivision;
        jp["steps"] = approx.plan.steps;
        std::ofstream out(plan_out);
        if (!out) throw UsageError("cannot open --plan-out file: " + plan_out);
        out << jp.dump(2) << '\n';
    }
    if (err >= eps) {
        std::cerr << json{{"error", "sup error not below eps"}}.dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterated-averaging dynamics toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // the global --seed may follow the subcommand flags
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for all randomness in this invocation");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one strategy and emit final levels");
    simulate->add_option("--strategy", sim.strategy, "naive|window|greedy|heat")->required();
    simulate->add_option("--n", sim.n, "Tanks per color (full/empty start)");
    simulate->add_option("--k", sim.k, "Window width (window) or tube capacity (heat)");
    simulate->add_flag("--exact", sim.exact, "Exact rational backend; levels print as p/q");
    simulate->add_option("--initial", sim.initial, "\"full-empty\" or a CSV of tank,color,level");
    simulate->add_option("--out", sim.out, "Write the levels CSV here instead of stdout");
    simulate->add_flag("--trace", sim.trace, "Emit per-step levels (step,tank,color,level)");

    std::string sweep_ns, sweep_strategy = "naive", sweep_out;
    bool sweep_fit = false;
    auto* sweep = app.add_subcommand("sweep", "Residual per red tank across n");
    sweep->add_option("--ns", sweep_ns, "Comma-separated list of n")->required();
    sweep->add_option("--strategy", sweep_strategy, "naive|window");
    sweep->add_flag("--fit", sweep_fit, "Fit residual = a*n^(-1/2) + b*n^(-3/2)");
    sweep->add_option("--out", sweep_out, "Write the sweep CSV here instead of stdout");

    std::string verify_suite;
    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("--suite", verify_suite,
                       "bounds|optimality|matrix|majorization|dynamics|all")
        ->required();

    std::string reach_x, reach_out;
    int reach_depth = 8, reach_samples = 1000;
    bool reach_hull = false;
    long reach_trials = 1000;
    auto* reach = app.add_subcommand("reach", "Sample the Robin Hood reachable set");
    reach->add_option("--x", reach_x, "Start point, comma-separated")->required();
    reach->add_option("--depth", reach_depth, "Ops per trajectory");
    reach->add_option("--samples", reach_samples, "Number of trajectories");
    reach->add_flag("--hull", reach_hull, "Also compute the in-plane hull (n in {3,4})");
    reach->add_option("--closure-trials", reach_trials, "Trials for the hull closure test");
    reach->add_option("--out", reach_out, "Write the cloud CSV here instead of stdout");

    int dyn_cells = 0;
    double dyn_eps = 0.0;
    std::string dyn_f, dyn_perm, dyn_plan_out;
    auto* dyn = app.add_subcommand("dynamics", "Approximate f∘perm by partition averaging");
    dyn->add_option("--cells", dyn_cells, "Number of equal-measure cells")->required();
    dyn->add_option("--eps", dyn_eps, "Target sup-norm accuracy")->required();
    dyn->add_option("--f", dyn_f, "CSV file of cell values (random when omitted)");
    dyn->add_option("--perm", dyn_perm, "Permutation images, comma-separated (random when omitted)");
    dyn->add_option("--plan-out", dyn_plan_out, "Write the averaging plan as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 2;
    }

    std::mt19937_64 rng(seed);
    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (sweep->parsed()) return run_sweep(sweep_ns, sweep_strategy, sweep_fit, sweep_out);
        if (verify->parsed()) return run_verify(verify_suite, seed);
        if (reach->parsed())
            return run_reach(reach_x, reach_depth, reach_samples, reach_hull, reach_trials,
                             reach_out, rng);
        if (dyn->parsed())
            return run_dynamics(dyn_cells, dyn_eps, dyn_f, dyn_perm, dyn_plan_out, rng);
    } catch (const UsageError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return 2;
}
