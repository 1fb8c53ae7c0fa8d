// slqc_opt: run, check, lowerbound and budgets subcommands.

#include "slqc/slqc.hpp"
#include "slqc/io/experiment.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace slqc;
using slqc::io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

/// Usage and configuration errors map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

json read_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
}

json optional_real(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------- run

struct RunPlan {
    std::size_t b;
    double eta;
    std::uint64_t trial;
    std::string file;
};

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir,
            std::optional<std::uint64_t> trials, unsigned jobs)
{
    io::ExperimentConfig cfg;
    std::optional<io::BuiltProblem> built;
    try {
        cfg = io::experiment_from_json(read_json_file(config_path));
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (trials) {
            if (*trials == 0) throw std::invalid_argument("--trials must be positive");
            cfg.trials = *trials;
        }
        Stream problem_stream = Stream(cfg.seed).substream(0);
        built = io::build_problem(cfg.problem, problem_stream);
        if (cfg.optimizer.x1) require_dim(*cfg.optimizer.x1, built->dim, "optimizer x1");
        if (cfg.optimizer.name == "ngd_oracle" &&
            (built->stochastic() || !std::get<Objective>(built->impl).has_direction_oracle()))
            throw std::invalid_argument("ngd_oracle: problem has no direction oracle");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const io::BuiltProblem& problem = *built;

    const std::vector<std::size_t> bs = cfg.sweep.b.empty() ? std::vector<std::size_t>{cfg.optimizer.b} : cfg.sweep.b;
    const std::vector<double> etas = cfg.sweep.eta.empty() ? std::vector<double>{cfg.optimizer.eta} : cfg.sweep.eta;
    std::vector<RunPlan> plan;
    for (double eta : etas)
        for (std::size_t b : bs)
            for (std::uint64_t k = 0; k < cfg.trials; ++k) {
                std::ostringstream name;
                name << cfg.prefix << "_" << plan.size() << ".csv";
                plan.push_back({b, eta, k, name.str()});
            }

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    const Stream runs = Stream(cfg.seed).substream(1);
    std::vector<json> rows(plan.size());
    parallel_for(plan.size(), jobs, [&](std::size_t i) {
        const auto& r = plan[i];
        const auto out = io::run_experiment_once(problem, cfg.optimizer, r.b, r.eta, runs.substream(r.trial));
        std::ostringstream csv;
        io::write_trace_csv(csv, out.trace);
        write_text(dir / r.file, csv.str());

        const auto& tr = out.trace;
        json row;
        row["run"] = i;
        row["trial"] = r.trial;
        row["b"] = r.b;
        row["eta"] = r.eta;
        row["trace"] = r.file;
        row["steps"] = tr.size();
        row["aborted"] = tr.aborted;
        row["abort_reason"] = tr.abort_reason;
        row["final_value"] = tr.size() ? io::real_to_json(tr.values.back()) : json(nullptr);
        row["best_value"] = tr.size() ? io::real_to_json(tr.returned_value()) : json(nullptr);
        row["best_index"] = tr.returned_index;
        const auto& curve = out.expected.empty() ? tr.values : out.expected;
        if (!out.expected.empty()) {
            row["expected_final"] = out.expected.back();
            row["expected_best"] = out.expected[argmin_index(out.expected)];
            row["expected_at_returned"] = out.expected[tr.returned_index];
        }
        std::size_t hit = no_hit;
        if (cfg.target_eps && problem.reference) hit = first_hit(curve, *problem.reference, *cfg.target_eps);
        row["first_hit"] = hit == no_hit ? json(nullptr) : json(hit);
        row["wall_time_s"] = out.wall_seconds;
        rows[i] = std::move(row);
    });

    bool any_aborted = false;
    for (const auto& r : rows) any_aborted = any_aborted || r["aborted"].get<bool>();
    json summary;
    summary["schema_version"] = 1;
    summary["problem"] = cfg.problem.name;
    summary["optimizer"] = cfg.optimizer.name;
    summary["seed"] = cfg.seed;
    summary["trials"] = cfg.trials;
    summary["T"] = cfg.optimizer.T;
    summary["reference_value"] = optional_real(problem.reference);
    summary["target_eps"] = optional_real(cfg.target_eps);
    summary["runs"] = rows;
    summary["aborted"] = any_aborted;
    write_text(dir / (cfg.prefix + "_summary.json"), summary.dump(2) + "\n");

    for (const auto& r : rows) {
        std::printf("run %-4zu b=%-5zu eta=%-8g trial=%-3llu best=%.6g%s\n", r["run"].get<std::size_t>(),
                    r["b"].get<std::size_t>(), r["eta"].get<double>(),
                    static_cast<unsigned long long>(r["trial"].get<std::uint64_t>()),
                    r["best_value"].is_number() ? r["best_value"].get<double>() : NAN,
                    r["aborted"].get<bool>() ? "  ABORTED" : "");
    }
    if (any_aborted) {
        std::fprintf(stderr, "one or more runs aborted on non-finite values; partial traces written\n");
        return exit_runtime;
    }
    return exit_ok;
}

// ---------------------------------------------------------------- check

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw UsageError("bad number '" + cell + "' in list");
        }
    }
    return out;
}

FeasibleRegion check_region(const io::BuiltProblem& p)
{
    if (p.name == "g") return *p.domain;
    if (p.name == "counterexample") return FeasibleRegion::cube(2, 0.0, 4.0);
    if (p.name == "glm") return FeasibleRegion::ball(Point::Zero(static_cast<Eigen::Index>(p.dim)), 2.0);
    if (p.name == "perceptron") return FeasibleRegion::ball(Point::Zero(static_cast<Eigen::Index>(p.dim)), 3.0);
    if (p.name == "cliff_plateau") return FeasibleRegion::cube(1, -3.0, 3.0);
    return FeasibleRegion::cube(p.dim, -5.0, 5.0);
}

int cmd_check(const std::string& problem_name, const std::string& property, const std::string& eps_grid,
              std::optional<double> kappa_opt, const std::string& alpha_opt, std::size_t points, std::uint64_t seed,
              const std::string& out_dir)
{
    static const std::vector<std::string> properties = {"slqc", "sublevel", "quasiconvex"};
    if (std::find(properties.begin(), properties.end(), property) == properties.end())
        throw UsageError("unknown property '" + property + "' (expected slqc, sublevel or quasiconvex)");
    const auto& names = io::problem_names();
    if (std::find(names.begin(), names.end(), problem_name) == names.end() || problem_name == "noisy_glm" ||
        problem_name == "lower_bound")
        throw UsageError("check: unsupported problem '" + problem_name + "'");
    if (points == 0) throw UsageError("--points must be positive");

    Stream problem_stream = Stream(seed).substream(0);
    const io::BuiltProblem p = io::build_problem({problem_name, json::object()}, problem_stream);
    const auto& f = std::get<Objective>(p.impl);
    const FeasibleRegion region = check_region(p);
    Stream rng = Stream(seed).substream(2);

    json report;
    report["schema_version"] = 1;
    report["problem"] = problem_name;
    report["property"] = property;
    report["seed"] = seed;
    bool all_pass = true;

    if (property == "slqc") {
        const auto eps_list = parse_list(eps_grid);
        if (eps_list.empty()) throw UsageError("--eps-grid is empty");
        double kappa = 1.0;
        bool use_oracle = false;
        if (problem_name == "glm") kappa = std::exp(2.0);
        if (problem_name == "perceptron") {
            kappa = 2.0 / 0.1; // default gamma of the built instance
            use_oracle = true;
        }
        if (kappa_opt) kappa = *kappa_opt;
        if (!(kappa > 0.0)) throw UsageError("--kappa must be positive");

        std::vector<Point> xs;
        if (problem_name == "g") {
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j)
                    xs.push_back(make_point({-10.0 + 20.0 * i / 9.0, -10.0 + 20.0 * j / 9.0}));
        } else {
            for (std::size_t i = 0; i < points; ++i) xs.push_back(region.sample(rng));
        }
        json results = json::array();
        std::size_t failures = 0;
        for (double eps : eps_list) {
            if (!(eps > 0.0)) throw UsageError("--eps-grid values must be positive");
            for (const auto& x : xs) {
                SlqcQuery q{eps, kappa, *p.minimizer, x, use_oracle};
                const auto r = check_slqc(f, q);
                if (!r.holds) ++failures;
                results.push_back({{"query", io::to_json(q)}, {"report", io::to_json(r)}});
            }
        }
        all_pass = failures == 0;
        report["kappa"] = kappa;
        report["eps_grid"] = eps_list;
        report["checked"] = results.size();
        report["failures"] = failures;
        report["results"] = std::move(results);
    } else if (property == "sublevel") {
        double alpha = 0.0;
        std::vector<std::pair<Point, Point>> candidates;
        if (alpha_opt == "auto") {
            if (problem_name == "counterexample") {
                const Point a = make_point({3.0, 1.0}), b = make_point({1.0, 3.0});
                alpha = std::max(f.value(a), f.value(b));
                candidates.emplace_back(a, b);
            } else {
                double lo = f.value(region.sample(rng)), hi = lo;
                for (int i = 0; i < 200; ++i) {
                    const double v = f.value(region.sample(rng));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                alpha = 0.5 * (lo + hi);
            }
        } else {
            try {
                alpha = std::stod(alpha_opt);
            } catch (const std::exception&) {
                throw UsageError("--alpha must be a number or 'auto'");
            }
        }
        const auto r = check_sublevel_convex(f, alpha, region, points, rng, candidates);
        all_pass = r.convex;
        report["alpha"] = alpha;
        report["report"] = io::to_json(r);
    } else {
        const auto r = search_quasiconvex_grad(f, region, points, rng);
        all_pass = r.holds;
        report["report"] = io::to_json(r);
    }
    report["all_pass"] = all_pass;

    const fs::path path = fs::path(out_dir) / ("check_" + problem_name + "_" + property + ".json");
    write_text(path, report.dump(2) + "\n");
    std::printf("check %s %s: %s (%s)\n", problem_name.c_str(), property.c_str(),
                all_pass ? "all-pass" : "violation found", path.string().c_str());
    return exit_ok;
}

// ---------------------------------------------------------------- lowerbound

int cmd_lowerbound(double eps, std::uint64_t trials, std::size_t T, std::uint64_t seed, const std::string& out_dir,
                   unsigned jobs)
{
    if (!(eps > 0.0 && eps <= 0.1)) throw UsageError("--eps must lie in (0, 0.1]");
    if (trials == 0) throw UsageError("--trials must be positive");
    if (T == 0) throw UsageError("--T must be positive");

    LowerBoundSettings s;
    s.eps = eps;
    s.trials = trials;
    s.T = T;
    s.jobs = jobs;
    const auto r = lower_bound_experiment(s, Stream(seed));
    const fs::path path = fs::path(out_dir) / "lowerbound_report.json";
    write_text(path, io::to_json(r).dump(2) + "\n");

    std::printf("eps=%g b=%llu eta=%g T=%zu trials=%llu\n", r.eps, static_cast<unsigned long long>(r.b), r.eta, r.T,
                static_cast<unsigned long long>(r.trials));
    std::printf("p_hat=%.6f (se %.2g)  P(batch mean < 0)=%.6f vs (1-eps)^b=%.6f\n", r.p_hat, r.p_hat_se,
                r.negative_fraction, r.negative_reference);
    std::printf("hit fraction=%.3g  analytic ceiling=%.3g  empirical ceiling=%.3g  declared ceiling=%.3g\n",
                r.hit_fraction, r.analytic_ceiling, r.empirical_ceiling, r.declared_ceiling);
    std::printf("%s (%s)\n", r.hits_ok ? "pass" : "FAIL: hit fraction exceeds the declared ceiling",
                path.string().c_str());
    return r.hits_ok ? exit_ok : exit_runtime;
}

// ---------------------------------------------------------------- budgets

int cmd_budgets(double eps, std::optional<double> kappa, std::optional<double> beta, std::optional<double> delta,
                std::optional<double> M, std::optional<double> dist0, std::optional<double> W,
                std::optional<std::uint64_t> b0)
{
    json out;
    out["eps"] = eps;
    try {
        if (kappa && dist0) {
            out["ngd"] = io::to_json(ngd_budget(eps, *kappa, *dist0));
            if (delta && M) out["sngd"] = io::to_json(sngd_budget(eps, *kappa, *dist0, *delta, *M, b0.value_or(0)));
        }
        if (beta && dist0) out["ngd_smooth"] = io::to_json(ngd_smooth_budget(eps, *beta, *dist0));
        if (W && delta) out["glm_samples"] = glm_sample_bound(eps, *delta, *W);
        if (eps <= 0.1) out["lower_bound_minibatch"] = lower_bound_minibatch(eps);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (out.size() == 1) throw UsageError("budgets: give --kappa/--dist0, --beta/--dist0 or --W/--delta");
    std::printf("%s\n", out.dump(2).c_str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Normalized gradient descent experiments for locally quasi-convex objectives"};
    app.require_subcommand(1);

    unsigned jobs = 0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "Run an experiment config; writes CSV traces and a JSON summary");
    std::string config;
    std::optional<std::uint64_t> run_seed, run_trials;
    std::optional<std::string> run_out;
    run->add_option("--config", config, "Experiment config (JSON)")->required();
    run->add_option("--seed", run_seed, "Override the config seed");
    run->add_option("--out-dir", run_out, "Override the output directory");
    run->add_option("--trials", run_trials, "Override the trial count");
    run->add_option("--jobs", jobs, "Worker threads (SLQC_OPT_JOBS overrides)");

    auto* check = app.add_subcommand("check", "Check a property of a problem; writes a JSON verdict");
    std::string problem, property, eps_grid = "0.1,0.5,1", alpha = "auto";
    std::optional<double> kappa;
    std::size_t points = 100;
    check->add_option("problem", problem, "Problem name")->required();
    check->add_option("property", property, "slqc, sublevel or quasiconvex")->required();
    check->add_option("--eps-grid", eps_grid, "Comma-separated eps values (slqc)");
    check->add_option("--kappa", kappa, "SLQC kappa (default depends on the problem)");
    check->add_option("--alpha", alpha, "Sublevel threshold or 'auto'");
    check->add_option("--points,--trials", points, "Sampled points or pairs");
    check->add_option("--seed", seed, "Seed");
    check->add_option("--out-dir", out_dir, "Output directory");

    auto* lb = app.add_subcommand("lowerbound", "Minibatch lower-bound experiment");
    double lb_eps = 0.1;
    std::uint64_t lb_trials = 100000;
    std::size_t lb_T = 10000;
    lb->add_option("--eps", lb_eps, "Accuracy in (0, 0.1]");
    lb->add_option("--trials", lb_trials, "Independent SNGD runs");
    lb->add_option("--T", lb_T, "Iterations per run");
    lb->add_option("--seed", seed, "Seed");
    lb->add_option("--out-dir", out_dir, "Output directory");
    lb->add_option("--jobs", jobs, "Worker threads (SLQC_OPT_JOBS overrides)");

    auto* bud = app.add_subcommand("budgets", "Print theoretical budgets as JSON");
    double b_eps = 0.1;
    std::optional<double> b_kappa, b_beta, b_delta, b_M, b_dist0, b_W;
    std::optional<std::uint64_t> b_b0;
    bud->add_option("--eps", b_eps, "Target accuracy")->required();
    bud->add_option("--kappa", b_kappa, "SLQC kappa");
    bud->add_option("--beta", b_beta, "Local smoothness");
    bud->add_option("--delta", b_delta, "Failure probability");
    bud->add_option("--M", b_M, "Bound on |f_i|");
    bud->add_option("--dist0", b_dist0, "Initial distance to the optimum");
    bud->add_option("--W", b_W, "GLM weight radius");
    bud->add_option("--b0", b_b0, "Problem-specific minimum minibatch");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    const unsigned workers = resolve_jobs(jobs);
    try {
        if (*run) return cmd_run(config, run_seed, run_out, run_trials, workers);
        if (*check) return cmd_check(problem, property, eps_grid, kappa, alpha, points, seed, out_dir);
        if (*lb) return cmd_lowerbound(lb_eps, lb_trials, lb_T, seed, out_dir, workers);
        if (*bud) return cmd_budgets(b_eps, b_kappa, b_beta, b_delta, b_M, b_dist0, b_W, b_b0);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_runtime;
    }
    return exit_usage;
}
