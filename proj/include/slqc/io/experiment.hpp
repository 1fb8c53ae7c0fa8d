#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/stochastic.hpp"
#include "slqc/io/json_util.hpp"
#include "slqc/optimizers/baselines.hpp"
#include "slqc/optimizers/ngd.hpp"
#include "slqc/problems/basic.hpp"
#include "slqc/problems/cliff_plateau.hpp"
#include "slqc/problems/g_function.hpp"
#include "slqc/problems/glm.hpp"
#include "slqc/problems/lower_bound.hpp"
#include "slqc/problems/noisy_glm.hpp"
#include "slqc/problems/perceptron.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace slqc::io {

constexpr int experiment_schema_version = 1;

struct ProblemSpec {
    std::string name;
    json params = json::object();
};

struct OptimizerSpec {
    std::string name = "ngd";
    std::size_t T = 100;
    double eta = 0.1;
    std::optional<Point> x1;
    std::size_t b = 1;
    StepSchedule schedule = StepSchedule::constant(0.1);
    std::optional<FeasibleRegion> region;
    double grad_tol = 1e-12;
};

struct SweepSpec {
    std::vector<std::size_t> b;
    std::vector<double> eta;
};

struct ExperimentConfig {
    ProblemSpec problem;
    OptimizerSpec optimizer;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::optional<double> target_eps;
    SweepSpec sweep;
    std::string out_dir = ".";
    std::string prefix = "run";
};

inline const std::vector<std::string>& problem_names()
{
    static const std::vector<std::string> names = {"g",   "cliff_plateau",  "cone",      "quadratic",  "glm",
                                                   "counterexample", "noisy_glm", "perceptron", "lower_bound"};
    return names;
}

inline const std::vector<std::string>& optimizer_names()
{
    static const std::vector<std::string> names = {"ngd", "ngd_oracle", "sngd", "gd", "msgd", "sgd", "nesterov"};
    return names;
}

inline bool is_stochastic_optimizer(const std::string& name)
{
    return name == "sngd" || name == "msgd" || name == "sgd" || name == "nesterov";
}

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("bad value for '") + key + "'");
    }
}

inline void check_problem_params(const ProblemSpec& p)
{
    const std::string where = "problem '" + p.name + "'";
    if (p.name == "g" || p.name == "counterexample")
        reject_unknown_keys(p.params, {}, where);
    else if (p.name == "cliff_plateau")
        reject_unknown_keys(p.params, {"valley_width", "cliff_height", "plateau_slope", "cliff_slope", "valley_slope"},
                            where);
    else if (p.name == "cone")
        reject_unknown_keys(p.params, {"center"}, where);
    else if (p.name == "quadratic")
        reject_unknown_keys(p.params, {"center", "scale"}, where);
    else if (p.name == "glm")
        reject_unknown_keys(p.params, {"d", "m", "W"}, where);
    else if (p.name == "noisy_glm")
        reject_unknown_keys(p.params, {"d", "W", "noise_level", "pool_size"}, where);
    else if (p.name == "perceptron")
        reject_unknown_keys(p.params, {"d", "m", "gamma"}, where);
    else if (p.name == "lower_bound")
        reject_unknown_keys(p.params, {"eps"}, where);
    else
        throw std::invalid_argument("unknown problem '" + p.name + "'");
}

inline FeasibleRegion region_from_json(const json& j)
{
    reject_unknown_keys(j, {"ball", "box"}, "region");
    if (j.contains("ball") == j.contains("box")) throw std::invalid_argument("region: give exactly one of ball, box");
    if (j.contains("ball")) {
        const auto& b = j["ball"];
        reject_unknown_keys(b, {"center", "radius"}, "region.ball");
        return FeasibleRegion::ball(point_from_json(require_key(b, "center"), "ball center"),
                                    require_key(b, "radius").get<double>());
    }
    const auto& b = j["box"];
    reject_unknown_keys(b, {"lower", "upper"}, "region.box");
    return FeasibleRegion::box(point_from_json(require_key(b, "lower"), "box lower"),
                               point_from_json(require_key(b, "upper"), "box upper"));
}

inline StepSchedule schedule_from_json(const json& j)
{
    reject_unknown_keys(j, {"kind", "eta0", "gamma", "exponent", "momentum"}, "schedule");
    const auto kind = get_or<std::string>(j, "kind", "constant");
    StepSchedule s;
    if (kind == "constant")
        s = StepSchedule::constant(get_or(j, "eta0", 0.1));
    else if (kind == "polynomial")
        s = StepSchedule::polynomial(get_or(j, "eta0", 0.01), get_or(j, "gamma", 1e-4), get_or(j, "exponent", 0.75));
    else
        throw std::invalid_argument("schedule: kind must be constant or polynomial");
    s.momentum = get_or(j, "momentum", 0.0);
    s.validate();
    return s;
}

} // namespace detail

/**
 * Parses and validates an experiment document. Unknown keys at any level
 * are rejected. Layout:
 *
 *   {"schema_version": 1,
 *    "problem":   {"name": "...", <problem parameters>},
 *    "optimizer": {"name": "...", "T": ..., "eta": ..., "x1": [...], "b": ...,
 *                  "schedule": {...}, "region": {"ball"|"box": {...}}, "grad_tol": ...},
 *    "seed": ..., "trials": ..., "target_eps": ...,
 *    "sweep": {"b": [...], "eta": [...]},
 *    "output": {"dir": "...", "prefix": "..."}}
 */
inline ExperimentConfig experiment_from_json(const json& j)
{
    reject_unknown_keys(j, {"schema_version", "problem", "optimizer", "seed", "trials", "target_eps", "sweep", "output"},
                        "config");
    if (!require_key(j, "schema_version").is_number_integer() ||
        j["schema_version"].get<int>() != experiment_schema_version)
        throw std::invalid_argument("config: unsupported schema_version");

    ExperimentConfig c;
    const auto& pj = require_key(j, "problem");
    if (!pj.is_object()) throw std::invalid_argument("problem: expected an object");
    c.problem.name = require_key(pj, "name").get<std::string>();
    c.problem.params = pj;
    c.problem.params.erase("name");
    detail::check_problem_params(c.problem);

    const auto& oj = require_key(j, "optimizer");
    reject_unknown_keys(oj, {"name", "T", "eta", "x1", "b", "schedule", "region", "grad_tol"}, "optimizer");
    auto& o = c.optimizer;
    o.name = require_key(oj, "name").get<std::string>();
    bool known = false;
    for (const auto& n : optimizer_names()) known = known || n == o.name;
    if (!known) throw std::invalid_argument("unknown optimizer '" + o.name + "'");
    o.T = detail::get_or<std::size_t>(oj, "T", o.T);
    o.eta = detail::get_or(oj, "eta", o.eta);
    if (oj.contains("x1")) o.x1 = point_from_json(oj["x1"], "x1");
    o.b = detail::get_or<std::size_t>(oj, "b", o.b);
    o.grad_tol = detail::get_or(oj, "grad_tol", o.grad_tol);
    if (oj.contains("schedule"))
        o.schedule = detail::schedule_from_json(oj["schedule"]);
    else if (o.name == "nesterov")
        o.schedule = StepSchedule::constant(0.01).with_momentum(0.95);
    else if (o.name == "msgd")
        o.schedule = StepSchedule::polynomial(0.01, 1e-4);
    else
        o.schedule = StepSchedule::constant(o.eta);
    if (oj.contains("region")) o.region = detail::region_from_json(oj["region"]);
    if (o.T < 1) throw std::invalid_argument("optimizer: T must be at least 1");
    if (!(o.eta > 0.0)) throw std::invalid_argument("optimizer: eta must be positive");
    if (o.b < 1) throw std::invalid_argument("optimizer: b must be at least 1");

    c.seed = detail::get_or<std::uint64_t>(j, "seed", 0);
    c.trials = detail::get_or<std::uint64_t>(j, "trials", 1);
    if (c.trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (j.contains("target_eps")) {
        c.target_eps = j["target_eps"].get<double>();
        if (!(*c.target_eps > 0.0)) throw std::invalid_argument("config: target_eps must be positive");
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        reject_unknown_keys(s, {"b", "eta"}, "sweep");
        c.sweep.b = detail::get_or<std::vector<std::size_t>>(s, "b", {});
        c.sweep.eta = detail::get_or<std::vector<double>>(s, "eta", {});
        for (auto b : c.sweep.b)
            if (b < 1) throw std::invalid_argument("sweep: b must be at least 1");
        for (auto e : c.sweep.eta)
            if (!(e > 0.0)) throw std::invalid_argument("sweep: eta must be positive");
    }
    if (j.contains("output")) {
        const auto& out = j["output"];
        reject_unknown_keys(out, {"dir", "prefix"}, "output");
        c.out_dir = detail::get_or<std::string>(out, "dir", c.out_dir);
        c.prefix = detail::get_or<std::string>(out, "prefix", c.prefix);
    }
    return c;
}

/// Problem instance built from a spec; stochastic problems keep their distribution.
struct BuiltProblem {
    std::string name;
    std::size_t dim = 0;
    std::variant<Objective, NoisyGlm, LowerBoundDistribution> impl;
    /// Minimum of the (expected) objective when known.
    std::optional<double> reference;
    std::optional<Point> minimizer;
    std::optional<FeasibleRegion> domain;

    bool stochastic() const { return !std::holds_alternative<Objective>(impl); }
};

/// Builds the problem; random instances draw from `rng`.
inline BuiltProblem build_problem(const ProblemSpec& spec, Stream& rng)
{
    detail::check_problem_params(spec);
    const auto& p = spec.params;
    using detail::get_or;
    auto from_objective = [&](auto f, std::optional<Point> xstar) {
        BuiltProblem b{spec.name, f.dim(), Objective::from(f), std::nullopt, xstar, domain_of(f)};
        if (xstar) b.reference = f.value(*xstar);
        return b;
    };

    if (spec.name == "g") {
        auto g = make_g();
        return from_objective(g, g.minimizer());
    }
    if (spec.name == "cliff_plateau") {
        CliffPlateauParams cp;
        cp.valley_width = get_or(p, "valley_width", cp.valley_width);
        cp.cliff_height = get_or(p, "cliff_height", cp.cliff_height);
        cp.plateau_slope = get_or(p, "plateau_slope", cp.plateau_slope);
        cp.cliff_slope = get_or(p, "cliff_slope", cp.cliff_slope);
        cp.valley_slope = get_or(p, "valley_slope", cp.valley_slope);
        auto f = make_cliff_plateau(cp);
        return from_objective(f, f.minimizer());
    }
    if (spec.name == "cone") {
        Cone f(p.contains("center") ? point_from_json(p["center"], "center") : Point::Zero(2));
        return from_objective(f, f.minimizer());
    }
    if (spec.name == "quadratic") {
        Quadratic f(p.contains("center") ? point_from_json(p["center"], "center") : Point::Zero(2),
                    get_or(p, "scale", 1.0));
        return from_objective(f, f.minimizer());
    }
    if (spec.name == "glm") {
        auto [data, f] = make_idealized_glm(rng, get_or<std::size_t>(p, "d", 3), get_or<std::size_t>(p, "m", 100),
                                            get_or(p, "W", 2.0));
        return from_objective(f, data.planted);
    }
    if (spec.name == "counterexample") {
        auto [data, f] = make_nonqc_counterexample();
        return from_objective(f, data.planted);
    }
    if (spec.name == "perceptron") {
        auto [data, f] = make_perceptron(rng, get_or<std::size_t>(p, "d", 5), get_or<std::size_t>(p, "m", 200),
                                         get_or(p, "gamma", 0.1));
        return from_objective(f, data.planted);
    }
    if (spec.name == "noisy_glm") {
        auto dist = make_noisy_glm(rng, get_or<std::size_t>(p, "d", 5), get_or(p, "W", 2.0),
                                   get_or(p, "noise_level", 1.0), get_or<std::size_t>(p, "pool_size", 1000));
        const auto e = dist.expected();
        BuiltProblem b{spec.name, dist.dim(), dist, e.value(e.minimizer()), e.minimizer(), std::nullopt};
        return b;
    }
    if (spec.name == "lower_bound") {
        LowerBoundDistribution dist(get_or(p, "eps", 0.1));
        const auto e = dist.expected();
        return BuiltProblem{spec.name, 1, dist, e.min_value(), e.minimizer(), std::nullopt};
    }
    throw std::invalid_argument("unknown problem '" + spec.name + "'");
}

/// One optimizer run: the trace plus expected-objective values for stochastic problems.
struct RunOutput {
    OptTrace trace;
    std::vector<double> expected; ///< empty for deterministic problems
    double wall_seconds = 0.0;
};

namespace detail {

template <class F>
OptTrace run_deterministic(const F& f, const OptimizerSpec& o, const NgdConfig& ncfg, const GradientConfig& gcfg)
{
    if (o.name == "ngd") return ngd(f, ncfg);
    if (o.name == "ngd_oracle") {
        if constexpr (std::same_as<F, Objective> || DirectionOracleObjective<F>)
            return ngd_with_oracle(f, ncfg);
        else
            throw std::invalid_argument("ngd_oracle: problem has no direction oracle");
    }
    return gd(f, gcfg);
}

template <class S>
OptTrace run_stochastic(const S& dist, const OptimizerSpec& o, const SngdConfig& scfg, const GradientConfig& gcfg)
{
    if (o.name == "sngd") return sngd(dist, scfg);
    if (o.name == "msgd") return msgd(dist, gcfg);
    if (o.name == "sgd") return sgd(dist, gcfg);
    return nesterov(dist, gcfg);
}

} // namespace detail

/**
 * Runs the configured optimizer once with minibatch size `b` and step `eta`.
 * Stochastic optimizers on deterministic problems see a zero-variance
 * distribution; deterministic optimizers on stochastic problems see the
 * expected objective. The region defaults to the problem domain.
 */
inline RunOutput run_experiment_once(const BuiltProblem& p, const OptimizerSpec& o, std::size_t b, double eta,
                                     const Stream& stream)
{
    const auto t0 = std::chrono::steady_clock::now();
    SngdConfig scfg;
    scfg.T = o.T;
    scfg.eta = eta;
    scfg.x1 = o.x1 ? *o.x1 : Point::Zero(static_cast<Eigen::Index>(p.dim));
    scfg.region = o.region ? o.region : p.domain;
    scfg.grad_tol = o.grad_tol;
    scfg.b = b;
    scfg.stream = stream;
    const NgdConfig& ncfg = scfg;

    GradientConfig gcfg;
    gcfg.T = o.T;
    gcfg.x1 = scfg.x1;
    gcfg.schedule = o.schedule;
    gcfg.b = b;
    gcfg.stream = stream;

    RunOutput out;
    const bool stochastic_opt = is_stochastic_optimizer(o.name);
    std::visit(
        [&](const auto& impl) {
            using T = std::decay_t<decltype(impl)>;
            if constexpr (std::same_as<T, Objective>) {
                if (stochastic_opt)
                    out.trace = detail::run_stochastic(Degenerate<Objective>(impl, 0.0), o, scfg, gcfg);
                else
                    out.trace = detail::run_deterministic(impl, o, ncfg, gcfg);
            } else {
                if (stochastic_opt)
                    out.trace = detail::run_stochastic(impl, o, scfg, gcfg);
                else
                    out.trace = detail::run_deterministic(impl.expected(), o, ncfg, gcfg);
                out.expected = expected_values(impl, out.trace);
            }
        },
        p.impl);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace slqc::io
