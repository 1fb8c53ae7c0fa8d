#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/stochastic.hpp"
#include "slqc/core/trace.hpp"
#include "slqc/optimizers/config.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace slqc {

/// Outcome of an observed run; the argmin is tracked even when nothing is recorded.
struct RunSummary {
    Point best;
    std::size_t best_index = 0;
    double best_value = 0.0;
    std::size_t steps = 0;
    bool aborted = false;
    std::string abort_reason;
    Point last;
};

/// Result of one oracle query at the current iterate.
struct Evaluation {
    double value;
    Point direction;
    std::int64_t batch_id;
};

/// Observer that keeps nothing and never stops the run.
struct NullObserver {
    bool operator()(std::size_t, const Point&, double, const Point&, double, std::int64_t) const { return true; }
};

namespace detail {

/**
 * x_{t+1} = P(x_t - eta * d_t / ||d_t||) for t = 1..T, where d_t comes from
 * `evaluate`. A step with ||d_t|| <= grad_tol records the iterate and
 * leaves it in place. The observer sees every recorded iterate and may stop
 * the run by returning false.
 */
template <class Evaluate, class Observer>
RunSummary normalized_loop(const NgdConfig& cfg, Evaluate&& evaluate, Observer&& observe)
{
    RunSummary out;
    Point x = cfg.region ? cfg.region->project(cfg.x1) : cfg.x1;
    out.best = x;
    for (std::size_t t = 0; t < cfg.T; ++t) {
        Evaluation e = evaluate(t, x);
        if (!std::isfinite(e.value) || !e.direction.allFinite()) {
            out.aborted = true;
            out.abort_reason = "non-finite value or gradient at step " + std::to_string(t);
            break;
        }
        const double n = e.direction.norm();
        if (out.steps == 0 || e.value < out.best_value) {
            out.best = x;
            out.best_index = t;
            out.best_value = e.value;
        }
        ++out.steps;
        if (!observe(t, x, e.value, e.direction, n, e.batch_id)) break;
        if (n <= cfg.grad_tol) continue;
        x -= cfg.eta * (e.direction / n);
        if (cfg.region) x = cfg.region->project(x);
    }
    out.last = std::move(x);
    return out;
}

inline OptTrace finish(TraceRecorder& rec, RunSummary&& s)
{
    OptTrace tr = std::move(rec.trace());
    tr.returned = std::move(s.best);
    tr.returned_index = s.best_index;
    tr.aborted = s.aborted;
    tr.abort_reason = std::move(s.abort_reason);
    return tr;
}

} // namespace detail

/// Normalized gradient descent with an observer (no trace storage).
template <DifferentiableObjective F, class Observer>
RunSummary ngd_run(const F& f, const NgdConfig& cfg, Observer&& observe)
{
    cfg.validate(f.dim());
    return detail::normalized_loop(
        cfg, [&](std::size_t, const Point& x) { return Evaluation{f.value(x), Point(f.gradient(x)), -1}; },
        std::forward<Observer>(observe));
}

/// Normalized gradient descent; returns the iterate of smallest f among x_1..x_T.
template <DifferentiableObjective F>
OptTrace ngd(const F& f, const NgdConfig& cfg)
{
    TraceRecorder rec(cfg.T);
    return detail::finish(rec, ngd_run(f, cfg, rec));
}

/// NGD steering by the direction oracle G(x) instead of the gradient.
template <DifferentiableObjective F, class Observer>
RunSummary ngd_with_oracle_run(const F& f, const NgdConfig& cfg, Observer&& observe)
{
    if constexpr (std::same_as<F, Objective>) {
        if (!f.has_direction_oracle()) throw std::invalid_argument("ngd_with_oracle: objective has no direction oracle");
    } else {
        static_assert(DirectionOracleObjective<F>, "ngd_with_oracle needs a direction oracle");
    }
    cfg.validate(f.dim());
    return detail::normalized_loop(
        cfg, [&](std::size_t, const Point& x) { return Evaluation{f.value(x), Point(f.direction(x)), -1}; },
        std::forward<Observer>(observe));
}

template <DifferentiableObjective F>
OptTrace ngd_with_oracle(const F& f, const NgdConfig& cfg)
{
    TraceRecorder rec(cfg.T);
    return detail::finish(rec, ngd_with_oracle_run(f, cfg, rec));
}

/**
 * Stochastic NGD. Every step draws a fresh minibatch of size b from the
 * config stream and moves along its normalized gradient; a vanishing
 * minibatch gradient leaves the iterate in place and the next step draws
 * again. values[t] is f_t(x_t), so `returned` is the argmin over minibatch
 * values, not over the expected objective.
 */
template <StochasticObjective S, class Observer>
RunSummary sngd_run(const S& dist, const SngdConfig& cfg, Observer&& observe)
{
    cfg.validate(dist.dim());
    Stream rng = cfg.stream;
    return detail::normalized_loop(
        cfg,
        [&](std::size_t t, const Point& x) {
            const auto batch = dist.sample_minibatch(rng, cfg.b);
            return Evaluation{batch.value(x), Point(batch.gradient(x)), static_cast<std::int64_t>(t)};
        },
        std::forward<Observer>(observe));
}

template <StochasticObjective S>
OptTrace sngd(const S& dist, const SngdConfig& cfg)
{
    TraceRecorder rec(cfg.T);
    return detail::finish(rec, sngd_run(dist, cfg, rec));
}

/// Re-evaluates every iterate on the expected objective. Reporting only; `returned` is untouched.
template <HasExpected S>
std::vector<double> expected_values(const S& dist, const OptTrace& trace)
{
    const auto f = dist.expected();
    std::vector<double> out;
    out.reserve(trace.iterates.size());
    for (const auto& x : trace.iterates) out.push_back(f.value(x));
    return out;
}

} // namespace slqc
