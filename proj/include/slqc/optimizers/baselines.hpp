#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/stochastic.hpp"
#include "slqc/core/trace.hpp"
#include "slqc/optimizers/config.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace slqc {

namespace detail {

inline bool record_or_abort(OptTrace& tr, const Point& x, double value, const Point& g, std::int64_t id)
{
    if (!std::isfinite(value) || !g.allFinite() || !x.allFinite()) {
        tr.aborted = true;
        tr.abort_reason = "diverged: non-finite value or gradient at step " + std::to_string(tr.size());
        return false;
    }
    tr.iterates.push_back(x);
    tr.values.push_back(value);
    tr.grad_norms.push_back(g.norm());
    tr.batch_ids.push_back(id);
    return true;
}

inline void finalize(OptTrace& tr, const Point& fallback)
{
    if (tr.values.empty()) {
        tr.returned = fallback;
        tr.returned_index = 0;
        return;
    }
    tr.returned_index = argmin_index(tr.values);
    tr.returned = tr.iterates[tr.returned_index];
}

} // namespace detail

/// Plain gradient descent x_{t+1} = x_t - eta_t grad f(x_t) (heavy-ball when momentum > 0).
template <DifferentiableObjective F>
OptTrace gd(const F& f, const GradientConfig& cfg)
{
    cfg.validate(f.dim());
    OptTrace tr;
    Point x = cfg.x1;
    Point v = Point::Zero(x.size());
    for (std::size_t t = 0; t < cfg.T; ++t) {
        const double value = f.value(x);
        const Point g = f.gradient(x);
        if (!detail::record_or_abort(tr, x, value, g, -1)) break;
        v = cfg.schedule.momentum * v - cfg.schedule.eta(t) * g;
        x += v;
    }
    detail::finalize(tr, cfg.x1);
    return tr;
}

/// Minibatch SGD: steps along the mean gradient of b fresh draws (heavy-ball when momentum > 0).
template <StochasticObjective S>
OptTrace msgd(const S& dist, const GradientConfig& cfg)
{
    cfg.validate(dist.dim());
    OptTrace tr;
    Stream rng = cfg.stream;
    Point x = cfg.x1;
    Point v = Point::Zero(x.size());
    for (std::size_t t = 0; t < cfg.T; ++t) {
        const auto batch = dist.sample_minibatch(rng, cfg.b);
        const double value = batch.value(x);
        const Point g = batch.gradient(x);
        if (!detail::record_or_abort(tr, x, value, g, static_cast<std::int64_t>(t))) break;
        v = cfg.schedule.momentum * v - cfg.schedule.eta(t) * g;
        x += v;
    }
    detail::finalize(tr, cfg.x1);
    return tr;
}

template <StochasticObjective S>
OptTrace sgd(const S& dist, GradientConfig cfg)
{
    cfg.b = 1;
    return msgd(dist, cfg);
}

/**
 * Stochastic Nesterov momentum in look-ahead form:
 *   v_{t+1} = mu v_t - eta_t grad f_t(x_t + mu v_t),  x_{t+1} = x_t + v_{t+1}.
 * values[t] is f_t(x_t) on the same minibatch.
 */
template <StochasticObjective S>
OptTrace nesterov(const S& dist, const GradientConfig& cfg)
{
    cfg.validate(dist.dim());
    OptTrace tr;
    Stream rng = cfg.stream;
    const double mu = cfg.schedule.momentum;
    Point x = cfg.x1;
    Point v = Point::Zero(x.size());
    for (std::size_t t = 0; t < cfg.T; ++t) {
        const auto batch = dist.sample_minibatch(rng, cfg.b);
        const double value = batch.value(x);
        const Point g = batch.gradient(Point(x + mu * v));
        if (!detail::record_or_abort(tr, x, value, g, static_cast<std::int64_t>(t))) break;
        v = mu * v - cfg.schedule.eta(t) * g;
        x += v;
    }
    detail::finalize(tr, cfg.x1);
    return tr;
}

} // namespace slqc
