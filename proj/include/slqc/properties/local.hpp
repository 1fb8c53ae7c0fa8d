#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace slqc {

namespace detail {

// Both bounds can hold with equality (quadratics), so allow rounding-level slack.
inline bool exceeds(double lhs, double rhs) { return lhs > rhs * (1.0 + 1e-9) + 1e-14; }

} // namespace detail

struct LocalPairViolation {
    Point x;
    Point y;
    double lhs;
    double rhs;
};

struct LocalCheckReport {
    bool holds = true;
    std::size_t trials = 0;
    std::optional<LocalPairViolation> counterexample;
};

/// Sampled (G, r, z)-local-Lipschitz check: |f(x) - f(y)| <= G ||x - y|| on B(z, r).
template <DifferentiableObjective F>
LocalCheckReport check_local_lipschitz(const F& f, const Point& z, double radius, double G, std::size_t trials,
                                       Stream& rng)
{
    if (!(radius > 0.0) || !(G >= 0.0)) throw std::invalid_argument("check_local_lipschitz: bad radius or G");
    require_dim(z, f.dim(), "check_local_lipschitz");
    LocalCheckReport r;
    for (std::size_t i = 0; i < trials; ++i) {
        ++r.trials;
        Point x = rng.in_ball(z, radius);
        Point y = rng.in_ball(z, radius);
        const double lhs = std::abs(f.value(x) - f.value(y));
        const double rhs = G * (x - y).norm();
        if (detail::exceeds(lhs, rhs)) {
            r.holds = false;
            r.counterexample = LocalPairViolation{std::move(x), std::move(y), lhs, rhs};
            return r;
        }
    }
    return r;
}

/// Sampled (beta, r, z)-local-smoothness: |f(x) - f(y) - <grad f(y), x - y>| <= beta/2 ||x - y||^2 on B(z, r).
template <DifferentiableObjective F>
LocalCheckReport check_local_smooth(const F& f, const Point& z, double radius, double beta, std::size_t trials,
                                    Stream& rng)
{
    if (!(radius > 0.0) || !(beta >= 0.0)) throw std::invalid_argument("check_local_smooth: bad radius or beta");
    require_dim(z, f.dim(), "check_local_smooth");
    LocalCheckReport r;
    for (std::size_t i = 0; i < trials; ++i) {
        ++r.trials;
        Point x = rng.in_ball(z, radius);
        Point y = rng.in_ball(z, radius);
        const double lhs = std::abs(f.value(x) - f.value(y) - Point(f.gradient(y)).dot(x - y));
        const double rhs = 0.5 * beta * (x - y).squaredNorm();
        if (detail::exceeds(lhs, rhs)) {
            r.holds = false;
            r.counterexample = LocalPairViolation{std::move(x), std::move(y), lhs, rhs};
            return r;
        }
    }
    return r;
}

} // namespace slqc
