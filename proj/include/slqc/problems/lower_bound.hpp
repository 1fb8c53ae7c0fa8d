#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace slqc {

/**
 * One-dimensional distribution over convex losses on which SNGD with
 * minibatch size 0.2/eps fails:
 *
 *   psi(x) = -0.5 eps x                     with probability 1 - eps  (linear)
 *   psi(x) = (1 - 0.5 eps) max{x + 3, 0}    with probability eps      (hinge)
 *
 * E psi has its minimum at x* = -3, slope 0.5 eps to the right and
 * -0.5 eps (1 - eps) to the left. The hinge subgradient at the kink is 0.
 */
class LowerBoundBatch {
public:
    LowerBoundBatch(double eps, std::size_t linear, std::size_t hinge)
        : eps_(eps), linear_(linear), hinge_(hinge)
    {
        if (linear + hinge == 0) throw std::invalid_argument("LowerBoundBatch: empty batch");
    }

    std::size_t dim() const { return 1; }
    std::size_t size() const { return linear_ + hinge_; }
    std::size_t hinge_count() const { return hinge_; }
    std::size_t linear_count() const { return linear_; }

    double value(const Point& x) const
    {
        const double lin = -0.5 * eps_ * x[0];
        const double hin = (1.0 - 0.5 * eps_) * std::max(x[0] + 3.0, 0.0);
        return (static_cast<double>(linear_) * lin + static_cast<double>(hinge_) * hin) /
               static_cast<double>(size());
    }

    Point gradient(const Point& x) const
    {
        const double lin = -0.5 * eps_;
        const double hin = x[0] > -3.0 ? 1.0 - 0.5 * eps_ : 0.0;
        Point g(1);
        g[0] = (static_cast<double>(linear_) * lin + static_cast<double>(hinge_) * hin) /
               static_cast<double>(size());
        return g;
    }

private:
    double eps_;
    std::size_t linear_;
    std::size_t hinge_;
};

class LowerBoundExpected {
public:
    explicit LowerBoundExpected(double eps) : eps_(eps) {}
    std::size_t dim() const { return 1; }
    double value(const Point& x) const
    {
        return (1.0 - eps_) * (-0.5 * eps_ * x[0]) + eps_ * (1.0 - 0.5 * eps_) * std::max(x[0] + 3.0, 0.0);
    }
    Point gradient(const Point& x) const
    {
        Point g(1);
        g[0] = -0.5 * eps_ * (1.0 - eps_) + (x[0] > -3.0 ? eps_ * (1.0 - 0.5 * eps_) : 0.0);
        return g;
    }
    Point minimizer() const { return Point::Constant(1, -3.0); }
    double min_value() const { return value(minimizer()); }

private:
    double eps_;
};

class LowerBoundDistribution {
public:
    explicit LowerBoundDistribution(double eps) : eps_(eps)
    {
        if (!(eps > 0.0 && eps <= 0.1))
            throw std::invalid_argument("lower-bound distribution requires eps in (0, 0.1]");
    }

    std::size_t dim() const { return 1; }
    double eps() const { return eps_; }

    /// The linear component is unbounded on R.
    double bound() const { return std::numeric_limits<double>::infinity(); }

    /// True when the draw is the hinge component.
    bool draw_is_hinge(Stream& rng) const { return rng.bernoulli(eps_); }

    LowerBoundBatch sample_minibatch(Stream& rng, std::size_t b) const
    {
        if (b == 0) throw std::invalid_argument("minibatch size must be at least 1");
        std::size_t hinge = 0;
        for (std::size_t i = 0; i < b; ++i) hinge += draw_is_hinge(rng) ? 1 : 0;
        return LowerBoundBatch(eps_, b - hinge, hinge);
    }

    LowerBoundExpected expected() const { return LowerBoundExpected(eps_); }

    /// Whether x is eps-optimal for E psi; relative slack absorbs lattice rounding (10 * 0.1 != 1).
    bool is_eps_optimal(double x) const
    {
        const auto e = expected();
        const double gap = e.value(Point::Constant(1, x)) - e.min_value();
        return gap <= eps_ * (1.0 + 1e-9);
    }

private:
    double eps_;
};

inline LowerBoundDistribution make_lower_bound_distribution(double eps) { return LowerBoundDistribution(eps); }

} // namespace slqc
