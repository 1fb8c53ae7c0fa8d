#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/problems/sigmoid.hpp"

namespace slqc {

/**
 * g(x) = sigma(x_1) + sigma(x_2) on the box [-10, 10]^2.
 *
 * Unimodal with its minimum at the corner (-10, -10), not quasi-convex
 * (the 1.2-sublevel set is not convex), yet (eps, 1, x*)-SLQC everywhere in
 * the box for eps in (0, 1].
 */
class SigmoidSum2 {
public:
    std::size_t dim() const { return 2; }

    double value(const Point& x) const
    {
        require_dim(x, 2, "g");
        return sigmoid(x[0]) + sigmoid(x[1]);
    }

    Point gradient(const Point& x) const
    {
        require_dim(x, 2, "g");
        Point g(2);
        g[0] = sigmoid_derivative(x[0]);
        g[1] = sigmoid_derivative(x[1]);
        return g;
    }

    FeasibleRegion domain() const { return FeasibleRegion::cube(2, -10.0, 10.0); }
    Point minimizer() const { return make_point({-10.0, -10.0}); }
    double min_value() const { return value(minimizer()); }
};

inline SigmoidSum2 make_g() { return {}; }

} // namespace slqc
