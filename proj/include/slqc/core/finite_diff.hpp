#pragma once

#include "slqc/core/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace slqc {

/// Central-difference gradient, (f(x + h e_i) - f(x - h e_i)) / 2h per coordinate.
template <DifferentiableObjective F>
Point finite_diff_gradient(const F& f, const Point& x, double h = 1e-5)
{
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_gradient: h must be positive");
    require_dim(x, f.dim(), "finite_diff_gradient");
    Point g(x.size());
    Point probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = f.value(probe);
        probe[i] = x[i] - h;
        const double down = f.value(probe);
        probe[i] = x[i];
        if (!std::isfinite(up) || !std::isfinite(down))
            throw std::domain_error("finite_diff_gradient: non-finite function value");
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

} // namespace slqc
