#pragma once

#include "slqc/core/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace slqc {

struct SlqcQuery {
    double eps;
    double kappa;
    Point z; ///< reference point, usually the minimizer
    Point x; ///< query point
    bool use_oracle = false;

    void validate() const
    {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("SlqcQuery: eps must be positive");
        if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("SlqcQuery: kappa must be positive");
        require_dim(x, dim_of(z), "SlqcQuery");
    }
};

enum class SlqcClause { none = 0, optimal = 1, descent = 2 };

struct SlqcReport {
    bool holds = false;
    SlqcClause clause = SlqcClause::none;
    /// optimal:  eps - (f(x) - f(z)).
    /// descent/none: -(<g, z - x> + (eps/kappa) ||g||), the slack of the worst y in the ball.
    double margin = 0.0;
    double grad_norm = 0.0;
    double gap = 0.0; ///< f(x) - f(z)
};

/// max over y in B(z, r) of <g, y - x>, attained at y = z + r g/||g||.
inline double ball_max_inner(const Point& g, const Point& z, const Point& x, double r)
{
    return g.dot(z - x) + r * g.norm();
}

namespace detail {

inline SlqcReport decide_slqc(double gap, const Point& g, const SlqcQuery& q, double grad_tol)
{
    SlqcReport r;
    r.gap = gap;
    r.grad_norm = g.norm();
    if (gap <= q.eps) {
        r.holds = true;
        r.clause = SlqcClause::optimal;
        r.margin = q.eps - gap;
        return r;
    }
    const double worst = ball_max_inner(g, q.z, q.x, q.eps / q.kappa);
    r.margin = -worst;
    if (r.grad_norm > grad_tol && worst <= 0.0) {
        r.holds = true;
        r.clause = SlqcClause::descent;
    }
    return r;
}

} // namespace detail

/**
 * Decides (eps, kappa, z)-SLQC of f at x. The "all y in the ball" clause is
 * decided exactly: <g, y - x> is linear in y, so its maximum over B(z,
 * eps/kappa) is <g, z - x> + (eps/kappa)||g||. Gradients with norm <=
 * grad_tol count as vanishing.
 */
template <DifferentiableObjective F>
SlqcReport check_slqc(const F& f, const SlqcQuery& q, double grad_tol = 1e-12)
{
    q.validate();
    require_dim(q.x, f.dim(), "check_slqc");
    const Point g = q.use_oracle ? direction_of(f, q.x) : Point(f.gradient(q.x));
    return detail::decide_slqc(f.value(q.x) - f.value(q.z), g, q, grad_tol);
}

/// SLQC with respect to the direction oracle G(x) in place of the gradient.
template <DifferentiableObjective F>
SlqcReport check_slqc_oracle(const F& f, SlqcQuery q, double grad_tol = 1e-12)
{
    q.use_oracle = true;
    return check_slqc(f, q, grad_tol);
}

struct SlqcParameters {
    double kappa;
    double ball_radius;
};

/// Strict quasi-convexity plus (G, eps/G, x*)-local-Lipschitzness gives (eps, G, x*)-SLQC.
inline SlqcParameters derive_slqc_from_lipschitz(double G, double eps)
{
    if (!(G > 0.0) || !(eps > 0.0)) throw std::invalid_argument("derive_slqc_from_lipschitz: G and eps must be positive");
    return {G, eps / G};
}

} // namespace slqc
