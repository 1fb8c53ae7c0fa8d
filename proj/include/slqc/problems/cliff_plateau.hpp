#pragma once

#include "slqc/core/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace slqc {

struct CliffPlateauParams {
    double valley_width = 0.5;
    double cliff_height = 1.0;
    double plateau_slope = 1e-6;
    double cliff_slope = 1e3;
    double valley_slope = 1.0;
};

/**
 * Symmetric piecewise-linear 1-D function h(|x|):
 *
 *   |x| <= a            valley,  slope valley_slope      (a = valley_width / 2)
 *   a < |x| <= a + w    cliff,   slope cliff_slope       (w = cliff_height / cliff_slope)
 *   |x| > a + w         plateau, slope plateau_slope
 *
 * Minimum 0 at x = 0, strictly quasi-convex when plateau_slope > 0. At the
 * kinks the slope of the inner segment is returned.
 */
class CliffPlateau {
public:
    explicit CliffPlateau(CliffPlateauParams p = {}) : p_(p)
    {
        if (!(p.valley_width > 0.0)) throw std::invalid_argument("cliff_plateau: valley_width must be positive");
        if (!(p.cliff_height > 0.0) || !(p.cliff_slope > 0.0))
            throw std::invalid_argument("cliff_plateau: cliff height and slope must be positive");
        if (!(p.plateau_slope >= 0.0) || !(p.valley_slope > 0.0))
            throw std::invalid_argument("cliff_plateau: slopes must be non-negative");
    }

    std::size_t dim() const { return 1; }
    const CliffPlateauParams& params() const { return p_; }
    double half_valley() const { return 0.5 * p_.valley_width; }
    double cliff_width() const { return p_.cliff_height / p_.cliff_slope; }

    double value(const Point& x) const
    {
        require_dim(x, 1, "cliff_plateau");
        const double r = std::abs(x[0]);
        const double a = half_valley();
        const double w = cliff_width();
        const double valley_top = p_.valley_slope * a;
        if (r <= a) return p_.valley_slope * r;
        if (r <= a + w) return valley_top + p_.cliff_slope * (r - a);
        return valley_top + p_.cliff_height + p_.plateau_slope * (r - a - w);
    }

    Point gradient(const Point& x) const
    {
        require_dim(x, 1, "cliff_plateau");
        const double r = std::abs(x[0]);
        const double a = half_valley();
        double slope;
        if (r == 0.0)
            slope = 0.0;
        else if (r <= a)
            slope = p_.valley_slope;
        else if (r <= a + cliff_width())
            slope = p_.cliff_slope;
        else
            slope = p_.plateau_slope;
        Point g(1);
        g[0] = std::copysign(slope, x[0]);
        if (r == 0.0) g[0] = 0.0;
        return g;
    }

    Point minimizer() const { return Point::Zero(1); }
    double min_value() const { return 0.0; }

private:
    CliffPlateauParams p_;
};

inline CliffPlateau make_cliff_plateau(CliffPlateauParams p = {}) { return CliffPlateau(p); }

} // namespace slqc
