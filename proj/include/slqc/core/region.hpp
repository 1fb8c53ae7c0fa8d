#pragma once

#include "slqc/core/point.hpp"

#include <limits>
#include <stdexcept>
#include <variant>

namespace slqc {

struct Ball {
    Point center;
    double radius;
};

struct Box {
    Point lower;
    Point upper;
};

/// Closed convex feasible set with an exact Euclidean projection.
class FeasibleRegion {
public:
    static FeasibleRegion ball(Point center, double radius)
    {
        require_finite(center, "ball center");
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::invalid_argument("ball radius must be positive and finite");
        return FeasibleRegion(Ball{std::move(center), radius});
    }

    static FeasibleRegion box(Point lower, Point upper)
    {
        require_dim(upper, dim_of(lower), "box bounds");
        require_finite(lower, "box lower");
        require_finite(upper, "box upper");
        if ((lower.array() > upper.array()).any())
            throw std::invalid_argument("box lower bound exceeds upper bound");
        return FeasibleRegion(Box{std::move(lower), std::move(upper)});
    }

    /// Axis-aligned cube [lo, hi]^dim.
    static FeasibleRegion cube(std::size_t dim, double lo, double hi)
    {
        const auto n = static_cast<Eigen::Index>(dim);
        return box(Point::Constant(n, lo), Point::Constant(n, hi));
    }

    std::size_t dim() const
    {
        return std::visit([](const auto& r) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Ball>)
                return dim_of(r.center);
            else
                return dim_of(r.lower);
        }, shape_);
    }

    bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
    bool is_box() const { return std::holds_alternative<Box>(shape_); }
    const Ball& as_ball() const { return std::get<Ball>(shape_); }
    const Box& as_box() const { return std::get<Box>(shape_); }

    bool contains(const Point& x, double tol = 0.0) const
    {
        require_dim(x, dim(), "FeasibleRegion::contains");
        if (const auto* b = std::get_if<Ball>(&shape_))
            return (x - b->center).norm() <= b->radius + tol;
        const auto& bx = std::get<Box>(shape_);
        return ((x.array() >= bx.lower.array() - tol) && (x.array() <= bx.upper.array() + tol)).all();
    }

    /// Euclidean projection; members are returned unchanged.
    Point project(const Point& x) const
    {
        require_dim(x, dim(), "FeasibleRegion::project");
        if (const auto* b = std::get_if<Ball>(&shape_)) {
            Point offset = x - b->center;
            const double n = offset.norm();
            // Points within rounding of the sphere count as members so that
            // projecting twice is exactly the identity on the second call.
            if (n <= b->radius * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) return x;
            return b->center + (b->radius / n) * offset;
        }
        const auto& bx = std::get<Box>(shape_);
        return x.cwiseMax(bx.lower).cwiseMin(bx.upper);
    }

    /// Random point of the region (used by sampling-based checkers).
    template <class Rng>
    Point sample(Rng& rng) const
    {
        if (const auto* b = std::get_if<Ball>(&shape_)) return rng.in_ball(b->center, b->radius);
        const auto& bx = std::get<Box>(shape_);
        return rng.in_box(bx.lower, bx.upper);
    }

private:
    explicit FeasibleRegion(std::variant<Ball, Box> s) : shape_(std::move(s)) {}

    std::variant<Ball, Box> shape_;
};

inline Point project(const FeasibleRegion& region, const Point& x) { return region.project(x); }

} // namespace slqc
