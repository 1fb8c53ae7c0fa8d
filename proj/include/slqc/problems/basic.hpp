#pragma once

#include "slqc/core/objective.hpp"

#include <cmath>

namespace slqc {

/// f(x) = ||x - center||, the convex 1-Lipschitz cone.
class Cone {
public:
    explicit Cone(Point center) : center_(std::move(center)) {}
    std::size_t dim() const { return dim_of(center_); }
    double value(const Point& x) const { return (x - center_).norm(); }
    Point gradient(const Point& x) const
    {
        Point d = x - center_;
        const double n = d.norm();
        if (n == 0.0) return Point::Zero(d.size());
        return d / n;
    }
    const Point& minimizer() const { return center_; }

private:
    Point center_;
};

/// f(x) = scale * ||x - center||^2.
class Quadratic {
public:
    explicit Quadratic(Point center, double scale = 1.0) : center_(std::move(center)), scale_(scale) {}
    std::size_t dim() const { return dim_of(center_); }
    double value(const Point& x) const { return scale_ * (x - center_).squaredNorm(); }
    Point gradient(const Point& x) const { return (2.0 * scale_) * (x - center_); }
    const Point& minimizer() const { return center_; }

private:
    Point center_;
    double scale_;
};

/// f(x) = log(1 + ||x - center||^2): smooth with beta = 2, quasi-convex, not convex.
class SmoothBowl {
public:
    explicit SmoothBowl(Point center) : center_(std::move(center)) {}
    std::size_t dim() const { return dim_of(center_); }
    double value(const Point& x) const { return std::log1p((x - center_).squaredNorm()); }
    Point gradient(const Point& x) const
    {
        Point d = x - center_;
        return (2.0 / (1.0 + d.squaredNorm())) * d;
    }
    const Point& minimizer() const { return center_; }

private:
    Point center_;
};

class Constant {
public:
    Constant(std::size_t dim, double c) : dim_(dim), c_(c) {}
    std::size_t dim() const { return dim_; }
    double value(const Point&) const { return c_; }
    Point gradient(const Point&) const { return Point::Zero(static_cast<Eigen::Index>(dim_)); }

private:
    std::size_t dim_;
    double c_;
};

} // namespace slqc
