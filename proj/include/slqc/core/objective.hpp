#pragma once

#include "slqc/core/point.hpp"
#include "slqc/core/region.hpp"

#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

namespace slqc {

/// Deterministic value/gradient queries over R^dim.
template <class F>
concept DifferentiableObjective = requires(const F& f, const Point& x) {
    { f.dim() } -> std::convertible_to<std::size_t>;
    { f.value(x) } -> std::convertible_to<double>;
    { f.gradient(x) } -> std::convertible_to<Point>;
};

/// Objective that also exposes a direction oracle standing in for the gradient.
template <class F>
concept DirectionOracleObjective = DifferentiableObjective<F> && requires(const F& f, const Point& x) {
    { f.direction(x) } -> std::convertible_to<Point>;
};

/// Direction query: the oracle when the type provides one, the gradient otherwise.
template <DifferentiableObjective F>
Point direction_of(const F& f, const Point& x)
{
    if constexpr (DirectionOracleObjective<F>)
        return f.direction(x);
    else
        return f.gradient(x);
}

template <DifferentiableObjective F>
std::optional<FeasibleRegion> domain_of(const F& f)
{
    if constexpr (requires { f.domain(); })
        return f.domain();
    else
        return std::nullopt;
}

/**
 * Type-erased objective used where problems are chosen at run time (CLI,
 * batch checks). Hot loops take the concrete problem types directly.
 */
class Objective {
public:
    using ValueFn = std::function<double(const Point&)>;
    using VectorFn = std::function<Point(const Point&)>;

    Objective(std::size_t dim, ValueFn value, VectorFn gradient,
              std::optional<VectorFn> direction = std::nullopt,
              std::optional<FeasibleRegion> domain = std::nullopt)
        : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)),
          direction_(std::move(direction)), domain_(std::move(domain))
    {
        if (dim_ == 0) throw std::invalid_argument("Objective: dimension must be positive");
        if (domain_ && domain_->dim() != dim_)
            throw std::invalid_argument("Objective: domain dimension mismatch");
    }

    /// Wraps any concrete objective; its direction oracle and domain carry over.
    template <DifferentiableObjective F>
        requires(!std::same_as<std::decay_t<F>, Objective>)
    static Objective from(F f)
    {
        auto shared = std::make_shared<const F>(std::move(f));
        std::optional<VectorFn> dir;
        if constexpr (DirectionOracleObjective<F>)
            dir = [shared](const Point& x) { return Point(shared->direction(x)); };
        return Objective(
            shared->dim(), [shared](const Point& x) { return static_cast<double>(shared->value(x)); },
            [shared](const Point& x) { return Point(shared->gradient(x)); }, std::move(dir),
            domain_of(*shared));
    }

    std::size_t dim() const { return dim_; }

    double value(const Point& x) const
    {
        require_dim(x, dim_, "Objective::value");
        return value_(x);
    }

    Point gradient(const Point& x) const
    {
        require_dim(x, dim_, "Objective::gradient");
        return gradient_(x);
    }

    /// Oracle direction; exactly the gradient when no oracle was supplied.
    Point direction(const Point& x) const
    {
        require_dim(x, dim_, "Objective::direction");
        return direction_ ? (*direction_)(x) : gradient_(x);
    }

    bool has_direction_oracle() const { return direction_.has_value(); }
    const std::optional<FeasibleRegion>& domain() const { return domain_; }

    Objective with_domain(std::optional<FeasibleRegion> region) const
    {
        Objective copy = *this;
        if (region && region->dim() != dim_)
            throw std::invalid_argument("Objective: domain dimension mismatch");
        copy.domain_ = std::move(region);
        return copy;
    }

private:
    std::size_t dim_;
    ValueFn value_;
    VectorFn gradient_;
    std::optional<VectorFn> direction_;
    std::optional<FeasibleRegion> domain_;
};

/// c * f for a positive constant c. NGD iterates are invariant under this map.
template <DifferentiableObjective F>
class Scaled {
public:
    Scaled(F f, double c) : f_(std::move(f)), c_(c)
    {
        if (!(c > 0.0)) throw std::invalid_argument("Scaled: factor must be positive");
    }
    std::size_t dim() const { return f_.dim(); }
    double value(const Point& x) const { return c_ * f_.value(x); }
    Point gradient(const Point& x) const { return c_ * f_.gradient(x); }
    std::optional<FeasibleRegion> domain() const { return domain_of(f_); }

private:
    F f_;
    double c_;
};

/// One-dimensional restriction t -> f(origin + t * direction).
template <DifferentiableObjective F>
class LineSlice {
public:
    LineSlice(F f, Point origin, Point direction)
        : f_(std::move(f)), origin_(std::move(origin)), dir_(std::move(direction))
    {
        require_dim(origin_, f_.dim(), "LineSlice origin");
        require_dim(dir_, f_.dim(), "LineSlice direction");
    }
    std::size_t dim() const { return 1; }
    double value(const Point& t) const { return f_.value(at(t)); }
    Point gradient(const Point& t) const
    {
        Point g(1);
        g[0] = f_.gradient(at(t)).dot(dir_);
        return g;
    }

private:
    Point at(const Point& t) const
    {
        require_dim(t, 1, "LineSlice");
        return origin_ + t[0] * dir_;
    }

    F f_;
    Point origin_;
    Point dir_;
};

} // namespace slqc
