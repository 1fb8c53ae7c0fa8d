#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slqc {

/**
 * Distribution over component functions psi accessed only through seeded
 * minibatch draws. sample_minibatch(stream, b) returns the mean of b
 * independent components as an ordinary differentiable objective.
 */
template <class S>
concept StochasticObjective = requires(const S& s, Stream& rng, std::size_t b) {
    { s.dim() } -> std::convertible_to<std::size_t>;
    { s.bound() } -> std::convertible_to<double>;
    { s.sample_minibatch(rng, b) } -> DifferentiableObjective;
};

/// Stochastic objective whose expectation E[psi] is available in closed form.
template <class S>
concept HasExpected = StochasticObjective<S> && requires(const S& s) {
    { s.expected() } -> DifferentiableObjective;
};

template <StochasticObjective S>
using MinibatchOf = decltype(std::declval<const S&>().sample_minibatch(std::declval<Stream&>(),
                                                                       std::size_t{1}));

/**
 * f_t(x) = (1/b) sum_i psi_i(x) over the drawn components.
 *
 * The mean is accumulated incrementally (m += (v - m) / k), which equals the
 * arithmetic mean up to rounding and returns psi(x) bit-for-bit when every
 * component is the same function.
 */
template <DifferentiableObjective Component>
class Minibatch {
public:
    explicit Minibatch(std::vector<Component> components) : components_(std::move(components))
    {
        if (components_.empty()) throw std::invalid_argument("Minibatch: empty batch");
    }

    std::size_t dim() const { return components_.front().dim(); }
    std::size_t size() const { return components_.size(); }
    const std::vector<Component>& components() const { return components_; }

    double value(const Point& x) const
    {
        double mean = 0.0;
        std::size_t k = 0;
        for (const auto& c : components_) {
            ++k;
            mean += (c.value(x) - mean) / static_cast<double>(k);
        }
        return mean;
    }

    Point gradient(const Point& x) const
    {
        Point mean = Point::Zero(x.size());
        std::size_t k = 0;
        for (const auto& c : components_) {
            ++k;
            mean += (Point(c.gradient(x)) - mean) / static_cast<double>(k);
        }
        return mean;
    }

private:
    std::vector<Component> components_;
};

/// Incremental mean of a list of component objectives, evaluated in list order.
template <DifferentiableObjective Component>
using FiniteSum = Minibatch<Component>;

/**
 * Uniform distribution over a finite list of components. With replacement
 * draws are i.i.d.; without replacement draws a uniformly random subset and
 * keeps it in index order, so b == size() reproduces expected() exactly.
 */
template <DifferentiableObjective Component>
class FiniteDistribution {
public:
    enum class Sampling { with_replacement, without_replacement };

    FiniteDistribution(std::vector<Component> components, double bound,
                       Sampling sampling = Sampling::with_replacement)
        : components_(std::move(components)), bound_(bound), sampling_(sampling)
    {
        if (components_.empty()) throw std::invalid_argument("FiniteDistribution: no components");
    }

    std::size_t dim() const { return components_.front().dim(); }
    double bound() const { return bound_; }
    std::size_t support_size() const { return components_.size(); }

    Minibatch<Component> sample_minibatch(Stream& rng, std::size_t b) const
    {
        if (b == 0) throw std::invalid_argument("minibatch size must be at least 1");
        std::vector<Component> drawn;
        drawn.reserve(b);
        if (sampling_ == Sampling::with_replacement) {
            for (std::size_t i = 0; i < b; ++i) drawn.push_back(components_[rng.below(components_.size())]);
        } else {
            if (b > components_.size())
                throw std::invalid_argument("minibatch larger than support without replacement");
            std::vector<std::size_t> idx(components_.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            // partial Fisher-Yates, then restore index order
            for (std::size_t i = 0; i < b; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
            std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(b));
            for (std::size_t i = 0; i < b; ++i) drawn.push_back(components_[idx[i]]);
        }
        return Minibatch<Component>(std::move(drawn));
    }

    FiniteSum<Component> expected() const { return FiniteSum<Component>(components_); }

private:
    std::vector<Component> components_;
    double bound_;
    Sampling sampling_;
};

/// Zero-variance distribution: every draw is the same function.
template <DifferentiableObjective F>
class Degenerate {
public:
    Degenerate(F f, double bound) : f_(std::move(f)), bound_(bound) {}
    std::size_t dim() const { return f_.dim(); }
    double bound() const { return bound_; }
    Minibatch<F> sample_minibatch(Stream& rng, std::size_t b) const
    {
        if (b == 0) throw std::invalid_argument("minibatch size must be at least 1");
        (void)rng();
        return Minibatch<F>(std::vector<F>(b, f_));
    }
    const F& expected() const { return f_; }

private:
    F f_;
    double bound_;
};

} // namespace slqc
