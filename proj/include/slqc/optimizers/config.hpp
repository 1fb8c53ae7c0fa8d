#pragma once

#include "slqc/core/point.hpp"
#include "slqc/core/random.hpp"
#include "slqc/core/region.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace slqc {

struct NgdConfig {
    std::size_t T = 1;
    double eta = 0.1;
    Point x1;
    std::optional<FeasibleRegion> region;
    /// Gradients with norm at or below this are treated as vanishing.
    double grad_tol = 1e-12;

    void validate(std::size_t dim) const
    {
        if (T < 1) throw std::invalid_argument("NgdConfig: T must be at least 1");
        if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("NgdConfig: eta must be positive");
        if (!(grad_tol >= 0.0)) throw std::invalid_argument("NgdConfig: grad_tol must be non-negative");
        require_dim(x1, dim, "NgdConfig x1");
        require_finite(x1, "NgdConfig x1");
        if (region && region->dim() != dim) throw std::invalid_argument("NgdConfig: region dimension mismatch");
    }
};

struct SngdConfig : NgdConfig {
    std::size_t b = 1;
    /// Source of every minibatch of the run, drawn sequentially.
    Stream stream{0};

    void validate(std::size_t dim) const
    {
        NgdConfig::validate(dim);
        if (b < 1) throw std::invalid_argument("SngdConfig: minibatch size must be at least 1");
    }
};

/// Step size rule eta_t = eta0 for constant, eta0 (1 + gamma t)^(-exponent) for polynomial.
struct StepSchedule {
    enum class Kind { constant, polynomial };

    Kind kind = Kind::constant;
    double eta0 = 0.1;
    double gamma = 0.0;
    double exponent = 0.75;
    double momentum = 0.0;

    static StepSchedule constant(double eta) { return {Kind::constant, eta, 0.0, 0.75, 0.0}; }
    static StepSchedule polynomial(double eta0, double gamma, double exponent = 0.75)
    {
        return {Kind::polynomial, eta0, gamma, exponent, 0.0};
    }
    StepSchedule with_momentum(double mu) const
    {
        StepSchedule s = *this;
        s.momentum = mu;
        return s;
    }

    double eta(std::size_t t) const
    {
        if (kind == Kind::constant) return eta0;
        return eta0 * std::pow(1.0 + gamma * static_cast<double>(t), -exponent);
    }

    void validate() const
    {
        if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw std::invalid_argument("StepSchedule: eta0 must be positive");
        if (!(gamma >= 0.0)) throw std::invalid_argument("StepSchedule: gamma must be non-negative");
        if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("StepSchedule: momentum must lie in [0, 1)");
    }
};

struct GradientConfig {
    std::size_t T = 1;
    Point x1;
    StepSchedule schedule;
    std::size_t b = 1;
    Stream stream{0};

    void validate(std::size_t dim) const
    {
        if (T < 1) throw std::invalid_argument("GradientConfig: T must be at least 1");
        if (b < 1) throw std::invalid_argument("GradientConfig: minibatch size must be at least 1");
        schedule.validate();
        require_dim(x1, dim, "GradientConfig x1");
        require_finite(x1, "GradientConfig x1");
    }
};

} // namespace slqc
