#pragma once

#include "slqc/core/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace slqc {

/// Iteration count, step size and minibatch size implied by a convergence guarantee.
struct Budget {
    std::uint64_t T = 0;
    double eta = 0.0;
    std::uint64_t b = 0; ///< 0 for deterministic methods
    std::string provenance;
};

namespace detail {

inline void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

inline std::uint64_t at_least_one(long long v) { return static_cast<std::uint64_t>(std::max(1LL, v)); }

} // namespace detail

/// SLQC rate: T = ceil(kappa^2 dist0^2 / eps^2), eta = eps / kappa.
inline Budget ngd_budget(double eps, double kappa, double dist0)
{
    detail::require_positive(eps, "eps");
    detail::require_positive(kappa, "kappa");
    if (!(dist0 >= 0.0)) throw std::invalid_argument("dist0 must be non-negative");
    const double t = kappa * kappa * dist0 * dist0 / (eps * eps);
    return {detail::at_least_one(ceil_count(t)), eps / kappa, 0, "ngd-slqc"};
}

/// Locally-smooth rate: T = ceil(beta dist0^2 / (2 eps)), eta = sqrt(2 eps / beta).
inline Budget ngd_smooth_budget(double eps, double beta, double dist0)
{
    detail::require_positive(eps, "eps");
    detail::require_positive(beta, "beta");
    if (!(dist0 >= 0.0)) throw std::invalid_argument("dist0 must be non-negative");
    const double t = beta * dist0 * dist0 / (2.0 * eps);
    return {detail::at_least_one(ceil_count(t)), std::sqrt(2.0 * eps / beta), 0, "ngd-smooth"};
}

/// Hoeffding minibatch size b = ceil(M^2 log(4T/delta) / (2 eps^2)).
inline std::uint64_t sngd_minibatch_bound(double eps, double delta, std::uint64_t T, double M)
{
    detail::require_positive(eps, "eps");
    detail::require_positive(delta, "delta");
    if (T == 0) throw std::invalid_argument("T must be positive");
    if (!(M >= 0.0) || !std::isfinite(M)) throw std::invalid_argument("M must be non-negative and finite");
    const double b = M * M * std::log(4.0 * static_cast<double>(T) / delta) / (2.0 * eps * eps);
    return static_cast<std::uint64_t>(std::max(0LL, ceil_count(b)));
}

/// Full SNGD budget: the NGD budget plus b = max(Hoeffding bound, b0).
inline Budget sngd_budget(double eps, double kappa, double dist0, double delta, double M, std::uint64_t b0 = 0)
{
    Budget out = ngd_budget(eps, kappa, dist0);
    out.b = std::max(sngd_minibatch_bound(eps, delta, out.T, M), b0);
    out.provenance = "sngd";
    return out;
}

/// Noisy-GLM sample size m = ceil(8 e^{2W} (W + 1)^2 / eps^2 * log(1/delta)).
inline std::uint64_t glm_sample_bound(double eps, double delta, double W)
{
    detail::require_positive(eps, "eps");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(W >= 0.0)) throw std::invalid_argument("W must be non-negative");
    const double m = 8.0 * std::exp(2.0 * W) * (W + 1.0) * (W + 1.0) / (eps * eps) * std::log(1.0 / delta);
    return static_cast<std::uint64_t>(std::max(0LL, ceil_count(m)));
}

/// Minibatch size ceil(0.2 / eps) at which SNGD provably fails on the lower-bound distribution.
inline std::uint64_t lower_bound_minibatch(double eps)
{
    detail::require_positive(eps, "eps");
    return detail::at_least_one(ceil_count(0.2 / eps));
}

/// (1 - eps)^(0.2/eps): probability that a minibatch of size 0.2/eps holds no hinge draw.
inline double all_linear_probability(double eps) { return std::pow(1.0 - eps, 0.2 / eps); }

} // namespace slqc
