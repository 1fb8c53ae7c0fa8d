#pragma once

#include "slqc/core/parallel.hpp"
#include "slqc/core/random.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace slqc {

/// Walk on {0, 1, 2, ...}: one step down with probability p, one step up otherwise; 0 absorbs.
struct ChainSpec {
    double p = 0.2;
    std::uint64_t start_state = 1;
    /// Truncation for Monte Carlo walks.
    std::uint64_t max_steps = 1000;

    void validate() const
    {
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ChainSpec: p must lie in (0, 1)");
    }
};

/// alpha_i = (p / (1 - p))^i; 1 when p >= 1/2 or i = 0.
inline double absorb_probability(const ChainSpec& spec)
{
    spec.validate();
    if (spec.start_state == 0 || spec.p >= 0.5) return 1.0;
    return std::pow(spec.p / (1.0 - spec.p), static_cast<double>(spec.start_state));
}

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

/**
 * Fraction of walks that reach 0 within max_steps steps. Walk k uses
 * stream.substream(k), so the estimate does not depend on `jobs`. Walks
 * past the truncation count as misses, which biases the estimate
 * downward; a walk whose state exceeds its remaining steps is stopped
 * early since it can no longer be absorbed in time.
 */
inline MonteCarloEstimate absorb_probability_mc(const ChainSpec& spec, std::uint64_t trials, const Stream& stream,
                                                unsigned jobs = 1)
{
    spec.validate();
    if (spec.max_steps < 1) throw std::invalid_argument("absorb_probability_mc: max_steps must be at least 1");
    if (trials == 0) throw std::invalid_argument("absorb_probability_mc: trials must be positive");

    std::vector<std::uint64_t> per_worker(std::max(1u, jobs), 0);
    parallel_chunks(trials, jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        std::uint64_t hits = 0;
        for (std::size_t k = begin; k < end; ++k) {
            if (spec.start_state == 0) {
                ++hits;
                continue;
            }
            Stream rng = stream.substream(k);
            std::uint64_t state = spec.start_state;
            for (std::uint64_t t = 0; t < spec.max_steps; ++t) {
                if (state > spec.max_steps - t) break;
                state = rng.bernoulli(spec.p) ? state - 1 : state + 1;
                if (state == 0) {
                    ++hits;
                    break;
                }
            }
        }
        per_worker[w] += hits;
    });

    MonteCarloEstimate out;
    out.trials = trials;
    for (auto h : per_worker) out.hits += h;
    const double n = static_cast<double>(trials);
    out.estimate = static_cast<double>(out.hits) / n;
    out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
    return out;
}

} // namespace slqc
