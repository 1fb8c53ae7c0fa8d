#pragma once

#include "slqc/analysis/budgets.hpp"
#include "slqc/analysis/markov.hpp"
#include "slqc/core/parallel.hpp"
#include "slqc/optimizers/ngd.hpp"
#include "slqc/problems/lower_bound.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace slqc {

struct LowerBoundSettings {
    double eps = 0.1;
    std::uint64_t trials = 1000;
    std::size_t T = 10000;
    unsigned jobs = 1;
};

struct LowerBoundReport {
    double eps = 0.0;
    std::uint64_t b = 0;
    double eta = 0.0;
    std::size_t T = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    std::uint64_t hits = 0;
    double hit_fraction = 0.0;

    /// Minibatches drawn at x > -3 and how many of them had a negative mean gradient.
    std::uint64_t batches = 0;
    std::uint64_t negative_batches = 0;
    double p_hat = 0.0;
    double p_hat_se = 0.0;
    double negative_fraction = 0.0;
    double negative_reference = 0.0; ///< (1 - eps)^b

    std::uint64_t walk_distance = 0; ///< 1/eta - 1
    double analytic_ceiling = 0.0;   ///< absorb probability with p = 0.2
    double empirical_ceiling = 0.0;  ///< absorb probability with p = p_hat
    double declared_ceiling = 0.0;   ///< analytic ceiling plus a Poisson allowance for `trials`

    bool p_hat_ok = false;
    bool negative_ok = false;
    bool hits_ok = false;

    bool passed() const { return p_hat_ok && negative_ok && hits_ok; }
};

/**
 * SNGD on the lower-bound distribution with b = ceil(0.2/eps), eta = eps,
 * x1 = 0. Trial k draws from stream.substream(k). A trial stops at the
 * first eps-optimal iterate or once -1 is out of reach of the remaining
 * steps, so only the hit event is exact; batch statistics cover the
 * steps actually taken.
 */
inline LowerBoundReport lower_bound_experiment(const LowerBoundSettings& s, const Stream& stream)
{
    const LowerBoundDistribution dist(s.eps);
    if (s.trials == 0) throw std::invalid_argument("lower_bound_experiment: trials must be positive");
    if (s.T == 0) throw std::invalid_argument("lower_bound_experiment: T must be positive");

    LowerBoundReport r;
    r.eps = s.eps;
    r.b = lower_bound_minibatch(s.eps);
    r.eta = s.eps;
    r.T = s.T;
    r.trials = s.trials;
    r.seed = stream.key();

    struct Counts {
        std::uint64_t hits = 0, batches = 0, negative = 0;
    };
    const unsigned jobs = std::max(1u, s.jobs);
    std::vector<Counts> per_worker(jobs);

    parallel_chunks(s.trials, jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        Counts c;
        for (std::size_t k = begin; k < end; ++k) {
            SngdConfig cfg;
            cfg.T = s.T;
            cfg.eta = r.eta;
            cfg.x1 = Point::Zero(1);
            cfg.b = r.b;
            cfg.stream = stream.substream(k);
            bool hit = false;
            sngd_run(dist, cfg, [&](std::size_t t, const Point& x, double, const Point& g, double, std::int64_t) {
                const double xv = x[0];
                if (dist.is_eps_optimal(xv)) {
                    hit = true;
                    return false;
                }
                if (xv > -3.0) {
                    ++c.batches;
                    if (g[0] < 0.0) ++c.negative;
                }
                const double reach = xv - static_cast<double>(s.T - 1 - t) * r.eta;
                return reach <= -1.0 + 1e-9;
            });
            if (hit) ++c.hits;
        }
        per_worker[w] = c;
    });

    for (const auto& c : per_worker) {
        r.hits += c.hits;
        r.batches += c.batches;
        r.negative_batches += c.negative;
    }
    const double n = static_cast<double>(r.trials);
    r.hit_fraction = static_cast<double>(r.hits) / n;
    if (r.batches > 0) {
        const double nb = static_cast<double>(r.batches);
        r.negative_fraction = static_cast<double>(r.negative_batches) / nb;
        r.p_hat = 1.0 - r.negative_fraction;
        r.p_hat_se = std::sqrt(r.p_hat * (1.0 - r.p_hat) / nb);
    }
    r.negative_reference = std::pow(1.0 - s.eps, static_cast<double>(r.b));

    const long long steps = ceil_count(1.0 / r.eta);
    r.walk_distance = static_cast<std::uint64_t>(std::max(0LL, steps - 1));
    r.analytic_ceiling = absorb_probability({0.2, r.walk_distance, 1});
    if (r.p_hat >= 1.0)
        r.empirical_ceiling = 1.0;
    else if (r.p_hat > 0.0)
        r.empirical_ceiling = absorb_probability({r.p_hat, r.walk_distance, 1});
    const double lambda = r.analytic_ceiling * n;
    r.declared_ceiling = (lambda + 3.0 * std::sqrt(lambda) + 3.0) / n;

    r.p_hat_ok = r.batches > 0 && r.p_hat <= 0.2 + 3.0 * r.p_hat_se;
    r.negative_ok = r.batches > 0 && r.negative_fraction >= r.negative_reference - 3.0 * r.p_hat_se;
    r.hits_ok = r.hit_fraction <= r.declared_ceiling;
    return r;
}

} // namespace slqc
