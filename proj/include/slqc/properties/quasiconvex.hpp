#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"
#include "slqc/core/region.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace slqc {

/// Gradient form: f(y) <= f(x) implies <grad f(x), y - x> <= tol. Vacuous when f(y) > f(x).
template <DifferentiableObjective F>
bool check_quasiconvex_grad(const F& f, const Point& x, const Point& y, double tol = 0.0)
{
    require_dim(x, f.dim(), "check_quasiconvex_grad");
    require_dim(y, f.dim(), "check_quasiconvex_grad");
    if (f.value(y) > f.value(x)) return true;
    return Point(f.gradient(x)).dot(y - x) <= tol;
}

struct PairViolation {
    Point x;
    Point y;
    double inner; ///< <grad f(x), y - x>
};

struct QuasiconvexGradReport {
    bool holds = true;
    std::size_t trials = 0;
    std::optional<PairViolation> counterexample;
};

/// Random search for a pair breaking the gradient form; pairs drawn from `region`.
template <DifferentiableObjective F>
QuasiconvexGradReport search_quasiconvex_grad(const F& f, const FeasibleRegion& region, std::size_t trials,
                                              Stream& rng, double tol = 0.0)
{
    QuasiconvexGradReport r;
    for (std::size_t i = 0; i < trials; ++i) {
        ++r.trials;
        Point x = region.sample(rng);
        Point y = region.sample(rng);
        if (!check_quasiconvex_grad(f, x, y, tol)) {
            const double inner = Point(f.gradient(x)).dot(y - x);
            r.holds = false;
            r.counterexample = PairViolation{std::move(x), std::move(y), inner};
            return r;
        }
    }
    return r;
}

struct SublevelViolation {
    Point x;
    Point y;
    Point z;          ///< convex combination lying outside the sublevel set
    double lambda;    ///< z = lambda x + (1 - lambda) y
    double value_z;
};

struct SublevelReport {
    bool convex = true;
    std::size_t trials = 0;        ///< pairs tested
    std::size_t members_found = 0; ///< sampled points inside L_alpha
    std::optional<SublevelViolation> counterexample;
};

/**
 * Sampling test of convexity of L_alpha = {x : f(x) <= alpha}.
 *
 * Candidate pairs are tested first (midpoint plus a few fixed interior
 * weights), then `trials` pairs of members found by rejection sampling from
 * `region` (midpoint plus one random weight each). A pass means no violation
 * was found; an empty sample of L_alpha passes vacuously.
 */
template <DifferentiableObjective F>
SublevelReport check_sublevel_convex(const F& f, double alpha, const FeasibleRegion& region, std::size_t trials,
                                     Stream& rng, const std::vector<std::pair<Point, Point>>& candidates = {},
                                     std::size_t max_draws_per_member = 1000)
{
    SublevelReport r;
    auto test = [&](const Point& x, const Point& y, double lambda) {
        Point z = lambda * x + (1.0 - lambda) * y;
        const double fz = f.value(z);
        if (fz > alpha) {
            r.convex = false;
            r.counterexample = SublevelViolation{x, y, std::move(z), lambda, fz};
            return false;
        }
        return true;
    };
    for (const auto& [x, y] : candidates) {
        if (f.value(x) > alpha || f.value(y) > alpha) continue;
        ++r.trials;
        for (double lambda : {0.5, 0.25, 0.75, 0.1, 0.9})
            if (!test(x, y, lambda)) return r;
    }
    auto draw_member = [&]() -> std::optional<Point> {
        for (std::size_t k = 0; k < max_draws_per_member; ++k) {
            Point p = region.sample(rng);
            if (f.value(p) <= alpha) {
                ++r.members_found;
                return p;
            }
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < trials; ++i) {
        auto x = draw_member();
        if (!x) break;
        auto y = draw_member();
        if (!y) break;
        ++r.trials;
        if (!test(*x, *y, 0.5)) return r;
        if (!test(*x, *y, rng.uniform())) return r;
    }
    return r;
}

} // namespace slqc
