#pragma once

#include "slqc/core/point.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace slqc {

/// Full per-iteration record of one optimizer run.
struct OptTrace {
    std::vector<Point> iterates;
    /// f(x_t) for deterministic runs, the minibatch value f_t(x_t) for stochastic ones.
    std::vector<double> values;
    std::vector<double> grad_norms;
    /// Index of the minibatch drawn at step t; -1 for deterministic runs.
    std::vector<std::int64_t> batch_ids;
    Point returned;
    std::size_t returned_index = 0;
    /// Set when the run stopped on a non-finite value or gradient.
    bool aborted = false;
    std::string abort_reason;

    std::size_t size() const { return values.size(); }
    double returned_value() const { return values.at(returned_index); }
};

/// Index of the smallest value, earliest on ties.
inline std::size_t argmin_index(const std::vector<double>& values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best]) best = i;
    return best;
}

/// First t with values[t] - reference <= eps, or nullopt-like npos.
inline std::size_t first_hit(const std::vector<double>& values, double reference, double eps)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] - reference <= eps) return i;
    return std::numeric_limits<std::size_t>::max();
}

constexpr std::size_t no_hit = std::numeric_limits<std::size_t>::max();

/// Observer that records everything into an OptTrace.
class TraceRecorder {
public:
    explicit TraceRecorder(std::size_t reserve = 0)
    {
        trace_.iterates.reserve(reserve);
        trace_.values.reserve(reserve);
        trace_.grad_norms.reserve(reserve);
        trace_.batch_ids.reserve(reserve);
    }

    bool operator()(std::size_t t, const Point& x, double value, const Point&, double grad_norm,
                    std::int64_t batch_id)
    {
        (void)t;
        trace_.iterates.push_back(x);
        trace_.values.push_back(value);
        trace_.grad_norms.push_back(grad_norm);
        trace_.batch_ids.push_back(batch_id);
        return true;
    }

    OptTrace& trace() { return trace_; }

private:
    OptTrace trace_;
};

} // namespace slqc
