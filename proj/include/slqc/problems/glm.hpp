#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"
#include "slqc/problems/sigmoid.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slqc {

struct Sample {
    Point x;
    double y;
};

struct GlmDataset {
    std::vector<Sample> samples;
    double W = 1.0;
    std::optional<Point> planted;
    std::uint64_t seed = 0;

    std::size_t m() const { return samples.size(); }
    std::size_t dim() const { return samples.empty() ? 0 : dim_of(samples.front().x); }

    /// Throws unless every ||x_i|| <= 1 (when required), y_i in [0,1] and ||w*|| <= W.
    void validate(bool require_unit_ball = true) const
    {
        if (samples.empty()) throw std::invalid_argument("GlmDataset: no samples");
        if (!(W > 0.0)) throw std::invalid_argument("GlmDataset: W must be positive");
        const std::size_t d = dim();
        for (const auto& s : samples) {
            require_dim(s.x, d, "GlmDataset sample");
            require_finite(s.x, "GlmDataset sample");
            if (require_unit_ball && s.x.norm() > 1.0 + 1e-12)
                throw std::invalid_argument("GlmDataset: sample outside the unit ball");
            if (!(s.y >= 0.0 && s.y <= 1.0)) throw std::invalid_argument("GlmDataset: label outside [0,1]");
        }
        if (planted) {
            require_dim(*planted, d, "GlmDataset planted");
            if (planted->norm() > W * (1.0 + 1e-12))
                throw std::invalid_argument("GlmDataset: planted predictor exceeds W");
        }
    }
};

/**
 * Empirical squared error with sigmoid activation,
 *   err(w) = (1/m) sum (y_i - sigma<w, x_i>)^2,
 *   grad   = (2/m) sum sigma'(<w,x_i>) (sigma<w,x_i> - y_i) x_i.
 */
class GlmObjective {
public:
    explicit GlmObjective(GlmDataset data) : data_(std::move(data))
    {
        if (data_.samples.empty()) throw std::invalid_argument("GlmObjective: no samples");
    }

    std::size_t dim() const { return data_.dim(); }
    const GlmDataset& dataset() const { return data_; }

    double value(const Point& w) const
    {
        require_dim(w, dim(), "glm value");
        double sum = 0.0;
        for (const auto& s : data_.samples) {
            const double r = s.y - sigmoid(w.dot(s.x));
            sum += r * r;
        }
        return sum / static_cast<double>(data_.m());
    }

    Point gradient(const Point& w) const
    {
        require_dim(w, dim(), "glm gradient");
        Point g = Point::Zero(w.size());
        for (const auto& s : data_.samples) {
            const double z = w.dot(s.x);
            g += (sigmoid_derivative(z) * (sigmoid(z) - s.y)) * s.x;
        }
        return (2.0 / static_cast<double>(data_.m())) * g;
    }

private:
    GlmDataset data_;
};

/// x_i uniform in the unit ball, w* uniform in B(0, W), y_i = sigma<w*, x_i>.
inline std::pair<GlmDataset, GlmObjective> make_idealized_glm(Stream& rng, std::size_t d, std::size_t m,
                                                              double W)
{
    if (d == 0 || m == 0) throw std::invalid_argument("make_idealized_glm: d and m must be positive");
    if (!(W > 0.0)) throw std::invalid_argument("make_idealized_glm: W must be positive");
    GlmDataset data;
    data.W = W;
    data.seed = rng.key();
    Point w_star = rng.in_ball(d, W);
    data.samples.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Point x = rng.in_ball(d, 1.0);
        const double y = sigmoid(w_star.dot(x));
        data.samples.push_back({std::move(x), y});
    }
    data.planted = std::move(w_star);
    return {data, GlmObjective(data)};
}

/**
 * Two-sample idealized GLM whose error is zero at w* = (1, 1) but whose
 * sublevel sets are not convex: err(3,1) = err(1,3) <= 0.018 while
 * err(2,2) >= 0.019. The samples have norm log 4 > 1, so this dataset is
 * exempt from the unit-ball requirement.
 */
inline std::pair<GlmDataset, GlmObjective> make_nonqc_counterexample()
{
    const double l4 = std::log(4.0);
    GlmDataset data;
    data.W = std::sqrt(2.0);
    data.samples = {{make_point({0.0, -l4}), 0.2}, {make_point({-l4, 0.0}), 0.2}};
    data.planted = make_point({1.0, 1.0});
    return {data, GlmObjective(data)};
}

} // namespace slqc
