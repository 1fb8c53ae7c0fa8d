#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slqc {

/**
 * gamma-margin Perceptron data. Labels are in {0, 1}; the margin condition
 * is read with signed labels, (2 y_i - 1) <w*, x_i> >= gamma.
 */
struct PerceptronDataset {
    std::vector<Point> x;
    std::vector<double> y;
    double gamma = 0.1;
    Point planted;
    std::uint64_t seed = 0;

    std::size_t m() const { return x.size(); }
    std::size_t dim() const { return dim_of(planted); }

    double margin(std::size_t i) const { return (2.0 * y[i] - 1.0) * planted.dot(x[i]); }

    void validate() const
    {
        if (x.empty() || x.size() != y.size()) throw std::invalid_argument("PerceptronDataset: bad sample list");
        if (!(gamma > 0.0)) throw std::invalid_argument("PerceptronDataset: gamma must be positive");
        for (std::size_t i = 0; i < m(); ++i) {
            require_dim(x[i], dim(), "PerceptronDataset sample");
            if (x[i].norm() > 1.0 + 1e-12) throw std::invalid_argument("PerceptronDataset: sample outside the unit ball");
            if (y[i] != 0.0 && y[i] != 1.0) throw std::invalid_argument("PerceptronDataset: label not in {0,1}");
            if (margin(i) < gamma) throw std::invalid_argument("PerceptronDataset: margin condition violated");
        }
    }
};

/**
 * Zero-one squared error err(w) = (1/m) sum (y_i - 1{<w,x_i> >= 0})^2 with
 * the Perceptron direction oracle G(w) = (1/m) sum (1{<w,x_i> >= 0} - y_i) x_i.
 * The gradient of err is zero almost everywhere and is reported as zero.
 */
class PerceptronObjective {
public:
    explicit PerceptronObjective(PerceptronDataset data) : data_(std::move(data)) {}

    std::size_t dim() const { return data_.dim(); }
    const PerceptronDataset& dataset() const { return data_; }

    static double step(double z) { return z >= 0.0 ? 1.0 : 0.0; }

    double value(const Point& w) const
    {
        require_dim(w, dim(), "perceptron value");
        double sum = 0.0;
        for (std::size_t i = 0; i < data_.m(); ++i) {
            const double r = data_.y[i] - step(w.dot(data_.x[i]));
            sum += r * r;
        }
        return sum / static_cast<double>(data_.m());
    }

    Point gradient(const Point& w) const
    {
        require_dim(w, dim(), "perceptron gradient");
        return Point::Zero(w.size());
    }

    Point direction(const Point& w) const
    {
        require_dim(w, dim(), "perceptron direction");
        Point g = Point::Zero(w.size());
        for (std::size_t i = 0; i < data_.m(); ++i)
            g += (step(w.dot(data_.x[i])) - data_.y[i]) * data_.x[i];
        return g / static_cast<double>(data_.m());
    }

    const Point& minimizer() const { return data_.planted; }

private:
    PerceptronDataset data_;
};

/// w* uniform on the unit sphere; x_i uniform in the unit ball, rejected when |<w*, x_i>| < gamma.
inline std::pair<PerceptronDataset, PerceptronObjective> make_perceptron(Stream& rng, std::size_t d, std::size_t m,
                                                                         double gamma,
                                                                         std::size_t max_attempts_per_sample = 1000)
{
    if (d == 0 || m == 0) throw std::invalid_argument("make_perceptron: d and m must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("make_perceptron: gamma must lie in (0, 1)");
    PerceptronDataset data;
    data.gamma = gamma;
    data.seed = rng.key();
    data.planted = rng.on_sphere(d);
    const std::size_t budget = max_attempts_per_sample * m;
    std::size_t attempts = 0;
    while (data.m() < m) {
        if (++attempts > budget) throw std::runtime_error("make_perceptron: rejection sampling exceeded retry budget");
        Point x = rng.in_ball(d, 1.0);
        const double z = data.planted.dot(x);
        if (std::abs(z) < gamma) continue;
        data.y.push_back(z >= 0.0 ? 1.0 : 0.0);
        data.x.push_back(std::move(x));
    }
    return {data, PerceptronObjective(data)};
}

} // namespace slqc
