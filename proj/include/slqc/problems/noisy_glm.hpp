#pragma once

#include "slqc/core/objective.hpp"
#include "slqc/core/random.hpp"
#include "slqc/problems/glm.hpp"
#include "slqc/problems/sigmoid.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slqc {

/// psi(w) = (y - sigma<w, x>)^2 for one labelled sample.
class SquaredErrorComponent {
public:
    SquaredErrorComponent(Point x, double y) : x_(std::move(x)), y_(y) {}
    std::size_t dim() const { return dim_of(x_); }
    double value(const Point& w) const
    {
        const double r = y_ - sigmoid(w.dot(x_));
        return r * r;
    }
    Point gradient(const Point& w) const
    {
        const double z = w.dot(x_);
        return (2.0 * sigmoid_derivative(z) * (sigmoid(z) - y_)) * x_;
    }

private:
    Point x_;
    double y_;
};

/**
 * Noisy GLM data model. x is uniform over a fixed design pool drawn once
 * from the unit ball; y = sigma<w*, x> + xi with xi ~ U[-a, a] and
 * a = noise_level * min(sigma*, 1 - sigma*), so E[y|x] = sigma<w*, x> and
 * y stays in [0, 1].
 */
struct NoisyGlmModel {
    std::vector<Point> pool;
    std::vector<double> clean;      // sigma<w*, x_j>
    std::vector<double> half_width; // a_j
    Point w_star;
    double W = 1.0;
    double noise_level = 1.0;
};

class NoisyGlmBatch {
public:
    NoisyGlmBatch(std::shared_ptr<const NoisyGlmModel> model, std::vector<std::size_t> idx,
                  std::vector<double> y)
        : model_(std::move(model)), idx_(std::move(idx)), y_(std::move(y))
    {
        if (idx_.empty()) throw std::invalid_argument("NoisyGlmBatch: empty batch");
    }

    std::size_t dim() const { return dim_of(model_->w_star); }
    std::size_t size() const { return idx_.size(); }

    SquaredErrorComponent component(std::size_t i) const
    {
        return SquaredErrorComponent(model_->pool[idx_.at(i)], y_.at(i));
    }

    double value(const Point& w) const
    {
        double mean = 0.0;
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            const double r = y_[k] - sigmoid(w.dot(model_->pool[idx_[k]]));
            mean += (r * r - mean) / static_cast<double>(k + 1);
        }
        return mean;
    }

    Point gradient(const Point& w) const
    {
        Point mean = Point::Zero(w.size());
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            const Point& x = model_->pool[idx_[k]];
            const double z = w.dot(x);
            const double c = 2.0 * sigmoid_derivative(z) * (sigmoid(z) - y_[k]);
            mean += (c * x - mean) / static_cast<double>(k + 1);
        }
        return mean;
    }

private:
    std::shared_ptr<const NoisyGlmModel> model_;
    std::vector<std::size_t> idx_;
    std::vector<double> y_;
};

/// E(w) = (1/n) sum_j [(sigma*_j - sigma<w, x_j>)^2 + a_j^2 / 3], exact for the pool law.
class NoisyGlmExpected {
public:
    explicit NoisyGlmExpected(std::shared_ptr<const NoisyGlmModel> model) : model_(std::move(model)) {}

    std::size_t dim() const { return dim_of(model_->w_star); }

    double value(const Point& w) const
    {
        require_dim(w, dim(), "noisy glm expected");
        double sum = 0.0;
        for (std::size_t j = 0; j < model_->pool.size(); ++j) {
            const double r = model_->clean[j] - sigmoid(w.dot(model_->pool[j]));
            const double a = model_->half_width[j];
            sum += r * r + a * a / 3.0;
        }
        return sum / static_cast<double>(model_->pool.size());
    }

    Point gradient(const Point& w) const
    {
        require_dim(w, dim(), "noisy glm expected");
        Point g = Point::Zero(w.size());
        for (std::size_t j = 0; j < model_->pool.size(); ++j) {
            const double z = w.dot(model_->pool[j]);
            g += (sigmoid_derivative(z) * (sigmoid(z) - model_->clean[j])) * model_->pool[j];
        }
        return (2.0 / static_cast<double>(model_->pool.size())) * g;
    }

    Point minimizer() const { return model_->w_star; }

private:
    std::shared_ptr<const NoisyGlmModel> model_;
};

class NoisyGlm {
public:
    explicit NoisyGlm(std::shared_ptr<const NoisyGlmModel> model) : model_(std::move(model)) {}

    std::size_t dim() const { return dim_of(model_->w_star); }
    /// |psi| <= 1 since y and sigma both lie in [0, 1].
    double bound() const { return 1.0; }
    const NoisyGlmModel& model() const { return *model_; }
    const Point& planted() const { return model_->w_star; }

    Sample draw(Stream& rng) const
    {
        const std::size_t j = rng.below(model_->pool.size());
        return {model_->pool[j], draw_label(rng, j)};
    }

    NoisyGlmBatch sample_minibatch(Stream& rng, std::size_t b) const
    {
        if (b == 0) throw std::invalid_argument("minibatch size must be at least 1");
        std::vector<std::size_t> idx(b);
        std::vector<double> y(b);
        for (std::size_t k = 0; k < b; ++k) {
            idx[k] = rng.below(model_->pool.size());
            y[k] = draw_label(rng, idx[k]);
        }
        return NoisyGlmBatch(model_, std::move(idx), std::move(y));
    }

    NoisyGlmExpected expected() const { return NoisyGlmExpected(model_); }

    /// m i.i.d. samples as a dataset (for empirical-error experiments and export).
    GlmDataset draw_dataset(Stream& rng, std::size_t m) const
    {
        GlmDataset data;
        data.W = model_->W;
        data.planted = model_->w_star;
        data.seed = rng.key();
        for (std::size_t i = 0; i < m; ++i) data.samples.push_back(draw(rng));
        return data;
    }

private:
    double draw_label(Stream& rng, std::size_t j) const
    {
        const double a = model_->half_width[j];
        double y = model_->clean[j] + (a > 0.0 ? rng.uniform(-a, a) : 0.0);
        return std::clamp(y, 0.0, 1.0);
    }

    std::shared_ptr<const NoisyGlmModel> model_;
};

inline NoisyGlm make_noisy_glm(Stream& rng, std::size_t d, double W, double noise_level = 1.0,
                               std::size_t pool_size = 1000)
{
    if (d == 0) throw std::invalid_argument("make_noisy_glm: d must be positive");
    if (!(W > 0.0)) throw std::invalid_argument("make_noisy_glm: W must be positive");
    if (!(noise_level >= 0.0 && noise_level <= 1.0))
        throw std::invalid_argument("make_noisy_glm: noise_level must lie in [0, 1]");
    if (pool_size == 0) throw std::invalid_argument("make_noisy_glm: empty design pool");
    auto model = std::make_shared<NoisyGlmModel>();
    model->W = W;
    model->noise_level = noise_level;
    model->w_star = rng.in_ball(d, W);
    model->pool.reserve(pool_size);
    for (std::size_t j = 0; j < pool_size; ++j) {
        Point x = rng.in_ball(d, 1.0);
        const double s = sigmoid(model->w_star.dot(x));
        model->clean.push_back(s);
        model->half_width.push_back(noise_level * std::min(s, 1.0 - s));
        model->pool.push_back(std::move(x));
    }
    return NoisyGlm(std::move(model));
}

} // namespace slqc
