#pragma once

#include "slqc/core/point.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace slqc {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t key, std::uint64_t index)
{
    std::uint64_t s = key ^ (0xD1B54A32D192ED03ULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace detail

/**
 * Seeded random stream (xoshiro256** state expanded from a 64-bit key with
 * splitmix64).
 *
 * substream(i) depends only on the key the stream was built from, never on
 * how many draws have been taken, so per-trial streams are identical no
 * matter which worker runs the trial or in what order.
 *
 * Satisfies UniformRandomBitGenerator, so <random> distributions work on it.
 */
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed = 0) : key_(seed)
    {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    Stream substream(std::uint64_t index) const { return Stream(detail::mix_key(key_, index)); }

    std::uint64_t key() const { return key_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// True with probability p.
    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t below(std::uint64_t n)
    {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(*this);
    }

    double normal() { return std::normal_distribution<double>(0.0, 1.0)(*this); }

    /// Uniform point in the closed Euclidean ball B(center, radius).
    Point in_ball(const Point& center, double radius)
    {
        const auto d = center.size();
        Point dir(d);
        double n2 = 0.0;
        do {
            for (Eigen::Index i = 0; i < d; ++i) dir[i] = normal();
            n2 = dir.squaredNorm();
        } while (n2 == 0.0);
        double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(d));
        return center + (r / std::sqrt(n2)) * dir;
    }

    Point in_ball(std::size_t dim, double radius)
    {
        return in_ball(Point::Zero(static_cast<Eigen::Index>(dim)), radius);
    }

    /// Uniform direction on the unit sphere.
    Point on_sphere(std::size_t dim)
    {
        Point dir(static_cast<Eigen::Index>(dim));
        double n2 = 0.0;
        do {
            for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = normal();
            n2 = dir.squaredNorm();
        } while (n2 == 0.0);
        return dir / std::sqrt(n2);
    }

    Point in_box(const Point& lower, const Point& upper)
    {
        Point x(lower.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = uniform(lower[i], upper[i]);
        return x;
    }

private:
    std::uint64_t key_;
    std::uint64_t s_[4];
};

inline Stream seeded_stream(std::uint64_t seed) { return Stream(seed); }

} // namespace slqc
