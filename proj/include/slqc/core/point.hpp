#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace slqc {

/// Optimization variable. Dense, 64-bit, dimension fixed at construction.
using Point = Eigen::VectorXd;

inline Point make_point(std::initializer_list<double> coords)
{
    Point p(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) p[i++] = c;
    return p;
}

inline std::size_t dim_of(const Point& x) { return static_cast<std::size_t>(x.size()); }

inline bool is_finite(const Point& x) { return x.allFinite(); }

inline void require_finite(const Point& x, const char* what)
{
    if (!x.allFinite())
        throw std::domain_error(std::string(what) + ": non-finite coordinate");
}

inline void require_dim(const Point& x, std::size_t dim, const char* what)
{
    if (dim_of(x) != dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                    std::to_string(dim) + ", got " +
                                    std::to_string(dim_of(x)) + ")");
}

/// Ceiling of a real-valued bound that is insensitive to the last few ulps
/// of rounding noise (e.g. 0.2 / 0.1 == 2.0000000000000004).
inline long long ceil_count(double value)
{
    if (!std::isfinite(value)) throw std::domain_error("ceil_count: non-finite bound");
    double slack = 1e-9 * std::max(1.0, std::abs(value));
    return static_cast<long long>(std::ceil(value - slack));
}

} // namespace slqc
