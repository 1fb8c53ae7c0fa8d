#pragma once

#include <cmath>

namespace slqc {

/// Logistic sigmoid; never overflows (exp is only taken of non-positive arguments).
inline double sigmoid(double z)
{
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// sigma'(z) = sigma(z) (1 - sigma(z)), written as e^{-|z|} / (1 + e^{-|z|})^2.
inline double sigmoid_derivative(double z)
{
    const double e = std::exp(-std::abs(z));
    const double d = 1.0 + e;
    return e / (d * d);
}

inline double sigmoid_second_derivative(double z)
{
    const double s = sigmoid(z);
    return sigmoid_derivative(z) * (1.0 - 2.0 * s);
}

} // namespace slqc
