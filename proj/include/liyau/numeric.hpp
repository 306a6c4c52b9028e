#pragma once

#include <cmath>
#include <vector>

namespace liyau {

// std::pow with exact fast paths for the exponents the experiments use most.
inline double pow_fast(double base, double exponent) {
    if (exponent == 1.0) return base;
    if (exponent == 2.0) return base * base;
    if (exponent == 3.0) return base * base * base;
    if (exponent == 0.5) return std::sqrt(base);
    if (exponent == 1.5) return base * std::sqrt(base);
    if (exponent == 0.0) return 1.0;
    return std::pow(base, exponent);
}

// Uniform samples on [lo, hi], endpoints included; count >= 2.
inline std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
    out.back() = hi;
    return out;
}

// Trapezoid rule over uniformly spaced samples spanning [0, 1].
inline double trapezoid_unit(const std::vector<double>& values) {
    const std::size_t n = values.size();
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < n; ++i) sum += values[i];
    return sum / static_cast<double>(n - 1);
}

}  // namespace liyau
