#pragma once

#include <functional>
#include <string>
#include <vector>

#include "liyau/geometry.hpp"

namespace liyau {

// Pointwise data of a radial profile: value and first two derivatives.
struct profile_point {
    double u = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

// A static radial candidate solution of laplacian(u) + u^p = 0 in dimension
// n, with analytic derivatives where available and second-order central
// finite differences as the fallback.
struct radial_profile {
    std::function<profile_point(double)> evaluate;
    int n = 1;
    double p = 2.0;
    std::string name;
};

// The closed-form stationary profile u(r) = 24/(1+r^2)^2 in dimension 6 with
// exponent 2 (analytic derivatives).
radial_profile talenti_profile();

// Wraps a value-only evaluator with finite-difference derivatives of step h
// (second-order central; the second derivative at r < h uses the even
// extension across the origin).
radial_profile profile_from_function(std::function<double(double)> value, int n, double p,
                                     double h, std::string name);

// Static residual u'' + (n-1) u'/r + u^p per radius; r = 0 uses the
// regularized limit n*u''(0). Radii must be >= 0 and the profile positive
// there (std::invalid_argument / std::runtime_error otherwise).
std::vector<double> static_residual(const radial_profile& profile,
                                    const std::vector<double>& radii);

// Samples the profile at the nodes of a radial Euclidean geometry of the
// same dimension. Throws std::invalid_argument on a kind or dimension
// mismatch.
std::vector<double> seed_from_profile(const radial_profile& profile, const geometry& geom);

}  // namespace liyau
