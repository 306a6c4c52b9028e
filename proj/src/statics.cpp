#include "liyau/statics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace liyau {

radial_profile talenti_profile() {
    radial_profile prof;
    prof.n = 6;
    prof.p = 2.0;
    prof.name = "talenti";
    prof.evaluate = [](double r) {
        const double q = 1.0 + r * r;
        profile_point pt;
        pt.u = 24.0 / (q * q);
        pt.du = -96.0 * r / (q * q * q);
        pt.d2u = (480.0 * r * r - 96.0) / (q * q * q * q);
        return pt;
    };
    return prof;
}

radial_profile profile_from_function(std::function<double(double)> value, int n, double p,
                                     double h, std::string name) {
    if (!(h > 0.0)) throw std::invalid_argument("profile_from_function: h must be positive");
    radial_profile prof;
    prof.n = n;
    prof.p = p;
    prof.name = std::move(name);
    prof.evaluate = [value = std::move(value), h](double r) {
        profile_point pt;
        pt.u = value(r);
        // Radial profiles are even in r; reflect sample points that cross the
        // origin so the stencils stay second order near r = 0.
        auto at = [&](double x) { return value(std::abs(x)); };
        pt.du = (at(r + h) - at(r - h)) / (2.0 * h);
        pt.d2u = (at(r + h) - 2.0 * pt.u + at(r - h)) / (h * h);
        return pt;
    };
    return prof;
}

std::vector<double> static_residual(const radial_profile& profile,
                                    const std::vector<double>& radii) {
    if (!profile.evaluate) throw std::invalid_argument("static_residual: empty profile");
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r >= 0.0)) throw std::invalid_argument("static_residual: radii must be >= 0");
        const profile_point pt = profile.evaluate(r);
        if (!(pt.u > 0.0))
            throw std::runtime_error("static_residual: profile not positive at r = " +
                                     std::to_string(r));
        const double reaction = std::pow(pt.u, profile.p);
        if (r == 0.0) {
            out.push_back(profile.n * pt.d2u + reaction);
        } else {
            out.push_back(pt.d2u + (profile.n - 1.0) * pt.du / r + reaction);
        }
    }
    return out;
}

std::vector<double> seed_from_profile(const radial_profile& profile, const geometry& geom) {
    if (geom.kind() != geometry_kind::radial_euclidean)
        throw std::invalid_argument("seed_from_profile: geometry must be RadialEuclidean");
    if (geom.dim() != profile.n)
        throw std::invalid_argument("seed_from_profile: dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(geom.num_points()));
    for (int i = 0; i < geom.num_points(); ++i)
        out[static_cast<std::size_t>(i)] = profile.evaluate(geom.coord(i)).u;
    return out;
}

}  // namespace liyau
