#include "liyau/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace liyau {

std::string to_string(geometry_kind kind) {
    switch (kind) {
        case geometry_kind::flat_torus_1d: return "FlatTorus1D";
        case geometry_kind::radial_euclidean: return "RadialEuclidean";
        case geometry_kind::radial_sphere: return "RadialSphere";
    }
    throw std::invalid_argument("to_string: unknown geometry kind");
}

geometry_kind geometry_kind_from_string(const std::string& name) {
    if (name == "FlatTorus1D") return geometry_kind::flat_torus_1d;
    if (name == "RadialEuclidean") return geometry_kind::radial_euclidean;
    if (name == "RadialSphere") return geometry_kind::radial_sphere;
    throw std::invalid_argument("geometry kind must be FlatTorus1D, RadialEuclidean or RadialSphere, got: " + name);
}

geometry::geometry(geometry_kind kind, int n, int num_points, double extent)
    : kind_(kind), n_(n), num_points_(num_points) {
    if (num_points < 16) throw std::invalid_argument("geometry: num_points must be >= 16");
    if (n < 1) throw std::invalid_argument("geometry: n must be >= 1");
    if (kind == geometry_kind::flat_torus_1d && n != 1)
        throw std::invalid_argument("geometry: FlatTorus1D requires n = 1");
    if (kind == geometry_kind::radial_sphere) {
        extent_ = std::numbers::pi;
    } else {
        if (!(extent > 0.0) || !std::isfinite(extent))
            throw std::invalid_argument("geometry: extent must be positive and finite");
        extent_ = extent;
    }

    coords_.resize(static_cast<std::size_t>(num_points));
    switch (kind_) {
        case geometry_kind::flat_torus_1d:
            spacing_ = extent_ / num_points;
            for (int i = 0; i < num_points; ++i) coords_[static_cast<std::size_t>(i)] = i * spacing_;
            break;
        case geometry_kind::radial_euclidean:
            spacing_ = extent_ / (num_points - 1);
            for (int i = 0; i < num_points; ++i) coords_[static_cast<std::size_t>(i)] = i * spacing_;
            break;
        case geometry_kind::radial_sphere:
            spacing_ = extent_ / num_points;
            for (int i = 0; i < num_points; ++i)
                coords_[static_cast<std::size_t>(i)] = (i + 0.5) * spacing_;
            break;
    }
}

void geometry::validate_field(const std::vector<double>& field) const {
    if (static_cast<int>(field.size()) != num_points_)
        throw std::invalid_argument("geometry: field length does not match num_points");
    for (double v : field)
        if (!std::isfinite(v)) throw std::invalid_argument("geometry: field must be finite");
}

double geometry::first_deriv_wide(const std::vector<double>& field, int i) const {
    const int N = num_points_;
    auto at = [&](int k) -> double {
        if (kind_ == geometry_kind::radial_euclidean) {
            if (k < 0) return field[static_cast<std::size_t>(-k)];          // even at r = 0
            if (k >= N) return field[static_cast<std::size_t>(2 * N - 2 - k)];  // mirror at r = R
        } else {  // radial_sphere, cell-centered: reflect across both poles
            if (k < 0) return field[static_cast<std::size_t>(-1 - k)];
            if (k >= N) return field[static_cast<std::size_t>(2 * N - 1 - k)];
        }
        return field[static_cast<std::size_t>(k)];
    };
    return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * spacing_);
}

std::vector<double> geometry::laplacian(const std::vector<double>& field) const {
    validate_field(field);
    const int N = num_points_;
    const double h2 = spacing_ * spacing_;
    std::vector<double> out(static_cast<std::size_t>(N));

    switch (kind_) {
        case geometry_kind::flat_torus_1d:
            for (int i = 0; i < N; ++i) {
                const double um = field[static_cast<std::size_t>((i + N - 1) % N)];
                const double up = field[static_cast<std::size_t>((i + 1) % N)];
                const double uc = field[static_cast<std::size_t>(i)];
                out[static_cast<std::size_t>(i)] = (up - 2.0 * uc + um) / h2;
            }
            break;

        case geometry_kind::radial_euclidean: {
            // Regularized origin: n*u_rr(0) with even extension.
            out[0] = 2.0 * n_ * (field[1] - field[0]) / h2;
            for (int i = 1; i + 1 < N; ++i) {
                const double urr = (field[static_cast<std::size_t>(i + 1)] -
                                    2.0 * field[static_cast<std::size_t>(i)] +
                                    field[static_cast<std::size_t>(i - 1)]) / h2;
                const double ur = first_deriv_wide(field, i);
                out[static_cast<std::size_t>(i)] = urr + (n_ - 1.0) * ur / coord(i);
            }
            // Homogeneous Neumann outer boundary via mirror ghost: the
            // first-derivative term vanishes there.
            out[static_cast<std::size_t>(N - 1)] =
                2.0 * (field[static_cast<std::size_t>(N - 2)] -
                       field[static_cast<std::size_t>(N - 1)]) / h2;
            break;
        }

        case geometry_kind::radial_sphere: {
            // Regularized pole values: n*u_tt with even extension (the ghost
            // across the pole equals the end node on a cell-centered grid).
            out[0] = n_ * (field[1] - field[0]) / h2;
            for (int i = 1; i + 1 < N; ++i) {
                const double utt = (field[static_cast<std::size_t>(i + 1)] -
                                    2.0 * field[static_cast<std::size_t>(i)] +
                                    field[static_cast<std::size_t>(i - 1)]) / h2;
                const double ut = first_deriv_wide(field, i);
                const double th = coord(i);
                out[static_cast<std::size_t>(i)] =
                    utt + (n_ - 1.0) * (std::cos(th) / std::sin(th)) * ut;
            }
            out[static_cast<std::size_t>(N - 1)] =
                n_ * (field[static_cast<std::size_t>(N - 2)] -
                      field[static_cast<std::size_t>(N - 1)]) / h2;
            break;
        }
    }
    return out;
}

std::vector<double> geometry::grad_sq(const std::vector<double>& field) const {
    validate_field(field);
    const int N = num_points_;
    const double two_h = 2.0 * spacing_;
    std::vector<double> out(static_cast<std::size_t>(N));

    if (kind_ == geometry_kind::flat_torus_1d) {
        for (int i = 0; i < N; ++i) {
            const double um = field[static_cast<std::size_t>((i + N - 1) % N)];
            const double up = field[static_cast<std::size_t>((i + 1) % N)];
            const double d = (up - um) / two_h;
            out[static_cast<std::size_t>(i)] = d * d;
        }
        return out;
    }

    // Radial kinds: central interior, second-order one-sided at the ends.
    {
        const double d0 = (-3.0 * field[0] + 4.0 * field[1] - field[2]) / two_h;
        out[0] = d0 * d0;
    }
    for (int i = 1; i + 1 < N; ++i) {
        const double d = (field[static_cast<std::size_t>(i + 1)] -
                          field[static_cast<std::size_t>(i - 1)]) / two_h;
        out[static_cast<std::size_t>(i)] = d * d;
    }
    {
        const double dn = (3.0 * field[static_cast<std::size_t>(N - 1)] -
                           4.0 * field[static_cast<std::size_t>(N - 2)] +
                           field[static_cast<std::size_t>(N - 3)]) / two_h;
        out[static_cast<std::size_t>(N - 1)] = dn * dn;
    }
    return out;
}

double geometry::geodesic_distance(int i, int j) const {
    if (i < 0 || i >= num_points_ || j < 0 || j >= num_points_)
        throw std::invalid_argument("geodesic_distance: node index out of range");
    const double d = std::abs(coord(i) - coord(j));
    if (kind_ == geometry_kind::flat_torus_1d) return std::min(d, extent_ - d);
    return d;
}

std::vector<bool> geometry::check_mask() const {
    std::vector<bool> mask(static_cast<std::size_t>(num_points_), true);
    if (kind_ == geometry_kind::radial_euclidean) {
        const int guard = static_cast<int>(std::ceil(0.10 * num_points_));
        for (int i = num_points_ - guard; i < num_points_; ++i)
            mask[static_cast<std::size_t>(i)] = false;
    }
    return mask;
}

}  // namespace liyau
