#pragma once

#include <string>
#include <vector>

namespace liyau {

enum class geometry_kind {
    flat_torus_1d,     // periodic interval of circumference `extent`, n = 1
    radial_euclidean,  // radial coordinate on [0, extent] in dimension n
    radial_sphere,     // polar angle on (0, pi) on the round n-sphere
};

std::string to_string(geometry_kind kind);
geometry_kind geometry_kind_from_string(const std::string& name);

// A discretized 1-parameter model domain with nonnegative Ricci curvature,
// exposing second-order Laplace-Beltrami and squared-gradient stencils and
// geodesic distances. Immutable after construction.
//
// Node layouts:
//   flat_torus_1d:    x_i = i*L/N, i = 0..N-1, periodic; spacing L/N.
//   radial_euclidean: r_i = i*R/(N-1), i = 0..N-1; spacing R/(N-1). The
//                     origin uses the regularized value n*u_rr(0) under even
//                     extension; the outer boundary is homogeneous Neumann
//                     (mirror ghost). Inequality checks should exclude the
//                     guard band near the artificial outer boundary.
//   radial_sphere:    theta_i = (i + 1/2)*pi/N, i = 0..N-1 (cell-centered,
//                     strictly inside (0, pi)); spacing pi/N. The end nodes
//                     use the regularized pole value n*u_tt under even
//                     extension across each pole.
class geometry {
  public:
    // extent: circumference (torus) or outer radius (radial_euclidean);
    // ignored for radial_sphere, whose extent is always pi.
    geometry(geometry_kind kind, int n, int num_points, double extent);

    geometry_kind kind() const { return kind_; }
    int dim() const { return n_; }
    int num_points() const { return num_points_; }
    double extent() const { return extent_; }
    double spacing() const { return spacing_; }
    bool nonneg_ricci() const { return true; }  // flat (0) or round sphere (> 0)

    double coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& coords() const { return coords_; }

    // Discrete Laplace-Beltrami operator, second-order accurate in spacing.
    std::vector<double> laplacian(const std::vector<double>& field) const;

    // Squared first derivative: central differences in the interior,
    // second-order one-sided at the ends of the radial kinds.
    std::vector<double> grad_sq(const std::vector<double>& field) const;

    // Geodesic distance between nodes: wrap-aware on the torus, |difference|
    // of the coordinate on the radial kinds.
    double geodesic_distance(int i, int j) const;

    // Mask of nodes included in inequality checks: excludes
    // ceil(10% * num_points) nodes nearest the artificial outer boundary of
    // radial_euclidean; all nodes elsewhere.
    std::vector<bool> check_mask() const;

  private:
    void validate_field(const std::vector<double>& field) const;
    // 5-point 4th-order first derivative with even extension at the
    // origin/poles and mirror extension at the Neumann boundary; used for
    // the first-derivative term of the radial Laplacians so that the 1/r
    // (resp. cot theta) amplification does not dominate the truncation
    // error.
    double first_deriv_wide(const std::vector<double>& field, int i) const;

    geometry_kind kind_;
    int n_;
    int num_points_;
    double extent_;
    double spacing_;
    std::vector<double> coords_;
};

// Endpoints and sampling resolution of a discrete space-time path used by
// the Harnack comparison.
struct path_spec {
    int x1 = 0;
    int x2 = 0;
    double t1 = 0.0;
    double t2 = 0.0;
    int segments = 64;  // trapezoid subintervals along the path (>= 8)
};

}  // namespace liyau
