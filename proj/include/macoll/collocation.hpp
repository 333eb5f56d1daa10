#pragma once

#include "macoll/polytrial.hpp"
#include "macoll/problem.hpp"

#include <Eigen/Dense>

#include <vector>

namespace macoll {

/// Collocation points: Z^D where the PDE is sampled and Z^B where the
/// boundary condition is sampled, with their fill distances.
struct PointSet {
    std::vector<Point2> domain_points;
    std::vector<Point2> boundary_points;
    double h_domain = 0.0;    ///< fill distance of Z^D over the closed square
    double h_boundary = 0.0;  ///< fill distance of Z^B along the boundary
    double spacing = 0.0;     ///< grid spacing the sets were generated from
};

/// Default multiplier on boundary residuals.
inline constexpr double kDefaultBoundaryWeight = 10.0;

/// Regular grid with `intervals` subdivisions per side.
///
/// Z^D is the full (intervals+1)^2 grid, or only its strictly interior
/// nodes when `include_boundary_in_domain` is false. Z^B is the perimeter
/// traversed counterclockwise from (-1,-1), each corner listed once.
PointSet grid_points(int intervals, bool include_boundary_in_domain = true);

/// Spacing h = 2/M (h = 1 for M = 0).
PointSet regular_points(int degree, bool include_boundary_in_domain = true);

/// Spacing h = 2 / ceil(2M^2/c), so that h_B = h/2 <= (c/2) M^-2.
PointSet oversampled_points(int degree, double safety, bool include_boundary_in_domain = true);

/// Precomputed collocation data for one degree. Does not depend on the
/// coefficients. Residual order: all domain rows, then all boundary rows.
struct ResidualSystem {
    int degree = 0;
    double boundary_weight = kDefaultBoundaryWeight;
    MAProblem problem;
    PointSet points;
    std::vector<BasisTables> domain_tables;
    std::vector<BasisTables> boundary_tables;
    std::vector<double> g_samples;
    std::vector<double> f_samples;

    Eigen::Index rows() const {
        return static_cast<Eigen::Index>(domain_tables.size() + boundary_tables.size());
    }
    Eigen::Index unknowns() const { return static_cast<Eigen::Index>(triangle_size(degree)); }
    Eigen::Index domain_rows() const { return static_cast<Eigen::Index>(domain_tables.size()); }
};

ResidualSystem assemble(const MAProblem& problem, const PointSet& points, int degree,
                        double boundary_weight = kDefaultBoundaryWeight);

/// Domain rows: u_xx u_yy - u_xy^2 - g. Boundary rows: w (f - u).
Eigen::VectorXd residual(const ResidualSystem& sys, const CoeffTriangle& c);

/// d residual / d c in graded-lex column order.
Eigen::MatrixXd jacobian(const ResidualSystem& sys, const CoeffTriangle& c);

}  // namespace macoll
