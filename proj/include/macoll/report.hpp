#pragma once

#include "macoll/lsq.hpp"
#include "macoll/polytrial.hpp"

#include <optional>

namespace macoll {

/// Errors of a computed polynomial measured on a uniform evaluation grid.
/// Solution errors are absent when the problem has no known solution.
struct ErrorMetrics {
    std::optional<double> rmse_solution;
    std::optional<double> max_solution;
    double max_boundary = 0.0;  ///< max |u - f| on the grid perimeter
    double max_pde = 0.0;       ///< max |u_xx u_yy - u_xy^2 - g| on the grid
    int grid_resolution = 0;    ///< points per side
};

/// Outcome of one collocation solve at a fixed degree.
struct SolveReport {
    int degree = 0;
    CoeffTriangle start;
    CoeffTriangle coeffs;
    std::size_t unknowns = 0;
    std::size_t domain_points = 0;    ///< K_D
    std::size_t boundary_points = 0;  ///< K_B
    double sum_sq_initial = 0.0;
    double sum_sq_final = 0.0;
    // Euclidean norms of the two residual blocks (boundary block weighted).
    double pde_residual_initial = 0.0;
    double pde_residual_final = 0.0;
    double boundary_residual_initial = 0.0;
    double boundary_residual_final = 0.0;
    lsq::LsqTrace trace;
    ErrorMetrics metrics;
};

}  // namespace macoll
