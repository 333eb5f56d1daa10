#pragma once

#include "macoll/collocation.hpp"
#include "macoll/polytrial.hpp"
#include "macoll/problem.hpp"
#include "macoll/report.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace macoll {

inline constexpr int kDefaultGridResolution = 101;

/// Evaluates on a grid_resolution^2 uniform grid over [-1,1]^2 and on its
/// 4(grid_resolution - 1) perimeter nodes.
ErrorMetrics compute_metrics(const MAProblem& problem, const CoeffTriangle& c,
                             int grid_resolution = kDefaultGridResolution);

/// Discrete seminorms of a trial polynomial over a point set, next to
/// their continuous counterparts.
///
/// Continuous maxima are taken over a fine uniform grid together with the
/// point set itself, so each one bounds its discrete counterpart.
struct StabilityReport {
    int degree = 0;
    double h_domain = 0.0;
    double h_boundary = 0.0;
    double norm_boundary = 0.0;  ///< max |u| over Z^B
    double norm_xx = 0.0;        ///< max |u_xx| over Z^D
    double norm_yy = 0.0;        ///< max |u_yy| over Z^D
    double sup_boundary = 0.0;   ///< max |u| over the fine boundary grid
    double sup_xx = 0.0;
    double sup_yy = 0.0;
    double sup_laplacian = 0.0;  ///< max |u_xx + u_yy| over the fine grid
    double boundary_ratio = 0.0;   ///< sup_boundary / norm_boundary
    double laplacian_ratio = 0.0;  ///< sup_laplacian / (2 norm_xx + 2 norm_yy)
};

StabilityReport stability_report(const CoeffTriangle& c, const PointSet& points,
                                 int fine_resolution = kDefaultGridResolution);

/// Largest per-edge ratio of max |u| on a fine edge grid to max |u| on
/// edge nodes at spacing <= h_b. The fine grid refines the coarse one, so
/// the ratio is at least 1.
double boundary_sup_ratio(const CoeffTriangle& c, double h_b);

/// max |Laplacian u| on a fine grid divided by 2||u||_xx + 2||u||_yy over
/// a full regular grid whose fill distance is at most h_d. 0 when both
/// sides vanish.
double laplacian_sup_ratio(const CoeffTriangle& c, double h_d);

struct StabilityCheck {
    int degree = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double fill_distance = 0.0;
    double worst_ratio = 0.0;
};

/// Random trial polynomials with coefficients uniform in [-1,1].
CoeffTriangle random_trial_polynomial(int degree, std::uint64_t seed);

/// Requires h_b <= M^-2 / 2, where the Markov bound caps the ratio at 2.
StabilityCheck boundary_stability_check(int degree, int trials, double h_b,
                                        std::uint64_t seed = 0);

/// Requires h_d <= M^-2 / 4; the ratio is then expected to stay <= 1.
StabilityCheck laplacian_stability_check(int degree, int trials, double h_d,
                                         std::uint64_t seed = 0);

/// Ratios below this RMSE are treated as 0/0 and left out.
inline constexpr double kRatioFloor = 1e-13;

struct ConvergenceRow {
    int degree = 0;
    std::optional<double> rmse_solution;
    std::optional<double> max_solution;
    double max_boundary = 0.0;
    double max_pde = 0.0;
    int iterations = 0;
    /// rmse of this row over rmse of the previous row.
    std::optional<double> rmse_ratio;
};

std::vector<ConvergenceRow> convergence_table(std::span<const SolveReport> reports);

}  // namespace macoll
