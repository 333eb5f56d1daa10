#pragma once

#include "macoll/analysis.hpp"
#include "macoll/collocation.hpp"
#include "macoll/lsq.hpp"
#include "macoll/problem.hpp"
#include "macoll/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace macoll {

enum class StartMode {
    taylor,      ///< each degree starts from the problem's Taylor polynomial
    cold_chain,  ///< constant 1 at the first degree, then the previous optimum
};

struct SweepConfig {
    std::vector<int> degrees{0, 2, 4, 6, 8, 10, 12};
    StartMode start_mode = StartMode::cold_chain;
    double boundary_weight = kDefaultBoundaryWeight;
    /// When set, points come from oversampled_points with this safety factor.
    std::optional<double> oversample_safety;
    bool include_boundary_in_domain = true;
    /// Overrides per-degree point generation entirely.
    std::optional<PointSet> fixed_points;
    /// Replaces the constant 1 at the head of a cold chain.
    std::optional<CoeffTriangle> chain_seed;
    int grid_resolution = kDefaultGridResolution;
    lsq::LsqOptions lsq;

    void validate() const;
};

/// Points used at `degree` under this configuration.
PointSet points_for(int degree, const SweepConfig& config);

/// Assembles, minimizes from `start` and measures the result.
/// Minimizer failures are rethrown with the degree in the message.
SolveReport solve_once(const MAProblem& problem, int degree, const CoeffTriangle& start,
                       const SweepConfig& config);

struct SweepFailure {
    int degree = 0;
    std::string message;
};

struct SweepResult {
    std::vector<SolveReport> reports;
    std::optional<SweepFailure> failure;
};

/// One solve per configured degree. A failing degree stops the sweep; the
/// reports completed before it are kept.
SweepResult sweep(const MAProblem& problem, const SweepConfig& config);

}  // namespace macoll
