#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace macoll::lsq {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct LsqOptions {
    int max_iterations = 400;
    /// Stop when the accepted decrease of the sum of squares falls below
    /// this fraction of the new value.
    double residual_tolerance = 1e-12;
    /// Stop when ||J^T r||_inf falls below this.
    double gradient_tolerance = 1e-10;
    /// Stop when ||step|| < tol * (||x|| + tol).
    double step_tolerance = 1e-12;
    double initial_damping = 1e-3;
    double damping_increase = 10.0;
    double damping_decrease = 3.0;
    /// Damping beyond this with no acceptable step is reported as a stall.
    double max_damping = 1e32;

    void validate() const;
};

enum class Termination {
    gradient_tolerance,
    residual_tolerance,
    step_tolerance,
    max_iterations,
};

std::string_view to_string(Termination t);

struct IterationRecord {
    int iteration = 0;       ///< accepted steps so far
    double sum_sq = 0.0;     ///< at the current iterate
    double gradient_inf = 0.0;
    double damping = 0.0;    ///< damping that produced the step
    double step_norm = 0.0;  ///< 0 for the initial record
};

/// One record for the starting point, then one per accepted step.
struct LsqTrace {
    std::vector<IterationRecord> records;
    int rejected_steps = 0;
    Termination termination = Termination::max_iterations;

    int iterations() const { return records.empty() ? 0 : records.back().iteration; }
    double initial_sum_sq() const { return records.empty() ? 0.0 : records.front().sum_sq; }
    double final_sum_sq() const { return records.empty() ? 0.0 : records.back().sum_sq; }
};

/// Minimizer failure. Carries everything recorded up to the failure.
class SolverError : public std::runtime_error {
public:
    enum class Kind { diverged, stalled };

    SolverError(Kind kind, const std::string& what, LsqTrace trace)
        : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}

    Kind kind() const { return kind_; }
    const LsqTrace& trace() const { return trace_; }

private:
    Kind kind_;
    LsqTrace trace_;
};

struct LsqResult {
    Eigen::VectorXd x;
    LsqTrace trace;
};

/// Levenberg-Marquardt for min ||r(x)||^2.
///
/// Each trial step solves min ||J d + r||^2 + lambda ||d||^2 by Householder
/// QR of the stacked matrix [J; sqrt(lambda) I], never forming J^T J.
/// Steps that lower the sum of squares are accepted and lambda shrinks;
/// otherwise lambda grows and the step is retried from the same point.
LsqResult minimize(const ResidualFn& residual_fn, const JacobianFn& jacobian_fn,
                   const Eigen::VectorXd& x0, const LsqOptions& opts = {});

}  // namespace macoll::lsq
