#include "macoll/lsq.hpp"

#include "macoll/error.hpp"

#include <cmath>

namespace macoll::lsq {

void LsqOptions::validate() const {
    if (max_iterations < 0) {
        throw InvalidInput("max_iterations must be nonnegative");
    }
    if (!(residual_tolerance > 0.0) || !(gradient_tolerance > 0.0) || !(step_tolerance > 0.0)) {
        throw InvalidInput("least-squares tolerances must be positive");
    }
    if (!(initial_damping > 0.0) || !(max_damping > initial_damping)) {
        throw InvalidInput("damping must start positive and below its cap");
    }
    if (!(damping_increase > 1.0) || !(damping_decrease > 1.0)) {
        throw InvalidInput("damping factors must exceed 1");
    }
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::gradient_tolerance: return "gradient";
        case Termination::residual_tolerance: return "residual";
        case Termination::step_tolerance: return "step";
        case Termination::max_iterations: return "max_iterations";
    }
    return "unknown";
}

namespace {

/// Solves min ||J d + r||^2 + damping ||d||^2.
Eigen::VectorXd damped_step(const Eigen::MatrixXd& jac, const Eigen::VectorXd& r, double damping) {
    const Eigen::Index m = jac.rows();
    const Eigen::Index n = jac.cols();
    Eigen::MatrixXd stacked(m + n, n);
    stacked.topRows(m) = jac;
    stacked.bottomRows(n) = std::sqrt(damping) * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + n);
    rhs.head(m) = -r;
    return stacked.householderQr().solve(rhs);
}

}  // namespace

LsqResult minimize(const ResidualFn& residual_fn, const JacobianFn& jacobian_fn,
                   const Eigen::VectorXd& x0, const LsqOptions& opts) {
    opts.validate();

    LsqResult out{x0, {}};
    LsqTrace& trace = out.trace;
    Eigen::VectorXd& x = out.x;

    Eigen::VectorXd r = residual_fn(x);
    if (!r.allFinite()) {
        throw InvalidInput("residual is not finite at the starting point");
    }
    Eigen::MatrixXd jac = jacobian_fn(x);
    if (jac.rows() != r.size() || jac.cols() != x.size()) {
        throw DimensionError("jacobian is " + std::to_string(jac.rows()) + "x" +
                             std::to_string(jac.cols()) + ", expected " + std::to_string(r.size()) +
                             "x" + std::to_string(x.size()));
    }

    double sum_sq = r.squaredNorm();
    double grad_inf = (jac.transpose() * r).lpNorm<Eigen::Infinity>();
    double damping = opts.initial_damping;
    trace.records.push_back({0, sum_sq, grad_inf, 0.0, 0.0});

    int iteration = 0;
    while (true) {
        if (grad_inf <= opts.gradient_tolerance) {
            trace.termination = Termination::gradient_tolerance;
            return out;
        }
        if (iteration >= opts.max_iterations) {
            trace.termination = Termination::max_iterations;
            return out;
        }

        // Inner loop: raise the damping until a step lowers the sum of squares.
        while (true) {
            const Eigen::VectorXd step = damped_step(jac, r, damping);
            if (!step.allFinite()) {
                throw SolverError(SolverError::Kind::stalled,
                                  "damped least-squares step is not finite", trace);
            }
            const double step_norm = step.norm();
            const bool tiny_step =
                step_norm < opts.step_tolerance * (x.norm() + opts.step_tolerance);

            Eigen::VectorXd x_trial = x + step;
            Eigen::VectorXd r_trial = residual_fn(x_trial);
            if (r_trial.size() != r.size()) {
                throw DimensionError("residual length changed during minimization");
            }
            if (!r_trial.allFinite()) {
                throw SolverError(SolverError::Kind::diverged,
                                  "residual became non-finite at iteration " +
                                      std::to_string(iteration + 1),
                                  trace);
            }
            const double trial_sum_sq = r_trial.squaredNorm();

            if (trial_sum_sq < sum_sq) {
                const double decrease = sum_sq - trial_sum_sq;
                x = std::move(x_trial);
                r = std::move(r_trial);
                sum_sq = trial_sum_sq;
                jac = jacobian_fn(x);
                grad_inf = (jac.transpose() * r).lpNorm<Eigen::Infinity>();
                ++iteration;
                trace.records.push_back({iteration, sum_sq, grad_inf, damping, step_norm});
                damping /= opts.damping_decrease;

                if (decrease < opts.residual_tolerance * sum_sq) {
                    trace.termination = Termination::residual_tolerance;
                    return out;
                }
                if (tiny_step) {
                    trace.termination = Termination::step_tolerance;
                    return out;
                }
                break;
            }

            ++trace.rejected_steps;
            if (tiny_step) {
                // No representable step lowers the objective any more.
                trace.termination = Termination::step_tolerance;
                return out;
            }
            damping *= opts.damping_increase;
            if (damping > opts.max_damping) {
                throw SolverError(SolverError::Kind::stalled,
                                  "damping exceeded its cap without an acceptable step", trace);
            }
        }
    }
}

}  // namespace macoll::lsq
