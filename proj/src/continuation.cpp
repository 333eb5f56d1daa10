#include "macoll/continuation.hpp"

#include "macoll/error.hpp"

#include <string>

namespace macoll {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const CoeffTriangle& c) {
    const auto flat = c.flat();
    return {flat.data(), static_cast<Eigen::Index>(flat.size())};
}

CoeffTriangle as_triangle(int degree, const Eigen::VectorXd& v) {
    return CoeffTriangle::from_flat(degree, std::span<const double>(v.data(), v.size()));
}

}  // namespace

void SweepConfig::validate() const {
    if (degrees.empty()) {
        throw InvalidInput("sweep needs at least one degree");
    }
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0) {
            throw InvalidInput("degrees must be nonnegative");
        }
        if (i > 0 && degrees[i] <= degrees[i - 1]) {
            throw InvalidInput("degrees must be strictly ascending");
        }
    }
    if (!(boundary_weight > 0.0)) {
        throw InvalidInput("boundary weight must be positive");
    }
    if (oversample_safety && !(*oversample_safety > 0.0 && *oversample_safety <= 1.0)) {
        throw InvalidInput("oversampling safety factor must lie in (0, 1]");
    }
    if (chain_seed && chain_seed->degree() > degrees.front()) {
        throw InvalidInput("chain seed degree exceeds the first sweep degree");
    }
    lsq.validate();
}

PointSet points_for(int degree, const SweepConfig& config) {
    if (config.fixed_points) {
        return *config.fixed_points;
    }
    // Oversampling is undefined at degree 0; that degree keeps the regular set.
    if (config.oversample_safety && degree >= 1) {
        return oversampled_points(degree, *config.oversample_safety,
                                  config.include_boundary_in_domain);
    }
    return regular_points(degree, config.include_boundary_in_domain);
}

SolveReport solve_once(const MAProblem& problem, int degree, const CoeffTriangle& start,
                       const SweepConfig& config) {
    if (start.degree() != degree) {
        throw DimensionError("start has degree " + std::to_string(start.degree()) +
                             ", solve requested degree " + std::to_string(degree));
    }
    const ResidualSystem sys =
        assemble(problem, points_for(degree, config), degree, config.boundary_weight);

    const auto residual_fn = [&](const Eigen::VectorXd& x) {
        return residual(sys, as_triangle(degree, x));
    };
    const auto jacobian_fn = [&](const Eigen::VectorXd& x) {
        return jacobian(sys, as_triangle(degree, x));
    };

    lsq::LsqResult result;
    try {
        result = lsq::minimize(residual_fn, jacobian_fn, as_vector(start), config.lsq);
    } catch (const lsq::SolverError& e) {
        throw lsq::SolverError(e.kind(), "degree " + std::to_string(degree) + ": " + e.what(),
                               e.trace());
    }

    SolveReport report;
    report.degree = degree;
    report.start = start;
    report.coeffs = as_triangle(degree, result.x);
    report.unknowns = triangle_size(degree);
    report.domain_points = sys.points.domain_points.size();
    report.boundary_points = sys.points.boundary_points.size();

    const Eigen::Index nd = sys.domain_rows();
    const Eigen::VectorXd r0 = residual(sys, start);
    const Eigen::VectorXd r1 = residual(sys, report.coeffs);
    report.sum_sq_initial = r0.squaredNorm();
    report.sum_sq_final = r1.squaredNorm();
    report.pde_residual_initial = r0.head(nd).norm();
    report.pde_residual_final = r1.head(nd).norm();
    report.boundary_residual_initial = r0.tail(r0.size() - nd).norm();
    report.boundary_residual_final = r1.tail(r1.size() - nd).norm();
    report.trace = std::move(result.trace);
    report.metrics = compute_metrics(problem, report.coeffs, config.grid_resolution);
    return report;
}

SweepResult sweep(const MAProblem& problem, const SweepConfig& config) {
    config.validate();
    if (config.start_mode == StartMode::taylor && !problem.taylor) {
        throw InvalidInput("problem '" + problem.name + "' has no Taylor start");
    }

    SweepResult out;
    for (const int degree : config.degrees) {
        CoeffTriangle start;
        if (config.start_mode == StartMode::taylor) {
            start = (*problem.taylor)(degree);
        } else if (!out.reports.empty()) {
            start = embed(out.reports.back().coeffs, degree);
        } else if (config.chain_seed) {
            start = embed(*config.chain_seed, degree);
        } else {
            CoeffTriangle one(0);
            one(0, 0) = 1.0;
            start = embed(one, degree);
        }

        try {
            out.reports.push_back(solve_once(problem, degree, start, config));
        } catch (const lsq::SolverError& e) {
            out.failure = SweepFailure{degree, e.what()};
            break;
        }
    }
    return out;
}

}  // namespace macoll
