#include "macoll/collocation.hpp"

#include "macoll/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

namespace macoll {

namespace {

double grid_coordinate(int i, int intervals) {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(intervals);
}

void check_degree_match(const ResidualSystem& sys, const CoeffTriangle& c) {
    if (c.degree() != sys.degree) {
        throw DimensionError("coefficients have degree " + std::to_string(c.degree()) +
                             " but the system was assembled for degree " +
                             std::to_string(sys.degree));
    }
}

double dot(std::span<const double> a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

}  // namespace

PointSet grid_points(int intervals, bool include_boundary_in_domain) {
    if (intervals < 1) {
        throw InvalidInput("grid needs at least one interval per side");
    }
    if (!include_boundary_in_domain && intervals < 2) {
        throw InvalidInput("grid with " + std::to_string(intervals) +
                           " interval(s) per side has no interior nodes");
    }

    PointSet ps;
    ps.spacing = 2.0 / intervals;
    ps.h_boundary = ps.spacing / 2.0;
    ps.h_domain = include_boundary_in_domain ? ps.spacing / std::sqrt(2.0)
                                             : ps.spacing * std::sqrt(2.0);

    const int lo = include_boundary_in_domain ? 0 : 1;
    const int hi = include_boundary_in_domain ? intervals : intervals - 1;
    ps.domain_points.reserve(static_cast<std::size_t>((hi - lo + 1) * (hi - lo + 1)));
    for (int j = lo; j <= hi; ++j) {
        for (int i = lo; i <= hi; ++i) {
            ps.domain_points.push_back({grid_coordinate(i, intervals), grid_coordinate(j, intervals)});
        }
    }

    ps.boundary_points.reserve(static_cast<std::size_t>(4 * intervals));
    for (int i = 0; i < intervals; ++i) {
        ps.boundary_points.push_back({grid_coordinate(i, intervals), -1.0});
    }
    for (int j = 0; j < intervals; ++j) {
        ps.boundary_points.push_back({1.0, grid_coordinate(j, intervals)});
    }
    for (int i = intervals; i > 0; --i) {
        ps.boundary_points.push_back({grid_coordinate(i, intervals), 1.0});
    }
    for (int j = intervals; j > 0; --j) {
        ps.boundary_points.push_back({-1.0, grid_coordinate(j, intervals)});
    }
    return ps;
}

PointSet regular_points(int degree, bool include_boundary_in_domain) {
    if (degree < 0) {
        throw InvalidInput("degree must be nonnegative, got " + std::to_string(degree));
    }
    return grid_points(degree == 0 ? 2 : degree, include_boundary_in_domain);
}

PointSet oversampled_points(int degree, double safety, bool include_boundary_in_domain) {
    if (degree < 1) {
        throw InvalidInput("oversampled points need degree >= 1, got " + std::to_string(degree));
    }
    if (!(safety > 0.0 && safety <= 1.0)) {
        throw InvalidInput("oversampling safety factor must lie in (0, 1], got " +
                           std::to_string(safety));
    }
    const double m2 = static_cast<double>(degree) * degree;
    const double needed = 2.0 * m2 / safety;
    // Absorb rounding in 2M^2/c so exact integers are not bumped up.
    const auto intervals = static_cast<int>(std::ceil(needed * (1.0 - 1e-14)));
    return grid_points(intervals, include_boundary_in_domain);
}

ResidualSystem assemble(const MAProblem& problem, const PointSet& points, int degree,
                        double boundary_weight) {
    if (!(boundary_weight > 0.0) || !std::isfinite(boundary_weight)) {
        throw InvalidInput("boundary weight must be positive, got " + std::to_string(boundary_weight));
    }
    if (degree < 0) {
        throw InvalidInput("degree must be nonnegative, got " + std::to_string(degree));
    }
    if (!problem.g || !problem.f) {
        throw InvalidInput("problem is missing its right-hand side or boundary data");
    }
    for (const Point2& z : points.boundary_points) {
        if (std::abs(std::max(std::abs(z.x), std::abs(z.y)) - 1.0) > 1e-14) {
            throw InvalidInput("boundary point off the boundary of the square");
        }
    }
    if (const double gmin = sampled_min_rhs(problem); !(gmin > 0.0)) {
        spdlog::warn("problem '{}' has g <= 0 somewhere (min sampled {}); the convex branch "
                     "may not exist",
                     problem.name, gmin);
    }

    ResidualSystem sys;
    sys.degree = degree;
    sys.boundary_weight = boundary_weight;
    sys.problem = problem;
    sys.points = points;
    sys.domain_tables.reserve(points.domain_points.size());
    sys.g_samples.reserve(points.domain_points.size());
    for (const Point2& z : points.domain_points) {
        sys.domain_tables.push_back(build_tables(z, degree));
        sys.g_samples.push_back(problem.g(z));
    }
    sys.boundary_tables.reserve(points.boundary_points.size());
    sys.f_samples.reserve(points.boundary_points.size());
    for (const Point2& z : points.boundary_points) {
        sys.boundary_tables.push_back(build_tables(z, degree));
        sys.f_samples.push_back(problem.f(z));
    }
    return sys;
}

Eigen::VectorXd residual(const ResidualSystem& sys, const CoeffTriangle& c) {
    check_degree_match(sys, c);
    Eigen::VectorXd r(sys.rows());
    const auto coeffs = c.flat();
    const Eigen::Index nd = sys.domain_rows();
    for (Eigen::Index i = 0; i < nd; ++i) {
        const auto& t = sys.domain_tables[static_cast<std::size_t>(i)];
        const double uxx = dot(coeffs, t.pxx);
        const double uxy = dot(coeffs, t.pxy);
        const double uyy = dot(coeffs, t.pyy);
        r[i] = uxx * uyy - uxy * uxy - sys.g_samples[static_cast<std::size_t>(i)];
    }
    for (std::size_t j = 0; j < sys.boundary_tables.size(); ++j) {
        const double u = dot(coeffs, sys.boundary_tables[j].p);
        r[nd + static_cast<Eigen::Index>(j)] = sys.boundary_weight * (sys.f_samples[j] - u);
    }
    return r;
}

Eigen::MatrixXd jacobian(const ResidualSystem& sys, const CoeffTriangle& c) {
    check_degree_match(sys, c);
    const Eigen::Index cols = sys.unknowns();
    Eigen::MatrixXd jac(sys.rows(), cols);
    const auto coeffs = c.flat();
    const Eigen::Index nd = sys.domain_rows();
    for (Eigen::Index i = 0; i < nd; ++i) {
        const auto& t = sys.domain_tables[static_cast<std::size_t>(i)];
        const double uxx = dot(coeffs, t.pxx);
        const double uxy = dot(coeffs, t.pxy);
        const double uyy = dot(coeffs, t.pyy);
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            jac(i, k) = t.pxx[kk] * uyy + uxx * t.pyy[kk] - 2.0 * uxy * t.pxy[kk];
        }
    }
    for (std::size_t j = 0; j < sys.boundary_tables.size(); ++j) {
        const auto& p = sys.boundary_tables[j].p;
        for (Eigen::Index k = 0; k < cols; ++k) {
            jac(nd + static_cast<Eigen::Index>(j), k) = -sys.boundary_weight * p[static_cast<std::size_t>(k)];
        }
    }
    return jac;
}

}  // namespace macoll
