#include "macoll/analysis.hpp"

#include "macoll/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace macoll {

namespace {

double grid_coordinate(int i, int intervals) {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(intervals);
}

/// max |p| over the (intervals+1)^2 tensor grid, reducing each row to a
/// univariate polynomial in x first.
double max_abs_on_grid(const CoeffTriangle& c, int intervals) {
    const int degree = c.degree();
    const auto coeffs = c.flat();
    std::vector<double> row(static_cast<std::size_t>(degree) + 1);
    double best = 0.0;
    for (int j = 0; j <= intervals; ++j) {
        const double y = grid_coordinate(j, intervals);
        for (int m = 0; m <= degree; ++m) {
            double a = 0.0;
            for (int n = degree - m; n >= 0; --n) {
                a = a * y + coeffs[flat_index(m, n)];
            }
            row[static_cast<std::size_t>(m)] = a;
        }
        for (int i = 0; i <= intervals; ++i) {
            const double x = grid_coordinate(i, intervals);
            double v = 0.0;
            for (int m = degree; m >= 0; --m) {
                v = v * x + row[static_cast<std::size_t>(m)];
            }
            best = std::max(best, std::abs(v));
        }
    }
    return best;
}

double max_abs_at(const CoeffTriangle& c, std::span<const Point2> points) {
    double best = 0.0;
    for (const Point2& z : points) {
        best = std::max(best, std::abs(eval_value(c, z)));
    }
    return best;
}

/// Restriction of u to one edge as a univariate polynomial in the free
/// coordinate. `fixed_is_y` selects the edges y = side versus x = side.
std::vector<double> edge_polynomial(const CoeffTriangle& c, bool fixed_is_y, double side) {
    const int degree = c.degree();
    const auto coeffs = c.flat();
    std::vector<double> p(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int m = 0; m <= degree; ++m) {
        for (int n = 0; m + n <= degree; ++n) {
            const double v = coeffs[flat_index(m, n)];
            if (fixed_is_y) {
                p[static_cast<std::size_t>(m)] += v * std::pow(side, n);
            } else {
                p[static_cast<std::size_t>(n)] += v * std::pow(side, m);
            }
        }
    }
    return p;
}

double horner(const std::vector<double>& p, double t) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = v * t + *it;
    }
    return v;
}

double safe_ratio(double num, double den) {
    if (den == 0.0) {
        return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return num / den;
}

void check_trials(int degree, int trials) {
    if (degree < 0) {
        throw InvalidInput("degree must be nonnegative");
    }
    if (trials < 1) {
        throw InvalidInput("stability checks need at least one trial");
    }
}

/// Admissible fill distance c M^-2, infinite for M = 0.
double markov_fill_bound(int degree, double constant) {
    if (degree == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return constant / (static_cast<double>(degree) * degree);
}

int intervals_for_spacing(double spacing) {
    return static_cast<int>(std::ceil(2.0 / spacing * (1.0 - 1e-14)));
}

}  // namespace

ErrorMetrics compute_metrics(const MAProblem& problem, const CoeffTriangle& c,
                             int grid_resolution) {
    if (grid_resolution < 11) {
        throw InvalidInput("metric grid resolution must be at least 11, got " +
                           std::to_string(grid_resolution));
    }
    const CoeffTriangle cxx = derivative(c, 2, 0);
    const CoeffTriangle cxy = derivative(c, 1, 1);
    const CoeffTriangle cyy = derivative(c, 0, 2);
    const int intervals = grid_resolution - 1;

    ErrorMetrics out;
    out.grid_resolution = grid_resolution;
    double sum_sq = 0.0;
    double max_sol = 0.0;
    for (int j = 0; j <= intervals; ++j) {
        for (int i = 0; i <= intervals; ++i) {
            const Point2 z{grid_coordinate(i, intervals), grid_coordinate(j, intervals)};
            const double uxx = eval_value(cxx, z);
            const double uxy = eval_value(cxy, z);
            const double uyy = eval_value(cyy, z);
            out.max_pde = std::max(out.max_pde, std::abs(uxx * uyy - uxy * uxy - problem.g(z)));
            if (problem.exact) {
                const double e = eval_value(c, z) - (*problem.exact)(z).u;
                sum_sq += e * e;
                max_sol = std::max(max_sol, std::abs(e));
            }
        }
    }
    if (problem.exact) {
        const double count = static_cast<double>(grid_resolution) * grid_resolution;
        out.rmse_solution = std::sqrt(sum_sq / count);
        out.max_solution = max_sol;
    }
    for (const Point2& z : grid_points(intervals).boundary_points) {
        out.max_boundary = std::max(out.max_boundary, std::abs(eval_value(c, z) - problem.f(z)));
    }
    return out;
}

StabilityReport stability_report(const CoeffTriangle& c, const PointSet& points,
                                 int fine_resolution) {
    if (fine_resolution < 2) {
        throw InvalidInput("fine grid needs at least 2 points per side");
    }
    const CoeffTriangle cxx = derivative(c, 2, 0);
    const CoeffTriangle cyy = derivative(c, 0, 2);
    const CoeffTriangle lap = cxx + cyy;
    const int fine = fine_resolution - 1;

    StabilityReport r;
    r.degree = c.degree();
    r.h_domain = points.h_domain;
    r.h_boundary = points.h_boundary;
    r.norm_boundary = max_abs_at(c, points.boundary_points);
    r.norm_xx = max_abs_at(cxx, points.domain_points);
    r.norm_yy = max_abs_at(cyy, points.domain_points);

    const auto fine_boundary = grid_points(fine).boundary_points;
    r.sup_boundary = std::max(max_abs_at(c, fine_boundary), r.norm_boundary);
    r.sup_xx = std::max(max_abs_on_grid(cxx, fine), r.norm_xx);
    r.sup_yy = std::max(max_abs_on_grid(cyy, fine), r.norm_yy);
    r.sup_laplacian =
        std::max(max_abs_on_grid(lap, fine), max_abs_at(lap, points.domain_points));

    r.boundary_ratio = safe_ratio(r.sup_boundary, r.norm_boundary);
    r.laplacian_ratio = safe_ratio(r.sup_laplacian, 2.0 * r.norm_xx + 2.0 * r.norm_yy);
    return r;
}

double boundary_sup_ratio(const CoeffTriangle& c, double h_b) {
    if (!(h_b > 0.0) || h_b > 2.0) {
        throw InvalidInput("boundary spacing must lie in (0, 2], got " + std::to_string(h_b));
    }
    const int degree = c.degree();
    const int coarse = intervals_for_spacing(h_b);
    // At least 10 M^2 fine points per edge, nested in the coarse nodes.
    const int wanted = 10 * degree * degree;
    const int refine = std::max(1, (wanted - 1 + coarse - 1) / coarse);
    const int fine = refine * coarse;

    double worst = 0.0;
    for (const bool fixed_is_y : {true, false}) {
        for (const double side : {-1.0, 1.0}) {
            const auto p = edge_polynomial(c, fixed_is_y, side);
            double fine_max = 0.0;
            double coarse_max = 0.0;
            for (int i = 0; i <= fine; ++i) {
                const double v = std::abs(horner(p, grid_coordinate(i, fine)));
                fine_max = std::max(fine_max, v);
                if (i % refine == 0) {
                    coarse_max = std::max(coarse_max, v);
                }
            }
            worst = std::max(worst, safe_ratio(fine_max, coarse_max));
        }
    }
    return worst;
}

double laplacian_sup_ratio(const CoeffTriangle& c, double h_d) {
    if (!(h_d > 0.0)) {
        throw InvalidInput("domain fill distance must be positive, got " + std::to_string(h_d));
    }
    const int degree = c.degree();
    const CoeffTriangle cxx = derivative(c, 2, 0);
    const CoeffTriangle cyy = derivative(c, 0, 2);
    const CoeffTriangle lap = cxx + cyy;

    // A square grid of spacing h has fill distance h / sqrt(2).
    const int coarse = intervals_for_spacing(std::sqrt(2.0) * h_d);
    const int fine = std::max(kDefaultGridResolution, 10 * degree * degree + 1) - 1;

    const double discrete = 2.0 * max_abs_on_grid(cxx, coarse) + 2.0 * max_abs_on_grid(cyy, coarse);
    return safe_ratio(max_abs_on_grid(lap, fine), discrete);
}

CoeffTriangle random_trial_polynomial(int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoeffTriangle c(degree);
    for (double& v : c.flat()) {
        v = dist(rng);
    }
    return c;
}

StabilityCheck boundary_stability_check(int degree, int trials, double h_b, std::uint64_t seed) {
    check_trials(degree, trials);
    const double bound = markov_fill_bound(degree, 0.5);
    if (!(h_b > 0.0) || h_b > bound * (1.0 + 1e-12)) {
        throw InvalidInput("boundary spacing " + std::to_string(h_b) +
                           " violates h_B <= M^-2/2 for M = " + std::to_string(degree));
    }
    StabilityCheck out{degree, trials, seed, h_b, 0.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoeffTriangle c(degree);
    for (int t = 0; t < trials; ++t) {
        for (double& v : c.flat()) {
            v = dist(rng);
        }
        out.worst_ratio = std::max(out.worst_ratio, boundary_sup_ratio(c, h_b));
    }
    return out;
}

StabilityCheck laplacian_stability_check(int degree, int trials, double h_d, std::uint64_t seed) {
    check_trials(degree, trials);
    const double bound = markov_fill_bound(degree, 0.25);
    if (!(h_d > 0.0) || h_d > bound * (1.0 + 1e-12)) {
        throw InvalidInput("domain fill distance " + std::to_string(h_d) +
                           " violates h_D <= M^-2/4 for M = " + std::to_string(degree));
    }
    StabilityCheck out{degree, trials, seed, h_d, 0.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoeffTriangle c(degree);
    for (int t = 0; t < trials; ++t) {
        for (double& v : c.flat()) {
            v = dist(rng);
        }
        out.worst_ratio = std::max(out.worst_ratio, laplacian_sup_ratio(c, h_d));
    }
    return out;
}

std::vector<ConvergenceRow> convergence_table(std::span<const SolveReport> reports) {
    if (reports.empty()) {
        throw InvalidInput("convergence table needs at least one report");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(reports.size());
    for (const SolveReport& r : reports) {
        ConvergenceRow row;
        row.degree = r.degree;
        row.rmse_solution = r.metrics.rmse_solution;
        row.max_solution = r.metrics.max_solution;
        row.max_boundary = r.metrics.max_boundary;
        row.max_pde = r.metrics.max_pde;
        row.iterations = r.trace.iterations();
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
        return a.degree < b.degree;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& prev = rows[i - 1].rmse_solution;
        const auto& cur = rows[i].rmse_solution;
        if (prev && cur && *prev >= kRatioFloor && *cur >= kRatioFloor) {
            rows[i].rmse_ratio = *cur / *prev;
        }
    }
    return rows;
}

}  // namespace macoll
