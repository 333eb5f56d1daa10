#include "macoll/problem.hpp"

#include "macoll/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace macoll {

MAProblem exp_problem() {
    MAProblem p;
    p.name = "exp";
    p.exact = [](Point2 z) {
        const double x2 = z.x * z.x;
        const double y2 = z.y * z.y;
        const double e = std::exp(0.5 * (x2 + y2));
        return SecondJet{e, e * (1.0 + x2), e * z.x * z.y, e * (1.0 + y2)};
    };
    p.f = [](Point2 z) { return std::exp(0.5 * (z.x * z.x + z.y * z.y)); };
    // e^{2r}((1+x^2)(1+y^2) - x^2 y^2) with r = (x^2+y^2)/2.
    p.g = [](Point2 z) {
        const double s = z.x * z.x + z.y * z.y;
        return std::exp(s) * (1.0 + s);
    };
    p.taylor = [](int degree) { return taylor_start(degree); };
    return p;
}

MAProblem quadratic_problem(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidInput("quadratic problem needs a > 0, got " + std::to_string(a));
    }
    MAProblem p;
    p.name = "quadratic";
    p.exact = [a](Point2 z) {
        return SecondJet{a * (z.x * z.x + z.y * z.y), 2.0 * a, 0.0, 2.0 * a};
    };
    p.f = [a](Point2 z) { return a * (z.x * z.x + z.y * z.y); };
    p.g = [a](Point2) { return 4.0 * a * a; };

    CoeffTriangle c(2);
    c(2, 0) = a;
    c(0, 2) = a;
    p.exact_coefficients = c;
    p.taylor = [c](int degree) {
        if (degree >= 2) {
            return embed(c, degree);
        }
        return CoeffTriangle(degree);
    };
    return p;
}

CoeffTriangle taylor_start(int degree) {
    CoeffTriangle c(degree);
    // exp(r) = sum_k r^k / k!, r = (x^2+y^2)/2, and
    // r^k / k! = sum_{i+j=k} x^{2i} y^{2j} / (2^k i! j!).
    double inv_fact_i = 1.0;
    for (int i = 0; 2 * i <= degree; ++i) {
        if (i > 0) {
            inv_fact_i /= i;
        }
        double inv_fact_j = 1.0;
        for (int j = 0; 2 * (i + j) <= degree; ++j) {
            if (j > 0) {
                inv_fact_j /= j;
            }
            c(2 * i, 2 * j) = std::ldexp(inv_fact_i * inv_fact_j, -(i + j));
        }
    }
    return c;
}

double sampled_min_rhs(const MAProblem& problem, int n) {
    if (n < 2) {
        throw InvalidInput("sampling grid needs at least 2 points per side");
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Point2 z{-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1)};
            lowest = std::min(lowest, problem.g(z));
        }
    }
    return lowest;
}

}  // namespace macoll
