#pragma once

#include "macoll/polytrial.hpp"

#include <functional>
#include <optional>
#include <string>

namespace macoll {

using ScalarField = std::function<double(Point2)>;
using JetField = std::function<SecondJet(Point2)>;

/// Dirichlet problem u_xx u_yy - u_xy^2 = g in [-1,1]^2, u = f on the boundary.
///
/// `exact` is a manufactured solution with its second derivatives, used
/// only for error reporting. `taylor` produces a degree-M starting guess
/// when the problem knows one.
struct MAProblem {
    std::string name;
    ScalarField g;
    ScalarField f;
    std::optional<JetField> exact;
    std::optional<std::function<CoeffTriangle(int)>> taylor;
    /// Exact solution as a polynomial, when it lies in a trial space.
    std::optional<CoeffTriangle> exact_coefficients;
};

/// u* = exp((x^2 + y^2)/2) with g = e^{x^2+y^2}(1 + x^2 + y^2).
MAProblem exp_problem();

/// u* = a(x^2 + y^2), g = 4a^2. Exactly representable at degree 2.
MAProblem quadratic_problem(double a);

/// Total-degree-M truncation of the Taylor series of exp((x^2 + y^2)/2).
CoeffTriangle taylor_start(int degree);

/// Smallest g over an n x n grid. The convex branch needs g > 0; callers
/// warn rather than fail when this is nonpositive.
double sampled_min_rhs(const MAProblem& problem, int n = 21);

}  // namespace macoll
