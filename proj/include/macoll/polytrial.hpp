#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace macoll {

/// Point of the closed square [-1,1]^2.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Degrees above this still work but the monomial basis is badly conditioned.
inline constexpr int kSoftMaxDegree = 20;

/// Number of monomials x^m y^n with m + n <= degree.
constexpr std::size_t triangle_size(int degree) {
    const auto d = static_cast<std::size_t>(degree);
    return (d + 1) * (d + 2) / 2;
}

/// Position of (m, n) in the graded lexicographic order: total degree
/// m + n ascending, then m ascending. Independent of the triangle degree,
/// so a lower-degree triangle is a prefix of a higher-degree one.
constexpr std::size_t flat_index(int m, int n) {
    const auto k = static_cast<std::size_t>(m + n);
    return k * (k + 1) / 2 + static_cast<std::size_t>(m);
}

/// Inverse of flat_index.
std::pair<int, int> exponents_of(std::size_t index);

/// Coefficients c_mn of a bivariate polynomial of total degree <= M.
///
/// Storage is the flattened graded-lex vector (the solver's unknown);
/// operator()(m, n) gives the triangular view used during assembly.
class CoeffTriangle {
public:
    CoeffTriangle() : CoeffTriangle(0) {}
    explicit CoeffTriangle(int degree);

    /// Takes ownership of a flattened coefficient vector.
    static CoeffTriangle from_flat(int degree, std::vector<double> coeffs);
    static CoeffTriangle from_flat(int degree, std::span<const double> coeffs);

    int degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }

    double operator()(int m, int n) const;
    double& operator()(int m, int n);

    std::span<const double> flat() const { return coeffs_; }
    std::span<double> flat() { return coeffs_; }

    friend bool operator==(const CoeffTriangle&, const CoeffTriangle&) = default;

private:
    void check_admissible(int m, int n) const;

    int degree_;
    std::vector<double> coeffs_;
};

/// Monomial values and second-derivative tables at one point, laid out
/// like CoeffTriangle. Derivative entries that vanish identically are
/// stored as explicit zeros.
struct BasisTables {
    Point2 point;
    int degree = 0;
    std::vector<double> p;
    std::vector<double> pxx;
    std::vector<double> pxy;
    std::vector<double> pyy;
};

/// Value and second derivatives of a polynomial at a point.
struct SecondJet {
    double u = 0.0;
    double uxx = 0.0;
    double uxy = 0.0;
    double uyy = 0.0;
};

BasisTables build_tables(Point2 point, int degree);

SecondJet eval(const CoeffTriangle& c, const BasisTables& tables);

/// Same polynomial, stored at a higher degree with zero padding.
CoeffTriangle embed(const CoeffTriangle& c, int new_degree);

/// Value only, by nested Horner evaluation. Used for dense grid sampling
/// where building full tables per point would be wasteful.
double eval_value(const CoeffTriangle& c, Point2 point);

/// Coefficients of d^{dx+dy} u / dx^dx dy^dy, of degree max(M - dx - dy, 0).
CoeffTriangle derivative(const CoeffTriangle& c, int dx, int dy);

/// Elementwise a + b; both must have the same degree.
CoeffTriangle operator+(const CoeffTriangle& a, const CoeffTriangle& b);
CoeffTriangle operator*(double s, const CoeffTriangle& c);

}  // namespace macoll
