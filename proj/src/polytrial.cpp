#include "macoll/polytrial.hpp"

#include "macoll/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

namespace macoll {

namespace {

void check_degree(int degree) {
    if (degree < 0) {
        throw InvalidInput("polynomial degree must be nonnegative, got " + std::to_string(degree));
    }
    if (degree > kSoftMaxDegree) {
        spdlog::warn("degree {} exceeds the soft cap {}; monomial conditioning degrades", degree,
                     kSoftMaxDegree);
    }
}

}  // namespace

std::pair<int, int> exponents_of(std::size_t index) {
    std::size_t k = 0;
    while ((k + 1) * (k + 2) / 2 <= index) {
        ++k;
    }
    const auto m = static_cast<int>(index - k * (k + 1) / 2);
    return {m, static_cast<int>(k) - m};
}

CoeffTriangle::CoeffTriangle(int degree) : degree_(degree) {
    check_degree(degree);
    coeffs_.assign(triangle_size(degree), 0.0);
}

CoeffTriangle CoeffTriangle::from_flat(int degree, std::vector<double> coeffs) {
    CoeffTriangle c(degree);
    if (coeffs.size() != c.coeffs_.size()) {
        throw DimensionError("coefficient vector of length " + std::to_string(coeffs.size()) +
                             " does not match degree " + std::to_string(degree) + " (expected " +
                             std::to_string(c.coeffs_.size()) + ")");
    }
    c.coeffs_ = std::move(coeffs);
    return c;
}

CoeffTriangle CoeffTriangle::from_flat(int degree, std::span<const double> coeffs) {
    return from_flat(degree, std::vector<double>(coeffs.begin(), coeffs.end()));
}

void CoeffTriangle::check_admissible(int m, int n) const {
    if (m < 0 || n < 0 || m + n > degree_) {
        throw InvalidInput("inadmissible index (" + std::to_string(m) + "," + std::to_string(n) +
                           ") for degree " + std::to_string(degree_));
    }
}

double CoeffTriangle::operator()(int m, int n) const {
    check_admissible(m, n);
    return coeffs_[flat_index(m, n)];
}

double& CoeffTriangle::operator()(int m, int n) {
    check_admissible(m, n);
    return coeffs_[flat_index(m, n)];
}

BasisTables build_tables(Point2 point, int degree) {
    if (!std::isfinite(point.x) || !std::isfinite(point.y)) {
        throw InvalidInput("basis tables requested at a non-finite point");
    }
    check_degree(degree);

    // xp[k] = x^k, yp[k] = y^k by repeated multiplication.
    const auto len = static_cast<std::size_t>(degree) + 1;
    std::vector<double> xp(len, 1.0);
    std::vector<double> yp(len, 1.0);
    for (std::size_t k = 1; k < len; ++k) {
        xp[k] = xp[k - 1] * point.x;
        yp[k] = yp[k - 1] * point.y;
    }

    BasisTables t;
    t.point = point;
    t.degree = degree;
    const std::size_t size = triangle_size(degree);
    t.p.assign(size, 0.0);
    t.pxx.assign(size, 0.0);
    t.pxy.assign(size, 0.0);
    t.pyy.assign(size, 0.0);

    for (int k = 0; k <= degree; ++k) {
        for (int m = 0; m <= k; ++m) {
            const int n = k - m;
            const std::size_t i = flat_index(m, n);
            t.p[i] = xp[m] * yp[n];
            if (m >= 2) {
                t.pxx[i] = m * (m - 1) * xp[m - 2] * yp[n];
            }
            if (m >= 1 && n >= 1) {
                t.pxy[i] = m * n * xp[m - 1] * yp[n - 1];
            }
            if (n >= 2) {
                t.pyy[i] = n * (n - 1) * xp[m] * yp[n - 2];
            }
        }
    }
    return t;
}

SecondJet eval(const CoeffTriangle& c, const BasisTables& tables) {
    if (c.degree() != tables.degree) {
        throw DimensionError("coefficient degree " + std::to_string(c.degree()) +
                             " does not match table degree " + std::to_string(tables.degree));
    }
    SecondJet jet;
    const auto coeffs = c.flat();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        jet.u += coeffs[i] * tables.p[i];
        jet.uxx += coeffs[i] * tables.pxx[i];
        jet.uxy += coeffs[i] * tables.pxy[i];
        jet.uyy += coeffs[i] * tables.pyy[i];
    }
    return jet;
}

CoeffTriangle embed(const CoeffTriangle& c, int new_degree) {
    if (new_degree < c.degree()) {
        throw InvalidInput("cannot embed degree " + std::to_string(c.degree()) +
                           " polynomial into degree " + std::to_string(new_degree));
    }
    CoeffTriangle out(new_degree);
    // Graded-lex order makes the lower-degree triangle a prefix.
    const auto src = c.flat();
    std::copy(src.begin(), src.end(), out.flat().begin());
    return out;
}

double eval_value(const CoeffTriangle& c, Point2 point) {
    const int degree = c.degree();
    const auto coeffs = c.flat();
    // u = sum_n y^n * (sum_m c_mn x^m), both sums by Horner.
    double result = 0.0;
    for (int n = degree; n >= 0; --n) {
        double inner = 0.0;
        for (int m = degree - n; m >= 0; --m) {
            inner = inner * point.x + coeffs[flat_index(m, n)];
        }
        result = result * point.y + inner;
    }
    return result;
}

CoeffTriangle derivative(const CoeffTriangle& c, int dx, int dy) {
    if (dx < 0 || dy < 0) {
        throw InvalidInput("derivative orders must be nonnegative");
    }
    const int degree = c.degree();
    CoeffTriangle out(std::max(degree - dx - dy, 0));
    // d^dx/dx^dx x^m = m(m-1)...(m-dx+1) x^{m-dx}
    const auto falling = [](int k, int order) {
        double f = 1.0;
        for (int i = 0; i < order; ++i) {
            f *= k - i;
        }
        return f;
    };
    const auto src = c.flat();
    for (int m = dx; m <= degree; ++m) {
        for (int n = dy; m + n <= degree; ++n) {
            out(m - dx, n - dy) = falling(m, dx) * falling(n, dy) * src[flat_index(m, n)];
        }
    }
    return out;
}

CoeffTriangle operator+(const CoeffTriangle& a, const CoeffTriangle& b) {
    if (a.degree() != b.degree()) {
        throw DimensionError("cannot add polynomials of degree " + std::to_string(a.degree()) +
                             " and " + std::to_string(b.degree()));
    }
    CoeffTriangle out = a;
    auto dst = out.flat();
    const auto rhs = b.flat();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] += rhs[i];
    }
    return out;
}

CoeffTriangle operator*(double s, const CoeffTriangle& c) {
    CoeffTriangle out = c;
    for (double& v : out.flat()) {
        v *= s;
    }
    return out;
}

}  // namespace macoll
