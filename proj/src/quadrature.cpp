#include "sofa/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "sofa/errors.hpp"

namespace sofa {

namespace {

/// Integral over [x0, x1] of the cubic through nodes j0..j0+3.
double cubic_window_integral(const std::vector<double>& f, const UniformGrid& g,
                             std::size_t j0, double x0, double x1) {
    // monomial coefficients in s = (x - alpha(j0)) / h
    const double h = g.h();
    const double s0 = (x0 - g.alpha(j0)) / h;
    const double s1 = (x1 - g.alpha(j0)) / h;
    const double f0 = f[j0], f1 = f[j0 + 1], f2 = f[j0 + 2], f3 = f[j0 + 3];
    // Lagrange basis on s = 0,1,2,3 expanded to monomials
    const double c0 = f0;
    const double c1 = (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / 6.0;
    const double c2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / 2.0;
    const double c3 = (-f0 + 3.0 * f1 - 3.0 * f2 + f3) / 6.0;
    auto F = [&](double s) {
        return c0 * s + c1 * s * s / 2.0 + c2 * s * s * s / 3.0 + c3 * s * s * s * s / 4.0;
    };
    return h * (F(s1) - F(s0));
}

std::size_t clamp_window(const UniformGrid& g, long want) {
    long lo = std::max(0L, std::min(long(g.n) - 4, want));
    return std::size_t(lo);
}

} // namespace

double integrate_node_range(const std::vector<double>& f, const UniformGrid& g,
                            std::size_t i0, std::size_t i1) {
    if (i1 <= i0) return 0.0;
    const double h = g.h();
    std::size_t m = i1 - i0;
    double total = 0.0;
    if (m == 1) {
        std::size_t j0 = clamp_window(g, long(i0) - 1);
        return cubic_window_integral(f, g, j0, g.alpha(i0), g.alpha(i1));
    }
    if (m % 2 == 1) { // 3/8 on the last three cells
        std::size_t k = i1 - 3;
        total += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
        i1 = k;
        m = i1 - i0;
        if (m == 0) return total;
    }
    double s = f[i0] + f[i1];
    for (std::size_t i = i0 + 1; i < i1; ++i)
        s += (((i - i0) % 2 == 1) ? 4.0 : 2.0) * f[i];
    return total + h / 3.0 * s;
}

double integrate_samples(const std::vector<double>& f, const UniformGrid& g,
                         double a, double b) {
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double h = g.h();
    const double eps = 1e-12 * (std::abs(g.a) + std::abs(g.b) + 1.0);
    a = std::max(a, g.a);
    b = std::min(b, g.b);
    if (b - a < eps) return 0.0;

    // first node at or after a, last node at or before b
    std::size_t ia = std::size_t(std::ceil((a - g.a) / h - 1e-9));
    std::size_t ib = std::size_t(std::floor((b - g.a) / h + 1e-9));
    ia = std::min(ia, g.n - 1);
    ib = std::min(ib, g.n - 1);

    if (ib < ia || (ib == ia && std::abs(g.alpha(ia) - a) > eps && std::abs(g.alpha(ib) - b) > eps
                    && g.alpha(ia) > b)) {
        // no node inside: single partial cell
        std::size_t j0 = clamp_window(g, long(g.cell_below(a)) - 1);
        return sign * cubic_window_integral(f, g, j0, a, b);
    }

    double total = 0.0;
    if (g.alpha(ia) - a > eps) {
        std::size_t j0 = clamp_window(g, long(ia) - 2);
        total += cubic_window_integral(f, g, j0, a, g.alpha(ia));
    }
    if (b - g.alpha(ib) > eps) {
        std::size_t j0 = clamp_window(g, long(ib) - 1);
        total += cubic_window_integral(f, g, j0, g.alpha(ib), b);
    }
    total += integrate_node_range(f, g, ia, ib);
    return sign * total;
}

double parametric_area(const std::vector<double>& y, const std::vector<double>& x,
                       const UniformGrid& g, double a, double b) {
    if (g.n < 5) throw IntervalEmpty("parametric_area: need at least 5 grid points");
    DerivativeStencils st(g);
    std::vector<double> integrand(g.n);
    for (std::size_t i = 0; i < g.n; ++i) integrand[i] = y[i] * st.d1(x, i);
    return integrate_samples(integrand, g, a, b);
}

} // namespace sofa
