#include "sofa/path_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sofa {

PathFunctions::PathFunctions(UniformGrid grid, std::vector<double> r, std::vector<double> t)
    : grid_(grid), r_(std::move(r)), t_(std::move(t)), stencils_(grid_) {
    if (grid_.n < 7 || r_.size() != grid_.n || t_.size() != grid_.n)
        throw std::invalid_argument("PathFunctions: need >= 7 matching samples");
}

PathFunctions PathFunctions::from_functions(const std::function<double(double)>& rf,
                                            const std::function<double(double)>& tf,
                                            double a, double b, std::size_t n) {
    UniformGrid g{a, b, n};
    std::vector<double> rv(n), tv(n);
    for (std::size_t i = 0; i < n; ++i) {
        rv[i] = rf(g.alpha(i));
        tv[i] = tf(g.alpha(i));
    }
    return PathFunctions(g, std::move(rv), std::move(tv));
}

PathFunctions PathFunctions::constant(double rv, double tv, double a, double b, std::size_t n) {
    return from_functions([=](double) { return rv; }, [=](double) { return tv; }, a, b, n);
}

RTJet PathFunctions::jet(std::size_t i) const {
    RTJet j;
    j.r = r_[i];
    j.t = t_[i];
    j.r1 = stencils_.d1(r_, i);
    j.t1 = stencils_.d1(t_, i);
    j.r2 = stencils_.d2(r_, i);
    j.t2 = stencils_.d2(t_, i);
    return j;
}

RTJet PathFunctions::jet_at(double alpha) const {
    const std::size_t n = grid_.n;
    const double h = grid_.h();
    // 6-point window centred on alpha
    long i0 = long(std::floor((alpha - grid_.a) / h)) - 2;
    i0 = std::max(0L, std::min(long(n) - 6, i0));
    double w[6];
    {
        double xs[6];
        for (int k = 0; k < 6; ++k) xs[k] = grid_.alpha(std::size_t(i0 + k));
        for (int k = 0; k < 6; ++k) {
            double num = 1.0, den = 1.0;
            for (int m = 0; m < 6; ++m) {
                if (m == k) continue;
                num *= alpha - xs[m];
                den *= xs[k] - xs[m];
            }
            w[k] = num / den;
        }
    }
    RTJet j;
    for (int k = 0; k < 6; ++k) {
        const std::size_t i = std::size_t(i0 + k);
        j.r += w[k] * r_[i];
        j.t += w[k] * t_[i];
        j.r1 += w[k] * stencils_.d1(r_, i);
        j.t1 += w[k] * stencils_.d1(t_, i);
        j.r2 += w[k] * stencils_.d2(r_, i);
        j.t2 += w[k] * stencils_.d2(t_, i);
    }
    return j;
}

PathFunctions PathFunctions::mirror_extended() const {
    const std::size_t n = grid_.n;
    const std::size_t m = 2 * n - 1;
    std::vector<double> rv(m), tv(m);
    for (std::size_t i = 0; i < n; ++i) {
        rv[i] = r_[i];
        tv[i] = t_[i];
        rv[m - 1 - i] = r_[i];
        tv[m - 1 - i] = t_[i];
    }
    UniformGrid g{grid_.a, 2 * grid_.b - grid_.a, m};
    return PathFunctions(g, std::move(rv), std::move(tv));
}

PathFunctions PathFunctions::with_r(std::size_t i, double value) const {
    std::vector<double> rv = r_;
    rv[i] = value;
    return PathFunctions(grid_, std::move(rv), t_);
}

PathFunctions PathFunctions::with_t(std::size_t i, double value) const {
    std::vector<double> tv = t_;
    tv[i] = value;
    return PathFunctions(grid_, r_, std::move(tv));
}

} // namespace sofa
