#pragma once

#include <functional>
#include <vector>

#include "sofa/geometry.hpp"
#include "sofa/grid.hpp"

namespace sofa {

/// Sampled path pair (r, t) on a uniform angle grid with 4th-order
/// stencil derivatives and local polynomial interpolation.
class PathFunctions {
public:
    PathFunctions(UniformGrid grid, std::vector<double> r, std::vector<double> t);

    static PathFunctions from_functions(const std::function<double(double)>& rf,
                                        const std::function<double(double)>& tf,
                                        double a, double b, std::size_t n);
    static PathFunctions constant(double rv, double tv, double a, double b, std::size_t n);

    const UniformGrid& grid() const { return grid_; }
    std::size_t size() const { return grid_.n; }
    double h() const { return grid_.h(); }
    double alpha(std::size_t i) const { return grid_.alpha(i); }

    double r(std::size_t i) const { return r_[i]; }
    double t(std::size_t i) const { return t_[i]; }
    const std::vector<double>& r_values() const { return r_; }
    const std::vector<double>& t_values() const { return t_; }

    double r1(std::size_t i) const { return stencils_.d1(r_, i); }
    double t1(std::size_t i) const { return stencils_.d1(t_, i); }
    double r2(std::size_t i) const { return stencils_.d2(r_, i); }
    double t2(std::size_t i) const { return stencils_.d2(t_, i); }

    RTJet jet(std::size_t i) const;
    /// Jet at arbitrary alpha via 6-point Lagrange interpolation of the
    /// sample and stencil-derivative arrays.
    RTJet jet_at(double alpha) const;

    /// Mirror extension about the right end: [a, b] -> [a, 2b - a] with
    /// f(2b - x) = f(x). Node count becomes 2n - 1.
    PathFunctions mirror_extended() const;

    /// Copy with one sample changed (for finite-difference oracles).
    PathFunctions with_r(std::size_t i, double value) const;
    PathFunctions with_t(std::size_t i, double value) const;

private:
    UniformGrid grid_;
    std::vector<double> r_, t_;
    DerivativeStencils stencils_;
};

} // namespace sofa
