#pragma once

#include <cstddef>
#include <vector>

namespace sofa {

/// Uniform partition of [a, b] with n nodes (n-1 cells).
struct UniformGrid {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 0;

    UniformGrid() = default;
    UniformGrid(double a_, double b_, std::size_t n_) : a(a_), b(b_), n(n_) {}

    double h() const { return (b - a) / double(n - 1); }
    double alpha(std::size_t i) const { return a + h() * double(i); }
    /// Largest node index with alpha(i) <= x (clamped to [0, n-1]).
    std::size_t cell_below(double x) const;
};

/// Fornberg finite-difference weights: w[k][j] is the weight of f(xs[j]) in the
/// approximation of the k-th derivative at z, for k = 0..m.
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& xs, int m);

/// Precomputed 4th-order first/second derivative stencils on a uniform grid
/// (5-point central in the interior, one-sided 5/6-point rows at the ends).
class DerivativeStencils {
public:
    explicit DerivativeStencils(const UniformGrid& g);

    double d1(const std::vector<double>& f, std::size_t i) const;
    double d2(const std::vector<double>& f, std::size_t i) const;

    /// Nodes whose d1/d2 stencils include node j (for Jacobian sparsity).
    static constexpr int reach = 5; // one-sided end stencils span 6 nodes

private:
    std::size_t n_;
    double h_;
    // end rows: [row][weight over nodes offset from the end]
    std::vector<std::vector<double>> d1_lo_, d1_hi_, d2_lo_, d2_hi_;
};

} // namespace sofa
