#include "sofa/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sofa {

std::size_t UniformGrid::cell_below(double x) const {
    double s = (x - a) / h();
    long i = long(std::floor(s));
    i = std::max(0L, std::min(long(n) - 1, i));
    return std::size_t(i);
}

std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& xs, int m) {
    // B. Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988).
    const int nd = int(xs.size()) - 1;
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(nd + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

DerivativeStencils::DerivativeStencils(const UniformGrid& g) : n_(g.n), h_(g.h()) {
    auto one_sided = [&](int width, int deriv, bool low, int row) {
        std::vector<double> xs(width);
        for (int j = 0; j < width; ++j)
            xs[j] = low ? double(j) : -double(width - 1 - j);
        double z = low ? double(row) : -double(row);
        auto w = fd_weights(z, xs, deriv);
        std::vector<double> out(width);
        double scale = std::pow(h_, -deriv);
        for (int j = 0; j < width; ++j) out[j] = w[deriv][j] * scale;
        return out;
    };
    for (int row = 0; row < 2; ++row) {
        d1_lo_.push_back(one_sided(5, 1, true, row));
        d1_hi_.push_back(one_sided(5, 1, false, row));
        d2_lo_.push_back(one_sided(6, 2, true, row));
        d2_hi_.push_back(one_sided(6, 2, false, row));
    }
}

double DerivativeStencils::d1(const std::vector<double>& f, std::size_t i) const {
    if (i >= 2 && i + 2 < n_) {
        return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h_);
    }
    if (i < 2) {
        const auto& w = d1_lo_[i];
        double s = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * f[j];
        return s;
    }
    const auto& w = d1_hi_[n_ - 1 - i];
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * f[n_ - w.size() + j];
    return s;
}

double DerivativeStencils::d2(const std::vector<double>& f, std::size_t i) const {
    if (i >= 2 && i + 2 < n_) {
        return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2])
               / (12.0 * h_ * h_);
    }
    if (i < 2) {
        const auto& w = d2_lo_[i];
        double s = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * f[j];
        return s;
    }
    const auto& w = d2_hi_[n_ - 1 - i];
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * f[n_ - w.size() + j];
    return s;
}

} // namespace sofa
