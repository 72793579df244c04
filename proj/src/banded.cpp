#include <algorithm>
#include <cmath>

#include "sofa/errors.hpp"
#include "sofa/solver.hpp"

namespace sofa {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0), piv_(n, 0) {}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const {
    const long d = long(i) - long(j);
    return d <= long(kl_) && -d <= long(ku_ + kl_);
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    return ab_[(kl_ + ku_ + i - j) + j * ldab_];
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    if (!in_band(i, j)) return 0.0;
    return ab_[(kl_ + ku_ + i - j) + j * ldab_];
}

void BandedMatrix::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedMatrix::lu_factor() {
    const long n = long(n_), kl = long(kl_), ku = long(ku_);
    auto A = [&](long i, long j) -> double& {
        return ab_[std::size_t((kl + ku + i - j) + j * long(ldab_))];
    };
    for (long k = 0; k < n; ++k) {
        long pmax = k;
        double vmax = std::abs(A(k, k));
        const long ilim = std::min(n - 1, k + kl);
        for (long i = k + 1; i <= ilim; ++i) {
            const double v = std::abs(A(i, k));
            if (v > vmax) {
                vmax = v;
                pmax = i;
            }
        }
        if (vmax < 1e-14)
            throw SingularJacobian("banded LU: pivot below 1e-14 at column " + std::to_string(k));
        piv_[std::size_t(k)] = int(pmax);
        const long jlim = std::min(n - 1, k + kl + ku);
        if (pmax != k)
            for (long j = k; j <= jlim; ++j) std::swap(A(k, j), A(pmax, j));
        for (long i = k + 1; i <= ilim; ++i) {
            const double m = A(i, k) / A(k, k);
            A(i, k) = m;
            for (long j = k + 1; j <= jlim; ++j) A(i, j) -= m * A(k, j);
        }
    }
    factored_ = true;
}

void BandedMatrix::solve_inplace(std::vector<double>& b) const {
    const long n = long(n_), kl = long(kl_), ku = long(ku_);
    auto A = [&](long i, long j) -> double {
        return ab_[std::size_t((kl + ku + i - j) + j * long(ldab_))];
    };
    for (long k = 0; k < n; ++k) {
        const long p = piv_[std::size_t(k)];
        if (p != k) std::swap(b[std::size_t(k)], b[std::size_t(p)]);
        const long ilim = std::min(n - 1, k + kl);
        for (long i = k + 1; i <= ilim; ++i) b[std::size_t(i)] -= A(i, k) * b[std::size_t(k)];
    }
    for (long i = n - 1; i >= 0; --i) {
        double s = b[std::size_t(i)];
        const long jlim = std::min(n - 1, i + kl + ku);
        for (long j = i + 1; j <= jlim; ++j) s -= A(i, j) * b[std::size_t(j)];
        b[std::size_t(i)] = s / A(i, i);
    }
}

} // namespace sofa
