#pragma once

#include <functional>
#include <random>

#include "nsolab/core.hpp"
#include "nsolab/quasi_newton.hpp"

namespace nsolab::testing {

/// Central finite-difference gradient, the independent oracle used to check
/// every analytic gradient in the suite.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double eps) {
    Vector g(x.size());
    Vector xp = x, xm = x;
    for (Index i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + eps;
        xm[i] = x[i] - eps;
        g[i] = (f(xp) - f(xm)) / (2.0 * eps);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

inline double rel_vec_err(const Vector& got, const Vector& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

/// Brute-force BFGS update: forms both rank-one factors explicitly and
/// multiplies the three terms, independent of the production rank-two path.
inline Matrix naive_bfgs_update(const Matrix& H, const Vector& s, const Vector& y) {
    const double rho = 1.0 / s.dot(y);
    const Index n = H.rows();
    const Matrix I = Matrix::Identity(n, n);
    const Matrix left = I - rho * (s * y.transpose());
    const Matrix right = I - rho * (y * s.transpose());
    return left * H * right + rho * (s * s.transpose());
}

/// H built by replaying stored pairs on H0 with dense updates; the explicit
/// counterpart of the two-loop recursion.
inline Matrix explicit_inverse_hessian(const MemoryBuffer& mem, Index dim, bool scaled) {
    Matrix H = Matrix::Identity(dim, dim);
    if (scaled && !mem.empty()) {
        const CurvaturePair& last = mem.newest();
        H *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < mem.size(); ++i) H = naive_bfgs_update(H, mem[i].s, mem[i].y);
    return H;
}

/// Random curvature pair with guaranteed s'y > 0.
inline CurvaturePair random_pair(Index dim, std::mt19937_64& rng, double scale = 1.0) {
    for (;;) {
        Vector s = scale * standard_normal_vector(dim, rng);
        Vector y = scale * standard_normal_vector(dim, rng);
        if (s.dot(y) > 1e-3 * scale * scale) return CurvaturePair::from(std::move(s), std::move(y));
    }
}

/// Random symmetric positive definite matrix A'A + n I scaled.
inline Matrix random_spd(Index n, std::mt19937_64& rng) {
    Matrix A(n, n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = gauss(rng);
    Matrix M = A.transpose() * A;
    M += static_cast<double>(n) * Matrix::Identity(n, n);
    return 0.5 * (M + M.transpose());
}

}  // namespace nsolab::testing
