#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsolab/core.hpp"
#include "nsolab/problems/sym_eig.hpp"

namespace nsolab {

/// Exact-penalty dual of the nuclear-norm Matrix Completion SDP:
///   f(y) = b'y + alpha * max{lambda_max(-Z(y)), 0}
/// with the dual slack
///   Z(y) = [ I_{N1}     B(y)/2 ]
///          [ B(y)'/2    I_{N2} ]
/// where B(y) places y_k at the k-th observed position. The half on the
/// off-diagonal blocks is the adjoint of U -> (U_{i_k j_k}) on the symmetric
/// embedding; it makes the dual optimal value equal -trace of the primal
/// optimum. alpha at least that trace makes the penalty exact.
///
/// Observed positions are 0-based (i, j) pairs, stored in row-major sorted
/// order; index k in y and gradients always refers to that order.
struct MatCompInstance {
    Index N1;
    Index N2;
    std::vector<std::pair<Index, Index>> omega;
    Vector b;
    double alpha;

    MatCompInstance(Index N1_, Index N2_, std::vector<std::pair<Index, Index>> omega_,
                    Vector b_, double alpha_)
        : N1(N1_), N2(N2_), omega(std::move(omega_)), b(std::move(b_)), alpha(alpha_) {
        if (N1 < 1 || N2 < 1) throw std::invalid_argument("MatCompInstance: bad dimensions");
        const auto n = omega.size();
        if (n == 0) throw std::invalid_argument("MatCompInstance: empty observation set");
        if (static_cast<std::size_t>(b.size()) != n)
            throw std::invalid_argument("MatCompInstance: |omega| must equal length(b)");
        // sort (pair, value) jointly into row-major order
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::sort(perm.begin(), perm.end(),
                  [&](std::size_t a, std::size_t c) { return omega[a] < omega[c]; });
        std::vector<std::pair<Index, Index>> sorted_omega(n);
        Vector sorted_b(static_cast<Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            sorted_omega[k] = omega[perm[k]];
            sorted_b[static_cast<Index>(k)] = b[static_cast<Index>(perm[k])];
        }
        omega = std::move(sorted_omega);
        b = std::move(sorted_b);
        for (std::size_t k = 0; k < n; ++k) {
            const auto [i, j] = omega[k];
            if (i < 0 || i >= N1 || j < 0 || j >= N2)
                throw std::invalid_argument("MatCompInstance: index pair out of range");
            if (k > 0 && omega[k] == omega[k - 1])
                throw std::invalid_argument("MatCompInstance: duplicate index pair");
        }
    }

    Index num_observations() const { return static_cast<Index>(omega.size()); }
    Index order() const { return N1 + N2; }

    Matrix slack_matrix(const Vector& y) const {
        Matrix Z = Matrix::Identity(order(), order());
        for (std::size_t k = 0; k < omega.size(); ++k) {
            const auto [i, j] = omega[k];
            Z(i, N1 + j) = 0.5 * y[static_cast<Index>(k)];
            Z(N1 + j, i) = 0.5 * y[static_cast<Index>(k)];
        }
        return Z;
    }
};

inline OracleResponse eval_matcomp_penalty(const MatCompInstance& inst, const Vector& y) {
    if (y.size() != inst.num_observations())
        throw std::invalid_argument("eval_matcomp_penalty: wrong dimension");
    const EigDecomp e = sym_eig_desc(-inst.slack_matrix(y));
    const double lmax = e.lambdas[0];
    OracleResponse r;
    r.f = inst.b.dot(y) + inst.alpha * std::max(lmax, 0.0);
    r.g = inst.b;
    if (lmax > 0.0) {
        const Vector q = e.Q.col(0);
        for (std::size_t k = 0; k < inst.omega.size(); ++k) {
            const auto [i, j] = inst.omega[k];
            r.g[static_cast<Index>(k)] -= inst.alpha * q[i] * q[inst.N1 + j];
        }
    }
    return r;
}

/// Seeded low-rank completion data: ground truth G1 G2' with standard-normal
/// rank-r factors; each (i, j) observed independently with probability
/// p_obs, row-major order. An empty draw is an error; the caller reseeds.
struct GeneratedMatComp {
    std::vector<std::pair<Index, Index>> omega;
    Vector b;
    Matrix ground_truth;
};

inline GeneratedMatComp gen_random_matcomp(std::uint64_t seed, Index N1, Index N2, Index r,
                                           double p_obs) {
    if (r < 1 || r > std::min(N1, N2))
        throw std::invalid_argument("gen_random_matcomp: need 1 <= r <= min(N1, N2)");
    if (!(p_obs > 0.0 && p_obs <= 1.0))
        throw std::invalid_argument("gen_random_matcomp: need 0 < p_obs <= 1");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix G1(N1, r), G2(N2, r);
    for (Index i = 0; i < N1; ++i)
        for (Index j = 0; j < r; ++j) G1(i, j) = gauss(rng);
    for (Index i = 0; i < N2; ++i)
        for (Index j = 0; j < r; ++j) G2(i, j) = gauss(rng);

    GeneratedMatComp out;
    out.ground_truth = G1 * G2.transpose();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> values;
    for (Index i = 0; i < N1; ++i)
        for (Index j = 0; j < N2; ++j)
            if (unif(rng) < p_obs) {
                out.omega.emplace_back(i, j);
                values.push_back(out.ground_truth(i, j));
            }
    if (out.omega.empty())
        throw std::runtime_error("gen_random_matcomp: empty observation set; reseed");
    out.b = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
    return out;
}

inline Problem as_problem(const MatCompInstance& inst) {
    return Problem{"mat_comp", inst.num_observations(),
                   [inst](const Vector& y) { return eval_matcomp_penalty(inst, y); },
                   std::nullopt};
}

}  // namespace nsolab
