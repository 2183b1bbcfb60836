#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "nsolab/core.hpp"
#include "nsolab/problems/sym_eig.hpp"

namespace nsolab {

/// Max-eigenvalue objective data: minimize lambda_max(C - sum_i y_i A_i)
/// over y in R^n, with C and the A_i symmetric N x N.
struct MaxEigInstance {
    Matrix C;
    std::vector<Matrix> A_ops;
    Index N;
    Index n;

    MaxEigInstance(Matrix C_, std::vector<Matrix> A_) : C(std::move(C_)), A_ops(std::move(A_)) {
        N = C.rows();
        n = static_cast<Index>(A_ops.size());
        if (N < 1 || C.cols() != N)
            throw std::invalid_argument("MaxEigInstance: C must be square");
        if (n < 1) throw std::invalid_argument("MaxEigInstance: need at least one A_i");
        require_symmetric(C, "C");
        for (const Matrix& A : A_ops) {
            if (A.rows() != N || A.cols() != N)
                throw std::invalid_argument("MaxEigInstance: A_i must match C's order");
            require_symmetric(A, "A_i");
        }
    }

    /// W(y) = C - sum_i y_i A_i
    Matrix operator_matrix(const Vector& y) const {
        Matrix W = C;
        for (Index i = 0; i < n; ++i) W.noalias() -= y[i] * A_ops[static_cast<std::size_t>(i)];
        return W;
    }

    /// Forward map X -> (<A_1, X>, ..., <A_n, X>).
    Vector apply_map(const Matrix& X) const {
        Vector out(n);
        for (Index i = 0; i < n; ++i)
            out[i] = A_ops[static_cast<std::size_t>(i)].cwiseProduct(X).sum();
        return out;
    }

private:
    static void require_symmetric(const Matrix& M, const char* what) {
        const double scale = std::max(1.0, M.norm());
        if (!((M - M.transpose()).norm() <= 1e-14 * scale))
            throw std::invalid_argument(std::string("MaxEigInstance: ") + what +
                                        " is not symmetric");
    }
};

/// f(y) = lambda_max(W(y)); gradient -(q'A_1 q, ..., q'A_n q) with q the top
/// eigenvector (column 0 on ties).
inline OracleResponse eval_max_eig(const MaxEigInstance& inst, const Vector& y) {
    if (y.size() != inst.n) throw std::invalid_argument("eval_max_eig: wrong dimension");
    const EigDecomp e = sym_eig_desc(inst.operator_matrix(y));
    const Vector q = e.Q.col(0);
    return {e.lambdas[0], -inst.apply_map(q * q.transpose())};
}

/// Random instance: every matrix has independent standard-normal entries,
/// symmetrized as (M + M')/2. Deterministic in the seed.
inline MaxEigInstance gen_random_max_eig(std::uint64_t seed, Index N, Index n) {
    if (N < 2) throw std::invalid_argument("gen_random_max_eig: N must be >= 2");
    if (n < 1) throw std::invalid_argument("gen_random_max_eig: n must be >= 1");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto sym_normal = [&]() {
        Matrix M(N, N);
        for (Index i = 0; i < N; ++i)
            for (Index j = 0; j < N; ++j) M(i, j) = gauss(rng);
        return Matrix(0.5 * (M + M.transpose()));
    };
    Matrix C = sym_normal();
    std::vector<Matrix> A;
    A.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) A.push_back(sym_normal());
    return MaxEigInstance(std::move(C), std::move(A));
}

inline Problem as_problem(const MaxEigInstance& inst) {
    return Problem{"max_eig", inst.n,
                   [inst](const Vector& y) { return eval_max_eig(inst, y); },
                   std::nullopt};
}

}  // namespace nsolab
