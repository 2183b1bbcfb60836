#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

#include "nsolab/core.hpp"

namespace nsolab {

struct EigendecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigenvalues in descending order with matching orthonormal eigenvector
/// columns. On ties the column order is whatever the backend produced;
/// callers that need a deterministic representative take column 0.
struct EigDecomp {
    Vector lambdas;  ///< descending
    Matrix Q;        ///< Q.col(i) pairs with lambdas[i]
};

/// Full symmetric eigendecomposition with the residual contract
///   ||W Q - Q diag(lambda)|| <= 1e-10 max(1, ||W||),  ||Q'Q - I|| <= 1e-12
/// enforced on every call (Frobenius norms). Violations surface as
/// EigendecompositionError rather than propagating a bad basis.
inline EigDecomp sym_eig_desc(const Matrix& W) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(W);
    if (es.info() != Eigen::Success)
        throw EigendecompositionError("symmetric eigendecomposition did not converge");
    const Index N = W.rows();
    EigDecomp out;
    out.lambdas = es.eigenvalues().reverse();
    out.Q = es.eigenvectors().rowwise().reverse();

    const double resid = (W * out.Q - out.Q * out.lambdas.asDiagonal()).norm();
    if (!(resid <= 1e-10 * std::max(1.0, W.norm())))
        throw EigendecompositionError("eigendecomposition residual exceeds contract");
    const double ortho = (out.Q.transpose() * out.Q - Matrix::Identity(N, N)).norm();
    if (!(ortho <= 1e-12))
        throw EigendecompositionError("eigenvector basis not orthonormal to contract");
    return out;
}

}  // namespace nsolab
