#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nsolab/core.hpp"
#include "nsolab/problems/les_houches.hpp"
#include "nsolab/problems/mat_comp.hpp"
#include "nsolab/problems/max_cut.hpp"
#include "nsolab/problems/max_eig.hpp"

namespace nsolab {

struct SmoothingParams {
    double mu;

    explicit SmoothingParams(double mu_) : mu(mu_) {
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw std::invalid_argument("SmoothingParams: mu must be positive and finite");
    }
};

// Every log-sum-exp below subtracts the largest exponent before
// exponentiating, so values stay finite for mu down to 1e-16 and inputs up
// to 1e3 in magnitude. Terms far below the shift underflow harmlessly to 0.

struct SymLogSumExp {
    double value;
    Vector w_plus;   ///< e^{+y_i/mu} / total
    Vector w_minus;  ///< e^{-y_i/mu} / total; all 2n weights sum to 1
};

/// mu log sum_i (e^{y_i/mu} + e^{-y_i/mu}) - mu log(2n): the symmetric
/// softmax approximation of max_i |y_i|, exact value 0 at y = 0.
inline SymLogSumExp logsumexp_sym(const Vector& y, double mu) {
    SmoothingParams check(mu);
    const Index n = y.size();
    if (n < 1) throw std::invalid_argument("logsumexp_sym: empty input");
    const double shift = y.cwiseAbs().maxCoeff();
    SymLogSumExp out;
    out.w_plus.resize(n);
    out.w_minus.resize(n);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        out.w_plus[i] = std::exp((y[i] - shift) / mu);
        out.w_minus[i] = std::exp((-y[i] - shift) / mu);
        total += out.w_plus[i] + out.w_minus[i];
    }
    out.value = shift + mu * std::log(total) - mu * std::log(2.0 * static_cast<double>(n));
    out.w_plus /= total;
    out.w_minus /= total;
    return out;
}

/// Implicit lower-bidiagonal map (Ax)_1 = x_1, (Ax)_i = x_i - 2 x_{i-1};
/// the composition of the vector-max smoothing with A smooths the
/// Les Houches objective.
struct BandedDiffMatrix {
    Index n;

    explicit BandedDiffMatrix(Index n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("BandedDiffMatrix: n must be >= 1");
    }

    Vector apply(const Vector& x) const {
        Vector out(n);
        out[0] = x[0];
        for (Index i = 1; i < n; ++i) out[i] = x[i] - 2.0 * x[i - 1];
        return out;
    }

    Vector apply_transpose(const Vector& v) const {
        Vector out(n);
        for (Index i = 0; i + 1 < n; ++i) out[i] = v[i] - 2.0 * v[i + 1];
        out[n - 1] = v[n - 1];
        return out;
    }

    /// ||A||_2 by power iteration on A'A.
    double op_norm(double tol = 1e-10, int max_iters = 200000) const {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v[i] = 1.0 / static_cast<double>(i + 2);
        v /= v.norm();
        double lambda = 0.0;
        for (int it = 0; it < max_iters; ++it) {
            Vector w = apply_transpose(apply(v));
            const double next = v.dot(w);
            const double wn = w.norm();
            if (wn == 0.0) return 0.0;
            v = w / wn;
            if (it > 0 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        return std::sqrt(lambda);
    }
};

inline OracleResponse eval_smoothed_les_houches(Index n, double mu, const Vector& x) {
    const BandedDiffMatrix A(n);
    const SymLogSumExp lse = logsumexp_sym(A.apply(x), mu);
    return {lse.value, A.apply_transpose(lse.w_plus - lse.w_minus)};
}

/// Softmax weights over shifted exponents e^{(v_i - shift)/mu}, plus the
/// weight of an implicit extra term with exponent 0 when `with_zero_term`.
/// Returns the smoothed value mu log(sum) + shift - mu log(K) via `value`.
namespace detail {
struct SoftmaxTerms {
    double value;
    Vector weights;      ///< over the entries of v
    double zero_weight;  ///< weight of the constant term (0 when absent)
};

inline SoftmaxTerms shifted_softmax(const Vector& v, double mu, bool with_zero_term) {
    const Index n = v.size();
    double shift = v.maxCoeff();
    if (with_zero_term) shift = std::max(shift, 0.0);
    SoftmaxTerms out;
    out.weights.resize(n);
    double total = with_zero_term ? std::exp(-shift / mu) : 0.0;
    for (Index i = 0; i < n; ++i) {
        out.weights[i] = std::exp((v[i] - shift) / mu);
        total += out.weights[i];
    }
    const double terms = static_cast<double>(n) + (with_zero_term ? 1.0 : 0.0);
    out.value = shift + mu * std::log(total) - mu * std::log(terms);
    out.weights /= total;
    out.zero_weight = with_zero_term ? std::exp(-shift / mu) / total : 0.0;
    return out;
}
}  // namespace detail

/// f_mu(y) = mu log sum_i e^{lambda_i(W(y))/mu} - mu log N; uniformly within
/// mu log N of lambda_max and differentiable everywhere. The gradient uses
/// the softmax-weighted spectral projector, which depends only on
/// eigenspaces, not on the basis chosen within them.
inline OracleResponse eval_smoothed_max_eig(const MaxEigInstance& inst, double mu,
                                            const Vector& y) {
    SmoothingParams check(mu);
    if (y.size() != inst.n)
        throw std::invalid_argument("eval_smoothed_max_eig: wrong dimension");
    const EigDecomp e = sym_eig_desc(inst.operator_matrix(y));
    const auto sm = detail::shifted_softmax(e.lambdas, mu, /*with_zero_term=*/false);
    const Matrix P = e.Q * sm.weights.asDiagonal() * e.Q.transpose();
    return {sm.value, -inst.apply_map(P)};
}

/// Smoothed Max Cut penalty; the extra unit term in the log-sum reflects the
/// max{., 0} in the exact penalty.
inline OracleResponse eval_smoothed_maxcut(const MaxCutInstance& inst, double mu,
                                           const Vector& y) {
    SmoothingParams check(mu);
    if (y.size() != inst.N) throw std::invalid_argument("eval_smoothed_maxcut: wrong dimension");
    const EigDecomp e = sym_eig_desc(inst.penalty_matrix(y));
    const auto sm = detail::shifted_softmax(e.lambdas, mu, /*with_zero_term=*/true);
    OracleResponse r;
    r.f = y.sum() + inst.alpha * sm.value;
    // sum_i w_i (q_i . q_i) elementwise = diag of the weighted projector
    r.g = Vector::Ones(inst.N) - inst.alpha * (e.Q.cwiseAbs2() * sm.weights);
    return r;
}

/// Smoothed Matrix Completion penalty over the eigenvalues of -Z(y).
inline OracleResponse eval_smoothed_matcomp(const MatCompInstance& inst, double mu,
                                            const Vector& y) {
    SmoothingParams check(mu);
    if (y.size() != inst.num_observations())
        throw std::invalid_argument("eval_smoothed_matcomp: wrong dimension");
    const EigDecomp e = sym_eig_desc(-inst.slack_matrix(y));
    const auto sm = detail::shifted_softmax(e.lambdas, mu, /*with_zero_term=*/true);
    OracleResponse r;
    r.f = inst.b.dot(y) + inst.alpha * sm.value;
    r.g = inst.b;
    const Matrix Qw = e.Q * sm.weights.asDiagonal();
    for (std::size_t k = 0; k < inst.omega.size(); ++k) {
        const auto [i, j] = inst.omega[k];
        r.g[static_cast<Index>(k)] -= inst.alpha * Qw.row(i).dot(e.Q.row(inst.N1 + j));
    }
    return r;
}

inline Problem as_smoothed_problem(const LesHouchesProblem& p, double mu) {
    SmoothingParams check(mu);
    const Index n = p.n;
    return Problem{"les_houches_mu", n,
                   [n, mu](const Vector& x) { return eval_smoothed_les_houches(n, mu, x); },
                   0.0};
}

inline Problem as_smoothed_problem(const MaxEigInstance& inst, double mu) {
    SmoothingParams check(mu);
    return Problem{"max_eig_mu", inst.n,
                   [inst, mu](const Vector& y) { return eval_smoothed_max_eig(inst, mu, y); },
                   std::nullopt};
}

inline Problem as_smoothed_problem(const MaxCutInstance& inst, double mu) {
    SmoothingParams check(mu);
    return Problem{"max_cut_mu", inst.N,
                   [inst, mu](const Vector& y) { return eval_smoothed_maxcut(inst, mu, y); },
                   std::nullopt};
}

inline Problem as_smoothed_problem(const MatCompInstance& inst, double mu) {
    SmoothingParams check(mu);
    return Problem{"mat_comp_mu", inst.num_observations(),
                   [inst, mu](const Vector& y) { return eval_smoothed_matcomp(inst, mu, y); },
                   std::nullopt};
}

}  // namespace nsolab
