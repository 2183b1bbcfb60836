#pragma once

#include <cmath>
#include <stdexcept>

#include "nsolab/core.hpp"

namespace nsolab {

/// f(x) = max{ |x_1|, |x_i - 2 x_{i-1}| : i = 2..n }. Convex, piecewise
/// linear, minimized at 0 with exponentially distorted level sets: the point
/// with coordinates 2^i - 1 has the same value as the all-ones vector.
struct LesHouchesProblem {
    Index n;

    explicit LesHouchesProblem(Index n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("LesHouchesProblem: n must be >= 1");
    }
};

/// Gradient of the lowest-index maximizing term, sign(0) = +1.
inline OracleResponse eval_les_houches(const LesHouchesProblem& p, const Vector& x) {
    Index best_i = 0;
    double best_arg = x[0];
    double best_val = std::abs(x[0]);
    for (Index i = 1; i < p.n; ++i) {
        const double arg = x[i] - 2.0 * x[i - 1];
        const double val = std::abs(arg);
        if (val > best_val) {  // strict: ties keep the lowest index
            best_val = val;
            best_arg = arg;
            best_i = i;
        }
    }
    Vector g = Vector::Zero(p.n);
    const double sg = sign_pos(best_arg);
    g[best_i] = sg;
    if (best_i > 0) g[best_i - 1] = -2.0 * sg;
    return {best_val, std::move(g)};
}

/// The distorted level-set witness: x_i = 2^i - 1 (so f = 1 everywhere along
/// the recursion x_1 = 1, x_i = 2 x_{i-1} + 1). Exact doubling only holds
/// through n = 52 in IEEE doubles; larger n is rejected.
inline Vector gen_les_houches_witness(Index n) {
    if (n < 1) throw std::invalid_argument("gen_les_houches_witness: n must be >= 1");
    if (n > 52)
        throw std::invalid_argument("gen_les_houches_witness: n > 52 loses exactness");
    Vector x(n);
    double v = 1.0;
    for (Index i = 0; i < n; ++i) {
        x[i] = v;
        v = 2.0 * v + 1.0;
    }
    return x;
}

inline Problem as_problem(const LesHouchesProblem& p) {
    return Problem{"les_houches", p.n,
                   [p](const Vector& x) { return eval_les_houches(p, x); },
                   0.0};
}

}  // namespace nsolab
