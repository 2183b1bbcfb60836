#pragma once

#include <cmath>
#include <stdexcept>

#include "nsolab/core.hpp"

namespace nsolab {

/// f(x) = a |x_1| + sum_{i>=2} x_i. Unbounded below, yet bounded below along
/// every steepest-descent ray, which is what makes it a sharp probe for
/// line-search methods.
struct AbsLinearProblem {
    double a;
    Index n;

    AbsLinearProblem(double a_, Index n_) : a(a_), n(n_) {
        if (!(a >= 0.0)) throw std::invalid_argument("AbsLinearProblem: a must be >= 0");
        if (n < 2) throw std::invalid_argument("AbsLinearProblem: n must be >= 2");
    }
};

inline OracleResponse eval_abs_linear(const AbsLinearProblem& p, const Vector& x) {
    OracleResponse r;
    r.f = p.a * std::abs(x[0]) + x.tail(p.n - 1).sum();
    r.g = Vector::Ones(p.n);
    r.g[0] = p.a * sign_pos(x[0]);
    return r;
}

inline Problem as_problem(const AbsLinearProblem& p) {
    return Problem{"abs_linear", p.n,
                   [p](const Vector& x) { return eval_abs_linear(p, x); },
                   std::nullopt};
}

}  // namespace nsolab
