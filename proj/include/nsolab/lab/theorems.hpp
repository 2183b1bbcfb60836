#pragma once

#include <cmath>
#include <stdexcept>

namespace nsolab::lab {

/// Hypothesis under which the memoryless-BFGS failure condition applies to
/// f(x) = a|x_1| + sum tail: a >= 2 sqrt(n-1).
inline bool thm1_hypothesis_holds(double a, long n) {
    return a >= 2.0 * std::sqrt(static_cast<double>(n - 1));
}

/// Failure condition for scaled L-BFGS-1 with an Armijo-Wolfe line search on
/// a|x_1| + sum tail:
///   ((1-c1)/c1)(n-1) < a^2 + a sqrt(a^2 - 3(n-1)).
/// Returns false when the hypothesis a >= 2 sqrt(n-1) is unmet (callers that
/// care report a warning via thm1_hypothesis_holds).
inline bool check_thm1_failure(double a, long n, double c1) {
    if (n < 2) throw std::invalid_argument("check_thm1_failure: n must be >= 2");
    if (!(0.0 < c1 && c1 < 1.0))
        throw std::invalid_argument("check_thm1_failure: need 0 < c1 < 1");
    if (!thm1_hypothesis_holds(a, n)) return false;
    const double lhs = (1.0 - c1) / c1 * static_cast<double>(n - 1);
    const double disc = a * a - 3.0 * static_cast<double>(n - 1);
    return lhs < a * a + a * std::sqrt(disc);
}

/// Stricter failure condition for the plain gradient method on the same
/// objective: ((1-c1)/c1)(n-1) < a^2, strict at equality.
inline bool check_gradient_failure(double a, long n, double c1) {
    if (n < 2) throw std::invalid_argument("check_gradient_failure: n must be >= 2");
    if (!(0.0 < c1 && c1 < 1.0))
        throw std::invalid_argument("check_gradient_failure: need 0 < c1 < 1");
    return (1.0 - c1) / c1 * static_cast<double>(n - 1) < a * a;
}

}  // namespace nsolab::lab
