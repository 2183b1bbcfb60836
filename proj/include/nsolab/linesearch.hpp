#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "nsolab/core.hpp"

namespace nsolab {

struct LineSearchParams {
    double c1 = 1e-4;  ///< Armijo (sufficient decrease) parameter
    double c2 = 0.5;   ///< Wolfe (directional derivative) parameter
    int max_expansions = 60;  ///< doubling cap; 2^60 guards against overflow
    int max_bisections = 50;

    void validate() const {
        if (!(0.0 < c1 && c1 < c2 && c2 < 1.0))
            throw std::invalid_argument("LineSearchParams: need 0 < c1 < c2 < 1");
        if (max_expansions < 1 || max_bisections < 1)
            throw std::invalid_argument("LineSearchParams: limits must be >= 1");
    }
};

enum class LineSearchStatus {
    accepted,
    bisection_limit,
    expansion_limit,   ///< f is apparently unbounded below along the ray
    rounding_failure,  ///< next trial collides with a bracket endpoint
};

struct LineSearchOutcome {
    LineSearchStatus status = LineSearchStatus::accepted;
    double t = 0.0;  ///< accepted step; on failure, the lowest-f trial seen
    Vector x_new;
    double f_new = std::numeric_limits<double>::infinity();
    Vector g_new;
    long evals = 0;  ///< oracle calls made by this search, exactly
};

/// Armijo sufficient-decrease test at trial step t.
inline bool armijo_holds(double f0, double g0d, double t, double ft, double c1) {
    return ft <= f0 + c1 * t * g0d;
}

/// Wolfe directional-derivative test at the trial point.
inline bool wolfe_holds(double g0d, double gtd, double c2) {
    return gtd >= c2 * g0d;
}

/// Bracketing Armijo-Wolfe line search (doubling + bisection).
///
/// Keeps a bracket [lo, hi], initially [0, inf), first trial t = 1. A trial
/// failing Armijo lowers hi; a trial passing Armijo but failing Wolfe raises
/// lo; a trial passing both is accepted. While hi is infinite the next trial
/// doubles lo, otherwise it bisects. Exceeding max_expansions signals an
/// unbounded ray; exceeding max_bisections, or a trial colliding with a
/// bracket endpoint in machine arithmetic, ends the search without
/// acceptance. On any non-accepted status the lowest-f trial seen is
/// returned so the caller can still log a final value.
///
/// A non-descent direction (g0'd >= 0) is a contract violation and throws.
///
/// `bracket_observer(lo, hi, t)`, when set, is invoked before every trial
/// evaluation; tests use it to check bracket monotonicity.
template <class Oracle>
LineSearchOutcome bracketing_search(
    Oracle&& oracle, const Vector& x, const Vector& d, double f0, const Vector& g0,
    const LineSearchParams& params,
    const std::function<void(double, double, double)>& bracket_observer = {}) {
    params.validate();
    const double g0d = g0.dot(d);
    if (!(g0d < 0.0))
        throw std::invalid_argument("bracketing_search: non-descent direction (g0'd >= 0)");

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double t = 1.0;
    int expansions = 0;
    int bisections = 0;

    LineSearchOutcome out;

    auto finish = [&](LineSearchStatus status) {
        out.status = status;
        return out;
    };

    for (;;) {
        if (bracket_observer) bracket_observer(lo, hi, t);
        Vector xt = x + t * d;
        OracleResponse r = oracle(xt);
        ++out.evals;
        if (r.f < out.f_new) {
            out.t = t;
            out.x_new = xt;
            out.f_new = r.f;
            out.g_new = r.g;
        }
        if (!armijo_holds(f0, g0d, t, r.f, params.c1)) {
            hi = t;
        } else if (!wolfe_holds(g0d, r.g.dot(d), params.c2)) {
            lo = t;
        } else {
            out.t = t;
            out.x_new = std::move(xt);
            out.f_new = r.f;
            out.g_new = std::move(r.g);
            return finish(LineSearchStatus::accepted);
        }
        if (std::isinf(hi)) {
            if (expansions >= params.max_expansions)
                return finish(LineSearchStatus::expansion_limit);
            ++expansions;
            t = 2.0 * lo;
        } else {
            if (bisections >= params.max_bisections)
                return finish(LineSearchStatus::bisection_limit);
            ++bisections;
            t = 0.5 * (lo + hi);
        }
        if (t == lo || t == hi) return finish(LineSearchStatus::rounding_failure);
    }
}

}  // namespace nsolab
