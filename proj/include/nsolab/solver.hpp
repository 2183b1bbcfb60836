#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsolab/core.hpp"
#include "nsolab/linesearch.hpp"
#include "nsolab/quasi_newton.hpp"

namespace nsolab {

enum class Method { bfgs, lbfgs, gradient, subgradient };

struct SolverConfig {
    Method method = Method::bfgs;
    int m = 5;           ///< history length (lbfgs only)
    bool scaled = true;  ///< BB-scaled initial matrix (lbfgs only)
    LineSearchParams ls{};
    long max_evals = std::numeric_limits<long>::max() / 4;
    long max_iters = std::numeric_limits<long>::max() / 4;
    double grad_tol = 0.0;           ///< 0 means: run to budget
    double unbounded_floor = -1e12;  ///< f below this is declared unbounded
    double f_star_rel_tol = 1e-8;    ///< relative tolerance of the known-f* convergence test

    void validate() const {
        if (max_evals < 1) throw std::invalid_argument("SolverConfig: max_evals must be >= 1");
        if (max_iters < 0) throw std::invalid_argument("SolverConfig: max_iters must be >= 0");
        if (!(grad_tol >= 0.0)) throw std::invalid_argument("SolverConfig: grad_tol must be >= 0");
        if (method == Method::lbfgs && m < 1)
            throw std::invalid_argument("SolverConfig: lbfgs memory must be >= 1");
        ls.validate();
    }
};

enum class RunStatus { converged, breakdown, budget_exhausted, unbounded_detected, stalled };

enum class TraceNote { iterate, ls_eval };

struct TraceRow {
    long iter = 0;       ///< iteration in progress when the call was made
    long cum_evals = 0;  ///< strictly increasing; rows are 1:1 with oracle calls
    double f = 0.0;
    double gnorm = 0.0;  ///< Euclidean norm of the oracle gradient
    double step = 0.0;   ///< accepted step length; 0 on line-search probes
    TraceNote note = TraceNote::ls_eval;
};

enum class TerminalCause {
    grad_tol_met,
    floor_crossed,
    expansion_limit,
    bisection_limit,
    rounding_failure,
    eval_budget,
    iter_budget,
    nonfinite_oracle,
    nondescent_direction,
};

struct RunRecord {
    RunStatus status = RunStatus::budget_exhausted;
    TerminalCause cause = TerminalCause::eval_budget;
    double final_f = std::numeric_limits<double>::quiet_NaN();
    Vector final_x;
    std::vector<TraceRow> trace;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::string note;  ///< diagnostic detail for breakdowns
};

/// Fixed-schedule subgradient step x - (1/k) g, k counted from 1.
inline Vector subgradient_step(const Vector& x, const Vector& g, long k) {
    if (k < 1) throw std::invalid_argument("subgradient_step: k starts at 1");
    return x - (1.0 / static_cast<double>(k)) * g;
}

struct ClassifyMeta {
    std::optional<double> f_star;
    double grad_tol = 0.0;
    double unbounded_floor = -1e12;
    double f_star_rel_tol = 1e-8;
};

/// Terminal classification. In order: converged (gradient test, or
/// proximity to a known f*), unbounded (floor crossed or expansion limit),
/// breakdown (line-search failure, bad oracle output, non-descent
/// direction), stalled (budget hit with the last 100 iterate rows flat to
/// 1e-12 relative), budget_exhausted otherwise.
inline RunStatus classify_run(const std::vector<TraceRow>& trace, TerminalCause cause,
                              const ClassifyMeta& meta) {
    if (trace.empty()) throw std::invalid_argument("classify_run: empty trace");

    double best_f = std::numeric_limits<double>::infinity();
    double last_iter_gnorm = std::numeric_limits<double>::infinity();
    double last_iter_f = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> iterate_f;
    for (const TraceRow& row : trace) {
        if (row.f < best_f) best_f = row.f;
        if (row.note == TraceNote::iterate) {
            last_iter_gnorm = row.gnorm;
            last_iter_f = row.f;
            iterate_f.push_back(row.f);
        }
    }

    if (cause != TerminalCause::nonfinite_oracle && cause != TerminalCause::nondescent_direction) {
        if (last_iter_gnorm <= meta.grad_tol) return RunStatus::converged;
        if (meta.f_star &&
            std::abs(best_f - *meta.f_star) <=
                meta.f_star_rel_tol * std::max(1.0, std::abs(*meta.f_star)))
            return RunStatus::converged;
        if (best_f < meta.unbounded_floor || cause == TerminalCause::expansion_limit)
            return RunStatus::unbounded_detected;
    }

    switch (cause) {
        case TerminalCause::bisection_limit:
        case TerminalCause::rounding_failure:
        case TerminalCause::nonfinite_oracle:
        case TerminalCause::nondescent_direction:
            return RunStatus::breakdown;
        case TerminalCause::eval_budget:
        case TerminalCause::iter_budget: {
            const std::size_t window = 100;
            if (iterate_f.size() >= window) {
                double lo = iterate_f.back(), hi = iterate_f.back();
                for (std::size_t k = iterate_f.size() - window; k < iterate_f.size(); ++k) {
                    lo = std::min(lo, iterate_f[k]);
                    hi = std::max(hi, iterate_f[k]);
                }
                if (hi - lo < 1e-12 * std::max(1.0, std::abs(last_iter_f)))
                    return RunStatus::stalled;
            }
            return RunStatus::budget_exhausted;
        }
        case TerminalCause::grad_tol_met:
            return RunStatus::converged;
        case TerminalCause::floor_crossed:
        case TerminalCause::expansion_limit:
            return RunStatus::unbounded_detected;
    }
    return RunStatus::budget_exhausted;
}

/// Optional per-iteration instrumentation; the equivalence and
/// positive-definiteness checks in the test suite hook in here.
struct RunObserver {
    /// after a direction is computed, before the step is taken
    std::function<void(long iter, const Vector& x, const Vector& g, const Vector& d)> on_direction;
    /// after each BFGS update of the dense inverse-Hessian approximation
    std::function<void(long iter, const Matrix& H)> on_hessian;
};

namespace detail {
struct BudgetHit {};
struct NonFiniteOracle {};
}  // namespace detail

/// Budgeted descent loop shared by all four methods. Every oracle call
/// appends one trace row; rows of accepted iterates are tagged afterwards.
/// Line-search methods move via bracketing_search; the subgradient method
/// steps on a fixed 1/k schedule with no search. Updates with s'y <= 0
/// after rounding are skipped so the quasi-Newton state stays positive
/// definite. final_f / final_x report the lowest-f point evaluated.
inline RunRecord run(const Problem& problem, const Vector& x0, const SolverConfig& cfg,
                     std::uint64_t seed = 0, const RunObserver* observer = nullptr) {
    cfg.validate();
    if (x0.size() != problem.dim)
        throw std::invalid_argument("run: x0 dimension does not match problem");
    if (!all_finite(x0)) throw std::invalid_argument("run: x0 must be finite");

    const auto wall_start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.seed = seed;

    long evals = 0;
    long iter = 0;
    double best_f = std::numeric_limits<double>::infinity();
    Vector best_x;

    auto oracle = [&](const Vector& x) -> OracleResponse {
        if (evals >= cfg.max_evals) throw detail::BudgetHit{};
        OracleResponse r = problem.eval(x);
        ++evals;
        const bool finite = std::isfinite(r.f) && all_finite(r.g);
        rec.trace.push_back(TraceRow{iter, evals, r.f, r.g.norm(), 0.0, TraceNote::ls_eval});
        if (std::isfinite(r.f) && r.f < best_f) {
            best_f = r.f;
            best_x = x;
        }
        if (!finite) throw detail::NonFiniteOracle{};
        return r;
    };

    TerminalCause cause = TerminalCause::eval_budget;
    Vector x = x0;
    double f = 0.0;
    Vector g;
    Matrix H;
    std::optional<MemoryBuffer> memory;

    try {
        OracleResponse r0 = oracle(x);
        rec.trace.back().note = TraceNote::iterate;
        f = r0.f;
        g = std::move(r0.g);

        if (cfg.method == Method::bfgs) H = Matrix::Identity(problem.dim, problem.dim);
        if (cfg.method == Method::lbfgs) memory.emplace(cfg.m);

        for (;;) {
            if (g.norm() <= cfg.grad_tol) {
                cause = TerminalCause::grad_tol_met;
                break;
            }
            if (f < cfg.unbounded_floor) {
                cause = TerminalCause::floor_crossed;
                break;
            }
            if (iter >= cfg.max_iters) {
                cause = TerminalCause::iter_budget;
                break;
            }

            if (cfg.method == Method::subgradient) {
                Vector xn = subgradient_step(x, g, iter + 1);
                OracleResponse r = oracle(xn);
                rec.trace.back().note = TraceNote::iterate;
                rec.trace.back().step = 1.0 / static_cast<double>(iter + 1);
                x = std::move(xn);
                f = r.f;
                g = std::move(r.g);
                ++iter;
                continue;
            }

            Vector d;
            switch (cfg.method) {
                case Method::gradient: d = -g; break;
                case Method::bfgs: d = -(H * g); break;
                case Method::lbfgs: d = two_loop_direction(*memory, g, cfg.scaled); break;
                case Method::subgradient: break;  // handled above
            }
            if (observer && observer->on_direction) observer->on_direction(iter, x, g, d);
            if (!(g.dot(d) < 0.0)) {
                cause = TerminalCause::nondescent_direction;
                rec.note = "direction is not a descent direction";
                break;
            }

            LineSearchOutcome ls = bracketing_search(oracle, x, d, f, g, cfg.ls);
            if (ls.status != LineSearchStatus::accepted) {
                switch (ls.status) {
                    case LineSearchStatus::expansion_limit:
                        cause = TerminalCause::expansion_limit;
                        break;
                    case LineSearchStatus::bisection_limit:
                        cause = TerminalCause::bisection_limit;
                        break;
                    default: cause = TerminalCause::rounding_failure; break;
                }
                break;
            }
            rec.trace.back().note = TraceNote::iterate;
            rec.trace.back().step = ls.t;

            Vector s = ls.x_new - x;
            Vector y = ls.g_new - g;
            const double sy = s.dot(y);
            if (sy > 0.0 && std::isfinite(sy)) {
                CurvaturePair pair{std::move(s), std::move(y), 1.0 / sy};
                if (cfg.method == Method::bfgs) {
                    H = bfgs_update(H, pair);
                    if (observer && observer->on_hessian) observer->on_hessian(iter, H);
                } else if (cfg.method == Method::lbfgs) {
                    memory->push(std::move(pair));
                }
            }
            x = std::move(ls.x_new);
            f = ls.f_new;
            g = std::move(ls.g_new);
            ++iter;
        }
    } catch (const detail::BudgetHit&) {
        cause = TerminalCause::eval_budget;
    } catch (const detail::NonFiniteOracle&) {
        cause = TerminalCause::nonfinite_oracle;
        rec.note = "oracle returned a non-finite value or gradient";
    }

    rec.cause = cause;
    rec.final_f = best_f;
    rec.final_x = best_x.size() > 0 ? best_x : x0;
    rec.status = classify_run(
        rec.trace, cause,
        ClassifyMeta{problem.f_star, cfg.grad_tol, cfg.unbounded_floor, cfg.f_star_rel_tol});
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return rec;
}

inline long count_iterate_rows(const RunRecord& rec) {
    long c = 0;
    for (const TraceRow& row : rec.trace)
        if (row.note == TraceNote::iterate) ++c;
    return c;
}

/// Accepted steps taken (iterate rows minus the initial evaluation).
inline long count_accepted_steps(const RunRecord& rec) {
    return std::max<long>(0, count_iterate_rows(rec) - 1);
}

inline const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::converged: return "converged";
        case RunStatus::breakdown: return "breakdown";
        case RunStatus::budget_exhausted: return "budget_exhausted";
        case RunStatus::unbounded_detected: return "unbounded_detected";
        case RunStatus::stalled: return "stalled";
    }
    return "?";
}

inline const char* to_string(TraceNote n) {
    return n == TraceNote::iterate ? "iterate" : "ls_eval";
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::bfgs: return "bfgs";
        case Method::lbfgs: return "lbfgs";
        case Method::gradient: return "gradient";
        case Method::subgradient: return "subgradient";
    }
    return "?";
}

}  // namespace nsolab
