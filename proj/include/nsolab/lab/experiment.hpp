#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nsolab/core.hpp"
#include "nsolab/lab/instance_io.hpp"
#include "nsolab/problems/abs_linear.hpp"
#include "nsolab/problems/les_houches.hpp"
#include "nsolab/problems/mat_comp.hpp"
#include "nsolab/problems/max_cut.hpp"
#include "nsolab/problems/max_eig.hpp"
#include "nsolab/smoothing.hpp"
#include "nsolab/solver.hpp"

namespace nsolab::lab {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct MethodSpec {
    Method method = Method::bfgs;
    int m = 5;
    bool scaled = true;

    std::string label() const {
        if (method != Method::lbfgs) return to_string(method);
        std::ostringstream s;
        s << "lbfgs-" << m << (scaled ? "-scaled" : "-unscaled");
        return s.str();
    }
};

/// "bfgs", "gradient", "subgradient", or "lbfgs-<m>-scaled" /
/// "lbfgs-<m>-unscaled" (also accepts "lbfgs" for the m=5 scaled default).
inline MethodSpec parse_method_spec(const std::string& text) {
    MethodSpec spec;
    if (text == "bfgs") return {Method::bfgs};
    if (text == "gradient") return {Method::gradient};
    if (text == "subgradient") return {Method::subgradient};
    if (text == "lbfgs") return {Method::lbfgs, 5, true};
    if (text.rfind("lbfgs-", 0) == 0) {
        std::string rest = text.substr(6);
        const auto dash = rest.find('-');
        std::string mpart = dash == std::string::npos ? rest : rest.substr(0, dash);
        std::string variant = dash == std::string::npos ? "scaled" : rest.substr(dash + 1);
        int m = 0;
        try {
            m = std::stoi(mpart);
        } catch (...) {
            throw std::invalid_argument("bad method spec: " + text);
        }
        if (m < 1) throw std::invalid_argument("bad method spec (m < 1): " + text);
        if (variant != "scaled" && variant != "unscaled")
            throw std::invalid_argument("bad method spec: " + text);
        return {Method::lbfgs, m, variant == "scaled"};
    }
    throw std::invalid_argument("unknown method: " + text);
}

enum class X0Mode { ball, gaussian };

struct X0Spec {
    X0Mode mode = X0Mode::ball;
    double radius = 0.1;        ///< ball mode
    double center_value = 1.0;  ///< ball center is center_value * ones
};

struct ProblemSpec {
    std::string name;  ///< abs_linear | les_houches | max_eig | max_cut | mat_comp
    double mu = 0.0;   ///< > 0 selects the smoothed variant
    // abs_linear / les_houches / max_eig
    double a = 1.0;
    long n = 10;
    long N = 10;
    // mat_comp
    long N1 = 4;
    long N2 = 6;
    long rank = 2;
    double p_obs = 0.2;
    // penalty duals
    double alpha = 0.0;  ///< 0 means the 2N default for max_cut
    bool laplacian_quarter = true;
    std::uint64_t instance_seed = 1;
    std::string graph_path;     ///< max_cut from a Gset file
    std::string instance_path;  ///< max_eig / mat_comp from a saved instance
};

struct ExperimentConfig {
    ProblemSpec problem;
    std::vector<MethodSpec> methods;
    long max_evals = 10000;
    long max_iters = 1000000;
    LineSearchParams ls{};
    double grad_tol = 0.0;
    double unbounded_floor = -1e12;
    std::optional<double> f_star;  ///< reference optimum for summaries
    std::uint64_t seed = 1;        ///< drives the shared starting point
    std::optional<X0Spec> x0;      ///< default depends on the problem
    std::string output_prefix;     ///< empty: no files written

    void validate() const {
        if (methods.empty()) throw std::invalid_argument("experiment: need at least one method");
        if (max_evals < 1 || max_iters < 1)
            throw std::invalid_argument("experiment: budgets must be >= 1");
        ls.validate();
        if (!problem.graph_path.empty() && !std::filesystem::exists(problem.graph_path))
            throw std::invalid_argument("experiment: graph file not found: " + problem.graph_path);
        if (!problem.instance_path.empty() && !std::filesystem::exists(problem.instance_path))
            throw std::invalid_argument("experiment: instance file not found: " +
                                        problem.instance_path);
    }
};

// ---------------------------------------------------------------------------
// Problem construction
// ---------------------------------------------------------------------------

/// Keeps the concrete instance alive next to its type-erased oracle so the
/// CLI can run spectrum reports against the same data.
struct BuiltProblem {
    Problem problem;
    std::variant<std::monostate, AbsLinearProblem, LesHouchesProblem, MaxEigInstance,
                 MaxCutInstance, MatCompInstance>
        instance;
};

inline BuiltProblem build_problem(const ProblemSpec& spec) {
    const bool smoothed = spec.mu > 0.0;
    BuiltProblem out;
    if (spec.name == "abs_linear") {
        if (smoothed) throw std::invalid_argument("abs_linear has no smoothed variant");
        AbsLinearProblem p(spec.a, spec.n);
        out.problem = as_problem(p);
        out.instance = p;
    } else if (spec.name == "les_houches") {
        LesHouchesProblem p(spec.n);
        out.problem = smoothed ? as_smoothed_problem(p, spec.mu) : as_problem(p);
        out.instance = p;
    } else if (spec.name == "max_eig") {
        MaxEigInstance inst = spec.instance_path.empty()
                                  ? gen_random_max_eig(spec.instance_seed, spec.N, spec.n)
                                  : load_max_eig_instance(spec.instance_path);
        out.problem = smoothed ? as_smoothed_problem(inst, spec.mu) : as_problem(inst);
        out.instance = std::move(inst);
    } else if (spec.name == "max_cut") {
        if (spec.graph_path.empty())
            throw std::invalid_argument("max_cut requires a graph file (graph_path)");
        const GsetGraph g = load_gset(spec.graph_path);
        const double alpha = spec.alpha > 0.0 ? spec.alpha : 2.0 * static_cast<double>(g.N);
        MaxCutInstance inst(laplacian_from_edges(g.edges, g.N), alpha, spec.laplacian_quarter);
        out.problem = smoothed ? as_smoothed_problem(inst, spec.mu) : as_problem(inst);
        out.instance = std::move(inst);
    } else if (spec.name == "mat_comp") {
        if (!spec.instance_path.empty()) {
            MatCompInstance inst = load_mat_comp_instance(
                spec.instance_path,
                spec.alpha > 0.0 ? std::optional<double>(spec.alpha) : std::nullopt);
            out.problem = smoothed ? as_smoothed_problem(inst, spec.mu) : as_problem(inst);
            out.instance = std::move(inst);
            return out;
        }
        if (spec.alpha <= 0.0) throw std::invalid_argument("mat_comp requires alpha > 0");
        GeneratedMatComp gen =
            gen_random_matcomp(spec.instance_seed, spec.N1, spec.N2, spec.rank, spec.p_obs);
        MatCompInstance inst(spec.N1, spec.N2, std::move(gen.omega), std::move(gen.b), spec.alpha);
        out.problem = smoothed ? as_smoothed_problem(inst, spec.mu) : as_problem(inst);
        out.instance = std::move(inst);
    } else {
        throw std::invalid_argument("unknown problem: " + spec.name);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Starting points
// ---------------------------------------------------------------------------

inline X0Spec default_x0_spec(const std::string& problem_name) {
    if (problem_name == "les_houches") return X0Spec{X0Mode::ball, 0.1, 1.0};
    return X0Spec{X0Mode::gaussian};
}

/// One shared starting point per experiment. Ball mode draws uniformly from
/// the radius-r ball around center_value * ones. Gaussian mode is standard
/// normal; for abs_linear the first coordinate is resampled until
/// |x0_1| > 1e-8.
inline Vector sample_x0(const ProblemSpec& spec, Index dim, const X0Spec& x0spec,
                        std::uint64_t seed) {
    auto rng = make_rng(seed, /*stream=*/1);
    if (x0spec.mode == X0Mode::ball) {
        Vector center = Vector::Constant(dim, x0spec.center_value);
        return ball_point(center, x0spec.radius, rng);
    }
    Vector x = standard_normal_vector(dim, rng);
    if (spec.name == "abs_linear") {
        std::normal_distribution<double> gauss(0.0, 1.0);
        while (std::abs(x[0]) <= 1e-8) x[0] = gauss(rng);
    }
    return x;
}

// ---------------------------------------------------------------------------
// CSV / text emission
// ---------------------------------------------------------------------------

inline void write_trace_csv(const std::string& path, const RunRecord& rec) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "iter,cum_evals,f,gnorm,step,note\n";
    for (const TraceRow& row : rec.trace) {
        out << row.iter << ',' << row.cum_evals << ',' << format_g17(row.f) << ','
            << format_g17(row.gnorm) << ',' << format_g17(row.step) << ',' << to_string(row.note)
            << '\n';
    }
}

inline void write_vector_txt(const std::string& path, const Vector& v) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (Index i = 0; i < v.size(); ++i) out << format_g17(v[i]) << '\n';
}

inline Vector read_vector_txt(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    return Eigen::Map<const Vector>(vals.data(), static_cast<Index>(vals.size()));
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct ExperimentResult {
    Vector x0;
    std::vector<std::pair<MethodSpec, RunRecord>> runs;
    std::vector<std::string> written_files;
};

inline SolverConfig solver_config_for(const ExperimentConfig& cfg, const MethodSpec& method) {
    SolverConfig sc;
    sc.method = method.method;
    sc.m = method.m;
    sc.scaled = method.scaled;
    sc.ls = cfg.ls;
    sc.max_evals = cfg.max_evals;
    sc.max_iters = cfg.max_iters;
    sc.grad_tol = cfg.grad_tol;
    sc.unbounded_floor = cfg.unbounded_floor;
    return sc;
}

inline std::optional<double> reference_optimum(const ExperimentConfig& cfg,
                                               const Problem& problem) {
    if (cfg.f_star) return cfg.f_star;
    return problem.f_star;
}

/// Runs every configured method from one shared seeded starting point.
/// With an output prefix set, writes per-method trace CSVs and final
/// iterates plus one summary CSV; the summary's rel_err column is left
/// empty when no reference optimum is known.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    BuiltProblem built = build_problem(cfg.problem);
    Problem& problem = built.problem;
    problem.f_star = reference_optimum(cfg, problem);

    const X0Spec x0spec = cfg.x0 ? *cfg.x0 : default_x0_spec(cfg.problem.name);
    ExperimentResult result;
    result.x0 = sample_x0(cfg.problem, problem.dim, x0spec, cfg.seed);

    for (const MethodSpec& method : cfg.methods) {
        RunRecord rec = run(problem, result.x0, solver_config_for(cfg, method), cfg.seed);
        result.runs.emplace_back(method, std::move(rec));
    }

    if (!cfg.output_prefix.empty()) {
        const std::filesystem::path prefix(cfg.output_prefix);
        if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
        for (const auto& [method, rec] : result.runs) {
            const std::string trace_path = cfg.output_prefix + "_" + method.label() + ".csv";
            const std::string x_path = cfg.output_prefix + "_" + method.label() + "_x.txt";
            write_trace_csv(trace_path, rec);
            write_vector_txt(x_path, rec.final_x);
            result.written_files.push_back(trace_path);
            result.written_files.push_back(x_path);
        }
        const std::string summary_path = cfg.output_prefix + "_summary.csv";
        std::ofstream out(summary_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + summary_path);
        out << "method,status,final_f,rel_err,evals\n";
        for (const auto& [method, rec] : result.runs) {
            out << method.label() << ',' << to_string(rec.status) << ','
                << format_g17(rec.final_f) << ',';
            if (problem.f_star)
                out << format_g17(std::abs(rec.final_f - *problem.f_star) /
                                  std::max(1.0, std::abs(*problem.f_star)));
            out << ',' << (rec.trace.empty() ? 0L : rec.trace.back().cum_evals) << '\n';
        }
        result.written_files.push_back(summary_path);
    }
    return result;
}

}  // namespace nsolab::lab
