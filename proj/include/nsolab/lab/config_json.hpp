#pragma once

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

#include "nsolab/lab/experiment.hpp"

namespace nsolab::lab {

using json = nlohmann::json;

// Experiment config schema (all fields optional unless noted):
// {
//   "problem": {"name": "les_houches", "n": 100, "mu": 0.0, ...},   (required)
//   "methods": ["bfgs", "lbfgs-1-scaled", ...],                     (required)
//   "max_evals": 10000, "max_iters": 1000000,
//   "line_search": {"c1": 1e-4, "c2": 0.5,
//                   "max_expansions": 60, "max_bisections": 50},
//   "grad_tol": 0.0, "unbounded_floor": -1e12,
//   "f_star": 0.0,
//   "seed": 1,
//   "x0": {"mode": "ball"|"gaussian", "radius": 0.1, "center_value": 1.0},
//   "output_prefix": "out/run1"
// }

inline ProblemSpec problem_spec_from_json(const json& j) {
    ProblemSpec p;
    p.name = j.at("name").get<std::string>();
    p.mu = j.value("mu", 0.0);
    p.a = j.value("a", 1.0);
    p.n = j.value("n", 10L);
    p.N = j.value("N", 10L);
    p.N1 = j.value("N1", 4L);
    p.N2 = j.value("N2", 6L);
    p.rank = j.value("rank", 2L);
    p.p_obs = j.value("p_obs", 0.2);
    p.alpha = j.value("alpha", 0.0);
    p.laplacian_quarter = j.value("laplacian_quarter", true);
    p.instance_seed = j.value("instance_seed", std::uint64_t{1});
    p.graph_path = j.value("graph_path", std::string{});
    p.instance_path = j.value("instance_path", std::string{});
    return p;
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.problem = problem_spec_from_json(j.at("problem"));
    for (const auto& m : j.at("methods")) cfg.methods.push_back(parse_method_spec(m.get<std::string>()));
    cfg.max_evals = j.value("max_evals", 10000L);
    cfg.max_iters = j.value("max_iters", 1000000L);
    if (j.contains("line_search")) {
        const json& ls = j["line_search"];
        cfg.ls.c1 = ls.value("c1", 1e-4);
        cfg.ls.c2 = ls.value("c2", 0.5);
        cfg.ls.max_expansions = ls.value("max_expansions", 60);
        cfg.ls.max_bisections = ls.value("max_bisections", 50);
    }
    cfg.grad_tol = j.value("grad_tol", 0.0);
    cfg.unbounded_floor = j.value("unbounded_floor", -1e12);
    if (j.contains("f_star")) cfg.f_star = j["f_star"].get<double>();
    cfg.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("x0")) {
        const json& x = j["x0"];
        X0Spec spec;
        const std::string mode = x.value("mode", std::string("ball"));
        if (mode == "ball")
            spec.mode = X0Mode::ball;
        else if (mode == "gaussian")
            spec.mode = X0Mode::gaussian;
        else
            throw std::invalid_argument("x0.mode must be ball or gaussian");
        spec.radius = x.value("radius", 0.1);
        spec.center_value = x.value("center_value", 1.0);
        cfg.x0 = spec;
    }
    cfg.output_prefix = j.value("output_prefix", std::string{});
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    in >> j;
    return experiment_config_from_json(j);
}

}  // namespace nsolab::lab
