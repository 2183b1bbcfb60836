// nsolab-lab: experiment front end over the nsolab library.
//
// Subcommands: run (one experiment), sweep (parameter grid with
// classification counts), check-thm (failure-condition predicates),
// gen (write a random instance to disk), spectrum (dual-slack eigenvalues
// at a saved iterate).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsolab/lab/config_json.hpp"
#include "nsolab/lab/instance_io.hpp"
#include "nsolab/lab/spectrum.hpp"
#include "nsolab/lab/theorems.hpp"
#include "nsolab/nsolab.hpp"

namespace lab = nsolab::lab;
using nsolab::Index;
using nsolab::Vector;

namespace {

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

void print_summary(const lab::ExperimentConfig& cfg, const lab::ExperimentResult& result) {
    std::printf("%-22s %-20s %-24s %-12s %s\n", "method", "status", "final_f", "evals", "iters");
    for (const auto& [method, rec] : result.runs) {
        std::printf("%-22s %-20s %-24.16g %-12ld %ld\n", method.label().c_str(),
                    nsolab::to_string(rec.status), rec.final_f,
                    rec.trace.empty() ? 0L : rec.trace.back().cum_evals,
                    nsolab::count_accepted_steps(rec));
    }
    if (cfg.f_star)
        std::printf("reference optimum: %.17g\n", *cfg.f_star);
    for (const std::string& file : result.written_files) std::printf("wrote %s\n", file.c_str());
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            std::uint64_t seed_override, bool has_seed) {
    lab::ExperimentConfig cfg = lab::load_experiment_config(config_path);
    if (!out_override.empty()) cfg.output_prefix = out_override;
    if (has_seed) cfg.seed = seed_override;
    lab::ExperimentResult result = lab::run_experiment(cfg);
    print_summary(cfg, result);
    return 0;
}

struct SweepCell {
    double a = 0.0;
    long n = 0;
    double c1 = 0.0;
    double mu = 0.0;
    std::uint64_t seed = 0;
    nsolab::RunStatus status = nsolab::RunStatus::budget_exhausted;
    double final_f = 0.0;
    long evals = 0;
};

int cmd_sweep(const std::string& problem_name, const std::string& method_text,
              const std::string& grid_a, const std::string& grid_n, const std::string& grid_c1,
              const std::string& grid_mu, int seeds, long max_iters, long max_evals,
              const std::string& out_csv, unsigned jobs) {
    const lab::MethodSpec method = lab::parse_method_spec(method_text);
    std::vector<double> as = grid_a.empty() ? std::vector<double>{1.0} : parse_grid(grid_a);
    std::vector<double> ns = grid_n.empty() ? std::vector<double>{10.0} : parse_grid(grid_n);
    std::vector<double> c1s = grid_c1.empty() ? std::vector<double>{1e-4} : parse_grid(grid_c1);
    std::vector<double> mus = grid_mu.empty() ? std::vector<double>{0.0} : parse_grid(grid_mu);

    std::vector<lab::ExperimentConfig> cells;
    for (double a : as)
        for (double n : ns)
            for (double c1 : c1s)
                for (double mu : mus)
                    for (int seed = 1; seed <= seeds; ++seed) {
                        lab::ExperimentConfig cfg;
                        cfg.problem.name = problem_name;
                        cfg.problem.a = a;
                        cfg.problem.n = static_cast<long>(n);
                        cfg.problem.mu = mu;
                        cfg.methods = {method};
                        cfg.ls.c1 = c1;
                        cfg.max_iters = max_iters;
                        cfg.max_evals = max_evals;
                        cfg.seed = static_cast<std::uint64_t>(seed);
                        cells.push_back(std::move(cfg));
                    }

    std::vector<SweepCell> results(cells.size());
    auto run_cell = [&](std::size_t i) {
        const lab::ExperimentConfig& cfg = cells[i];
        lab::ExperimentResult r = lab::run_experiment(cfg);
        const nsolab::RunRecord& rec = r.runs.front().second;
        results[i] = SweepCell{cfg.problem.a,
                               cfg.problem.n,
                               cfg.ls.c1,
                               cfg.problem.mu,
                               cfg.seed,
                               rec.status,
                               rec.final_f,
                               rec.trace.empty() ? 0L : rec.trace.back().cum_evals};
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::vector<std::future<void>> pending;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            pending.push_back(std::async(std::launch::async, run_cell, i));
            if (pending.size() >= jobs) {
                for (auto& p : pending) p.get();
                pending.clear();
            }
        }
        for (auto& p : pending) p.get();
    }

    // single collector writes the CSV after all runs finish
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_csv.empty()) {
        file.open(out_csv, std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write " + out_csv);
        out = &file;
    }
    *out << "a,n,c1,mu,seed,status,final_f,evals\n";
    for (const SweepCell& c : results) {
        *out << nsolab::format_g17(c.a) << ',' << c.n << ',' << nsolab::format_g17(c.c1) << ','
             << nsolab::format_g17(c.mu) << ',' << c.seed << ',' << nsolab::to_string(c.status)
             << ',' << nsolab::format_g17(c.final_f) << ',' << c.evals << '\n';
    }

    // classification counts per (a, n, c1, mu) combination
    std::printf("%-10s %-6s %-10s %-10s %s\n", "a", "n", "c1", "mu", "status counts");
    std::size_t i = 0;
    while (i < results.size()) {
        std::size_t j = i;
        std::map<std::string, int> counts;
        while (j < results.size() && results[j].a == results[i].a && results[j].n == results[i].n &&
               results[j].c1 == results[i].c1 && results[j].mu == results[i].mu) {
            counts[nsolab::to_string(results[j].status)]++;
            ++j;
        }
        std::ostringstream line;
        for (const auto& [status, count] : counts) line << status << ":" << count << " ";
        std::printf("%-10g %-6ld %-10g %-10g %s\n", results[i].a, results[i].n, results[i].c1,
                    results[i].mu, line.str().c_str());
        i = j;
    }
    return 0;
}

int cmd_check_thm(double a, long n, double c1) {
    if (!lab::thm1_hypothesis_holds(a, n))
        std::printf("warning: hypothesis a >= 2 sqrt(n-1) unmet (a=%g, n=%ld)\n", a, n);
    std::printf("scaled lbfgs-1 failure condition: %s\n",
                lab::check_thm1_failure(a, n, c1) ? "holds" : "does not hold");
    std::printf("gradient-method failure condition: %s\n",
                lab::check_gradient_failure(a, n, c1) ? "holds" : "does not hold");
    return 0;
}

int cmd_gen(const std::string& problem, std::uint64_t seed, long N, long n, long N1, long N2,
            long rank, double p_obs, double alpha, const std::string& out_path) {
    if (problem == "max_eig") {
        nsolab::MaxEigInstance inst = nsolab::gen_random_max_eig(seed, N, n);
        lab::save_instance(out_path, inst);
    } else if (problem == "mat_comp") {
        nsolab::GeneratedMatComp gen = nsolab::gen_random_matcomp(seed, N1, N2, rank, p_obs);
        if (alpha <= 0.0)
            throw std::invalid_argument("gen mat_comp: --alpha must be > 0");
        nsolab::MatCompInstance inst(N1, N2, std::move(gen.omega), std::move(gen.b), alpha);
        lab::save_instance(out_path, inst, &gen.ground_truth);
    } else {
        throw std::invalid_argument("gen supports max_eig and mat_comp");
    }
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_spectrum(const std::string& graph_path, double alpha, bool quarter,
                 const std::string& instance_path, const std::string& y_path, long k,
                 double threshold) {
    const Vector y = lab::read_vector_txt(y_path);
    lab::SpectrumReport rep;
    if (!graph_path.empty()) {
        const nsolab::GsetGraph g = nsolab::load_gset(graph_path);
        const double eff_alpha = alpha > 0.0 ? alpha : 2.0 * static_cast<double>(g.N);
        nsolab::MaxCutInstance inst(nsolab::laplacian_from_edges(g.edges, g.N), eff_alpha,
                                    quarter);
        rep = lab::spectrum_report(inst, y, k);
    } else if (!instance_path.empty()) {
        nsolab::MatCompInstance inst = lab::load_mat_comp_instance(instance_path);
        rep = lab::spectrum_report(inst, y, k);
    } else {
        throw std::invalid_argument("spectrum needs --graph or --instance");
    }
    std::printf("smallest %ld eigenvalues of the dual slack matrix (ascending):\n",
                static_cast<long>(rep.eigenvalues.size()));
    for (Index i = 0; i < rep.eigenvalues.size(); ++i)
        std::printf("  %.17g\n", rep.eigenvalues[i]);
    std::printf("eigenvalues below %.3g: %ld (estimated nullity)\n", threshold,
                rep.count_below(threshold));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonsmooth optimization lab"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one experiment from a JSON config");
    std::string config_path, out_override;
    std::uint64_t seed_override = 0;
    run_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    run_cmd->add_option("--out", out_override, "override the output prefix");
    auto* seed_opt = run_cmd->add_option("--seed", seed_override, "override the experiment seed");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid of runs with classification counts");
    std::string sweep_problem = "abs_linear", sweep_method = "lbfgs-1-scaled";
    std::string grid_a, grid_n, grid_c1, grid_mu, sweep_out;
    int sweep_seeds = 10;
    long sweep_iters = 5000, sweep_evals = 1000000;
    unsigned sweep_jobs = 1;
    sweep_cmd->add_option("--problem", sweep_problem, "abs_linear or les_houches");
    sweep_cmd->add_option("--method", sweep_method, "method spec, e.g. lbfgs-1-scaled");
    sweep_cmd->add_option("--a", grid_a, "comma list of a values");
    sweep_cmd->add_option("--n", grid_n, "comma list of dimensions");
    sweep_cmd->add_option("--c1", grid_c1, "comma list of Armijo parameters");
    sweep_cmd->add_option("--mu", grid_mu, "comma list of smoothing parameters (0 = nonsmooth)");
    sweep_cmd->add_option("--seeds", sweep_seeds, "seeds per combination");
    sweep_cmd->add_option("--max-iters", sweep_iters, "iteration budget per run");
    sweep_cmd->add_option("--max-evals", sweep_evals, "evaluation budget per run");
    sweep_cmd->add_option("--out", sweep_out, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--jobs", sweep_jobs, "concurrent runs");

    // check-thm
    auto* thm_cmd = app.add_subcommand("check-thm", "failure-condition predicates");
    double thm_a = 6.0, thm_c1 = 1e-4;
    long thm_n = 10;
    thm_cmd->add_option("--a", thm_a, "objective parameter a")->required();
    thm_cmd->add_option("--n", thm_n, "dimension n")->required();
    thm_cmd->add_option("--c1", thm_c1, "Armijo parameter")->required();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance file");
    std::string gen_problem, gen_out;
    std::uint64_t gen_seed = 1;
    long gen_N = 50, gen_n = 49, gen_N1 = 20, gen_N2 = 160, gen_rank = 3;
    double gen_p = 0.2, gen_alpha = 0.0;
    gen_cmd->add_option("--problem", gen_problem, "max_eig or mat_comp")->required();
    gen_cmd->add_option("--seed", gen_seed, "instance seed");
    gen_cmd->add_option("--N", gen_N, "matrix order (max_eig)");
    gen_cmd->add_option("--n", gen_n, "number of variables (max_eig)");
    gen_cmd->add_option("--N1", gen_N1, "rows (mat_comp)");
    gen_cmd->add_option("--N2", gen_N2, "columns (mat_comp)");
    gen_cmd->add_option("--rank", gen_rank, "ground-truth rank (mat_comp)");
    gen_cmd->add_option("--p-obs", gen_p, "observation probability (mat_comp)");
    gen_cmd->add_option("--alpha", gen_alpha, "penalty parameter (mat_comp)");
    gen_cmd->add_option("--out", gen_out, "output JSON path")->required();

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "dual-slack spectrum at a saved iterate");
    std::string spec_graph, spec_instance, spec_y;
    double spec_alpha = 0.0, spec_threshold = 1e-6;
    long spec_k = 20;
    bool spec_no_quarter = false;
    spec_cmd->add_option("--graph", spec_graph, "Gset graph file (max_cut)");
    spec_cmd->add_option("--alpha", spec_alpha, "penalty parameter (default 2N for max_cut)");
    spec_cmd->add_flag("--no-quarter", spec_no_quarter, "use L instead of L/4 in the slack");
    spec_cmd->add_option("--instance", spec_instance, "mat_comp instance JSON");
    spec_cmd->add_option("--y", spec_y, "iterate file, one coordinate per line")->required();
    spec_cmd->add_option("--k", spec_k, "how many smallest eigenvalues");
    spec_cmd->add_option("--threshold", spec_threshold, "nullity-count threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(config_path, out_override, seed_override, !seed_opt->empty());
        if (*sweep_cmd)
            return cmd_sweep(sweep_problem, sweep_method, grid_a, grid_n, grid_c1, grid_mu,
                             sweep_seeds, sweep_iters, sweep_evals, sweep_out, sweep_jobs);
        if (*thm_cmd) return cmd_check_thm(thm_a, thm_n, thm_c1);
        if (*gen_cmd)
            return cmd_gen(gen_problem, gen_seed, gen_N, gen_n, gen_N1, gen_N2, gen_rank, gen_p,
                           gen_alpha, gen_out);
        if (*spec_cmd)
            return cmd_spectrum(spec_graph, spec_alpha, !spec_no_quarter, spec_instance, spec_y,
                                spec_k, spec_threshold);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
