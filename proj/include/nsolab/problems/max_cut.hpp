#pragma once

#include <Eigen/SparseCore>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsolab/core.hpp"
#include "nsolab/problems/sym_eig.hpp"

namespace nsolab {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct WeightedEdge {
    int u = 0;  ///< 1-based endpoints
    int v = 0;
    double w = 1.0;
};

/// Graph Laplacian L = D - W from a 1-based edge list; duplicate edges are
/// summed. Self-loops and out-of-range endpoints are rejected.
inline SparseMatrix laplacian_from_edges(const std::vector<WeightedEdge>& edges, Index N) {
    if (N < 1) throw std::invalid_argument("laplacian_from_edges: N must be >= 1");
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(4 * edges.size());
    for (const WeightedEdge& e : edges) {
        if (e.u < 1 || e.v < 1 || e.u > N || e.v > N)
            throw std::invalid_argument("laplacian_from_edges: endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("laplacian_from_edges: self-loop");
        const int i = e.u - 1, j = e.v - 1;
        trips.emplace_back(i, i, e.w);
        trips.emplace_back(j, j, e.w);
        trips.emplace_back(i, j, -e.w);
        trips.emplace_back(j, i, -e.w);
    }
    SparseMatrix L(N, N);
    L.setFromTriplets(trips.begin(), trips.end());  // duplicates summed
    return L;
}

/// Gset-style graph file: header "N M", then M lines "i j [w]" with 1-based
/// indices and default weight 1. '#' starts a comment; blank lines are
/// skipped.
struct GsetGraph {
    Index N = 0;
    std::vector<WeightedEdge> edges;
};

inline GsetGraph parse_gset(std::istream& in) {
    GsetGraph g;
    std::string line;
    long declared_edges = -1;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        if (g.N == 0 && declared_edges < 0) {
            long n = 0, m = 0;
            if (!(row >> n >> m)) continue;  // blank/comment before header
            if (n < 1 || m < 0) throw std::invalid_argument("gset: bad header");
            g.N = n;
            declared_edges = m;
            g.edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        WeightedEdge e;
        if (!(row >> e.u >> e.v)) continue;
        if (!(row >> e.w)) e.w = 1.0;
        g.edges.push_back(e);
    }
    if (g.N == 0) throw std::invalid_argument("gset: missing header");
    if (declared_edges >= 0 && static_cast<long>(g.edges.size()) != declared_edges)
        throw std::invalid_argument("gset: edge count does not match header");
    return g;
}

inline GsetGraph load_gset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_gset(in);
}

/// Exact-penalty dual of the Max Cut SDP relaxation:
///   f(y) = 1'y + alpha * max{lambda_max(M(y)), 0},  M(y) = cL - Diag(y),
/// with c = 1/4 under the dual convention (default) or c = 1 when
/// `laplacian_quarter` is disabled. alpha >= N makes the penalty exact.
struct MaxCutInstance {
    SparseMatrix L;
    double alpha;
    Index N;
    bool laplacian_quarter = true;

    MaxCutInstance(SparseMatrix L_, double alpha_, bool quarter = true)
        : L(std::move(L_)), alpha(alpha_), N(L.rows()), laplacian_quarter(quarter) {
        if (L.rows() != L.cols()) throw std::invalid_argument("MaxCutInstance: L not square");
        if (!(alpha >= static_cast<double>(N)))
            throw std::invalid_argument("MaxCutInstance: alpha must be >= N for validity");
        Matrix Ld = Matrix(L);
        if ((Ld - Ld.transpose()).norm() > 1e-12 * std::max(1.0, Ld.norm()))
            throw std::invalid_argument("MaxCutInstance: L not symmetric");
        const Vector rowsum = Ld.rowwise().sum();
        if (rowsum.cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, Ld.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("MaxCutInstance: Laplacian rows must sum to 0");
        if (Ld.diagonal().minCoeff() < 0.0)
            throw std::invalid_argument("MaxCutInstance: Laplacian diagonal must be >= 0");
    }

    double laplacian_scale() const { return laplacian_quarter ? 0.25 : 1.0; }

    /// M(y) = cL - Diag(y)
    Matrix penalty_matrix(const Vector& y) const {
        Matrix M = laplacian_scale() * Matrix(L);
        M.diagonal() -= y;
        return M;
    }

    /// Dual slack Z(y) = Diag(y) - cL = -M(y).
    Matrix slack_matrix(const Vector& y) const { return -penalty_matrix(y); }
};

inline OracleResponse eval_maxcut_penalty(const MaxCutInstance& inst, const Vector& y) {
    if (y.size() != inst.N) throw std::invalid_argument("eval_maxcut_penalty: wrong dimension");
    const EigDecomp e = sym_eig_desc(inst.penalty_matrix(y));
    const double lmax = e.lambdas[0];
    OracleResponse r;
    r.f = y.sum() + inst.alpha * std::max(lmax, 0.0);
    r.g = Vector::Ones(inst.N);
    if (lmax > 0.0) r.g -= inst.alpha * e.Q.col(0).cwiseAbs2();
    return r;
}

inline Problem as_problem(const MaxCutInstance& inst) {
    return Problem{"max_cut", inst.N,
                   [inst](const Vector& y) { return eval_maxcut_penalty(inst, y); },
                   std::nullopt};
}

}  // namespace nsolab
