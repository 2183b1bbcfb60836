#pragma once

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsolab/problems/mat_comp.hpp"
#include "nsolab/problems/max_eig.hpp"

namespace nsolab::lab {

// Saved-instance JSON. Matrices are row-major nested arrays; mat_comp
// observation pairs are 0-based [i, j].

namespace detail {
inline nlohmann::json matrix_to_json(const Matrix& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0) throw std::invalid_argument("instance: empty matrix");
    const Index cols = static_cast<Index>(j.at(0).size());
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (static_cast<Index>(j.at(i).size()) != cols)
            throw std::invalid_argument("instance: ragged matrix");
        for (Index c = 0; c < cols; ++c) M(i, c) = j.at(i).at(c).get<double>();
    }
    return M;
}
}  // namespace detail

inline void save_instance(const std::string& path, const MaxEigInstance& inst) {
    nlohmann::json j;
    j["type"] = "max_eig";
    j["N"] = inst.N;
    j["n"] = inst.n;
    j["C"] = detail::matrix_to_json(inst.C);
    nlohmann::json ops = nlohmann::json::array();
    for (const Matrix& A : inst.A_ops) ops.push_back(detail::matrix_to_json(A));
    j["A"] = std::move(ops);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << '\n';
}

inline void save_instance(const std::string& path, const MatCompInstance& inst,
                          const Matrix* ground_truth = nullptr) {
    nlohmann::json j;
    j["type"] = "mat_comp";
    j["N1"] = inst.N1;
    j["N2"] = inst.N2;
    j["alpha"] = inst.alpha;
    nlohmann::json omega = nlohmann::json::array();
    for (const auto& [i, k] : inst.omega) omega.push_back({i, k});
    j["omega"] = std::move(omega);
    std::vector<double> b(inst.b.data(), inst.b.data() + inst.b.size());
    j["b"] = b;
    if (ground_truth) j["ground_truth"] = detail::matrix_to_json(*ground_truth);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << '\n';
}

inline std::string instance_type(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance: " + path);
    nlohmann::json j;
    in >> j;
    return j.at("type").get<std::string>();
}

inline MaxEigInstance load_max_eig_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance: " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("type") != "max_eig") throw std::invalid_argument("not a max_eig instance: " + path);
    Matrix C = detail::matrix_from_json(j.at("C"));
    std::vector<Matrix> A;
    for (const auto& a : j.at("A")) A.push_back(detail::matrix_from_json(a));
    return MaxEigInstance(std::move(C), std::move(A));
}

inline MatCompInstance load_mat_comp_instance(const std::string& path,
                                              std::optional<double> alpha_override = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance: " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("type") != "mat_comp") throw std::invalid_argument("not a mat_comp instance: " + path);
    std::vector<std::pair<Index, Index>> omega;
    for (const auto& p : j.at("omega")) omega.emplace_back(p.at(0).get<Index>(), p.at(1).get<Index>());
    const std::vector<double> bvals = j.at("b").get<std::vector<double>>();
    Vector b = Eigen::Map<const Vector>(bvals.data(), static_cast<Index>(bvals.size()));
    const double alpha = alpha_override.value_or(j.at("alpha").get<double>());
    return MatCompInstance(j.at("N1").get<Index>(), j.at("N2").get<Index>(), std::move(omega),
                           std::move(b), alpha);
}

}  // namespace nsolab::lab
