#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>

namespace nsolab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Value/gradient pair returned by a problem oracle at one point.
struct OracleResponse {
    double f = 0.0;
    Vector g;
};

/// Type-erased gradient oracle with a fixed dimension.
///
/// Oracles follow the gradient paradigm throughout: at a kink they return
/// the gradient of one smooth piece selected by a deterministic tie rule
/// (lowest index wins, sign(0) = +1); no subgradient selection is attempted.
struct Problem {
    std::string name;
    Index dim = 0;
    std::function<OracleResponse(const Vector&)> eval;
    std::optional<double> f_star;  ///< known optimal value, when available
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// sign with sign(0) := +1.
inline double sign_pos(double v) { return v < 0.0 ? -1.0 : 1.0; }

// ---------------------------------------------------------------------------
// Seeded randomness. One engine per (seed, stream) pair so instance
// generation, starting points and independent runs draw from separate
// deterministic streams. Reproducibility is within-implementation only.
// ---------------------------------------------------------------------------

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream & 0xffffffffu),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

inline Vector standard_normal_vector(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
}

/// Uniform draw from the ball of radius `radius` around `center`:
/// normalized standard-normal direction, radial factor radius * u^{1/n}.
inline Vector ball_point(const Vector& center, double radius, std::mt19937_64& rng) {
    const Index n = center.size();
    Vector dir = standard_normal_vector(n, rng);
    double len = dir.norm();
    if (len == 0.0) {
        dir.setZero();
        dir[0] = 1.0;
        len = 1.0;
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    return center + (r / len) * dir;
}

/// Floating-point formatting shared by every CSV/text writer; 17 significant
/// digits round-trip IEEE doubles, so identical runs emit identical bytes.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace nsolab
