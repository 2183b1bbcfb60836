#pragma once

#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsolab/core.hpp"

namespace nsolab {

/// Step / gradient-difference pair with rho = 1/(s'y). Pairs are only ever
/// stored with s'y > 0 (the Wolfe condition guarantees this in exact
/// arithmetic; callers skip the update otherwise).
struct CurvaturePair {
    Vector s;
    Vector y;
    double rho = 0.0;

    static CurvaturePair from(Vector s, Vector y) {
        const double sy = s.dot(y);
        if (!(sy > 0.0)) throw std::invalid_argument("CurvaturePair: s'y must be positive");
        return CurvaturePair{std::move(s), std::move(y), 1.0 / sy};
    }
};

/// Ring of at most m curvature pairs, oldest evicted first.
class MemoryBuffer {
public:
    explicit MemoryBuffer(int m) : m_(m) {
        if (m < 1) throw std::invalid_argument("MemoryBuffer: m must be >= 1");
    }

    void push(CurvaturePair pair) {
        pairs_.push_back(std::move(pair));
        if (static_cast<int>(pairs_.size()) > m_) pairs_.pop_front();
    }

    int capacity() const { return m_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    /// index 0 is the oldest stored pair
    const CurvaturePair& operator[](std::size_t i) const { return pairs_[i]; }
    const CurvaturePair& newest() const { return pairs_.back(); }
    void clear() { pairs_.clear(); }

private:
    int m_;
    std::deque<CurvaturePair> pairs_;
};

/// Dense BFGS update (I - rho s y') H (I - rho y s') + rho s s', computed as
/// a symmetric rank-two correction. H must be symmetric positive definite on
/// entry; the result then is as well, and satisfies the secant equation
/// H_new y = s.
inline Matrix bfgs_update(const Matrix& H, const CurvaturePair& pair) {
    if (!(pair.rho > 0.0) || !std::isfinite(pair.rho))
        throw std::invalid_argument("bfgs_update: rho must be finite and positive");
    const Vector& s = pair.s;
    const Vector& y = pair.y;
    const double rho = pair.rho;
    Vector Hy = H * y;
    const double yHy = y.dot(Hy);
    Matrix out = H;
    out.noalias() -= rho * (s * Hy.transpose() + Hy * s.transpose());
    out.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
    return out;
}

/// d = -H g with H implicitly defined by replaying the stored updates
/// (oldest to newest) on H0. H0 = (s'y)/(y'y) I from the newest pair when
/// `scaled` and the buffer is nonempty, the identity otherwise. Standard
/// two-loop recursion; H is never formed.
inline Vector two_loop_direction(const MemoryBuffer& mem, const Vector& g, bool scaled) {
    const int k = static_cast<int>(mem.size());
    if (k == 0) return -g;

    Vector q = g;
    std::vector<double> alpha(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        const CurvaturePair& p = mem[static_cast<std::size_t>(i)];
        alpha[static_cast<std::size_t>(i)] = p.rho * p.s.dot(q);
        q.noalias() -= alpha[static_cast<std::size_t>(i)] * p.y;
    }
    if (scaled) {
        const CurvaturePair& last = mem.newest();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (int i = 0; i < k; ++i) {
        const CurvaturePair& p = mem[static_cast<std::size_t>(i)];
        const double beta = p.rho * p.y.dot(q);
        q.noalias() += (alpha[static_cast<std::size_t>(i)] - beta) * p.s;
    }
    return -q;
}

}  // namespace nsolab
