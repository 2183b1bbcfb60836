#pragma once

#include <algorithm>

#include "nsolab/core.hpp"
#include "nsolab/problems/mat_comp.hpp"
#include "nsolab/problems/max_cut.hpp"
#include "nsolab/problems/sym_eig.hpp"

namespace nsolab::lab {

/// Smallest-k eigenvalues of the dual slack matrix Z at an iterate,
/// ascending. The count below a small threshold estimates the nullity of
/// Z at optimality (which mirrors the primal rank under strict
/// complementarity).
struct SpectrumReport {
    Vector eigenvalues;  ///< ascending

    long count_below(double threshold) const {
        long c = 0;
        for (Index i = 0; i < eigenvalues.size(); ++i)
            if (eigenvalues[i] < threshold) ++c;
        return c;
    }
};

namespace detail {
inline SpectrumReport smallest_k(const Matrix& Z, Index k) {
    const EigDecomp e = sym_eig_desc(Z);  // descending
    k = std::clamp<Index>(k, 1, Z.rows());
    SpectrumReport rep;
    rep.eigenvalues = e.lambdas.tail(k).reverse();
    return rep;
}
}  // namespace detail

inline SpectrumReport spectrum_report(const MaxCutInstance& inst, const Vector& y, Index k = 20) {
    return detail::smallest_k(inst.slack_matrix(y), k);
}

inline SpectrumReport spectrum_report(const MatCompInstance& inst, const Vector& y, Index k = 20) {
    return detail::smallest_k(inst.slack_matrix(y), k);
}

}  // namespace nsolab::lab
