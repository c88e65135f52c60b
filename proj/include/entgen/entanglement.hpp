#pragma once

// Entanglement quantification: the closed-form two-branch negativity and an
// independent Schmidt-decomposition route valid for any bipartite pure state.
// Convention: a two-qubit maximally entangled state scores 1.

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "entgen/errors.hpp"
#include "entgen/fock.hpp"

namespace entgen {

struct NegativityResult {
    double value = 0.0;
    std::vector<double> schmidt_coeffs; // descending, squares sum to 1
};

// 2|a0||a1||B| / (|a0|^2 + |a1|^2 |B|^2); equals 1 iff |a0| = |a1||B|.
inline double negativity_closed(cplx a0, cplx a1, double B) {
    const double m0 = std::abs(a0), m1 = std::abs(a1), mb = std::abs(B);
    const double den = m0 * m0 + m1 * m1 * mb * mb;
    if (den == 0.0) return 0.0;
    return 2.0 * m0 * m1 * mb / den;
}

// Signed residual |a0| - |a1||B|; a root marks maximal entanglement.
inline double max_negativity_residual(cplx a0, cplx a1, double B) {
    return std::abs(a0) - std::abs(a1) * std::abs(B);
}

// Schmidt coefficients of a normalized pure bipartite state given as its
// coefficient matrix; negativity = (sum s_i)^2 - 1 (the trace-norm negativity
// of the partially transposed pure-state density matrix).
inline NegativityResult schmidt_negativity(const Eigen::MatrixXcd& coeffs) {
    const double n2 = coeffs.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-8)
        throw NotNormalized("schmidt_negativity requires a normalized state");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeffs);
    NegativityResult out;
    double sum = 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        out.schmidt_coeffs.push_back(svd.singularValues()(i));
        sum += svd.singularValues()(i);
    }
    out.value = sum * sum - 1.0;
    if (out.value < 0.0 && out.value > -1e-12) out.value = 0.0;
    return out;
}

inline NegativityResult schmidt_negativity(const TwoModeAmplitudes& state) {
    Eigen::MatrixXcd m(state.cutoff1 + 1, state.cutoff2 + 1);
    for (int n1 = 0; n1 <= state.cutoff1; ++n1)
        for (int n2 = 0; n2 <= state.cutoff2; ++n2) m(n1, n2) = state.at(n1, n2);
    return schmidt_negativity(m);
}

} // namespace entgen
