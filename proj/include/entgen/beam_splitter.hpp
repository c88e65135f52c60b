#pragma once

// Beam-splitter action in the photon-number basis. Three computation paths:
//   * the printed closed forms for |l,0> and |l,1> inputs,
//   * the authoritative operator expansion of (t a1+ - r a2+)^n1 (r a1+ + t a2+)^n2,
//   * an independent oracle that exponentiates the two-mode generator.
// The operator expansion is the production path; the printed |l,1> form is
// validation-only (see validate_printed_forms).

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "entgen/errors.hpp"
#include "entgen/fock.hpp"

namespace entgen {

// Real transmittance/reflectance pair, both strictly inside (0,1).
class BeamSplitter {
  public:
    BeamSplitter(double t, double r) : t_(t), r_(r) {
        if (!(t > 0.0 && t < 1.0) || !(r > 0.0 && r < 1.0))
            throw InvalidParameter("beam splitter coefficients must lie strictly inside (0,1)");
        if (std::abs(t * t + r * r - 1.0) > 1e-12)
            throw NormViolation("beam splitter must satisfy t^2 + r^2 = 1");
    }
    static BeamSplitter from_transmittance(double t) {
        if (!(t > 0.0 && t < 1.0))
            throw InvalidParameter("transmittance must lie strictly inside (0,1)");
        return BeamSplitter(t, std::sqrt(1.0 - t * t));
    }

    double t() const { return t_; }
    double r() const { return r_; }
    double theta() const { return std::atan2(r_, t_); }

  private:
    double t_, r_;
};

namespace detail {

// Transform of the basis state |n1,n2> under a1+ -> t a1+ - s*r a2+,
// a2+ -> s*r a1+ + t a2+, accumulated into `out` with weight `w`.
// s = +1 is the forward beam splitter, s = -1 its inverse.
inline void accumulate_bs_pair(int n1, int n2, double t, double r, int sgn, cplx w,
                               TwoModeAmplitudes& out) {
    const double lg_n1 = std::lgamma(n1 + 1.0), lg_n2 = std::lgamma(n2 + 1.0);
    for (int j = 0; j <= n1; ++j) {
        const double lbin1 = lg_n1 - std::lgamma(j + 1.0) - std::lgamma(n1 - j + 1.0);
        for (int i = 0; i <= n2; ++i) {
            const int u = n1 - j + n2 - i;
            const int v = j + i;
            if (u > out.cutoff1 || v > out.cutoff2)
                throw CutoffOverflow("beam-splitter output exceeds padded cutoff");
            const double lbin2 = lg_n2 - std::lgamma(i + 1.0) - std::lgamma(n2 - i + 1.0);
            const double lfac =
                0.5 * (std::lgamma(u + 1.0) + std::lgamma(v + 1.0) - lg_n1 - lg_n2);
            double val = std::exp(lbin1 + lbin2 + lfac) * std::pow(t, n1 - j + i)
                       * std::pow(r, j + n2 - i);
            if (j % 2 != 0) val = -val;
            if (sgn < 0 && (j + n2 - i) % 2 != 0) val = -val;
            out.at(u, v) += w * val;
        }
    }
}

} // namespace detail

// Vacuum-port closed form: BS(|l>|0>) = sum_k (-1)^k t^{l-k} r^k sqrt(C(l,k)) |l-k>|k>.
inline TwoModeAmplitudes bs_on_fock_vacuum(int l, const BeamSplitter& bs) {
    if (l < 0) throw InvalidParameter("Fock index must be >= 0");
    TwoModeAmplitudes out(l, l);
    double coef = std::pow(bs.t(), l); // k = 0: t^l sqrt(C(l,0))
    for (int k = 0; k <= l; ++k) {
        out.at(l - k, k) = (k % 2 == 0) ? coef : -coef;
        if (k < l) coef *= bs.r() / bs.t() * std::sqrt((l - k) / (k + 1.0));
    }
    return out;
}

// Operator expansion of (t a1+ - r a2+)^l (r a1+ + t a2+) |00> / sqrt(l!),
// i.e. the |l>|1> input.
inline TwoModeAmplitudes bs_on_fock_single(int l, const BeamSplitter& bs) {
    if (l < 0) throw InvalidParameter("Fock index must be >= 0");
    TwoModeAmplitudes out(l + 1, l + 1);
    detail::accumulate_bs_pair(l, 1, bs.t(), bs.r(), +1, cplx{1.0, 0.0}, out);
    return out;
}

// Linear extension of the basis transforms to an arbitrary two-mode state.
// Total photon number is conserved exactly, so the output is sized to
// cutoff1 + cutoff2 per mode and cannot overflow.
inline TwoModeAmplitudes apply_bs(const TwoModeAmplitudes& state, const BeamSplitter& bs,
                                  bool inverse = false) {
    const int total = state.cutoff1 + state.cutoff2;
    TwoModeAmplitudes out(total, total);
    for (int n1 = 0; n1 <= state.cutoff1; ++n1)
        for (int n2 = 0; n2 <= state.cutoff2; ++n2) {
            const cplx w = state.at(n1, n2);
            if (w == cplx{0.0, 0.0}) continue;
            detail::accumulate_bs_pair(n1, n2, bs.t(), bs.r(), inverse ? -1 : +1, w, out);
        }
    return out;
}

// Independent oracle: exponentiates theta (a1+ a2 - a1 a2+) on the truncated
// two-mode space via eigendecomposition of the Hermitian generator.
// Basis index = n1 * (cutoff+1) + n2. Truncation breaks unitarity only near
// the top photon-number edge; comparisons use the interior block.
inline Eigen::MatrixXcd bs_matrix_oracle_theta(double theta, int cutoff) {
    if (cutoff < 2) throw InvalidParameter("oracle cutoff must be >= 2");
    const int d = cutoff + 1;
    const int dim = d * d;
    // H = -i theta (a1+ a2 - a1 a2+) is Hermitian; U = exp(i H).
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const cplx mi{0.0, -1.0};
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            if (n1 + 1 < d && n2 - 1 >= 0) {
                const double g = theta * std::sqrt((n1 + 1.0) * n2);
                H((n1 + 1) * d + (n2 - 1), n1 * d + n2) += mi * g;
                H(n1 * d + n2, (n1 + 1) * d + (n2 - 1)) -= mi * g;
            }
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i)
        phases(i) = std::exp(cplx{0.0, 1.0} * es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Cached per (theta, cutoff); results are independent of cache behavior.
inline const Eigen::MatrixXcd& bs_matrix_oracle(const BeamSplitter& bs, int cutoff) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::unique_ptr<Eigen::MatrixXcd>> cache;
    const auto key = std::make_pair(bs.theta(), cutoff);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto m = std::make_unique<Eigen::MatrixXcd>(bs_matrix_oracle_theta(bs.theta(), cutoff));
        it = cache.emplace(key, std::move(m)).first;
    }
    return *it->second;
}

struct ValidationEntry {
    int l = 0;
    std::string form; // "vacuum_port" or "single_photon_port"
    double max_dev = 0.0;
    bool flagged = false;
};

using ValidationReport = std::vector<ValidationEntry>;

namespace detail {

// Printed |l>|1> closed form, under the reading that the k-sum ket is
// |l-k>|k+1> (the typeset |k> drops a photon). See validate_printed_forms.
inline TwoModeAmplitudes printed_single_form(int l, const BeamSplitter& bs) {
    const double t = bs.t(), r = bs.r();
    TwoModeAmplitudes out(l + 1, l + 1);
    out.at(l + 1, 0) = std::sqrt(l + 1.0) * std::pow(t, l) * r;
    const double lg_l = std::lgamma(l + 1.0);
    for (int k = 0; k <= l; ++k) {
        const double pref = std::exp(0.5 * (std::lgamma(k + 2.0) + lg_l - std::lgamma(l - k + 1.0))
                                     - std::lgamma(k + 1.0));
        double val = std::pow(t, l - k - 1) * std::pow(r, k) * pref
                   * (t * t - (l - k) / (k + 1.0) * r * r);
        if (k % 2 != 0) val = -val;
        out.at(l - k, k + 1) = val;
    }
    return out;
}

inline double max_abs_dev(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b) {
    const int c1 = std::max(a.cutoff1, b.cutoff1);
    const int c2 = std::max(a.cutoff2, b.cutoff2);
    double dev = 0.0;
    for (int n1 = 0; n1 <= c1; ++n1)
        for (int n2 = 0; n2 <= c2; ++n2) {
            const cplx va = (n1 <= a.cutoff1 && n2 <= a.cutoff2) ? a.at(n1, n2) : cplx{};
            const cplx vb = (n1 <= b.cutoff1 && n2 <= b.cutoff2) ? b.at(n1, n2) : cplx{};
            dev = std::max(dev, std::abs(va - vb));
        }
    return dev;
}

} // namespace detail

// Per-l comparison of the printed closed forms against the operator expansion
// and the exponentiation oracle. Deviations above 1e-9 are flagged, not fatal.
inline ValidationReport validate_printed_forms(const BeamSplitter& bs, int l_max) {
    const int cutoff = l_max + 2;
    const Eigen::MatrixXcd& U = bs_matrix_oracle_theta(bs.theta(), cutoff + kOracleBuffer);
    const int d = cutoff + kOracleBuffer + 1;
    ValidationReport report;
    for (int l = 0; l <= l_max; ++l) {
        // Printed |l,0> form vs operator expansion vs oracle column of |l,0>.
        TwoModeAmplitudes printed5 = bs_on_fock_vacuum(l, bs);
        TwoModeAmplitudes op5(l, l);
        detail::accumulate_bs_pair(l, 0, bs.t(), bs.r(), +1, cplx{1.0, 0.0}, op5);
        double dev5 = detail::max_abs_dev(printed5, op5);
        for (int n1 = 0; n1 <= l; ++n1)
            for (int n2 = 0; n2 <= l; ++n2)
                dev5 = std::max(dev5, std::abs(U(n1 * d + n2, l * d + 0) - printed5.at(n1, n2)));
        report.push_back({l, "vacuum_port", dev5, dev5 > 1e-9});

        // Printed |l,1> form vs operator expansion vs oracle column of |l,1>.
        TwoModeAmplitudes printed6 = detail::printed_single_form(l, bs);
        TwoModeAmplitudes op6 = bs_on_fock_single(l, bs);
        double dev6 = detail::max_abs_dev(printed6, op6);
        for (int n1 = 0; n1 <= l + 1; ++n1)
            for (int n2 = 0; n2 <= l + 1; ++n2)
                dev6 = std::max(dev6, std::abs(U(n1 * d + n2, l * d + 1) - op6.at(n1, n2)));
        report.push_back({l, "single_photon_port", dev6, dev6 > 1e-9});
    }
    return report;
}

} // namespace entgen
