#pragma once

// Core Fock-space value types: single/two/three-mode amplitude containers,
// squeezed-vacuum and delocalized-photon constructors, cutoff selection,
// inner products. Everything is an immutable value; all free functions are
// pure and thread-safe.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "entgen/errors.hpp"

namespace entgen {

using cplx = std::complex<double>;

inline constexpr double kMaxSqueeze = 3.0;
inline constexpr int kMaxCutoff = 512;
inline constexpr int kOracleBuffer = 8;
inline constexpr double kDefaultTailEps = 1e-12;

// Squeezing parameter r of S(r), real, restricted to [0, kMaxSqueeze].
class SqueezeParam {
  public:
    explicit SqueezeParam(double r) : r_(r) {
        if (!std::isfinite(r) || r < 0.0 || r > kMaxSqueeze)
            throw InvalidParameter("squeeze parameter must be finite and in [0, 3]");
    }
    double value() const { return r_; }

  private:
    double r_;
};

// Single-photon state a0|01> + a1|10> shared between two modes. Both
// amplitudes must be nonzero (otherwise the photon is not delocalized).
class DelocalizedPhoton {
  public:
    DelocalizedPhoton(cplx a0, cplx a1) : a0_(a0), a1_(a1) {
        const double n = std::norm(a0) + std::norm(a1);
        if (std::abs(n - 1.0) > 1e-9)
            throw NormViolation("delocalized photon amplitudes must satisfy |a0|^2+|a1|^2 = 1");
        if (a0 == cplx{0.0, 0.0} || a1 == cplx{0.0, 0.0})
            throw DegenerateDelocalization("a0 = 0 or a1 = 0 leaves the photon localized");
    }
    cplx a0() const { return a0_; }
    cplx a1() const { return a1_; }

  private:
    cplx a0_, a1_;
};

// Amplitudes over photon numbers 0..cutoff for one mode. Sub-normalized
// vectors are allowed (unconditioned branches).
struct FockAmplitudes {
    std::vector<cplx> amps;

    FockAmplitudes() = default;
    explicit FockAmplitudes(int cutoff) : amps(static_cast<std::size_t>(cutoff) + 1) {
        if (cutoff < 0) throw InvalidParameter("cutoff must be >= 0");
    }

    int cutoff() const { return static_cast<int>(amps.size()) - 1; }
    cplx& operator[](int n) { return amps[static_cast<std::size_t>(n)]; }
    const cplx& operator[](int n) const { return amps[static_cast<std::size_t>(n)]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
};

// Joint amplitudes over |n1, n2>, row-major in n2.
struct TwoModeAmplitudes {
    int cutoff1 = 0, cutoff2 = 0;
    std::vector<cplx> amps;

    TwoModeAmplitudes() = default;
    TwoModeAmplitudes(int c1, int c2)
        : cutoff1(c1), cutoff2(c2),
          amps(static_cast<std::size_t>(c1 + 1) * static_cast<std::size_t>(c2 + 1)) {
        if (c1 < 0 || c2 < 0) throw InvalidParameter("cutoffs must be >= 0");
    }

    cplx& at(int n1, int n2) {
        return amps[static_cast<std::size_t>(n1) * (cutoff2 + 1) + n2];
    }
    const cplx& at(int n1, int n2) const {
        return amps[static_cast<std::size_t>(n1) * (cutoff2 + 1) + n2];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
};

// Joint amplitudes over |n1, n2, n3>, row-major (n3 fastest).
struct ThreeModeAmplitudes {
    int cutoff1 = 0, cutoff2 = 0, cutoff3 = 0;
    std::vector<cplx> amps;

    ThreeModeAmplitudes() = default;
    ThreeModeAmplitudes(int c1, int c2, int c3)
        : cutoff1(c1), cutoff2(c2), cutoff3(c3),
          amps(static_cast<std::size_t>(c1 + 1) * (c2 + 1) * (c3 + 1)) {
        if (c1 < 0 || c2 < 0 || c3 < 0) throw InvalidParameter("cutoffs must be >= 0");
    }

    cplx& at(int n1, int n2, int n3) {
        return amps[(static_cast<std::size_t>(n1) * (cutoff2 + 1) + n2) * (cutoff3 + 1) + n3];
    }
    const cplx& at(int n1, int n2, int n3) const {
        return amps[(static_cast<std::size_t>(n1) * (cutoff2 + 1) + n2) * (cutoff3 + 1) + n3];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
};

// log of the even-state amplitude b_{2n} of the squeezed vacuum
// (all b_{2n} are non-negative for real r >= 0).
inline double log_smsv_amp(int n, double r) {
    if (r == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -0.5 * std::log(std::cosh(r)) + n * std::log(std::tanh(r))
         + 0.5 * std::lgamma(2.0 * n + 1.0) - n * std::log(2.0) - std::lgamma(n + 1.0);
}

// Squeezed-vacuum amplitudes b_{2n} up to `cutoff`, odd entries exactly zero.
// Uses the ratio recurrence b_{2(n+1)} = b_{2n} tanh(r) sqrt((2n+1)/(2n+2)).
inline FockAmplitudes smsv_amplitudes(SqueezeParam r_sq, int cutoff) {
    if (cutoff < 0) throw InvalidParameter("cutoff must be >= 0");
    const double r = r_sq.value();
    FockAmplitudes out(cutoff);
    double b = 1.0 / std::sqrt(std::cosh(r));
    const double th = std::tanh(r);
    out[0] = b;
    for (int n = 0; 2 * (n + 1) <= cutoff; ++n) {
        b *= th * std::sqrt((2.0 * n + 1.0) / (2.0 * n + 2.0));
        out[2 * (n + 1)] = b;
    }
    return out;
}

// Smallest even cutoff N (>= 4) with squared-amplitude tail below tail_eps.
// The tail is bounded geometrically: successive |b|^2 ratios are at most
// tanh^2 r, so sum_{k>n} |b_{2k}|^2 <= |b_{2(n+1)}|^2 / (1 - tanh^2 r).
inline int choose_cutoff(SqueezeParam r_sq, double tail_eps = kDefaultTailEps) {
    if (!(tail_eps > 0.0)) throw InvalidParameter("tail_eps must be > 0");
    const double r = r_sq.value();
    if (r == 0.0) return 4;
    const double q = std::tanh(r) * std::tanh(r);
    double b2 = 1.0 / std::cosh(r); // |b_0|^2
    for (int n = 0;; ++n) {
        const double next = b2 * q * (2.0 * n + 1.0) / (2.0 * n + 2.0); // |b_{2(n+1)}|^2
        const int kept = 2 * n;
        if (next / (1.0 - q) < tail_eps && kept >= 4) return kept;
        if (kept + 2 > kMaxCutoff)
            throw CutoffOverflow("required cutoff exceeds hard maximum " + std::to_string(kMaxCutoff));
        b2 = next;
    }
}

// <a|b>, zero-padding the shorter vector.
inline cplx inner_product(const FockAmplitudes& a, const FockAmplitudes& b) {
    const int n = std::min(a.cutoff(), b.cutoff());
    cplx s{0.0, 0.0};
    for (int i = 0; i <= n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const FockAmplitudes& a) { return std::sqrt(a.norm_sq()); }

// |<a|b>|^2 / (|a|^2 |b|^2), phase- and scale-invariant.
inline double fidelity(const FockAmplitudes& a, const FockAmplitudes& b) {
    const double na = a.norm_sq(), nb = b.norm_sq();
    if (na == 0.0 || nb == 0.0) throw ZeroNorm("fidelity with a zero vector");
    return std::norm(inner_product(a, b)) / (na * nb);
}

} // namespace entgen
