#pragma once

// Closed-form machinery for the conditional states: CV branch series for
// every outcome p, normalization factors L_p / K_p, weight factor B_p, hybrid
// normalization N_p, success probabilities P_p, parity table and the phase
// flip. Wherever a printed series disagrees with the numeric pipeline the
// pipeline is authoritative; the one resolved discrepancy (odd-outcome Phi
// series index) is tracked by the errata report in report.hpp.

#include <cmath>
#include <limits>
#include <utility>

#include "entgen/beam_splitter.hpp"
#include "entgen/errors.hpp"
#include "entgen/fock.hpp"
#include "entgen/herald.hpp"

namespace entgen {

struct ClosedFormFactors {
    int p = 0;
    double log_L = 0.0; // normalization factors in log form: for large p the
    double log_K = 0.0; // raw series magnitudes over/underflow double range
    double B = 0.0;
};

enum class Parity { even, odd };

// Outcome parity determines branch parity: even p -> (psi even, phi odd),
// odd p -> (psi odd, phi even).
inline std::pair<Parity, Parity> parity_of(int p) {
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    return (p % 2 == 0) ? std::pair{Parity::even, Parity::odd}
                        : std::pair{Parity::odd, Parity::even};
}

namespace detail {

// Raw (unnormalized) psi-branch series coefficient at photon number n for
// outcome p, as {log magnitude, residual factor}. The raw magnitudes overflow
// double range for large p, so callers rescale by the largest log before
// exponentiating. n must have the parity of p.
//   p = 2m:    c_{2k}   = b_{2(k+m)}   t^{2k} sqrt((2(k+m))!/(2k)!)
//   p = 2m+1:  c_{2k+1} = b_{2(k+m+1)} t^{2k} sqrt((2(k+m+1))!/(2k+1)!)
struct SeriesTerm {
    double lg = 0.0;     // log magnitude of the factorial/amplitude part
    double factor = 1.0; // remaining polynomial factor (may be negative)
};

inline SeriesTerm psi_series_term(int p, int n, double r, double t) {
    const int k = n / 2; // n = 2k or 2k+1
    if (p % 2 == 0) {
        const int m = p / 2;
        return {log_smsv_amp(k + m, r) + 2.0 * k * std::log(t)
                    + 0.5 * (std::lgamma(2.0 * (k + m) + 1.0) - std::lgamma(2.0 * k + 1.0)),
                1.0};
    }
    const int m = (p - 1) / 2;
    return {log_smsv_amp(k + m + 1, r) + 2.0 * k * std::log(t)
                + 0.5 * (std::lgamma(2.0 * (k + m + 1) + 1.0) - std::lgamma(2.0 * k + 2.0)),
            1.0};
}

// Raw phi-branch series coefficient (errata-resolved for odd p).
//   p = 0:     c_{2k+1} = b_{2k} t^{2k} sqrt(2k+1)
//   p = 2m:    c_{2k+1} = b_{2(k+m)} t^{2k} sqrt((2(k+m))!/(2k+1)!) (t^2 - (2k+1)/(2m) r^2)
//   p = 2m+1:  c_{2k}   = b_{2(k+m)} sqrt((2(k+m))!/(2k)!) (t^{2k} - (2k/(2m+1)) rb^2 t^{2k-2})
inline SeriesTerm phi_series_term(int p, int n, double r, double t, double rb) {
    const int k = n / 2;
    if (p == 0) {
        return {log_smsv_amp(k, r) + 2.0 * k * std::log(t) + 0.5 * std::log(2.0 * k + 1.0), 1.0};
    }
    if (p % 2 == 0) {
        const int m = p / 2;
        return {log_smsv_amp(k + m, r) + 2.0 * k * std::log(t)
                    + 0.5 * (std::lgamma(2.0 * (k + m) + 1.0) - std::lgamma(2.0 * k + 2.0)),
                t * t - (2.0 * k + 1.0) / (2.0 * m) * rb * rb};
    }
    const int m = (p - 1) / 2;
    double poly = std::pow(t, 2 * k);
    if (k > 0) poly -= (2.0 * k) / (2.0 * m + 1.0) * rb * rb * std::pow(t, 2 * k - 2);
    return {log_smsv_amp(k + m, r)
                + 0.5 * (std::lgamma(2.0 * (k + m) + 1.0) - std::lgamma(2.0 * k + 1.0)),
            poly};
}

// Normalizes an offset-scaled series; returns log(1/sqrt(sum c^2)) with the
// offset folded back in.
inline double normalize_series(FockAmplitudes& out, double offset, const char* what) {
    double n2 = 0.0;
    for (const auto& a : out.amps) n2 += std::norm(a);
    if (n2 == 0.0) throw ZeroNorm(what);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : out.amps) a *= inv;
    return -offset - 0.5 * std::log(n2);
}

} // namespace detail

// Normalized psi-branch closed form and log of its normalization factor L_p.
inline std::pair<FockAmplitudes, double> psi_closed(int p, SqueezeParam r_sq,
                                                    const BeamSplitter& bs, int cutoff) {
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    FockAmplitudes out(cutoff);
    const int parity = p % 2;
    double offset = -std::numeric_limits<double>::infinity();
    for (int n = parity; n <= cutoff; n += 2)
        offset = std::max(offset, detail::psi_series_term(p, n, r_sq.value(), bs.t()).lg);
    if (!std::isfinite(offset)) throw ZeroNorm("psi series vanished at this cutoff");
    for (int n = parity; n <= cutoff; n += 2) {
        const auto term = detail::psi_series_term(p, n, r_sq.value(), bs.t());
        out[n] = std::exp(term.lg - offset) * term.factor;
    }
    const double log_L = detail::normalize_series(out, offset, "psi series vanished");
    return {std::move(out), log_L};
}

// Normalized phi-branch closed form and log of its normalization factor K_p.
// Parity is opposite to psi_closed(p).
inline std::pair<FockAmplitudes, double> phi_closed(int p, SqueezeParam r_sq,
                                                    const BeamSplitter& bs, int cutoff) {
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    FockAmplitudes out(cutoff);
    const int parity = 1 - p % 2;
    double offset = -std::numeric_limits<double>::infinity();
    for (int n = parity; n <= cutoff; n += 2)
        offset = std::max(offset, detail::phi_series_term(p, n, r_sq.value(), bs.t(), bs.r()).lg);
    if (!std::isfinite(offset)) throw ZeroNorm("phi series vanished at this cutoff");
    for (int n = parity; n <= cutoff; n += 2) {
        const auto term = detail::phi_series_term(p, n, r_sq.value(), bs.t(), bs.r());
        out[n] = std::exp(term.lg - offset) * term.factor;
    }
    const double log_K = detail::normalize_series(out, offset, "phi series vanished");
    // leading-amplitude-positive convention, matching the numeric pipeline
    double lead = 0.0;
    for (int n = parity; n <= cutoff; n += 2)
        if (out[n] != cplx{0.0, 0.0}) {
            lead = out[n].real();
            break;
        }
    if (lead < 0.0)
        for (auto& a : out.amps) a = -a;
    return {std::move(out), log_K};
}

// log L_p, log K_p and the weight factor B_p:
//   B_0 = r L_0 / K_0,  B_{2m} = 2m L / (r K),  B_{2m+1} = (2m+1) L / (r K).
inline ClosedFormFactors factors(int p, SqueezeParam r_sq, const BeamSplitter& bs,
                                 double tail_eps = kDefaultTailEps) {
    const int cutoff = choose_cutoff(r_sq, tail_eps) + kOracleBuffer + p + 2;
    ClosedFormFactors f;
    f.p = p;
    f.log_L = psi_closed(p, r_sq, bs, cutoff).second;
    f.log_K = phi_closed(p, r_sq, bs, cutoff).second;
    const double ratio = std::exp(f.log_L - f.log_K);
    f.B = (p == 0) ? bs.r() * ratio : p * ratio / bs.r();
    return f;
}

inline double hybrid_norm_factor(const DelocalizedPhoton& photon, double B) {
    return 1.0 / std::sqrt(std::norm(photon.a0()) + std::norm(photon.a1()) * B * B);
}

// Unnormalized branch weight magnitudes; B_p = w_phi / w_psi and the heralding
// probability is |a0 w_psi|^2 + |a1 w_phi|^2.
inline std::pair<double, double> branch_weights(const ClosedFormFactors& f,
                                                const BeamSplitter& bs) {
    const double t = bs.t(), r = bs.r();
    if (f.p == 0) return {std::exp(-f.log_L), r * std::exp(-f.log_K)};
    if (f.p % 2 == 0) {
        const int m = f.p / 2;
        const double log_g = 2.0 * m * std::log(r) - 0.5 * std::lgamma(2.0 * m + 1.0);
        return {std::exp(log_g - f.log_L), (2.0 * m / r) * std::exp(log_g - f.log_K)};
    }
    const int m = (f.p - 1) / 2;
    const double log_g =
        (2.0 * m + 1.0) * std::log(r) - 0.5 * std::lgamma(2.0 * m + 2.0) + std::log(t);
    return {std::exp(log_g - f.log_L), ((2.0 * m + 1.0) / r) * std::exp(log_g - f.log_K)};
}

// P_0 = 1/(L_0^2 N_0^2), P_{2m} = r^{4m} / ((2m)! L^2 N^2),
// P_{2m+1} = r^{2(2m+1)} t^2 / ((2m+1)! L^2 N^2).
inline double success_probability_closed(int p, SqueezeParam r_sq, const BeamSplitter& bs,
                                         const DelocalizedPhoton& photon,
                                         double tail_eps = kDefaultTailEps) {
    const ClosedFormFactors f = factors(p, r_sq, bs, tail_eps);
    const auto [w_psi, w_phi] = branch_weights(f, bs);
    return std::norm(photon.a0()) * w_psi * w_psi + std::norm(photon.a1()) * w_phi * w_phi;
}

// Local phase shifter P|1>_3 -> -|1>_3: negates the c_psi weight. Involution;
// negativity and branch norms are untouched.
inline HybridState apply_phase_flip(const HybridState& h) {
    HybridState out = h;
    out.c_psi = -out.c_psi;
    return out;
}

} // namespace entgen
