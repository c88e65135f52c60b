#pragma once

// Full numeric pipeline: tensor the squeezed vacuum with the delocalized
// photon, mix modes 1-2 on the beam splitter, project mode 2 onto |p>, and
// return the conditional mode-1 (x) mode-3 hybrid state with its probability
// and negativity.

#include <cmath>
#include <utility>
#include <vector>

#include "entgen/beam_splitter.hpp"
#include "entgen/entanglement.hpp"
#include "entgen/errors.hpp"
#include "entgen/fock.hpp"

namespace entgen {

// Two orthogonal CV branches paired with the DV qubit: c_psi |psi>|1> + c_phi |phi>|0>.
struct HybridState {
    cplx c_psi{};
    FockAmplitudes psi;
    cplx c_phi{};
    FockAmplitudes phi;
};

// CV (x) DV bipartition coefficient matrix, (cutoff+1) x 2: column 1 holds the
// c_psi branch (DV |1>), column 0 the c_phi branch (DV |0>).
inline NegativityResult schmidt_negativity(const HybridState& h) {
    const int c = std::max(h.psi.cutoff(), h.phi.cutoff());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c + 1, 2);
    for (int n = 0; n <= h.psi.cutoff(); ++n) m(n, 1) = h.c_psi * h.psi[n];
    for (int n = 0; n <= h.phi.cutoff(); ++n) m(n, 0) = h.c_phi * h.phi[n];
    return schmidt_negativity(m);
}

struct HeraldRecord {
    int outcome = 0;
    HybridState state;
    double probability = 0.0;
    double negativity = 0.0;
    bool zero_probability = false;
};

template <typename State>
struct ProjectionResult;

template <>
struct ProjectionResult<TwoModeAmplitudes> {
    FockAmplitudes state;
    double probability = 0.0;
    bool zero_probability = false;
};

template <>
struct ProjectionResult<ThreeModeAmplitudes> {
    TwoModeAmplitudes state;
    double probability = 0.0;
    bool zero_probability = false;
};

// Projects `mode` (0-based) of a two-mode state onto |p>; returns the
// renormalized conditional single-mode state and the outcome probability.
inline ProjectionResult<TwoModeAmplitudes> project_photon_number(const TwoModeAmplitudes& state,
                                                                 int mode, int p) {
    if (mode != 0 && mode != 1) throw InvalidParameter("mode index must be 0 or 1");
    const int c = (mode == 0) ? state.cutoff1 : state.cutoff2;
    if (p < 0 || p > c) throw OutcomeBeyondCutoff("outcome exceeds mode cutoff");
    const int keep = (mode == 0) ? state.cutoff2 : state.cutoff1;
    ProjectionResult<TwoModeAmplitudes> out;
    out.state = FockAmplitudes(keep);
    double prob = 0.0;
    for (int n = 0; n <= keep; ++n) {
        const cplx a = (mode == 0) ? state.at(p, n) : state.at(n, p);
        out.state[n] = a;
        prob += std::norm(a);
    }
    out.probability = prob;
    if (prob == 0.0) {
        out.zero_probability = true;
        return out;
    }
    const double inv = 1.0 / std::sqrt(prob);
    for (auto& a : out.state.amps) a *= inv;
    return out;
}

// Same, one rank higher: conditions one mode of a three-mode state.
inline ProjectionResult<ThreeModeAmplitudes> project_photon_number(const ThreeModeAmplitudes& state,
                                                                   int mode, int p) {
    if (mode < 0 || mode > 2) throw InvalidParameter("mode index must be 0, 1 or 2");
    const int cuts[3] = {state.cutoff1, state.cutoff2, state.cutoff3};
    if (p < 0 || p > cuts[mode]) throw OutcomeBeyondCutoff("outcome exceeds mode cutoff");
    const int ka = (mode == 0) ? 1 : 0;
    const int kb = (mode == 2) ? 1 : 2;
    ProjectionResult<ThreeModeAmplitudes> out;
    out.state = TwoModeAmplitudes(cuts[ka], cuts[kb]);
    double prob = 0.0;
    for (int na = 0; na <= cuts[ka]; ++na)
        for (int nb = 0; nb <= cuts[kb]; ++nb) {
            int idx[3];
            idx[mode] = p;
            idx[ka] = na;
            idx[kb] = nb;
            const cplx a = state.at(idx[0], idx[1], idx[2]);
            out.state.at(na, nb) = a;
            prob += std::norm(a);
        }
    out.probability = prob;
    if (prob == 0.0) {
        out.zero_probability = true;
        return out;
    }
    const double inv = 1.0 / std::sqrt(prob);
    for (auto& a : out.state.amps) a *= inv;
    return out;
}

namespace detail {

// Unnormalized conditional branches: mode-1 column p of BS(SMSV (x) |0>)
// and of BS(SMSV (x) |1>).
struct RawBranches {
    FockAmplitudes psi_raw; // pairs with DV |1>_3
    FockAmplitudes phi_raw; // pairs with DV |0>_3
};

inline RawBranches herald_raw_branches(SqueezeParam r_sq, const BeamSplitter& bs, int p,
                                       double tail_eps) {
    const int cutoff = choose_cutoff(r_sq, tail_eps) + kOracleBuffer;
    if (p > cutoff + 1) throw OutcomeBeyondCutoff("outcome exceeds pipeline cutoff");
    const FockAmplitudes smsv = smsv_amplitudes(r_sq, cutoff);

    TwoModeAmplitudes in0(cutoff, 0), in1(cutoff, 1);
    for (int n = 0; n <= cutoff; ++n) {
        in0.at(n, 0) = smsv[n];
        in1.at(n, 1) = smsv[n];
    }
    const TwoModeAmplitudes outA = apply_bs(in0, bs);
    const TwoModeAmplitudes outB = apply_bs(in1, bs);

    RawBranches rb{FockAmplitudes(outA.cutoff1), FockAmplitudes(outB.cutoff1)};
    if (p <= outA.cutoff2)
        for (int n = 0; n <= outA.cutoff1; ++n) rb.psi_raw[n] = outA.at(n, p);
    for (int n = 0; n <= outB.cutoff1; ++n) rb.phi_raw[n] = outB.at(n, p);
    return rb;
}

// Fixes the phase convention: each branch vector gets a real-positive leading
// amplitude, then a global phase makes c_psi real non-negative.
inline HybridState assemble_hybrid(cplx c_psi, FockAmplitudes psi, cplx c_phi, FockAmplitudes phi) {
    auto fix_leading = [](FockAmplitudes& v, cplx& w) {
        for (const auto& a : v.amps) {
            if (std::abs(a) > 1e-300) {
                const cplx ph = a / std::abs(a);
                for (auto& x : v.amps) x /= ph;
                w *= ph;
                break;
            }
        }
    };
    fix_leading(psi, c_psi);
    fix_leading(phi, c_phi);
    if (std::abs(c_psi) > 0.0) {
        const cplx g = c_psi / std::abs(c_psi);
        c_psi /= g;
        c_phi /= g;
    }
    return HybridState{c_psi, std::move(psi), c_phi, std::move(phi)};
}

} // namespace detail

// Heralds outcome p: a0 BS(|SMSV>|0>)|1>_3 + a1 BS(|SMSV>|1>)|0>_3, mode 2
// projected on |p>, branches normalized, negativity attached.
inline HeraldRecord herald_hybrid_numeric(SqueezeParam r_sq, const BeamSplitter& bs,
                                          const DelocalizedPhoton& photon, int p,
                                          double tail_eps = kDefaultTailEps) {
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    detail::RawBranches rb = detail::herald_raw_branches(r_sq, bs, p, tail_eps);
    const double w_psi = norm(rb.psi_raw);
    const double w_phi = norm(rb.phi_raw);
    const double prob =
        std::norm(photon.a0()) * w_psi * w_psi + std::norm(photon.a1()) * w_phi * w_phi;

    HeraldRecord rec;
    rec.outcome = p;
    rec.probability = prob;
    if (prob < 1e-300) {
        rec.zero_probability = true;
        rec.state = HybridState{cplx{}, std::move(rb.psi_raw), cplx{}, std::move(rb.phi_raw)};
        return rec;
    }
    const double inv = 1.0 / std::sqrt(prob);
    cplx c_psi = photon.a0() * w_psi * inv;
    cplx c_phi = photon.a1() * w_phi * inv;
    if (w_psi > 0.0)
        for (auto& a : rb.psi_raw.amps) a /= w_psi;
    if (w_phi > 0.0)
        for (auto& a : rb.phi_raw.amps) a /= w_phi;
    rec.state = detail::assemble_hybrid(c_psi, std::move(rb.psi_raw), c_phi, std::move(rb.phi_raw));
    rec.negativity = schmidt_negativity(rec.state).value;
    return rec;
}

// Records for p = 0..p_max. Probabilities sum to 1 up to the truncation tail.
inline std::vector<HeraldRecord> herald_distribution(SqueezeParam r_sq, const BeamSplitter& bs,
                                                     const DelocalizedPhoton& photon, int p_max,
                                                     double tail_eps = kDefaultTailEps) {
    if (p_max < 0) throw InvalidParameter("p_max must be >= 0");
    std::vector<HeraldRecord> out;
    out.reserve(static_cast<std::size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p)
        out.push_back(herald_hybrid_numeric(r_sq, bs, photon, p, tail_eps));
    return out;
}

} // namespace entgen
