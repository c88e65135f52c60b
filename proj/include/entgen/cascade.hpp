#pragma once

// Second-stage generation of pure-CV entangled states: a fresh squeezed
// vacuum is mixed with the DV mode of a previously heralded p=0 hybrid state
// and the auxiliary mode is conditioned on a photon-number outcome. Stage-2
// squeezing and beam-splitter parameters are independent of stage 1.

#include <cmath>
#include <utility>

#include "entgen/beam_splitter.hpp"
#include "entgen/closed_form.hpp"
#include "entgen/entanglement.hpp"
#include "entgen/errors.hpp"
#include "entgen/fock.hpp"
#include "entgen/herald.hpp"

namespace entgen {

// w1 |branch1.first>_1 |branch1.second>_2 + w2 |branch2.first>_1 |branch2.second>_2,
// with parity-orthogonal branch pairs within each mode.
struct CVEntangledState {
    cplx w1{};
    std::pair<FockAmplitudes, FockAmplitudes> branch1; // (mode1 psi-type, mode2 phi-type)
    cplx w2{};
    std::pair<FockAmplitudes, FockAmplitudes> branch2; // (mode1 phi-type, mode2 psi-type)
    int outcome = 0;
};

struct CascadeResult {
    CVEntangledState state;
    double probability = 0.0;
    double negativity = 0.0;
    bool zero_probability = false;
};

namespace detail {

// Splits the conditional two-mode state into its two mode-1 parity blocks and
// factors each as a product with the corresponding stage-1 branch. Throws
// BranchFactorizationFailure if a block is not rank-1 within tolerance.
inline CVEntangledState factor_branches(const TwoModeAmplitudes& cond, const HybridState& stage1,
                                        int outcome) {
    const int c1 = cond.cutoff1, c2 = cond.cutoff2;
    auto project_block = [&](const FockAmplitudes& lead, int parity) {
        // w * chi[n2] = sum_{n1 in parity block} conj(lead[n1]) cond(n1, n2)
        FockAmplitudes chi(c2);
        for (int n2 = 0; n2 <= c2; ++n2) {
            cplx s{0.0, 0.0};
            for (int n1 = parity; n1 <= c1; n1 += 2)
                if (n1 <= lead.cutoff()) s += std::conj(lead[n1]) * cond.at(n1, n2);
            chi[n2] = s;
        }
        // residual of the rank-1 reconstruction over the block
        double res2 = 0.0;
        for (int n1 = parity; n1 <= c1; n1 += 2)
            for (int n2 = 0; n2 <= c2; ++n2) {
                const cplx lv = (n1 <= lead.cutoff()) ? lead[n1] : cplx{};
                res2 += std::norm(cond.at(n1, n2) - lv * chi[n2]);
            }
        if (std::sqrt(res2) > 1e-9)
            throw BranchFactorizationFailure(
                "conditional cascade state is not a parity-separated rank-2 sum");
        return chi;
    };

    // stage-1 p=0: psi even, phi odd
    FockAmplitudes chi_a = project_block(stage1.psi, 0);
    FockAmplitudes chi_b = project_block(stage1.phi, 1);

    CVEntangledState out;
    out.outcome = outcome;
    const double na = norm(chi_a), nb = norm(chi_b);
    out.w1 = na;
    out.w2 = nb;
    if (na > 0.0)
        for (auto& a : chi_a.amps) a /= na;
    if (nb > 0.0)
        for (auto& a : chi_b.amps) a /= nb;
    // leading-positive convention on the mode-2 factors; phases fold into weights
    auto fix = [](FockAmplitudes& v, cplx& w) {
        for (const auto& a : v.amps)
            if (std::abs(a) > 1e-300) {
                const cplx ph = a / std::abs(a);
                for (auto& x : v.amps) x /= ph;
                w *= ph;
                break;
            }
    };
    cplx w1 = out.w1, w2 = out.w2;
    fix(chi_a, w1);
    fix(chi_b, w2);
    if (std::abs(w1) > 0.0) {
        const cplx g = w1 / std::abs(w1);
        w1 /= g;
        w2 /= g;
    }
    out.w1 = w1;
    out.w2 = w2;
    out.branch1 = {stage1.psi, std::move(chi_a)};
    out.branch2 = {stage1.phi, std::move(chi_b)};
    return out;
}

} // namespace detail

// Numeric path: BS_23(|SMSV>_2 |Delta_0>_13) followed by projection of mode 3
// onto |p>. stage1 must be a p=0 herald record.
inline CascadeResult cascade_numeric(const HeraldRecord& stage1, SqueezeParam r_sq2,
                                     const BeamSplitter& bs2, int p,
                                     double tail_eps = kDefaultTailEps) {
    if (stage1.outcome != 0)
        throw InvalidParameter("cascade input must be heralded on p = 0");
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    const int c2 = choose_cutoff(r_sq2, tail_eps) + kOracleBuffer;
    const FockAmplitudes smsv = smsv_amplitudes(r_sq2, c2);
    const int c1 = std::max(stage1.state.psi.cutoff(), stage1.state.phi.cutoff());

    // modes (2,3) as a two-mode state per mode-1 photon number; mode 1 only
    // scales each block, so the BS acts blockwise.
    TwoModeAmplitudes in0(c2, 1), in1(c2, 1);
    for (int n = 0; n <= c2; ++n) {
        in0.at(n, 0) = smsv[n];
        in1.at(n, 1) = smsv[n];
    }
    const TwoModeAmplitudes out0 = apply_bs(in0, bs2); // DV |0>_3 partner
    const TwoModeAmplitudes out1 = apply_bs(in1, bs2); // DV |1>_3 partner
    if (p > out0.cutoff2) throw OutcomeBeyondCutoff("outcome exceeds cascade cutoff");

    // project mode 3 on |p>: conditional (mode1, mode2) amplitudes
    TwoModeAmplitudes cond(c1, out0.cutoff1);
    double prob = 0.0;
    for (int n1 = 0; n1 <= c1; ++n1) {
        const cplx w_psi = (n1 <= stage1.state.psi.cutoff())
                               ? stage1.state.c_psi * stage1.state.psi[n1]
                               : cplx{};
        const cplx w_phi = (n1 <= stage1.state.phi.cutoff())
                               ? stage1.state.c_phi * stage1.state.phi[n1]
                               : cplx{};
        for (int n2 = 0; n2 <= out0.cutoff1; ++n2) {
            const cplx a = w_psi * out1.at(n2, p) + w_phi * out0.at(n2, p);
            cond.at(n1, n2) = a;
            prob += std::norm(a);
        }
    }

    CascadeResult res;
    res.probability = prob;
    if (prob < 1e-300) {
        res.zero_probability = true;
        return res;
    }
    const double inv = 1.0 / std::sqrt(prob);
    for (auto& a : cond.amps) a *= inv;
    res.state = detail::factor_branches(cond, stage1.state, p);
    res.negativity = schmidt_negativity(cond).value;
    return res;
}

// Closed-form path: branches assembled from the stage-1 p=0 states and the
// stage-2 closed forms, weights from B'_p = B_0(stage 1) / B_p(stage 2).
// The numeric path is authoritative; this one mirrors the printed forms.
inline CascadeResult cascade_closed(int p, SqueezeParam r_sq1, const BeamSplitter& bs1,
                                    const DelocalizedPhoton& photon, SqueezeParam r_sq2,
                                    const BeamSplitter& bs2, double tail_eps = kDefaultTailEps) {
    if (p < 0) throw InvalidParameter("outcome p must be >= 0");
    const int cut1 = choose_cutoff(r_sq1, tail_eps) + kOracleBuffer;
    const int cut2 = choose_cutoff(r_sq2, tail_eps) + kOracleBuffer;

    const ClosedFormFactors f1 = factors(0, r_sq1, bs1, tail_eps);
    const ClosedFormFactors f2 = factors(p, r_sq2, bs2, tail_eps);
    const auto [w_psi2, w_phi2] = branch_weights(f2, bs2);

    // stage-1 weights (normalized hybrid): c_psi = a0 N0, c_phi = a1 B0 N0
    const double n0 = hybrid_norm_factor(photon, f1.B);
    const cplx c_psi = photon.a0() * n0;
    const cplx c_phi = photon.a1() * f1.B * n0;

    // signs of the stage-2 branch weights relative to the leading-positive
    // closed forms: the psi-type series enters with (+) for even p and (-) for
    // odd p; the phi-type series enters with (-) for even p >= 2 (times the
    // sign of its leading coefficient t^2 - r^2/(2m)) and (+) otherwise.
    const double s_psi = (p % 2 == 0) ? 1.0 : -1.0;
    double s_phi = 1.0;
    if (p >= 2 && p % 2 == 0) {
        const double lead = bs2.t() * bs2.t() - bs2.r() * bs2.r() / p;
        s_phi = (lead < 0.0) ? 1.0 : -1.0;
    }

    cplx w1 = c_psi * (s_phi * w_phi2);
    cplx w2 = c_phi * (s_psi * w_psi2);
    const double prob = std::norm(w1) + std::norm(w2);

    CascadeResult res;
    res.probability = prob;
    const double inv = 1.0 / std::sqrt(prob);
    w1 *= inv;
    w2 *= inv;
    if (std::abs(w1) > 0.0) {
        const cplx g = w1 / std::abs(w1);
        w1 /= g;
        w2 /= g;
    }
    CVEntangledState st;
    st.outcome = p;
    st.w1 = w1;
    st.w2 = w2;
    st.branch1 = {psi_closed(0, r_sq1, bs1, cut1).first, phi_closed(p, r_sq2, bs2, cut2).first};
    st.branch2 = {phi_closed(0, r_sq1, bs1, cut1).first, psi_closed(p, r_sq2, bs2, cut2).first};
    res.state = std::move(st);
    res.negativity = negativity_closed(w1, w2, 1.0);
    return res;
}

// Modified weight factor for the cascaded state, B'_p = B_0^{(1)} / B_p^{(2)}
// (equivalently B_0 r K_p / (p L_p) in stage-2 factors).
inline double cascade_b_factor(int p, SqueezeParam r_sq1, const BeamSplitter& bs1,
                               SqueezeParam r_sq2, const BeamSplitter& bs2,
                               double tail_eps = kDefaultTailEps) {
    const double b0 = factors(0, r_sq1, bs1, tail_eps).B;
    const double bp = factors(p, r_sq2, bs2, tail_eps).B;
    return b0 / bp;
}

} // namespace entgen
