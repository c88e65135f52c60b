#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "entgen/closed_form.hpp"
#include "entgen/herald.hpp"

using namespace entgen;
using Catch::Approx;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("parity table") {
    CHECK(parity_of(0) == std::pair{Parity::even, Parity::odd});
    CHECK(parity_of(3) == std::pair{Parity::odd, Parity::even});
    CHECK(parity_of(4) == std::pair{Parity::even, Parity::odd});
    CHECK_THROWS_AS(parity_of(-1), InvalidParameter);
}

TEST_CASE("closed branches match the numeric pipeline") {
    const DelocalizedPhoton photon(kInvSqrt2, kInvSqrt2);
    for (double r_sq : {0.3, 0.8, 1.3}) {
        for (double t : {0.25, 0.55, 0.85}) {
            const SqueezeParam rp(r_sq);
            const BeamSplitter bs = BeamSplitter::from_transmittance(t);
            const int cutoff = choose_cutoff(rp) + kOracleBuffer;
            for (int p = 0; p <= 6; ++p) {
                INFO("r_sq=" << r_sq << " t=" << t << " p=" << p);
                const HeraldRecord rec = herald_hybrid_numeric(rp, bs, photon, p);
                const auto [psi, L] = psi_closed(p, rp, bs, cutoff + p + 2);
                const auto [phi, K] = phi_closed(p, rp, bs, cutoff + p + 2);
                CHECK(fidelity(psi, rec.state.psi) >= 1.0 - 1e-10);
                CHECK(fidelity(phi, rec.state.phi) >= 1.0 - 1e-10);

                const ClosedFormFactors f = factors(p, rp, bs);
                const double b_numeric = std::abs(rec.state.c_phi / rec.state.c_psi) *
                                         std::abs(photon.a0() / photon.a1());
                CHECK(std::abs(f.B) == Approx(b_numeric).epsilon(1e-10));

                CHECK(success_probability_closed(p, rp, bs, photon) ==
                      Approx(rec.probability).margin(1e-11));
            }
        }
    }
}

TEST_CASE("branch weights reproduce B and the probability") {
    const SqueezeParam rp(0.9);
    const BeamSplitter bs = BeamSplitter::from_transmittance(0.4);
    const DelocalizedPhoton photon(0.6, 0.8);
    for (int p = 0; p <= 5; ++p) {
        const ClosedFormFactors f = factors(p, rp, bs);
        const auto [w_psi, w_phi] = branch_weights(f, bs);
        CHECK(w_phi / w_psi == Approx(f.B).epsilon(1e-12));
        const double prob =
            std::norm(photon.a0()) * w_psi * w_psi + std::norm(photon.a1()) * w_phi * w_phi;
        CHECK(prob == Approx(success_probability_closed(p, rp, bs, photon)).epsilon(1e-12));
    }
}

TEST_CASE("hybrid normalization factor") {
    const DelocalizedPhoton photon(0.6, 0.8);
    const double B = 1.7;
    const double n = hybrid_norm_factor(photon, B);
    CHECK(0.36 * n * n + 0.64 * B * B * n * n == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("probabilities over all outcomes sum to one") {
    const DelocalizedPhoton photon(kInvSqrt2, kInvSqrt2);
    for (double r_sq : {0.4, 1.1}) {
        for (double t : {0.3, 0.75}) {
            const SqueezeParam rp(r_sq);
            const BeamSplitter bs = BeamSplitter::from_transmittance(t);
            const int p_max = choose_cutoff(rp) + kOracleBuffer;
            double total = 0.0;
            for (int p = 0; p <= p_max; ++p)
                total += success_probability_closed(p, rp, bs, photon);
            INFO("r_sq=" << r_sq << " t=" << t);
            CHECK(total == Approx(1.0).margin(1e-8));
        }
    }
}

TEST_CASE("phase flip is a sign flip on c_psi and an involution") {
    const HeraldRecord rec = herald_hybrid_numeric(
        SqueezeParam(0.7), BeamSplitter::from_transmittance(0.5), DelocalizedPhoton(0.6, 0.8), 1);
    const HybridState flipped = apply_phase_flip(rec.state);
    CHECK(flipped.c_psi == -rec.state.c_psi);
    CHECK(flipped.c_phi == rec.state.c_phi);
    const HybridState twice = apply_phase_flip(flipped);
    CHECK(twice.c_psi == rec.state.c_psi);
    // negativity only sees magnitudes
    CHECK(schmidt_negativity(flipped).value == Approx(schmidt_negativity(rec.state).value));
}

TEST_CASE("B factor drives the known limits") {
    // t -> 1 at p = 0: the phi branch keeps its single-photon weight r -> 0,
    // so B_0 -> 0 and the negativity collapses.
    const SqueezeParam rp(0.5);
    const DelocalizedPhoton photon(kInvSqrt2, kInvSqrt2);
    const double b_high = factors(0, rp, BeamSplitter::from_transmittance(0.9995)).B;
    CHECK(std::abs(b_high) < 0.05);
    CHECK(negativity_closed(photon.a0(), photon.a1(), b_high) < 0.1);
    // t -> 0 at p = 0: B_0 -> 1 and a balanced photon approaches maximal
    const double b_low = factors(0, rp, BeamSplitter::from_transmittance(0.01)).B;
    CHECK(b_low == Approx(1.0).margin(1e-3));
}
