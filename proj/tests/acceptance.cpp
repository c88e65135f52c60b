// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the command-line binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "entgen/entgen.hpp"

using namespace entgen;

namespace {

int g_failures = 0;

struct Outcome {
    bool ok = true;
    std::string msg;
};

void report(int criterion, const Outcome& o) {
    std::cout << (o.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << o.msg
              << std::endl;
    if (!o.ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DelocalizedPhoton photon_of(double a1) { return DelocalizedPhoton(std::sqrt(1.0 - a1 * a1), a1); }

double numeric_b_factor(const HeraldRecord& rec, const DelocalizedPhoton& photon) {
    return std::abs(rec.state.c_phi / rec.state.c_psi) * std::abs(photon.a0() / photon.a1());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. published operating-point table: negativity = 1 and P0 reproduced within
// 1e-3; at most two rows recovered through errata, with closed-vs-numeric
// internal agreement at 1e-9 for those; under 5 s.
Outcome criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::ostringstream why;
    int flagged = 0;
    for (const auto& row : verify_table2()) {
        if (row.negativity_dev > 1e-3) {
            o.ok = false;
            why << " row " << row.index << " negativity_dev=" << row.negativity_dev;
        }
        if (!row.flagged) continue;
        ++flagged;
        const HeraldRecord rec =
            herald_hybrid_numeric(SqueezeParam(row.r_sq),
                                  BeamSplitter::from_transmittance(row.t_bs),
                                  photon_of(row.a1_mag), 0);
        if (std::abs(rec.probability - row.computed_p0) > 1e-9 ||
            std::abs(rec.negativity - row.negativity) > 1e-9) {
            o.ok = false;
            why << " row " << row.index << " internal disagreement";
        }
    }
    if (flagged > 2) {
        o.ok = false;
        why << " " << flagged << " rows flagged";
    }
    const double dt = seconds_since(t0);
    if (dt >= 5.0) {
        o.ok = false;
        why << " runtime " << dt << " s";
    }
    std::ostringstream msg;
    msg << "operating-point table reproduced (" << flagged << " errata rows, " << dt << " s)"
        << why.str();
    o.msg = msg.str();
    return o;
}

// 2. success probabilities over all outcomes sum to 1 within 1e-8 at 20
// random valid parameter points, under 10 s.
Outcome criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::ostringstream why;
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> ur(0.05, 1.4), ut(0.1, 0.9), ua(0.2, 0.95);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SqueezeParam rp(ur(rng));
        const BeamSplitter bs = BeamSplitter::from_transmittance(ut(rng));
        const DelocalizedPhoton photon = photon_of(ua(rng));
        const int p_max = choose_cutoff(rp) + kOracleBuffer;
        double total = 0.0;
        for (int p = 0; p <= p_max; ++p) total += success_probability_closed(p, rp, bs, photon);
        worst = std::max(worst, std::abs(1.0 - total));
    }
    if (worst > 1e-8) {
        o.ok = false;
        why << " worst deficit " << worst;
    }
    const double dt = seconds_since(t0);
    if (dt >= 10.0) {
        o.ok = false;
        why << " runtime " << dt << " s";
    }
    std::ostringstream msg;
    msg << "probability completeness at 20 random points (max deficit " << worst << ", " << dt
        << " s)" << why.str();
    o.msg = msg.str();
    return o;
}

// Shared herald grid feeding criteria 3, 4 and 6:
//   3. closed branches match the numeric pipeline (fidelity >= 1 - 1e-10,
//      |B_p| within 1e-9) for p in {0..6} on a 5x5x3 grid;
//   4. two-branch negativity equals the Schmidt route within 1e-10 and is
//      positive on every heralded and cascaded state (cascades added by
//      extend_criterion_4);
//   6. branch parities are opposite and outcome-determined, cross-parity
//      amplitude mass < 1e-13.
struct CrossPath {
    bool ok = true;
    double worst = 0.0;
    std::ostringstream why;
};

void herald_grid(Outcome* c3, CrossPath* c4, Outcome* c6) {
    const double grid_r[] = {0.15, 0.45, 0.75, 1.05, 1.35};
    const double grid_t[] = {0.12, 0.3, 0.5, 0.7, 0.88};
    const double grid_a[] = {0.708133, 1.0 / std::sqrt(2.0), 0.741004};
    std::ostringstream why3, why6;
    double worst_fid = 0.0, worst_b = 0.0, worst_parity = 0.0;
    for (double r_sq : grid_r)
        for (double t : grid_t) {
            const SqueezeParam rp(r_sq);
            const BeamSplitter bs = BeamSplitter::from_transmittance(t);
            const int cutoff = choose_cutoff(rp) + kOracleBuffer;
            for (int p = 0; p <= 6; ++p) {
                const auto psi = psi_closed(p, rp, bs, cutoff + p + 2).first;
                const auto phi = phi_closed(p, rp, bs, cutoff + p + 2).first;
                const double b_closed = std::abs(factors(p, rp, bs).B);
                for (double a1 : grid_a) {
                    const DelocalizedPhoton photon = photon_of(a1);
                    const HeraldRecord rec = herald_hybrid_numeric(rp, bs, photon, p);

                    const double dfid = std::max(1.0 - fidelity(psi, rec.state.psi),
                                                 1.0 - fidelity(phi, rec.state.phi));
                    const double db = std::abs(b_closed - numeric_b_factor(rec, photon));
                    worst_fid = std::max(worst_fid, dfid);
                    worst_b = std::max(worst_b, db);
                    if (dfid > 1e-10 || db > 1e-9) {
                        c3->ok = false;
                        why3 << " (r=" << r_sq << ",t=" << t << ",p=" << p << ")";
                    }

                    const double closed = negativity_closed(rec.state.c_psi, rec.state.c_phi, 1.0);
                    const double dev = std::abs(closed - rec.negativity);
                    c4->worst = std::max(c4->worst, dev);
                    if (dev > 1e-10 || !(rec.negativity > 0.0)) {
                        c4->ok = false;
                        c4->why << " herald (r=" << r_sq << ",t=" << t << ",p=" << p << ")";
                    }

                    double mass = 0.0;
                    for (int n = 0; n <= rec.state.psi.cutoff(); ++n)
                        if (n % 2 != p % 2) mass += std::norm(rec.state.psi[n]);
                    for (int n = 0; n <= rec.state.phi.cutoff(); ++n)
                        if (n % 2 == p % 2) mass += std::norm(rec.state.phi[n]);
                    worst_parity = std::max(worst_parity, mass);
                    if (mass > 1e-13) {
                        c6->ok = false;
                        why6 << " (r=" << r_sq << ",t=" << t << ",p=" << p << ")";
                    }
                }
            }
        }
    std::ostringstream m3, m6;
    m3 << "closed forms vs numeric pipeline, p in {0..6} (max 1-fidelity " << worst_fid
       << ", max |B| dev " << worst_b << ")" << why3.str();
    m6 << "outcome-determined branch parity (max cross-parity mass " << worst_parity << ")"
       << why6.str();
    c3->msg = m3.str();
    c6->msg = m6.str();
}

// 5. beam-splitter transform: printed form / operator expansion /
// exponentiation oracle agree at 1e-10 for l <= 12 over 10 splitters;
// interior unitarity 1e-11; exact photon-number conservation.
Outcome criterion_5() {
    Outcome o;
    std::ostringstream why;
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const BeamSplitter bsi = BeamSplitter::from_transmittance(i / 11.0);
        for (const auto& e : validate_printed_forms(bsi, 12)) {
            worst = std::max(worst, e.max_dev);
            if (e.max_dev > 1e-10) {
                o.ok = false;
                why << " t=" << i / 11.0 << " l=" << e.l << " " << e.form;
            }
        }
    }

    const BeamSplitter bs = BeamSplitter::from_transmittance(0.6);
    const int cutoff = 12, d = cutoff + 1;
    const Eigen::MatrixXcd& U = bs_matrix_oracle(bs, cutoff);
    const Eigen::MatrixXcd G = U.adjoint() * U;
    double udev = 0.0;
    for (int a1 = 0; a1 < d; ++a1)
        for (int a2 = 0; a2 < d; ++a2) {
            if (a1 + a2 > cutoff - 4) continue;
            for (int b1 = 0; b1 < d; ++b1)
                for (int b2 = 0; b2 < d; ++b2) {
                    if (b1 + b2 > cutoff - 4) continue;
                    const double expect = (a1 == b1 && a2 == b2) ? 1.0 : 0.0;
                    udev = std::max(udev, std::abs(G(a1 * d + a2, b1 * d + b2) - expect));
                }
        }
    if (udev >= 1e-11) {
        o.ok = false;
        why << " unitarity dev " << udev;
    }

    bool conserved = true;
    for (int n1 = 0; n1 <= 5 && conserved; ++n1)
        for (int n2 = 0; n2 <= 5 && conserved; ++n2) {
            TwoModeAmplitudes s(n1, n2);
            s.at(n1, n2) = 1.0;
            const TwoModeAmplitudes out = apply_bs(s, bs);
            for (int a = 0; a <= out.cutoff1; ++a)
                for (int b = 0; b <= out.cutoff2; ++b)
                    if (a + b != n1 + n2 && out.at(a, b) != cplx{0.0, 0.0}) conserved = false;
        }
    if (!conserved) {
        o.ok = false;
        why << " photon number not conserved exactly";
    }

    std::ostringstream msg;
    msg << "beam-splitter three-path agreement (max dev " << worst << "), interior unitarity ("
        << udev << "), exact conservation" << why.str();
    o.msg = msg.str();
    return o;
}

// 7. cascade: mode-1 branches equal the stage-1 branches (fidelity
// >= 1 - 1e-10); closed vs numeric second stage at 1e-9 for p in {0..4};
// balanced photon at a B' = 1 point gives negativity 1 within 1e-6. The
// cascaded states also extend the criterion-4 cross-path checks.
Outcome criterion_7(CrossPath* c4) {
    Outcome o;
    std::ostringstream why;
    const double a1 = 0.741004;
    const DelocalizedPhoton photon = photon_of(a1);
    const SqueezeParam r1(0.6), r2(0.9);
    const BeamSplitter bs1 = BeamSplitter::from_transmittance(0.4);
    const BeamSplitter bs2 = BeamSplitter::from_transmittance(0.6);
    const HeraldRecord stage1 = herald_hybrid_numeric(r1, bs1, photon, 0);
    for (int p = 0; p <= 4; ++p) {
        const CascadeResult num = cascade_numeric(stage1, r2, bs2, p);
        const CascadeResult cls = cascade_closed(p, r1, bs1, photon, r2, bs2);
        if (fidelity(num.state.branch1.first, stage1.state.psi) < 1.0 - 1e-10 ||
            fidelity(num.state.branch2.first, stage1.state.phi) < 1.0 - 1e-10) {
            o.ok = false;
            why << " p=" << p << " stage-1 branch drift";
        }
        if (fidelity(cls.state.branch1.second, num.state.branch1.second) < 1.0 - 1e-9 ||
            fidelity(cls.state.branch2.second, num.state.branch2.second) < 1.0 - 1e-9 ||
            std::abs(cls.probability - num.probability) > 1e-9) {
            o.ok = false;
            why << " p=" << p << " closed-vs-numeric";
        }
        const double closed = negativity_closed(num.state.w1, num.state.w2, 1.0);
        const double dev = std::abs(closed - num.negativity);
        c4->worst = std::max(c4->worst, dev);
        if (dev > 1e-10 || !(num.negativity > 0.0)) {
            c4->ok = false;
            c4->why << " cascade p=" << p;
        }
    }

    // balanced photon, equal stage parameters: B' = 1 exactly at p = 0
    const DelocalizedPhoton balanced = photon_of(1.0 / std::sqrt(2.0));
    const HeraldRecord s1b = herald_hybrid_numeric(SqueezeParam(0.5),
                                                   BeamSplitter::from_transmittance(0.5),
                                                   balanced, 0);
    const CascadeResult max_ent =
        cascade_numeric(s1b, SqueezeParam(0.5), BeamSplitter::from_transmittance(0.5), 0);
    if (std::abs(max_ent.negativity - 1.0) > 1e-6) {
        o.ok = false;
        why << " B'=1 negativity " << max_ent.negativity;
    }
    o.msg = "cascade branch structure, closed-vs-numeric and B'=1 maximal point" + why.str();
    return o;
}

// 8. surface properties: negativity and probability in [0,1], negativity
// falls to zero as t -> 1, and each published |a1| reaches a cell with
// negativity > 0.999.
Outcome criterion_8() {
    Outcome o;
    std::ostringstream why;
    const double a_grid[] = {0.708133, 1.0 / std::sqrt(2.0), 0.741004};
    const double r_anchor[] = {0.83396, 0.0265654, 0.107632};
    const double t_anchor[] = {0.0762081, 0.0220391, 0.423201};
    for (int i = 0; i < 3; ++i) {
        const ScanTable table =
            scan_grid(r_anchor[i], r_anchor[i] + 0.6, t_anchor[i], 0.95, a_grid[i], 0, 20, 20);
        double best = 0.0;
        for (const auto& row : table.rows) {
            if (!row.valid) continue;
            if (row.negativity < -1e-12 || row.negativity > 1.0 + 1e-12 ||
                row.probability < -1e-12 || row.probability > 1.0 + 1e-12) {
                o.ok = false;
                why << " out-of-range cell at a1=" << a_grid[i];
            }
            best = std::max(best, row.negativity);
        }
        if (best <= 0.999) {
            o.ok = false;
            why << " best negativity " << best << " at a1=" << a_grid[i];
        }
    }
    // decay toward full transmission
    const ScanTable tail = scan_grid(0.5, 0.5, 0.9, 0.9995, 1.0 / std::sqrt(2.0), 0, 1, 8);
    for (std::size_t i = 1; i < tail.rows.size(); ++i)
        if (tail.rows[i].negativity >= tail.rows[i - 1].negativity) {
            o.ok = false;
            why << " non-decreasing tail at t=" << tail.rows[i].t_bs;
        }
    if (tail.rows.back().negativity > 0.1) {
        o.ok = false;
        why << " tail negativity " << tail.rows.back().negativity;
    }
    o.msg = "scan surfaces bounded, decaying toward t=1, maxima present" + why.str();
    return o;
}

// 9. repeated command-line runs produce byte-identical artifacts.
Outcome criterion_9(const std::string& cli) {
    Outcome o;
    std::ostringstream why;
    const std::string q = "\"" + cli + "\"";
    struct Run {
        std::string args, f1, f2;
    };
    const Run runs[] = {
        {" verify -o ", "acc_verify_1.json", "acc_verify_2.json"},
        {" scan --r-steps 25 --t-steps 25 -o ", "acc_scan_1.csv", "acc_scan_2.csv"},
    };
    for (const auto& run : runs) {
        const int rc1 = std::system((q + run.args + run.f1).c_str());
        const int rc2 = std::system((q + run.args + run.f2).c_str());
        if (rc1 != 0 || rc2 != 0) {
            o.ok = false;
            why << " nonzero exit for" << run.args;
            continue;
        }
        const std::string b1 = slurp(run.f1), b2 = slurp(run.f2);
        if (b1.empty() || b1 != b2) {
            o.ok = false;
            why << " artifact mismatch for" << run.args;
        }
        std::remove(run.f1.c_str());
        std::remove(run.f2.c_str());
    }
    o.msg = "repeated verify and scan runs are byte-identical" + why.str();
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: " << argv[0] << " <path-to-cli>\n";
        return 2;
    }
    try {
        const Outcome c1 = criterion_1();
        const Outcome c2 = criterion_2();
        Outcome c3, c6;
        CrossPath c4;
        herald_grid(&c3, &c4, &c6);
        const Outcome c5 = criterion_5();
        const Outcome c7 = criterion_7(&c4);
        const Outcome c8 = criterion_8();
        const Outcome c9 = criterion_9(argv[1]);

        Outcome c4out;
        c4out.ok = c4.ok;
        std::ostringstream m4;
        m4 << "two-branch negativity vs Schmidt route on heralded and cascaded states (max dev "
           << c4.worst << ")" << c4.why.str();
        c4out.msg = m4.str();

        report(1, c1);
        report(2, c2);
        report(3, c3);
        report(4, c4out);
        report(5, c5);
        report(6, c6);
        report(7, c7);
        report(8, c8);
        report(9, c9);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << '\n';
        return 1;
    }
    std::cout << (g_failures == 0 ? "all criteria passed" : "criteria failed") << std::endl;
    return g_failures == 0 ? 0 : 1;
}
