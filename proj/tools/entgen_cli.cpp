// entgen command-line tool: heralded hybrid/CV entangled state generation,
// parameter-space scans, maximal-entanglement solving and self-verification.
// Exit codes: 0 success, 1 numerical failure, 2 usage/validation error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entgen/entgen.hpp"

namespace {

using entgen::json;

struct CommonParams {
    double r_sq = 0.3;
    double t_bs = 0.5;
    double a1_mag = 1.0 / std::sqrt(2.0);
    double a0_mag = -1.0; // inferred from a1 when negative
    double phase = 0.0;   // relative phase on a1
    double tail_eps = entgen::kDefaultTailEps;
    std::string out_path = "-";
    bool emit_config = false;
};

entgen::DelocalizedPhoton make_photon(const CommonParams& c) {
    const double a0 = (c.a0_mag >= 0.0) ? c.a0_mag : std::sqrt(1.0 - c.a1_mag * c.a1_mag);
    return entgen::DelocalizedPhoton(a0, std::polar(c.a1_mag, c.phase));
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw entgen::Error("cannot open output file: " + path);
    out << content;
}

json config_snapshot(const CommonParams& c) {
    return json{{"r_sq", c.r_sq},     {"t_bs", c.t_bs},         {"a1_mag", c.a1_mag},
                {"a0_mag", c.a0_mag}, {"phase", c.phase},       {"tail_eps", c.tail_eps},
                {"out", c.out_path},  {"deterministic", true}};
}

void add_common(CLI::App* cmd, CommonParams& c, bool with_bs = true) {
    if (with_bs) {
        cmd->add_option("--r-sq", c.r_sq, "squeezing parameter r");
        cmd->add_option("--t", c.t_bs, "beam-splitter transmittance");
    }
    cmd->add_option("--a1", c.a1_mag, "|a1| of the delocalized photon");
    cmd->add_option("--a0", c.a0_mag, "|a0| (default: inferred from normalization)");
    cmd->add_option("--phase", c.phase, "relative phase of a1 (radians)");
    cmd->add_option("--tail-eps", c.tail_eps, "truncation tail mass");
    cmd->add_option("-o,--out", c.out_path, "output path ('-' for stdout)");
    cmd->add_flag("--emit-config", c.emit_config, "print the resolved run configuration");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heralded hybrid / CV entangled state workbench"};
    app.require_subcommand(1);

    CommonParams c;
    int p = 0, p_max = -1;

    auto* herald = app.add_subcommand("herald", "herald one photon-number outcome");
    add_common(herald, c);
    herald->add_option("--p", p, "heralded photon-number outcome");
    herald->add_option("--p-max", p_max, "emit the full distribution up to p-max");

    double r_min = 0.0, r_max = 1.5, t_min = 0.02, t_max = 0.98;
    int r_steps = 50, t_steps = 50;
    auto* scan = app.add_subcommand("scan", "negativity/probability surface as CSV");
    add_common(scan, c, false);
    scan->add_option("--p", p, "heralded outcome");
    scan->add_option("--r-min", r_min);
    scan->add_option("--r-max", r_max);
    scan->add_option("--r-steps", r_steps);
    scan->add_option("--t-min", t_min);
    scan->add_option("--t-max", t_max);
    scan->add_option("--t-steps", t_steps);

    auto* solve = app.add_subcommand("solve", "maximal-entanglement operating points");
    add_common(solve, c, false);
    solve->add_option("--p", p, "heralded outcome");
    solve->add_option("--r-min", r_min);
    solve->add_option("--r-max", r_max);
    double st_min = 0.02, st_max = 0.6;
    int st_steps = 16;
    solve->add_option("--t-min", st_min);
    solve->add_option("--t-max", st_max);
    solve->add_option("--t-steps", st_steps);

    auto* verify = app.add_subcommand("verify", "printed-form, table and normalization checks");
    std::string verify_out = "-";
    verify->add_option("-o,--out", verify_out, "output path ('-' for stdout)");

    double r_sq2 = -1.0, t2 = -1.0;
    auto* cascade = app.add_subcommand("cascade", "second-stage CV entangled state");
    add_common(cascade, c);
    cascade->add_option("--p", p, "outcome in the third auxiliary mode");
    cascade->add_option("--r-sq2", r_sq2, "stage-2 squeezing (default: stage 1)");
    cascade->add_option("--t2", t2, "stage-2 transmittance (default: stage 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c.emit_config) std::cerr << config_snapshot(c).dump(2) << '\n';

        if (herald->parsed()) {
            const entgen::SqueezeParam rp(c.r_sq);
            const auto bs = entgen::BeamSplitter::from_transmittance(c.t_bs);
            const auto photon = make_photon(c);
            if (p_max >= 0) {
                json arr = json::array();
                for (const auto& rec :
                     entgen::herald_distribution(rp, bs, photon, p_max, c.tail_eps))
                    arr.push_back(entgen::to_json(rec));
                write_output(c.out_path, arr.dump(2) + "\n");
            } else {
                if (p < 0) throw entgen::InvalidParameter("outcome p must be >= 0");
                const auto rec = entgen::herald_hybrid_numeric(rp, bs, photon, p, c.tail_eps);
                write_output(c.out_path, entgen::to_json(rec).dump(2) + "\n");
            }
        } else if (scan->parsed()) {
            const auto table = entgen::scan_grid(r_min, r_max, t_min, t_max, c.a1_mag, p,
                                                 r_steps, t_steps, c.tail_eps);
            write_output(c.out_path, entgen::to_csv(table));
        } else if (solve->parsed()) {
            const auto points = entgen::solve_max_negativity(c.a1_mag, p, r_min, r_max, st_min,
                                                             st_max, st_steps);
            json arr = json::array();
            for (const auto& op : points) arr.push_back(entgen::to_json(op));
            write_output(c.out_path, arr.dump(2) + "\n");
        } else if (verify->parsed()) {
            const auto rep = entgen::combined_verify();
            write_output(verify_out, entgen::to_json(rep).dump(2) + "\n");
            return rep.ok ? 0 : 1;
        } else if (cascade->parsed()) {
            const entgen::SqueezeParam rp1(c.r_sq);
            const auto bs1 = entgen::BeamSplitter::from_transmittance(c.t_bs);
            const auto photon = make_photon(c);
            const entgen::SqueezeParam rp2(r_sq2 >= 0.0 ? r_sq2 : c.r_sq);
            const auto bs2 = entgen::BeamSplitter::from_transmittance(t2 > 0.0 ? t2 : c.t_bs);
            const auto stage1 = entgen::herald_hybrid_numeric(rp1, bs1, photon, 0, c.tail_eps);
            const auto res = entgen::cascade_numeric(stage1, rp2, bs2, p, c.tail_eps);
            write_output(c.out_path, entgen::to_json(res).dump(2) + "\n");
        }
    } catch (const entgen::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const entgen::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
