#pragma once

// JSON and CSV emission. The shared state-dump format is
//   { "cutoffs": [..], "amps": [[re, im], ...] }
// with row-major tensor flattening. CSV doubles use shortest round-trip
// decimal formatting (std::to_chars) with LF line endings.

#include <charconv>
#include <string>

#include <json.hpp>

#include "entgen/beam_splitter.hpp"
#include "entgen/cascade.hpp"
#include "entgen/fock.hpp"
#include "entgen/herald.hpp"
#include "entgen/report.hpp"
#include "entgen/search.hpp"

namespace entgen {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline json to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const FockAmplitudes& a) {
    json amps = json::array();
    for (const auto& x : a.amps) amps.push_back(to_json(x));
    return json{{"cutoffs", {a.cutoff()}}, {"amps", amps}};
}

inline json to_json(const TwoModeAmplitudes& a) {
    json amps = json::array();
    for (const auto& x : a.amps) amps.push_back(to_json(x));
    return json{{"cutoffs", {a.cutoff1, a.cutoff2}}, {"amps", amps}};
}

inline json to_json(const ThreeModeAmplitudes& a) {
    json amps = json::array();
    for (const auto& x : a.amps) amps.push_back(to_json(x));
    return json{{"cutoffs", {a.cutoff1, a.cutoff2, a.cutoff3}}, {"amps", amps}};
}

inline json to_json(const HeraldRecord& rec) {
    return json{{"p", rec.outcome},
                {"probability", rec.probability},
                {"negativity", rec.negativity},
                {"zero_probability", rec.zero_probability},
                {"c_psi", to_json(rec.state.c_psi)},
                {"c_phi", to_json(rec.state.c_phi)},
                {"psi", to_json(rec.state.psi)},
                {"phi", to_json(rec.state.phi)}};
}

inline json to_json(const NegativityResult& n) {
    return json{{"value", n.value}, {"schmidt_coeffs", n.schmidt_coeffs}};
}

inline json to_json(const ValidationEntry& e) {
    return json{{"l", e.l}, {"form", e.form}, {"max_dev", e.max_dev}, {"flagged", e.flagged}};
}

inline json to_json(const ValidationReport& r) {
    json out = json::array();
    for (const auto& e : r) out.push_back(to_json(e));
    return out;
}

inline json to_json(const CVEntangledState& s) {
    return json{{"p", s.outcome},
                {"w1", to_json(s.w1)},
                {"w2", to_json(s.w2)},
                {"branch1", {{"mode1", "psi"},
                             {"mode2", "phi"},
                             {"state1", to_json(s.branch1.first)},
                             {"state2", to_json(s.branch1.second)}}},
                {"branch2", {{"mode1", "phi"},
                             {"mode2", "psi"},
                             {"state1", to_json(s.branch2.first)},
                             {"state2", to_json(s.branch2.second)}}}};
}

inline json to_json(const CascadeResult& r) {
    json out = to_json(r.state);
    out["probability"] = r.probability;
    out["negativity"] = r.negativity;
    return out;
}

inline json to_json(const OperatingPoint& op) {
    return json{{"r_sq", op.r_sq},         {"t_bs", op.t_bs},
                {"a1_mag", op.a1_mag},     {"p", op.p},
                {"negativity", op.negativity}, {"probability", op.probability},
                {"residual", op.residual}};
}

inline json to_json(const Table2Row& row) {
    return json{{"row", row.index},
                {"r_sq", row.r_sq},
                {"t_bs", row.t_bs},
                {"a1_mag", row.a1_mag},
                {"printed_p0", row.printed_p0},
                {"negativity", row.negativity},
                {"computed_p0", row.computed_p0},
                {"negativity_dev", row.negativity_dev},
                {"p0_dev", row.p0_dev},
                {"flagged", row.flagged}};
}

inline json to_json(const ErrataEntry& e) {
    return json{{"equation", e.equation}, {"p", e.p}, {"params", e.params},
                {"deviation", e.deviation}};
}

inline json to_json(const NormalizationCheck& c) {
    return json{{"r_sq", c.r_sq},   {"t_bs", c.t_bs},       {"a1_mag", c.a1_mag},
                {"total", c.total}, {"deficit", c.deficit}, {"ok", c.ok}};
}

inline json to_json(const CombinedReport& rep) {
    json bs = json::array(), t2 = json::array(), nc = json::array(), er = json::array();
    for (const auto& e : rep.bs_forms) bs.push_back(to_json(e));
    for (const auto& r : rep.table2) t2.push_back(to_json(r));
    for (const auto& c : rep.normalization) nc.push_back(to_json(c));
    for (const auto& e : rep.errata) er.push_back(to_json(e));
    return json{{"ok", rep.ok},
                {"beam_splitter_forms", bs},
                {"operating_point_table", t2},
                {"probability_normalization", nc},
                {"errata", er}};
}

inline std::string to_csv(const ScanTable& table) {
    std::string out = "r_sq,t_bs,a1_mag,p,negativity,probability\n";
    for (const auto& row : table.rows) {
        out += format_double(row.r_sq);
        out += ',';
        out += format_double(row.t_bs);
        out += ',';
        out += format_double(row.a1_mag);
        out += ',';
        out += std::to_string(row.p);
        out += ',';
        out += row.valid ? format_double(row.negativity) : "nan";
        out += ',';
        out += row.valid ? format_double(row.probability) : "nan";
        out += '\n';
    }
    return out;
}

} // namespace entgen
