// Copyright 2026 The qcageom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * File formats: CSV fields and series, JSON traces, posets and complexes,
 * 8-bit PGM heatmaps.
 *
 * Numbers in CSV are printed with "%.12g"; NaN is "nan" and negative zero is
 * written as 0. Trace snapshots store each amplitude as the little-endian
 * IEEE-754 bytes of (re, im), hex encoded, so a reload is bit-exact.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "causal.hpp"
#include "error.hpp"
#include "infogeo.hpp"
#include "qca.hpp"
#include "topo.hpp"

namespace qcageom::io {

using Json = nlohmann::ordered_json;

inline std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline double parse_number(const std::string &s) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        detail::fail("csv: not a number: '" + s + "'");
    }
    detail::require(used == s.size(), "csv: trailing characters in '" + s + "'");
    return v;
}

namespace detail {
using qcageom::detail::fail;
using qcageom::detail::require;

inline std::vector<std::string> split(const std::string &line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

inline std::string label_name(Label l) { return "q" + std::to_string(l); }

inline Label parse_label(const std::string &s) {
    qcageom::detail::require(s.size() >= 2 && s[0] == 'q', "csv: bad label header '" + s + "'");
    return static_cast<Label>(parse_number(s.substr(1)));
}

inline std::vector<std::string> read_lines(std::istream &in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    return lines;
}

inline void write_row(std::ostream &out, std::span<const double> values, const std::string &lead = {}) {
    out << lead;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 || !lead.empty()) {
            out << ',';
        }
        out << format_number(values[i]);
    }
    out << '\n';
}

} // namespace detail

// ---------------------------------------------------------------------------
// Distance fields

/// Header "q0,q1,..." followed by one row per label.
inline void write_distance_field_csv(std::ostream &out, const DistanceField &f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << (i ? "," : "") << detail::label_name(f.labels[i]);
    }
    out << '\n';
    for (const auto &row : f.values) {
        detail::write_row(out, row);
    }
}

inline DistanceField read_distance_field_csv(std::istream &in, int time_step = 0) {
    const auto lines = detail::read_lines(in);
    qcageom::detail::require(!lines.empty(), "csv: empty distance field");
    DistanceField f;
    f.time_step = time_step;
    for (const auto &h : detail::split(lines[0])) {
        f.labels.push_back(detail::parse_label(h));
    }
    qcageom::detail::require(lines.size() == f.labels.size() + 1, "csv: distance field is not square");
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = detail::split(lines[r]);
        qcageom::detail::require(cells.size() == f.labels.size(), "csv: distance field row has wrong width");
        std::vector<double> row;
        for (const auto &c : cells) {
            row.push_back(parse_number(c));
        }
        f.values.push_back(std::move(row));
    }
    return f;
}

inline Json to_json(const DistanceField &f) {
    Json values = Json::array();
    for (const auto &row : f.values) {
        Json r = Json::array();
        for (double v : row) {
            r.push_back(std::isnan(v) ? Json(nullptr) : Json(v == 0.0 ? 0.0 : v));
        }
        values.push_back(std::move(r));
    }
    return Json{{"time_step", f.time_step}, {"labels", f.labels}, {"values", std::move(values)}};
}

inline Json to_json(const BlockStructure &b) {
    auto finite = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return Json{{"block_present", b.block_present},
                {"pattern_holds", b.pattern_holds},
                {"interior", b.interior},
                {"exterior", b.exterior},
                {"max_abs_interior", b.max_abs_interior},
                {"max_abs_exterior", b.max_abs_exterior},
                {"min_cross", finite(b.min_cross)}};
}

// ---------------------------------------------------------------------------
// Series and sweeps

/// Header "step,q0,...", one row per snapshot.
inline void write_series_csv(std::ostream &out, std::span<const Label> labels,
                             const std::vector<std::vector<double>> &rows) {
    out << "step";
    for (Label l : labels) {
        out << ',' << detail::label_name(l);
    }
    out << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) {
        qcageom::detail::require(rows[k].size() == labels.size(), "csv: series row has wrong width");
        detail::write_row(out, rows[k], std::to_string(k));
    }
}

struct Series {
    std::vector<Label> labels;
    std::vector<std::vector<double>> rows;
};

inline Series read_series_csv(std::istream &in) {
    const auto lines = detail::read_lines(in);
    qcageom::detail::require(!lines.empty(), "csv: empty series");
    const auto header = detail::split(lines[0]);
    qcageom::detail::require(!header.empty() && header[0] == "step", "csv: series header must start with 'step'");
    Series s;
    for (std::size_t i = 1; i < header.size(); ++i) {
        s.labels.push_back(detail::parse_label(header[i]));
    }
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = detail::split(lines[r]);
        qcageom::detail::require(cells.size() == header.size(), "csv: series row has wrong width");
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            row.push_back(parse_number(cells[i]));
        }
        s.rows.push_back(std::move(row));
    }
    return s;
}

inline void write_sweep_csv(std::ostream &out, const SweepCurve &c) {
    qcageom::detail::require(c.z.size() == c.delta.size(), "csv: sweep columns differ in length");
    out << "z,delta\n";
    for (std::size_t i = 0; i < c.z.size(); ++i) {
        out << format_number(c.z[i]) << ',' << format_number(c.delta[i]) << '\n';
    }
}

inline SweepCurve read_sweep_csv(std::istream &in) {
    const auto lines = detail::read_lines(in);
    qcageom::detail::require(!lines.empty() && lines[0] == "z,delta", "csv: sweep header must be 'z,delta'");
    SweepCurve c;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = detail::split(lines[r]);
        qcageom::detail::require(cells.size() == 2, "csv: sweep row must have two cells");
        c.z.push_back(parse_number(cells[0]));
        c.delta.push_back(parse_number(cells[1]));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Traces

inline std::string encode_amplitudes(std::span<const Complex> amps) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(amps.size() * 32);
    auto put = [&](double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            const auto byte = static_cast<unsigned>((bits >> (8 * b)) & 0xffU);
            out.push_back(kHex[byte >> 4]);
            out.push_back(kHex[byte & 0xfU]);
        }
    };
    for (const auto &a : amps) {
        put(a.real());
        put(a.imag());
    }
    return out;
}

inline std::vector<Complex> decode_amplitudes(const std::string &hex) {
    qcageom::detail::require(hex.size() % 32 == 0, "trace: amplitude string has bad length");
    auto nibble = [](char c) -> std::uint64_t {
        if (c >= '0' && c <= '9') {
            return static_cast<std::uint64_t>(c - '0');
        }
        if (c >= 'a' && c <= 'f') {
            return static_cast<std::uint64_t>(c - 'a' + 10);
        }
        qcageom::detail::fail("trace: bad hex digit");
    };
    auto get = [&](std::size_t at) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            const std::uint64_t byte = (nibble(hex[at + 2 * b]) << 4) | nibble(hex[at + 2 * b + 1]);
            bits |= byte << (8 * b);
        }
        return std::bit_cast<double>(bits);
    };
    std::vector<Complex> amps;
    for (std::size_t at = 0; at < hex.size(); at += 32) {
        amps.emplace_back(get(at), get(at + 16));
    }
    return amps;
}

namespace detail {

inline Json matrix_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const Json &j) {
    qcageom::detail::require(j.is_array() && j.size() == 2, "trace: rule entries must be 2x2");
    std::vector<Complex> e;
    for (const auto &row : j) {
        qcageom::detail::require(row.is_array() && row.size() == 2, "trace: rule entries must be 2x2");
        for (const auto &z : row) {
            qcageom::detail::require(z.is_array() && z.size() == 2, "trace: complex entries are [re, im]");
            e.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return ComplexMatrix(2, 2, std::move(e));
}

template <class Enum, std::size_t K>
Enum enum_from(const std::string &s, const std::array<Enum, K> &options, const char *what) {
    for (Enum e : options) {
        if (s == qca::to_string(e)) {
            return e;
        }
    }
    qcageom::detail::fail(std::string("trace: unknown ") + what + " '" + s + "'");
}

} // namespace detail

inline Json to_json(const qca::QcaConfig &c) {
    Json rule = Json::array();
    for (const auto &u : c.rule.entries()) {
        rule.push_back(detail::matrix_json(u));
    }
    return Json{{"n_sites", c.n_sites}, {"partition", qca::to_string(c.partition)}, {"rule", std::move(rule)}};
}

inline Json to_json(const qca::RunTrace &t, bool include_snapshots = true) {
    Json layers = Json::array();
    for (const auto &l : t.layers) {
        Json gates = Json::array();
        for (const auto &g : l.gates) {
            gates.push_back(Json{{"target", g.target}, {"controls", g.controls}, {"unitary", g.unitary}});
        }
        layers.push_back(Json{{"index", l.index}, {"kind", qca::to_string(l.kind)}, {"gates", std::move(gates)}});
    }
    Json j{{"format", "qcageom-trace"},
           {"version", 1},
           {"config", to_json(t.config)},
           {"granularity", qca::to_string(t.granularity)},
           {"global_steps", t.global_steps},
           {"layers", std::move(layers)}};
    if (include_snapshots) {
        Json snaps = Json::array();
        for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
            snaps.push_back(Json{{"step", k},
                                 {"labels", t.snapshots[k].labels()},
                                 {"amplitudes", encode_amplitudes(t.snapshots[k].amplitudes())}});
        }
        j["snapshots"] = std::move(snaps);
    }
    return j;
}

/// Inverse of to_json(RunTrace). A trace saved without snapshots reloads with
/// an empty snapshot list.
inline qca::RunTrace trace_from_json(const Json &j) {
    try {
        qcageom::detail::require(j.value("format", "") == "qcageom-trace", "trace: not a qcageom trace");
        const auto &c = j.at("config");
        const auto &rule = c.at("rule");
        qcageom::detail::require(rule.is_array() && rule.size() == 4, "trace: rule needs four entries");
        qca::RunTrace t;
        t.config = qca::QcaConfig{
            c.at("n_sites").get<int>(),
            qca::UpdateRule(detail::matrix_from_json(rule[0]), detail::matrix_from_json(rule[1]),
                            detail::matrix_from_json(rule[2]), detail::matrix_from_json(rule[3])),
            detail::enum_from(c.at("partition").get<std::string>(),
                              std::array{qca::Partition::odd_is_b, qca::Partition::even_is_b}, "partition")};
        t.config.validate();
        t.granularity = detail::enum_from(
            j.at("granularity").get<std::string>(),
            std::array{qca::Granularity::per_species_layer, qca::Granularity::per_global_step}, "granularity");
        t.global_steps = j.at("global_steps").get<int>();
        for (const auto &l : j.at("layers")) {
            qca::Layer layer;
            layer.index = l.at("index").get<int>();
            qcageom::detail::require(layer.index == static_cast<int>(t.layers.size()), "trace: layers out of order");
            layer.kind = detail::enum_from(l.at("kind").get<std::string>(),
                                           std::array{qca::LayerKind::species_b, qca::LayerKind::species_a,
                                                      qca::LayerKind::global_step, qca::LayerKind::single_qubit},
                                           "layer kind");
            for (const auto &g : l.at("gates")) {
                layer.gates.push_back({g.at("target").get<int>(), g.at("controls").get<std::vector<int>>(),
                                       g.at("unitary").get<std::string>()});
            }
            t.layers.push_back(std::move(layer));
        }
        if (j.contains("snapshots")) {
            for (const auto &s : j.at("snapshots")) {
                t.snapshots.emplace_back(decode_amplitudes(s.at("amplitudes").get<std::string>()),
                                         s.at("labels").get<std::vector<Label>>());
            }
            qcageom::detail::require(t.snapshots.size() == t.layers.size() + 1,
                                     "trace: snapshot count must be layer count + 1");
        }
        return t;
    } catch (const Json::exception &e) {
        qcageom::detail::fail(std::string("trace: malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Posets, complexes, Betti filtrations

inline Json to_json(const causal::CausalPoset &p) {
    Json nodes = Json::array();
    Json edges = Json::array();
    for (causal::NodeId id = 0; id < p.size(); ++id) {
        const auto &n = p.node(id);
        Json node{{"id", id}, {"kind", n.is_gate() ? "gate" : "wire"}, {"site", n.site}};
        if (n.is_gate()) {
            node["layer"] = n.level;
            node["unitary"] = n.unitary;
            node["controls"] = n.controls;
        } else {
            node["slice"] = n.level;
        }
        nodes.push_back(std::move(node));
        for (auto s : p.successors(id)) {
            edges.push_back(Json::array({id, s}));
        }
    }
    return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline Json to_json(const topo::SimplicialComplex &c) {
    return Json{{"vertices", c.vertices()}, {"maximal_simplices", c.maximal_simplices()}};
}

inline topo::SimplicialComplex complex_from_json(const Json &j) {
    topo::SimplicialComplex c;
    for (auto v : j.at("vertices")) {
        c.add_vertex(v.get<int>());
    }
    for (const auto &s : j.at("maximal_simplices")) {
        c.add_simplex(s.get<topo::Simplex>());
    }
    return c;
}

/// Rows "thickness,b0,b1,...", padded with zeros to a common width.
inline void write_betti_csv(std::ostream &out, const std::vector<topo::BettiVector> &filtration) {
    std::size_t width = 1;
    for (const auto &b : filtration) {
        width = std::max(width, b.values.size());
    }
    out << "thickness";
    for (std::size_t k = 0; k < width; ++k) {
        out << ",b" << k;
    }
    out << '\n';
    for (std::size_t t = 0; t < filtration.size(); ++t) {
        out << t;
        for (std::size_t k = 0; k < width; ++k) {
            out << ',' << filtration[t][k];
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// PGM heatmaps

struct PgmScale {
    double min = 0.0;
    double max = 0.0;
};

/// Binary 8-bit PGM: finite min -> 0, finite max -> 255, linear in between,
/// NaN -> 0. A constant field maps to 0.
inline PgmScale write_pgm(std::ostream &out, const std::vector<std::vector<double>> &values) {
    qcageom::detail::require(!values.empty() && !values[0].empty(), "pgm: empty image");
    const std::size_t w = values[0].size();
    PgmScale s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto &row : values) {
        qcageom::detail::require(row.size() == w, "pgm: ragged rows");
        for (double v : row) {
            if (std::isfinite(v)) {
                s.min = std::min(s.min, v);
                s.max = std::max(s.max, v);
            }
        }
    }
    if (!std::isfinite(s.min)) {
        s = {0.0, 0.0};
    }
    out << "P5\n" << w << ' ' << values.size() << "\n255\n";
    const double span = s.max - s.min;
    for (const auto &row : values) {
        for (double v : row) {
            long g = 0;
            if (std::isfinite(v) && span > 0.0) {
                g = std::lround(255.0 * (v - s.min) / span);
            }
            out.put(static_cast<char>(static_cast<unsigned char>(std::clamp(g, 0L, 255L))));
        }
    }
    return s;
}

inline Json pgm_sidecar(const std::string &image, const PgmScale &s) {
    return Json{{"image", image},
                {"min", s.min == 0.0 ? 0.0 : s.min},
                {"max", s.max == 0.0 ? 0.0 : s.max},
                {"mapping", "gray = round(255 * (v - min) / (max - min)); nan -> 0; constant field -> 0"}};
}

// ---------------------------------------------------------------------------
// Files

inline void write_text(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

inline std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline qca::RunTrace load_trace(const std::string &path) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const Json::parse_error &e) {
        throw InvalidArgument("trace: cannot parse '" + path + "': " + e.what());
    }
    return trace_from_json(j);
}

} // namespace qcageom::io
