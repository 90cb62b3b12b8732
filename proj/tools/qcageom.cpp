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

// qcageom: run QCA experiments and export fields, traces and complexes.
//
//   qcageom run --experiment ghz --n-sites 12 --out out/ghz12
//   qcageom distance-matrix --trace out/ghz12/trace.json --step 3 --out out/d3
//   qcageom topology --trace out/topo/trace.json --slice 0 --i-max 4 --out out/t
//   qcageom sweep --family werner --samples 101 --out werner.csv
//
// Exit status: 0 ok, 2 invalid arguments, 3 numerical invariant violated.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcageom/qcageom.hpp"

namespace fs = std::filesystem;
using namespace qcageom;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;
constexpr double kFidelityTol = 1e-9;

/// Files written by this invocation; removed again if the command fails.
class Outputs {
  public:
    void directory(const fs::path &dir) {
        if (!fs::exists(dir)) {
            fs::create_directories(dir);
            dirs_.push_back(dir);
        } else if (!fs::is_directory(dir)) {
            throw InvalidArgument("output path '" + dir.string() + "' is not a directory");
        }
    }

    void write(const fs::path &path, const std::string &content) {
        files_.push_back(path);
        io::write_text(path.string(), content);
    }

    void rollback() {
        std::error_code ec;
        for (auto it = files_.rbegin(); it != files_.rend(); ++it) {
            fs::remove(*it, ec);
        }
        for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) {
            fs::remove_all(*it, ec);
        }
    }

  private:
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
};

// "re+imi" and the short forms "re", "imi", "i", "-i".
Complex parse_complex(const std::string &text) {
    static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-]?\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i)?\s*$)");
    std::smatch m;
    if (text.empty() || !std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched)) {
        throw InvalidArgument("bad complex literal '" + text + "'");
    }
    const double real = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double imag = 0.0;
    if (m[2].matched) {
        std::string s = m[2].str();
        s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
        if (s.empty() || s == "+") {
            imag = 1.0;
        } else if (s == "-") {
            imag = -1.0;
        } else {
            if (m[1].matched && s[0] != '+' && s[0] != '-') {
                throw InvalidArgument("bad complex literal '" + text + "'");
            }
            imag = std::stod(s);
        }
    }
    return {real, imag};
}

StateVector parse_seed(const std::string &text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
        throw InvalidArgument("seed must be two complex amplitudes 'a,b'");
    }
    return StateVector::normalized({parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))}, {0});
}

struct FieldOptions {
    std::string pairs = "all";
    bool include_boundary = false;
    bool pgm = false;
};

PairSelection pair_selection(const std::string &mode) {
    if (mode == "all") {
        return PairSelection::all();
    }
    if (mode == "nn") {
        return PairSelection::chain();
    }
    throw InvalidArgument("pairs must be 'all' or 'nn'");
}

std::vector<double> drop_boundary(const std::vector<double> &v, bool include_boundary) {
    return include_boundary ? v : std::vector<double>(v.begin() + 1, v.end() - 1);
}

std::string csv(const std::function<void(std::ostream &)> &f) {
    std::ostringstream out;
    f(out);
    return out.str();
}

void write_pgm(Outputs &out, const fs::path &path, const std::vector<std::vector<double>> &values) {
    std::ostringstream img;
    const auto scale = io::write_pgm(img, values);
    out.write(path, img.str());
    out.write(fs::path(path).concat(".json"), io::pgm_sidecar(path.filename().string(), scale).dump(2) + "\n");
}

void write_field(Outputs &out, const fs::path &dir, const DistanceField &f, bool pgm) {
    const std::string stem = "distance_step" + std::to_string(f.time_step);
    out.write(dir / (stem + ".csv"), csv([&](std::ostream &o) { io::write_distance_field_csv(o, f); }));
    if (pgm) {
        write_pgm(out, dir / (stem + ".pgm"), f.values);
    }
}

/// Occupation, entropy and distance files for every snapshot of a trace.
void export_trace(Outputs &out, const fs::path &dir, const qca::RunTrace &trace, const FieldOptions &opt,
                  bool snapshots) {
    out.write(dir / "trace.json", io::to_json(trace, snapshots).dump() + "\n");
    const auto pairs = pair_selection(opt.pairs);
    std::vector<Label> labels = trace.config.labels();
    if (!opt.include_boundary) {
        labels = std::vector<Label>(labels.begin() + 1, labels.end() - 1);
    }
    std::vector<std::vector<double>> occ;
    std::vector<std::vector<double>> ent;
    for (std::size_t k = 0; k < trace.snapshots.size(); ++k) {
        const auto &s = trace.snapshots[k];
        occ.push_back(drop_boundary(occupations(s), opt.include_boundary));
        ent.push_back(drop_boundary(site_entropies(s), opt.include_boundary));
        write_field(out, dir, distance_field(s, pairs, opt.include_boundary, static_cast<int>(k)), opt.pgm);
    }
    out.write(dir / "occupation.csv", csv([&](std::ostream &o) { io::write_series_csv(o, labels, occ); }));
    out.write(dir / "entropy.csv", csv([&](std::ostream &o) { io::write_series_csv(o, labels, ent); }));
    if (opt.pgm) {
        write_pgm(out, dir / "occupation.pgm", occ);
        write_pgm(out, dir / "entropy.pgm", ent);
    }
}

void export_topology(Outputs &out, const fs::path &dir, const causal::CausalPoset &poset, std::size_t slice,
                     int i_max, bool simplify) {
    const auto base = causal::slice_antichain(poset, slice);
    const auto stable = topo::stable_complex(poset, base, i_max, simplify);
    out.write(dir / "poset.json", io::to_json(poset).dump() + "\n");
    out.write(dir / "complex.json", io::to_json(stable.complex).dump(2) + "\n");
    out.write(dir / "betti.csv", csv([&](std::ostream &o) { io::write_betti_csv(o, stable.filtration); }));
    io::Json report{{"slice", slice},
                    {"i_max", i_max},
                    {"controlled_simplification", simplify},
                    {"stable_thickness", stable.thickness ? io::Json(*stable.thickness) : io::Json(nullptr)}};
    out.write(dir / "stable.json", report.dump(2) + "\n");
    if (stable.thickness) {
        std::printf("stable_thickness=%d\n", *stable.thickness);
    } else {
        std::printf("stable_thickness=none (no connected stable complex up to thickness %d)\n", i_max);
    }
}

void check_fidelity(double f) {
    std::printf("fidelity=%.9f\n", f);
    if (f < 1.0 - kFidelityTol) {
        throw InvariantViolation("fidelity below 1 - 1e-9");
    }
}

SweepCurve sweep(const std::string &family, std::size_t samples) {
    if (samples < 2) {
        throw InvalidArgument("samples must be at least 2");
    }
    const auto grid = uniform_grid(samples);
    if (family == "werner") {
        return werner_sweep(grid);
    }
    if (family == "pure_family") {
        return pure_family_sweep(grid);
    }
    throw InvalidArgument("unknown sweep family '" + family + "'");
}

struct RunOptions {
    std::string experiment;
    int n_sites = 12;
    std::string seed = "0,1";
    int seed_site = 0;
    int steps = -1;
    int thickness = 4;
    std::size_t samples = 101;
    double z_angle = qca::kPropagationZAngle;
    std::string granularity = "species";
    bool simplify = true;
    bool no_snapshots = false;
    FieldOptions field;
    std::string out;
};

qca::Granularity granularity(const std::string &g) {
    if (g == "species") {
        return qca::Granularity::per_species_layer;
    }
    if (g == "global") {
        return qca::Granularity::per_global_step;
    }
    throw InvalidArgument("granularity must be 'species' or 'global'");
}

void cmd_run(const RunOptions &o, Outputs &out) {
    const fs::path dir(o.out);
    const auto g = granularity(o.granularity);
    const std::string &e = o.experiment;
    if (e == "werner" || e == "pure_family") {
        out.directory(dir);
        const auto curve = sweep(e, o.samples);
        out.write(dir / "sweep.csv", csv([&](std::ostream &s) { io::write_sweep_csv(s, curve); }));
        if (e == "werner") {
            std::printf("null_crossing=%.8f\nppt_boundary=%.9f\n", werner_null_crossing(), werner_ppt_boundary());
        }
        return;
    }
    if (e == "propagate") {
        auto r = qca::propagate_experiment(o.n_sites, parse_seed(o.seed), g, o.z_angle);
        out.directory(dir);
        export_trace(out, dir, r.trace, o.field, !o.no_snapshots);
        check_fidelity(r.fidelity);
    } else if (e == "ghz") {
        auto r = qca::ghz_experiment(o.n_sites, g);
        out.directory(dir);
        export_trace(out, dir, r.trace, o.field, !o.no_snapshots);
        check_fidelity(r.fidelity);
    } else if (e == "pi3") {
        const int steps = o.steps < 0 ? 2 * o.n_sites : o.steps;
        const auto trace = qca::pi3_experiment(o.n_sites, o.seed_site == 0 ? 1 : o.seed_site, steps, g);
        out.directory(dir);
        export_trace(out, dir, trace, o.field, !o.no_snapshots);
    } else if (e == "topology") {
        const qca::QcaConfig config{o.n_sites, qca::UpdateRule::pulse(qca::kPulseAngle), qca::Partition::odd_is_b};
        const int steps = o.steps < 0 ? o.thickness : o.steps;
        const auto trace = qca::run(config, steps, qca::product_register(o.n_sites), qca::Granularity::per_global_step);
        out.directory(dir);
        out.write(dir / "trace.json", io::to_json(trace, !o.no_snapshots).dump() + "\n");
        export_topology(out, dir, causal::build_poset(trace), 0, o.thickness, o.simplify);
    } else {
        throw InvalidArgument("unknown experiment '" + e + "'");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum cellular automaton geometry experiments"};
    app.require_subcommand(1);

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Run an experiment and export its data files");
    run_cmd->add_option("-e,--experiment", run.experiment, "propagate | ghz | pi3 | werner | pure_family | topology")
        ->required()
        ->check(CLI::IsMember({"propagate", "ghz", "pi3", "werner", "pure_family", "topology"}));
    run_cmd->add_option("-n,--n-sites", run.n_sites, "Register sites N (excluding the two ancillae)");
    run_cmd->add_option("--seed", run.seed, "Propagated qubit as 'a,b' complex amplitudes, e.g. '1,0+1i'");
    run_cmd->add_option("--seed-site", run.seed_site, "Seed site for pi3 (default 1)");
    run_cmd->add_option("--steps", run.steps, "Global steps for pi3 (default 2N) and topology (default thickness)");
    run_cmd->add_option("--thickness", run.thickness, "Largest thickness of the topology filtration");
    run_cmd->add_option("--samples", run.samples, "Grid points for werner and pure_family");
    run_cmd->add_option("--z-angle", run.z_angle, "Final Rz angle for propagate (default: calibrated pi)");
    run_cmd->add_option("--granularity", run.granularity, "Trace layers: species | global");
    run_cmd->add_flag("!--no-simplification", run.simplify, "Keep control-control edges in the topology");
    run_cmd->add_flag("--no-snapshots", run.no_snapshots, "Leave amplitudes out of trace.json");
    run_cmd->add_option("--pairs", run.field.pairs, "Distance pairs: all | nn");
    run_cmd->add_flag("--include-boundary", run.field.include_boundary, "Include the ancillae in exported fields");
    run_cmd->add_flag("--pgm", run.field.pgm, "Also write 8-bit PGM heatmaps");
    run_cmd->add_option("-o,--out", run.out, "Output directory")->required();

    std::string trace_path;
    int step = 0;
    FieldOptions dm;
    std::string dm_out;
    auto *dm_cmd = app.add_subcommand("distance-matrix", "Distance field of one snapshot of a saved trace");
    dm_cmd->add_option("-t,--trace", trace_path, "trace.json written by 'run'")->required();
    dm_cmd->add_option("-s,--step", step, "Snapshot index")->required();
    dm_cmd->add_option("--pairs", dm.pairs, "Distance pairs: all | nn");
    dm_cmd->add_flag("--include-boundary", dm.include_boundary, "Include the ancillae");
    dm_cmd->add_flag("--pgm", dm.pgm, "Also write an 8-bit PGM heatmap");
    dm_cmd->add_option("-o,--out", dm_out, "Output directory")->required();

    std::size_t slice = 0;
    int i_max = 4;
    bool simplify = true;
    std::string topo_out;
    auto *topo_cmd = app.add_subcommand("topology", "Shadow complexes and Betti filtration of a saved trace");
    topo_cmd->add_option("-t,--trace", trace_path, "trace.json written by 'run'")->required();
    topo_cmd->add_option("--slice", slice, "Base slice index");
    topo_cmd->add_option("--i-max", i_max, "Largest thickness");
    topo_cmd->add_flag("!--no-simplification", simplify, "Keep control-control edges");
    topo_cmd->add_option("-o,--out", topo_out, "Output directory")->required();

    std::string family;
    std::size_t samples = 101;
    std::string sweep_out;
    auto *sweep_cmd = app.add_subcommand("sweep", "Distance along a two-qubit state family");
    sweep_cmd->add_option("-f,--family", family, "werner | pure_family")
        ->required()
        ->check(CLI::IsMember({"werner", "pure_family"}));
    sweep_cmd->add_option("--samples", samples, "Grid points on [0, 1]");
    sweep_cmd->add_option("-o,--out", sweep_out, "Output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    Outputs out;
    try {
        if (*run_cmd) {
            cmd_run(run, out);
        } else if (*dm_cmd) {
            const auto trace = io::load_trace(trace_path);
            if (trace.snapshots.empty()) {
                throw InvalidArgument("trace has no snapshots (saved with --no-snapshots)");
            }
            if (step < 0 || static_cast<std::size_t>(step) >= trace.snapshots.size()) {
                throw InvalidArgument("no snapshot " + std::to_string(step) + " in trace");
            }
            const auto f = distance_field(trace.snapshots[static_cast<std::size_t>(step)], pair_selection(dm.pairs),
                                          dm.include_boundary, step);
            const fs::path dir(dm_out);
            out.directory(dir);
            write_field(out, dir, f, dm.pgm);
            out.write(dir / ("distance_step" + std::to_string(step) + ".json"), io::to_json(f).dump(2) + "\n");
            if (dm.pairs == "all") {
                const auto b = block_structure(f);
                out.write(dir / ("blocks_step" + std::to_string(step) + ".json"), io::to_json(b).dump(2) + "\n");
                std::printf("block_pattern=%s\n", b.pattern_holds ? "yes" : "no");
            }
        } else if (*topo_cmd) {
            const auto trace = io::load_trace(trace_path);
            const fs::path dir(topo_out);
            const auto poset = causal::build_poset(trace);
            if (slice >= poset.slice_count()) {
                throw InvalidArgument("slice " + std::to_string(slice) + " out of range");
            }
            out.directory(dir);
            export_topology(out, dir, poset, slice, i_max, simplify);
        } else if (*sweep_cmd) {
            const auto curve = sweep(family, samples);
            out.write(sweep_out, csv([&](std::ostream &s) { io::write_sweep_csv(s, curve); }));
        }
    } catch (const InvariantViolation &e) {
        out.rollback();
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvariant;
    } catch (const std::exception &e) {
        out.rollback();
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return 0;
}
