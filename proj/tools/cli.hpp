// Copyright 2026 The resonance Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * `resonance` command-line driver. Kept as a header so the test suite can
 * run commands in-process.
 *
 * Exit codes: 0 ok, 2 parse/usage/validation, 3 I/O, 4 numeric or
 * detection failure, 5 herald failure (including dark transitions).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resonance/io.hpp"
#include "resonance/resonance.hpp"

#ifndef RESONANCE_VERSION
#define RESONANCE_VERSION "0.0.0"
#endif

namespace resonance::cli {

inline constexpr const char *version_string = "resonance " RESONANCE_VERSION;

enum ExitCode : int {
    ok = 0,
    parse_failure = 2,
    io_failure = 3,
    numeric_failure = 4,
    herald_failure = 5,
};

struct RunConfig {
    std::string model_path;
    std::string out;
    double omega_min{0.0};
    double omega_max{2.0};
    std::size_t points{101};
    std::optional<double> coupling;
    double tau{1000.0};
    std::string engine{"exact"};
    int trotter_order{2};
    double trotter_target{1e-6};
    std::size_t trotter_steps{0};
    double threshold{0.1};
    std::optional<double> min_omega;
    double eps{1e-4};
    std::optional<std::size_t> target_state;
    std::optional<double> omega;
    std::optional<double> prep_tau;
    double tau_max{0.0};
    std::size_t tau_points{201};
};

namespace detail {

inline ModelDocument load(const RunConfig &cfg) {
    if (cfg.model_path.empty()) {
        ModelDocument doc;
        doc.model = water_model();
        doc.label = "water";
        return doc;
    }
    return load_model_file(cfg.model_path);
}

inline double coupling(const RunConfig &cfg, const ModelDocument &doc) {
    if (cfg.coupling) {
        return *cfg.coupling;
    }
    return doc.model.coupling_c > 0.0 ? doc.model.coupling_c : 0.006;
}

inline Engine engine(const RunConfig &cfg) {
    if (cfg.engine == "trotter") {
        return TrotterEngineSettings{cfg.trotter_order, cfg.trotter_steps,
                                     cfg.trotter_target};
    }
    return ExactEngine{};
}

inline SweepPlan sweep_plan(const RunConfig &cfg, const ModelDocument &doc) {
    SweepPlan plan;
    plan.omega_min = cfg.omega_min;
    plan.omega_max = cfg.omega_max;
    plan.n_points = cfg.points;
    plan.tau = cfg.tau;
    plan.coupling_c = coupling(cfg, doc);
    plan.engine = engine(cfg);
    return plan;
}

inline PeakOptions peak_options(const RunConfig &cfg, const ModelDocument &doc,
                                 const SweepPlan &plan) {
    PeakOptions opts;
    opts.threshold = cfg.threshold;
    if (cfg.min_omega) {
        opts.min_omega = *cfg.min_omega;
    } else if (doc.chained) {
        opts.min_omega = 4.0 * plan.coupling_c;
    }
    return opts;
}

/// Reject bad parameters before any work is done.
inline void validate(const RunConfig &cfg, const ModelDocument &doc) {
    auto fail = [](const std::string &what) { throw ParseError("invalid parameter: " + what); };
    if (!(cfg.omega_min >= 0.0) || !(cfg.omega_max > cfg.omega_min)) {
        fail("require 0 <= --omega-min < --omega-max");
    }
    if (cfg.points < 2) {
        fail("--points must be >= 2");
    }
    if (!(coupling(cfg, doc) > 0.0)) {
        fail("--coupling must be > 0");
    }
    if (!(cfg.tau > 0.0)) {
        fail("--tau must be > 0");
    }
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
        fail("--threshold must lie in (0, 1)");
    }
    if (!(cfg.eps > 0.0)) {
        fail("--eps must be > 0");
    }
    if (cfg.trotter_order != 1 && cfg.trotter_order != 2) {
        fail("--trotter-order must be 1 or 2");
    }
    if (!(cfg.trotter_target > 0.0)) {
        fail("--trotter-target must be > 0");
    }
    if (cfg.target_state && *cfg.target_state == 0) {
        fail("--target-state is 1-based");
    }
    if (cfg.omega && !(*cfg.omega >= 0.0)) {
        fail("--omega must be >= 0");
    }
    if (cfg.prep_tau && !(*cfg.prep_tau > 0.0)) {
        fail("--prep-tau must be > 0");
    }
    if (cfg.tau_points < 4) {
        fail("--tau-points must be >= 4");
    }
    if (cfg.tau_max < 0.0) {
        fail("--tau-max must be >= 0");
    }
}

inline Json engine_json(const RunConfig &cfg) {
    Json j = {{"kind", cfg.engine}};
    if (cfg.engine == "trotter") {
        j["order"] = cfg.trotter_order;
        j["target_error"] = cfg.trotter_target;
        j["steps"] = cfg.trotter_steps;
    }
    return j;
}

inline Json provenance(const std::string &command, const RunConfig &cfg,
                       const ModelDocument &doc, const SweepPlan &plan) {
    Json params = {{"model", cfg.model_path.empty() ? "builtin:water" : cfg.model_path},
                   {"omega_min", plan.omega_min},
                   {"omega_max", plan.omega_max},
                   {"points", plan.n_points},
                   {"coupling_c", plan.coupling_c},
                   {"tau", plan.tau},
                   {"engine", engine_json(cfg)},
                   {"threshold", cfg.threshold},
                   {"eps", cfg.eps},
                   {"chained", doc.chained},
                   {"complement_energy", doc.model.complement_energy}};
    if (cfg.min_omega) {
        params["min_omega"] = *cfg.min_omega;
    }
    if (cfg.target_state) {
        params["target_state"] = *cfg.target_state;
    }
    if (cfg.omega) {
        params["omega"] = *cfg.omega;
    }
    if (cfg.prep_tau) {
        params["prep_tau"] = *cfg.prep_tau;
    }
    return {{"version", version_string},
            {"command", command},
            {"model_label", doc.label},
            {"e0", doc.model.reference.energy_e0},
            {"parameters", params}};
}

inline void emit_json(const Json &j, const std::string &path, std::ostream &out) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

inline void warn(const ModelDocument &doc, double c, std::ostream &err) {
    auto m = doc.model;
    m.coupling_c = c;
    for (const auto &w : model_warnings(m)) {
        err << "warning: " << w << '\n';
    }
}

struct RefinedPeaks {
    SweepResult sweep;
    std::vector<Peak> detected;
    std::vector<Refinement> refined;
    std::vector<std::size_t> indices;
};

/// Sweep, detect, then refine the selected peak (or all of them).
inline RefinedPeaks sweep_and_refine(const RunConfig &cfg, const ModelDocument &doc,
                                     const SweepPlan &plan) {
    RefinedPeaks r;
    r.sweep = run_sweep(doc.model, plan, doc.label);
    r.detected = detect_peaks(r.sweep, peak_options(cfg, doc, plan));
    if (cfg.target_state) {
        if (*cfg.target_state > r.detected.size()) {
            std::ostringstream msg;
            msg << "peak " << *cfg.target_state << " requested but only "
                << r.detected.size() << " detected";
            throw NumericError(msg.str());
        }
        r.indices.push_back(*cfg.target_state - 1);
    } else {
        for (std::size_t k = 0; k < r.detected.size(); ++k) {
            r.indices.push_back(k);
        }
    }
    RefineOptions ropts;
    ropts.threshold = cfg.threshold;
    for (std::size_t k : r.indices) {
        r.refined.push_back(refine_peak(doc.model, r.detected[k], plan, cfg.eps, ropts));
    }
    return r;
}

/// Peak to drive: from --omega directly, else the refined --target-state.
inline Peak preparation_peak(const RunConfig &cfg, const ModelDocument &doc,
                             const SweepPlan &plan) {
    if (cfg.omega) {
        Peak p;
        p.omega_center = *cfg.omega;
        p.energy_estimate = doc.model.reference.energy_e0 + *cfg.omega;
        return p;
    }
    if (!cfg.target_state) {
        throw ParseError("invalid parameter: give --omega or --target-state");
    }
    return sweep_and_refine(cfg, doc, plan).refined.front().peak;
}

inline int cmd_spectrum(const RunConfig &cfg, std::ostream &out) {
    const auto doc = load(cfg);
    const auto eig = oracle_spectrum(doc.model.system);
    Json j = {{"version", version_string},
              {"command", "spectrum"},
              {"model_label", doc.label},
              {"parameters", {{"model", cfg.model_path.empty() ? "builtin:water" : cfg.model_path}}},
              {"eigenvalues", eig.values}};
    emit_json(j, cfg.out, out);
    return ok;
}

inline int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto doc = load(cfg);
    validate(cfg, doc);
    const auto plan = sweep_plan(cfg, doc);
    warn(doc, plan.coupling_c, err);
    const auto result = run_sweep(doc.model, plan, doc.label);
    const auto peaks = detect_peaks(result, peak_options(cfg, doc, plan));
    Json j = provenance("sweep", cfg, doc, plan);
    j["peaks"] = Json::array();
    for (const auto &p : peaks) {
        j["peaks"].push_back(peak_json(p));
        if (p.near_degenerate) {
            err << "warning: peak at omega = " << p.omega_center
                << " absorbed nearby maxima (near-degenerate levels or side lobes)\n";
        }
    }
    if (cfg.out.empty()) {
        emit_json(j, "", out);
    } else {
        std::ostringstream csv;
        write_sweep_csv(csv, result.samples);
        write_text_file(cfg.out + ".csv", csv.str());
        emit_json(j, cfg.out + ".json", out);
    }
    return ok;
}

inline int cmd_refine(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto doc = load(cfg);
    validate(cfg, doc);
    const auto plan = sweep_plan(cfg, doc);
    warn(doc, plan.coupling_c, err);
    const auto r = sweep_and_refine(cfg, doc, plan);
    Json j = provenance("refine", cfg, doc, plan);
    j["initial_evaluations"] = r.sweep.samples.size();
    j["peaks"] = Json::array();
    std::size_t total = r.sweep.samples.size();
    for (std::size_t k = 0; k < r.refined.size(); ++k) {
        const auto &ref = r.refined[k];
        Json p = peak_json(ref.peak);
        p["index"] = r.indices[k] + 1;
        p["initial"] = peak_json(r.detected[r.indices[k]]);
        p["evaluations"] = ref.evaluations;
        p["trace"] = Json::array();
        for (const auto &round : ref.rounds) {
            p["trace"].push_back({{"round", round.round},
                                  {"coupling_c", round.coupling_c},
                                  {"tau", round.tau},
                                  {"grid_step", round.grid_step},
                                  {"window", {round.window_min, round.window_max}},
                                  {"points", round.points},
                                  {"omega_center", round.omega_center},
                                  {"p_max", round.p_max}});
        }
        total += ref.evaluations;
        j["peaks"].push_back(std::move(p));
    }
    j["total_evaluations"] = total;
    emit_json(j, cfg.out, out);
    return ok;
}

inline int cmd_rabi(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto doc = load(cfg);
    validate(cfg, doc);
    const auto plan = sweep_plan(cfg, doc);
    warn(doc, plan.coupling_c, err);
    const Peak peak = preparation_peak(cfg, doc, plan);

    auto m = doc.model;
    m.omega = peak.omega_center;
    m.coupling_c = plan.coupling_c;
    double tau_max = cfg.tau_max;
    if (tau_max == 0.0) {
        // Two oracle Rabi periods of the nearest transition.
        const auto eig = oracle_spectrum(m.system);
        const auto d = transition_amplitudes(m.system, m.reference, m.transition);
        const double dj = std::abs(d[nearest_eigenstate(eig, peak.energy_estimate)]);
        tau_max = dj > 1e-8 ? 2.0 * std::numbers::pi / (m.coupling_c * dj) : 2.0 * cfg.tau;
    }
    std::vector<double> taus(cfg.tau_points);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        taus[k] = tau_max * static_cast<double>(k) / static_cast<double>(taus.size() - 1);
    }
    const auto samples = rabi_scan(m, taus, plan.engine);
    const auto fit = fit_rabi(samples);
    Json j = provenance("rabi", cfg, doc, plan);
    j["omega"] = m.omega;
    j["tau_max"] = tau_max;
    j["fit"] = {{"period", fit.period},
                {"c_abs_d", fit.rate},
                {"abs_d", fit.rate / m.coupling_c},
                {"amplitude", fit.amplitude},
                {"rms_residual", fit.rms_residual}};
    if (cfg.out.empty()) {
        emit_json(j, "", out);
    } else {
        std::ostringstream csv;
        write_rabi_csv(csv, samples);
        write_text_file(cfg.out + ".csv", csv.str());
        emit_json(j, cfg.out + ".json", out);
    }
    return ok;
}

inline Preparation run_preparation(const RunConfig &cfg, const ModelDocument &doc,
                                   const SweepPlan &plan) {
    const Peak peak = preparation_peak(cfg, doc, plan);
    auto m = doc.model;
    m.coupling_c = plan.coupling_c;
    return prepare_eigenstate(m, peak, plan.engine, cfg.prep_tau);
}

inline int cmd_prepare(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto doc = load(cfg);
    validate(cfg, doc);
    const auto plan = sweep_plan(cfg, doc);
    warn(doc, plan.coupling_c, err);
    const auto prep = run_preparation(cfg, doc, plan);
    Json j = provenance("prepare", cfg, doc, plan);
    j.update(prepared_state_json(prep));
    emit_json(j, cfg.out, out);
    return ok;
}

inline int cmd_chain(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto doc = load(cfg);
    validate(cfg, doc);
    const auto plan = sweep_plan(cfg, doc);
    warn(doc, plan.coupling_c, err);
    const auto prep = run_preparation(cfg, doc, plan);
    const double measured = doc.model.reference.energy_e0 + prep.state.source_omega;

    ModelDocument next = doc;
    next.model.reference = chain_reference(prep.state, measured);
    next.model.omega = 0.0;
    next.model.coupling_c = plan.coupling_c;
    next.chained = true;
    next.label = doc.label + "|E" + std::to_string(prep.target_j + 1) + ">";
    Json j = model_json(next);
    j["provenance"] = provenance("chain", cfg, doc, plan);
    j["provenance"]["prepared"] = prepared_state_json(prep);
    j["provenance"]["prepared"].erase("amplitudes");
    emit_json(j, cfg.out, out);
    return ok;
}

} // namespace detail

/**
 * @brief Run the CLI on pre-split arguments (args[0] is the program name).
 * @return process exit code
 */
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Resonant-transition eigensolver simulator", "resonance"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);
    RunConfig cfg;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--model", cfg.model_path, "Model description file (JSON); default: builtin water preset");
        sub->add_option("--out", cfg.out, "Output path (JSON) or prefix (sweep/rabi: PREFIX.csv + PREFIX.json)");
    };
    auto add_sweep = [&](CLI::App *sub) {
        sub->add_option("--omega-min", cfg.omega_min, "Lowest probe frequency (Hartree)");
        sub->add_option("--omega-max", cfg.omega_max, "Highest probe frequency (Hartree)");
        sub->add_option("--points", cfg.points, "Number of sweep points (intervals + 1)");
        sub->add_option("--coupling", cfg.coupling, "Coupling strength c (Hartree)");
        sub->add_option("--tau", cfg.tau, "Evolution time (1/Hartree)");
        sub->add_option("--engine", cfg.engine, "Propagator: exact | trotter")
            ->check(CLI::IsMember({"exact", "trotter"}));
        sub->add_option("--trotter-order", cfg.trotter_order, "Trotter order (1 or 2)");
        sub->add_option("--trotter-target", cfg.trotter_target, "Trotter spectral-norm error target");
        sub->add_option("--trotter-steps", cfg.trotter_steps, "Fixed Trotter step count (0 = choose)");
        sub->add_option("--threshold", cfg.threshold, "Peak detection threshold");
        sub->add_option("--min-omega", cfg.min_omega, "Ignore peaks below this frequency");
    };
    auto add_select = [&](CLI::App *sub) {
        sub->add_option("--eps", cfg.eps, "Refinement target (Hartree)");
        sub->add_option("--target-state", cfg.target_state, "1-based index of the detected peak");
    };

    auto *spectrum = app.add_subcommand("spectrum", "Diagonalize H_S directly (oracle)");
    add_common(spectrum);

    auto *sweep = app.add_subcommand("sweep", "Scan the probe frequency and detect peaks");
    add_common(sweep);
    add_sweep(sweep);

    auto *refine = app.add_subcommand("refine", "Sweep, then refine peaks with smaller c and step");
    add_common(refine);
    add_sweep(refine);
    add_select(refine);

    auto *rabi = app.add_subcommand("rabi", "Scan the evolution time at fixed omega and fit sin^2");
    add_common(rabi);
    add_sweep(rabi);
    add_select(rabi);
    rabi->add_option("--omega", cfg.omega, "Fixed probe frequency (skips the sweep)");
    rabi->add_option("--tau-max", cfg.tau_max, "Longest evolution time (0 = two oracle periods)");
    rabi->add_option("--tau-points", cfg.tau_points, "Number of time samples");

    auto *prepare = app.add_subcommand("prepare", "Prepare an eigenstate by heralded projection");
    auto *chain = app.add_subcommand("chain", "Prepare an eigenstate and emit a model using it as reference");
    for (auto *sub : {prepare, chain}) {
        add_common(sub);
        add_sweep(sub);
        add_select(sub);
        sub->add_option("--omega", cfg.omega, "Drive at this frequency (skips the sweep)");
        sub->add_option("--prep-tau", cfg.prep_tau, "Evolution time (default pi/(2c|d_j|))");
    }

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion &) {
        out << version_string << '\n';
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    }

    try {
        if (spectrum->parsed()) {
            return detail::cmd_spectrum(cfg, out);
        }
        if (sweep->parsed()) {
            return detail::cmd_sweep(cfg, out, err);
        }
        if (refine->parsed()) {
            return detail::cmd_refine(cfg, out, err);
        }
        if (rabi->parsed()) {
            return detail::cmd_rabi(cfg, out, err);
        }
        if (prepare->parsed()) {
            return detail::cmd_prepare(cfg, out, err);
        }
        return detail::cmd_chain(cfg, out, err);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return io_failure;
    } catch (const HeraldError &e) {
        err << "error: " << e.what() << '\n';
        return herald_failure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return numeric_failure;
    }
}

} // namespace resonance::cli
