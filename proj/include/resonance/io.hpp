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
 * Model description files (JSON), sweep CSV output and prepared-state dumps.
 *
 * Model file schema:
 *
 *     {
 *       "label": "water",                          // optional
 *       "system": {"preset": "water"}              // or:
 *               | {"n_qubits": 2, "matrix": M, "label": "..."},
 *       "reference": {"index": 0, "energy_e0": -84.2}
 *                  | {"amplitudes": V, "energy_e0": -83.97},
 *       "transition": "hadamard" | {"matrix": M, "label": "..."},
 *       "omega": 0.0,                              // optional
 *       "coupling_c": 0.006,                       // optional
 *       "complement_energy": 0.0,                  // optional
 *       "chained": false                           // optional
 *     }
 *
 * A matrix M is either an array of rows or a flat row-major array; each
 * entry is a number or an [re, im] pair. A vector V is an array of numbers
 * or [re, im] pairs.
 */
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "resonance/error.hpp"
#include "resonance/model.hpp"
#include "resonance/prepare.hpp"
#include "resonance/qmath.hpp"
#include "resonance/spectroscopy.hpp"

namespace resonance {

using Json = nlohmann::json;

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        throw IoError("failed to format number");
    }
    return std::string(buf, ptr);
}

/// Model plus metadata carried by a model file.
struct ModelDocument {
    SimulatorModel model;
    std::string label;
    /// Reference came from a prepared state; sweeps hide the ω≈0 self-response.
    bool chained{false};
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string &source,
                                      const std::string &path,
                                      const std::string &what) {
    throw ParseError(source + ": " + (path.empty() ? "/" : path) + ": " + what);
}

inline Complex parse_complex(const Json &j, const std::string &source,
                             const std::string &path) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    schema_error(source, path, "expected a number or an [re, im] pair");
}

inline Matrix parse_matrix(const Json &j, const std::string &source,
                           const std::string &path) {
    if (!j.is_array() || j.empty()) {
        schema_error(source, path, "expected a non-empty array");
    }
    // An array of rows (first element is an array as long as the outer one),
    // otherwise a flat row-major array of entries.
    const bool flat = !(j[0].is_array() && j[0].size() == j.size());
    std::vector<Complex> data;
    std::size_t dim = 0;
    if (flat) {
        const auto n = static_cast<std::size_t>(std::llround(std::sqrt(j.size())));
        if (n * n != j.size()) {
            schema_error(source, path, "flat matrix length is not a perfect square");
        }
        dim = n;
        for (std::size_t k = 0; k < j.size(); ++k) {
            data.push_back(parse_complex(j[k], source, path + "/" + std::to_string(k)));
        }
    } else {
        dim = j.size();
        for (std::size_t r = 0; r < j.size(); ++r) {
            const std::string row_path = path + "/" + std::to_string(r);
            if (!j[r].is_array() || j[r].size() != dim) {
                schema_error(source, row_path,
                             "expected a row of " + std::to_string(dim) + " entries");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                data.push_back(parse_complex(j[r][c], source,
                                             row_path + "/" + std::to_string(c)));
            }
        }
    }
    for (const auto &z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            schema_error(source, path, "matrix entries must be finite");
        }
    }
    return Matrix(dim, dim, std::move(data));
}

inline const Json &require(const Json &obj, const char *key,
                           const std::string &source, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        schema_error(source, path, std::string("missing required field '") + key + "'");
    }
    return obj.at(key);
}

inline std::string optional_string(const Json &obj, const char *key, std::string fallback,
                                   const std::string &source, const std::string &path) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_string()) {
        schema_error(source, path + "/" + key, "expected a string");
    }
    return obj[key].get<std::string>();
}

inline double parse_number(const Json &j, const std::string &source,
                           const std::string &path) {
    if (!j.is_number()) {
        schema_error(source, path, "expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        schema_error(source, path, "expected a finite number");
    }
    return x;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_json(const Matrix &m) {
    bool real = true;
    for (const auto &z : m.data()) {
        real = real && z.imag() == 0.0;
    }
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (real) {
                row.push_back(m(r, c).real());
            } else {
                row.push_back(complex_json(m(r, c)));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

inline Json amplitudes_json(const StateVector &psi) {
    Json a = Json::array();
    for (const auto &z : psi.amplitudes()) {
        a.push_back(detail::complex_json(z));
    }
    return a;
}

/**
 * @brief Parse a model description.
 * @param source name used in diagnostics (usually the file path).
 * @throws ParseError on malformed JSON (with line:column) or schema
 * violations (with the JSON-pointer path); ValidationError for a
 * non-Hermitian system matrix.
 */
inline ModelDocument parse_model(const std::string &text,
                                 const std::string &source = "<model>") {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error &e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << source << ":" << line << ":" << col << ": JSON syntax error: "
            << e.what();
        throw ParseError(msg.str());
    }
    if (!doc.is_object()) {
        detail::schema_error(source, "", "model file must be a JSON object");
    }

    ModelDocument out;
    auto &m = out.model;

    const Json &sys = detail::require(doc, "system", source, "");
    if (sys.is_object() && sys.contains("preset")) {
        if (sys["preset"] != "water") {
            detail::schema_error(source, "/system/preset", "unknown preset (expected \"water\")");
        }
        m.system = water_preset();
    } else {
        Matrix h = detail::parse_matrix(detail::require(sys, "matrix", source, "/system"),
                                        source, "/system/matrix");
        std::string label = detail::optional_string(sys, "label", "system", source, "/system");
        try {
            m.system = make_system(std::move(h), std::move(label));
        } catch (const ValidationError &e) {
            throw ValidationError(source + ": /system/matrix: " + e.what());
        }
        if (sys.contains("n_qubits")) {
            const Json &nq = sys["n_qubits"];
            if (!nq.is_number_unsigned() || nq.get<std::size_t>() != m.system.n_qubits) {
                detail::schema_error(source, "/system/n_qubits",
                                     "does not match the matrix dimension");
            }
        }
    }
    const std::size_t n = m.system.n_qubits;
    const std::size_t dim = m.system.matrix.rows();

    const Json &ref = detail::require(doc, "reference", source, "");
    const double e0 = detail::parse_number(detail::require(ref, "energy_e0", source, "/reference"),
                                           source, "/reference/energy_e0");
    if (ref.contains("index")) {
        if (!ref["index"].is_number_unsigned()) {
            detail::schema_error(source, "/reference/index", "expected a non-negative integer");
        }
        try {
            m.reference = basis_reference(n, ref["index"].get<std::size_t>(), e0);
        } catch (const DomainError &e) {
            detail::schema_error(source, "/reference/index", e.what());
        }
    } else if (ref.contains("amplitudes")) {
        const Json &a = ref["amplitudes"];
        if (!a.is_array() || a.size() != dim) {
            detail::schema_error(source, "/reference/amplitudes",
                                 "expected " + std::to_string(dim) + " amplitudes");
        }
        std::vector<Complex> amps;
        for (std::size_t k = 0; k < a.size(); ++k) {
            amps.push_back(detail::parse_complex(
                a[k], source, "/reference/amplitudes/" + std::to_string(k)));
        }
        StateVector psi(std::move(amps));
        if (std::abs(psi.norm() - 1.0) > 1e-8) {
            detail::schema_error(source, "/reference/amplitudes", "state is not normalized");
        }
        m.reference = ReferenceState{psi.normalized(), e0};
    } else {
        detail::schema_error(source, "/reference", "needs 'index' or 'amplitudes'");
    }

    const Json &tr = detail::require(doc, "transition", source, "");
    if (tr.is_string()) {
        if (tr != "hadamard") {
            detail::schema_error(source, "/transition", "unknown transition (expected \"hadamard\")");
        }
        m.transition = default_transition_operator(n);
    } else {
        Matrix b = detail::parse_matrix(detail::require(tr, "matrix", source, "/transition"),
                                        source, "/transition/matrix");
        if (b.rows() != dim) {
            detail::schema_error(source, "/transition/matrix",
                                 "dimension does not match the system");
        }
        m.transition = TransitionOperator{
            std::move(b), detail::optional_string(tr, "label", "custom", source, "/transition")};
    }

    auto optional_number = [&](const char *key, double fallback) {
        return doc.contains(key)
                   ? detail::parse_number(doc[key], source, std::string("/") + key)
                   : fallback;
    };
    m.omega = optional_number("omega", 0.0);
    m.coupling_c = optional_number("coupling_c", 0.006);
    m.complement_energy = optional_number("complement_energy", 0.0);
    if (m.omega < 0.0) {
        detail::schema_error(source, "/omega", "must be >= 0");
    }
    if (m.coupling_c < 0.0) {
        detail::schema_error(source, "/coupling_c", "must be >= 0");
    }
    if (doc.contains("chained")) {
        if (!doc["chained"].is_boolean()) {
            detail::schema_error(source, "/chained", "expected a boolean");
        }
        out.chained = doc["chained"].get<bool>();
    }
    out.label = detail::optional_string(doc, "label", m.system.label, source, "");
    validate(m);
    return out;
}

inline ModelDocument load_model_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open model file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_model(text.str(), path);
}

inline Json model_json(const ModelDocument &doc) {
    const auto &m = doc.model;
    Json j;
    j["label"] = doc.label;
    j["system"] = {{"n_qubits", m.system.n_qubits},
                   {"label", m.system.label},
                   {"matrix", detail::matrix_json(m.system.matrix)}};
    j["reference"] = {{"amplitudes", amplitudes_json(m.reference.psi)},
                      {"energy_e0", m.reference.energy_e0}};
    if (m.transition.label == "hadamard") {
        j["transition"] = "hadamard";
    } else {
        j["transition"] = {{"label", m.transition.label},
                           {"matrix", detail::matrix_json(m.transition.matrix_b)}};
    }
    j["omega"] = m.omega;
    j["coupling_c"] = m.coupling_c;
    j["complement_energy"] = m.complement_energy;
    j["chained"] = doc.chained;
    return j;
}

/// Header `omega,p_probe_ground`, shortest round-trip decimals.
inline void write_sweep_csv(std::ostream &out, const std::vector<SweepSample> &samples) {
    out << "omega,p_probe_ground\n";
    for (const auto &s : samples) {
        out << format_double(s.omega) << ',' << format_double(s.p_probe_ground) << '\n';
    }
}

inline void write_rabi_csv(std::ostream &out, const std::vector<RabiSample> &samples) {
    out << "tau,p\n";
    for (const auto &s : samples) {
        out << format_double(s.tau) << ',' << format_double(s.p) << '\n';
    }
}

inline Json peak_json(const Peak &p) {
    return {{"omega_center", p.omega_center},
            {"energy_estimate", p.energy_estimate},
            {"p_max", p.p_max},
            {"width_estimate", p.width_estimate},
            {"grid_resolution", p.grid_resolution},
            {"rounds", p.rounds},
            {"near_degenerate", p.near_degenerate}};
}

/// {amplitudes, success_probability, fidelity, target_j, omega, tau}; target_j is 1-based.
inline Json prepared_state_json(const Preparation &p) {
    return {{"amplitudes", amplitudes_json(p.state.psi_system)},
            {"success_probability", p.state.success_probability},
            {"fidelity", p.fidelity},
            {"target_j", p.target_j + 1},
            {"herald_sector", p.state.herald_sector},
            {"omega", p.state.source_omega},
            {"tau", p.state.source_tau},
            {"d_j_abs", std::abs(p.d_j)}};
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path + ": cannot open for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

} // namespace resonance
