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
 * Probe-frequency spectroscopy: sweeps of the probe de-excitation
 * probability, the two-level analytic line shape, peak detection and
 * refinement, and on-resonance Rabi scans.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "resonance/error.hpp"
#include "resonance/evolve.hpp"
#include "resonance/model.hpp"
#include "resonance/qmath.hpp"

namespace resonance {

struct SweepPlan {
    double omega_min{0.0};
    double omega_max{2.0};
    std::size_t n_points{101};
    double tau{1000.0};
    double coupling_c{0.006};
    Engine engine{ExactEngine{}};
};

inline void validate(const SweepPlan &plan) {
    if (!(plan.omega_min < plan.omega_max)) {
        throw DomainError("sweep requires omega_min < omega_max");
    }
    if (plan.omega_min < 0.0) {
        throw DomainError("sweep requires omega_min >= 0");
    }
    if (plan.n_points < 2) {
        throw DomainError("sweep requires at least 2 points");
    }
    if (!(plan.coupling_c > 0.0)) {
        throw DomainError("sweep requires coupling_c > 0");
    }
    if (!(plan.tau > 0.0)) {
        throw DomainError("sweep requires tau > 0");
    }
}

inline double grid_step(const SweepPlan &plan) {
    return (plan.omega_max - plan.omega_min) /
           static_cast<double>(plan.n_points - 1);
}

/// ω_k = ω_min + kΔω, k = 0..n_points-1.
inline std::vector<double> sweep_grid(const SweepPlan &plan) {
    validate(plan);
    const double step = grid_step(plan);
    std::vector<double> out(plan.n_points);
    for (std::size_t k = 0; k < plan.n_points; ++k) {
        out[k] = plan.omega_min + static_cast<double>(k) * step;
    }
    out.back() = plan.omega_max;
    return out;
}

struct SweepSample {
    double omega{0.0};
    double p_probe_ground{0.0};
};

struct SweepResult {
    std::vector<SweepSample> samples;
    SweepPlan plan;
    std::string model_label;
    double e0{0.0};
};

struct Peak {
    double omega_center{0.0};
    double p_max{0.0};
    /// Half width at half maximum, floored at the grid step.
    double width_estimate{0.0};
    double energy_estimate{0.0};
    double grid_resolution{0.0};
    std::size_t rounds{0};
    /// Other local maxima within the merge distance were folded into this one.
    bool near_degenerate{false};
};

/// Total probability of basis states whose probe bit is 0.
inline double probe_ground_population(const StateVector &psi) {
    double p = 0.0;
    for (std::size_t i = 0; i < psi.dim() / 2; ++i) {
        p += std::norm(psi[i]);
    }
    return p;
}

/**
 * @brief Probability of finding the probe in |0> after evolving the initial
 * state under the model's Hamiltonian for time tau.
 */
inline double probe_excitation_probability(const SimulatorModel &m, double tau,
                                           const Engine &engine = ExactEngine{}) {
    return probe_ground_population(evolve_initial_state(m, tau, engine));
}

/// d_j = <E_j|B|E_0> in ascending eigenvalue order of H_S.
inline std::vector<Complex>
transition_amplitudes(const SystemHamiltonian &system,
                      const ReferenceState &reference,
                      const TransitionOperator &transition) {
    const auto eig = hermitian_eig(system.matrix);
    const auto driven =
        apply(hermitian_part(transition.matrix_b), reference.psi);
    std::vector<Complex> d(eig.values.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = overlap(eig.eigenvector(j), driven);
    }
    return d;
}

/**
 * @brief Two-level line shape (2c|d|/Ω)^2 sin^2(Ωτ/2) with
 * Ω = sqrt((2c|d|)^2 + detuning^2).
 */
inline double two_level_probability(double d_abs, double detuning, double c,
                                    double tau) {
    const double g = 2.0 * c * d_abs;
    const double rabi = std::hypot(g, detuning);
    if (rabi == 0.0) {
        return 0.0;
    }
    const double s = std::sin(rabi * tau / 2.0);
    return (g / rabi) * (g / rabi) * s * s;
}

/// Analytic probability for the transition E_0 -> E_j (j is 0-based).
inline double analytic_transition_probability(
    const SystemHamiltonian &system, const ReferenceState &reference,
    const TransitionOperator &transition, double omega, double c, double tau,
    std::size_t j) {
    const auto eig = hermitian_eig(system.matrix);
    if (j >= eig.values.size()) {
        throw DomainError("eigenstate index out of range");
    }
    const auto d = transition_amplitudes(system, reference, transition);
    const double detuning = eig.values[j] - reference.energy_e0 - omega;
    return two_level_probability(std::abs(d[j]), detuning, c, tau);
}

inline EigenDecomposition oracle_spectrum(const SystemHamiltonian &system) {
    return hermitian_eig(system.matrix);
}

/**
 * @brief Evaluate the probe probability at each ω with fixed c and τ.
 *
 * Points are independent; results are in input order.
 */
inline std::vector<SweepSample> sweep_points(SimulatorModel m,
                                             const std::vector<double> &omegas,
                                             double tau, double coupling_c,
                                             const Engine &engine) {
    m.coupling_c = coupling_c;
    m.omega = 0.0;
    validate(m);
    std::vector<SweepSample> out;
    out.reserve(omegas.size());
    for (double omega : omegas) {
        m.omega = omega;
        try {
            out.push_back({omega, probe_excitation_probability(m, tau, engine)});
        } catch (const Error &e) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "sweep aborted at omega = " << omega << ": " << e.what();
            throw NumericError(msg.str());
        }
    }
    return out;
}

/// The model's own omega and coupling are replaced by the plan's.
inline SweepResult run_sweep(const SimulatorModel &m, const SweepPlan &plan,
                             std::string model_label = {}) {
    SweepResult r;
    r.samples = sweep_points(m, sweep_grid(plan), plan.tau, plan.coupling_c,
                             plan.engine);
    r.plan = plan;
    r.model_label = model_label.empty() ? m.system.label : std::move(model_label);
    r.e0 = m.reference.energy_e0;
    return r;
}

struct PeakOptions {
    double threshold{0.1};
    /// Local maxima closer than this are merged into the highest one.
    /// Negative selects 10 * coupling_c of the sweep.
    double merge_distance{-1.0};
    /// Maxima below this frequency are not reported.
    double min_omega{-std::numeric_limits<double>::infinity()};
};

/**
 * @brief Local maxima of a sweep at or above the threshold.
 *
 * Interior centers are refined by a three-point parabola through the grid
 * maximum and its neighbours.
 */
inline std::vector<Peak> detect_peaks(const SweepResult &result,
                                      const PeakOptions &opts = {}) {
    if (!(opts.threshold > 0.0 && opts.threshold < 1.0)) {
        throw DomainError("peak threshold must lie in (0, 1)");
    }
    const auto &s = result.samples;
    const std::size_t n = s.size();
    std::vector<Peak> candidates;
    if (n == 0) {
        return candidates;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double y = s[i].p_probe_ground;
        if (y < opts.threshold) {
            continue;
        }
        const bool left_ok = i == 0 || y >= s[i - 1].p_probe_ground;
        const bool right_ok = i + 1 == n || y > s[i + 1].p_probe_ground;
        if (!left_ok || !right_ok) {
            continue;
        }
        // Grid spacing around this sample.
        double step = 0.0;
        if (n > 1) {
            step = i + 1 < n ? s[i + 1].omega - s[i].omega
                             : s[i].omega - s[i - 1].omega;
        }
        double center = s[i].omega;
        if (i > 0 && i + 1 < n) {
            const double ym = s[i - 1].p_probe_ground;
            const double yp = s[i + 1].p_probe_ground;
            const double denom = ym - 2.0 * y + yp;
            if (denom < 0.0) {
                const double offset =
                    std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
                center += offset * step;
            }
        }
        if (center < opts.min_omega) {
            continue;
        }
        // Half maximum crossings, linearly interpolated.
        const double half = y / 2.0;
        double left = s.front().omega;
        for (std::size_t k = i; k > 0; --k) {
            if (s[k - 1].p_probe_ground < half) {
                const double y0 = s[k - 1].p_probe_ground;
                const double y1 = s[k].p_probe_ground;
                left = s[k - 1].omega +
                       (half - y0) / (y1 - y0) * (s[k].omega - s[k - 1].omega);
                break;
            }
        }
        double right = s.back().omega;
        for (std::size_t k = i; k + 1 < n; ++k) {
            if (s[k + 1].p_probe_ground < half) {
                const double y0 = s[k].p_probe_ground;
                const double y1 = s[k + 1].p_probe_ground;
                right = s[k].omega +
                        (y0 - half) / (y0 - y1) * (s[k + 1].omega - s[k].omega);
                break;
            }
        }
        Peak p;
        p.omega_center = center;
        p.p_max = y;
        p.width_estimate = std::max(0.5 * (right - left), step);
        p.energy_estimate = result.e0 + center;
        p.grid_resolution = step;
        candidates.push_back(p);
    }

    const double merge = opts.merge_distance >= 0.0
                             ? opts.merge_distance
                             : 10.0 * result.plan.coupling_c;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Peak &a, const Peak &b) { return a.p_max > b.p_max; });
    std::vector<Peak> kept;
    for (const auto &c : candidates) {
        auto near = std::find_if(kept.begin(), kept.end(), [&](const Peak &k) {
            return std::abs(k.omega_center - c.omega_center) < merge;
        });
        if (near == kept.end()) {
            kept.push_back(c);
        } else {
            near->near_degenerate = true;
        }
    }
    std::sort(kept.begin(), kept.end(), [](const Peak &a, const Peak &b) {
        return a.omega_center < b.omega_center;
    });
    return kept;
}

struct RefinementRound {
    std::size_t round{0};
    double coupling_c{0.0};
    double tau{0.0};
    double grid_step{0.0};
    double window_min{0.0};
    double window_max{0.0};
    std::size_t points{0};
    double omega_center{0.0};
    double p_max{0.0};
};

struct Refinement {
    Peak peak;
    std::vector<RefinementRound> rounds;
    /// Frequency evaluations spent across all refinement rounds.
    std::size_t evaluations{0};
};

struct RefineOptions {
    double threshold{0.1};
    std::size_t max_rounds{40};
};

/**
 * @brief Zoom in on a peak until the grid step is at most target_eps.
 *
 * Each round halves c and doubles τ, so c·τ is unchanged while the line
 * narrows. The grid step is at least halved, and is further capped at one
 * eighth of the line scale 2π/τ so every round resolves the line shape.
 * The window is ±10c around the current center (the near-degeneracy
 * distance). The new center is the probability-weighted centroid of the
 * window, which is insensitive to the split double-hump profile seen when
 * c|d|τ is near a multiple of π.
 *
 * @param plan the sweep that produced `peak`; supplies the starting c, τ and
 * engine.
 * @throws RefinementError if a window contains no sample above threshold.
 */
inline Refinement refine_peak(const SimulatorModel &m, const Peak &peak,
                              const SweepPlan &plan, double target_eps,
                              const RefineOptions &opts = {}) {
    if (!(target_eps > 0.0)) {
        throw DomainError("target_eps must be positive");
    }
    if (!(plan.coupling_c > 0.0) || !(plan.tau > 0.0)) {
        throw DomainError("refinement needs coupling_c > 0 and tau > 0");
    }
    Refinement out;
    out.peak = peak;
    double c = plan.coupling_c;
    double tau = plan.tau;
    double step = peak.grid_resolution > 0.0 ? peak.grid_resolution : grid_step(plan);
    while (step > target_eps) {
        if (out.rounds.size() >= opts.max_rounds) {
            throw NumericError("refinement did not converge within the round limit");
        }
        c /= 2.0;
        tau *= 2.0;
        step = std::min(step / 2.0, 2.0 * std::numbers::pi / tau / 8.0);
        const double half_window = 10.0 * c;
        const auto k_max =
            static_cast<long long>(std::ceil(half_window / step - 1e-9));
        std::vector<double> omegas;
        for (long long k = -k_max; k <= k_max; ++k) {
            const double w = out.peak.omega_center + static_cast<double>(k) * step;
            if (w >= 0.0) {
                omegas.push_back(w);
            }
        }
        if (omegas.size() < 3) {
            throw RefinementError("refinement window has fewer than 3 points");
        }
        const auto samples = sweep_points(m, omegas, tau, c, plan.engine);
        out.evaluations += omegas.size();

        double p_max = 0.0;
        double weight = 0.0;
        double moment = 0.0;
        for (const auto &s : samples) {
            p_max = std::max(p_max, s.p_probe_ground);
            weight += s.p_probe_ground;
            moment += s.p_probe_ground * s.omega;
        }
        if (p_max < opts.threshold) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "lost peak: no sample above " << opts.threshold << " in window ["
                << omegas.front() << ", " << omegas.back() << "] at c = " << c;
            throw RefinementError(msg.str());
        }

        SweepResult window;
        window.samples = samples;
        window.plan = plan;
        window.plan.coupling_c = c;
        window.plan.tau = tau;
        window.e0 = m.reference.energy_e0;
        const auto found = detect_peaks(
            window, PeakOptions{opts.threshold, std::numeric_limits<double>::infinity(),
                                -std::numeric_limits<double>::infinity()});

        Peak next = out.peak;
        next.omega_center = moment / weight;
        next.energy_estimate = m.reference.energy_e0 + next.omega_center;
        next.p_max = p_max;
        next.grid_resolution = step;
        next.width_estimate = found.empty() ? step : std::max(found.front().width_estimate, step);
        next.rounds = out.peak.rounds + 1;
        out.peak = next;
        out.rounds.push_back({next.rounds, c, tau, step, omegas.front(), omegas.back(),
                              omegas.size(), next.omega_center, next.p_max});
    }
    return out;
}

struct RabiSample {
    double tau{0.0};
    double p{0.0};
};

/// P(τ) at the model's fixed ω over the given times.
inline std::vector<RabiSample> rabi_scan(const SimulatorModel &m,
                                         const std::vector<double> &taus,
                                         const Engine &engine = ExactEngine{}) {
    std::vector<RabiSample> out;
    out.reserve(taus.size());
    if (std::holds_alternative<ExactEngine>(engine)) {
        const SpectralExponential<double> prop(build_simulator_hamiltonian(m));
        const StateVector psi0 = initial_state(m);
        for (double t : taus) {
            out.push_back({t, probe_ground_population(prop.apply(t, psi0))});
        }
        return out;
    }
    for (double t : taus) {
        out.push_back({t, probe_excitation_probability(m, t, engine)});
    }
    return out;
}

/// Least-squares fit P(τ) ≈ A sin^2(κτ); the period is π/κ.
struct RabiFit {
    double rate{0.0};
    double period{0.0};
    double amplitude{0.0};
    double rms_residual{0.0};
};

namespace detail {

inline std::pair<double, double> rabi_residual(const std::vector<RabiSample> &s,
                                               double rate) {
    double sy = 0.0;
    double ss = 0.0;
    for (const auto &x : s) {
        const double v = std::sin(rate * x.tau);
        const double b = v * v;
        sy += x.p * b;
        ss += b * b;
    }
    const double amp = ss > 0.0 ? sy / ss : 0.0;
    double sse = 0.0;
    for (const auto &x : s) {
        const double v = std::sin(rate * x.tau);
        const double r = x.p - amp * v * v;
        sse += r * r;
    }
    return {sse, amp};
}

} // namespace detail

/**
 * @brief Fit a sin^2 oscillation to a Rabi scan.
 *
 * Coarse log-spaced search over rates resolvable by the sampling, then
 * golden-section refinement around the best coarse rate.
 *
 * @throws NumericError for a flat signal or an unusable grid.
 */
inline RabiFit fit_rabi(const std::vector<RabiSample> &samples) {
    if (samples.size() < 4) {
        throw NumericError("rabi fit needs at least 4 samples");
    }
    double peak = 0.0;
    double t_max = 0.0;
    double min_dt = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        peak = std::max(peak, samples[k].p);
        t_max = std::max(t_max, std::abs(samples[k].tau));
        if (k > 0) {
            const double dt = std::abs(samples[k].tau - samples[k - 1].tau);
            if (dt > 0.0) {
                min_dt = std::min(min_dt, dt);
            }
        }
    }
    if (peak < 1e-6 || !(t_max > 0.0) || !std::isfinite(min_dt)) {
        throw NumericError("rabi fit failed: flat signal");
    }
    // Periods between 4 sample spacings and 8 scan lengths.
    const double rate_lo = std::numbers::pi / (8.0 * t_max);
    const double rate_hi = std::numbers::pi / (4.0 * min_dt);
    constexpr int coarse = 4000;
    const double ratio = std::pow(rate_hi / rate_lo, 1.0 / (coarse - 1));
    double best_rate = rate_lo;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k < coarse; ++k) {
        const double r = rate_lo * std::pow(ratio, k);
        const double sse = detail::rabi_residual(samples, r).first;
        if (sse < best_sse) {
            best_sse = sse;
            best_rate = r;
        }
    }
    double a = best_rate / ratio;
    double b = best_rate * ratio;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = detail::rabi_residual(samples, x1).first;
    double f2 = detail::rabi_residual(samples, x2).first;
    for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = detail::rabi_residual(samples, x1).first;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = detail::rabi_residual(samples, x2).first;
        }
    }
    RabiFit fit;
    fit.rate = 0.5 * (a + b);
    const auto [sse, amp] = detail::rabi_residual(samples, fit.rate);
    if (!(amp > 0.0)) {
        throw NumericError("rabi fit failed: no oscillation found");
    }
    fit.amplitude = amp;
    fit.period = std::numbers::pi / fit.rate;
    fit.rms_residual = std::sqrt(sse / static_cast<double>(samples.size()));
    return fit;
}

} // namespace resonance
