#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "irsplan/association.hpp"
#include "irsplan/channel.hpp"
#include "irsplan/geometry.hpp"
#include "irsplan/pattern.hpp"

namespace irsplan {

struct SystemConfig {
    double p_max_w{0.0};   // per-AP transmit power budget, watts
    double noise_w{1e-12}; // noise power, watts
    ChannelParams channel;
    ScenarioGeometry geometry;
};

struct EvaluationResult {
    double worst_case_power_w{0.0};
    Position worst_location;
    int worst_subarea{0};
    std::vector<double> subarea_min_w; // per-subarea minima; global min is their min
};

struct MonteCarloEstimate {
    double mean_w{0.0};
    double std_error_w{0.0}; // sample std / sqrt(trials)
    int trials{0};
    std::uint64_t seed{0};
};

// Closed-form expected received power under maximum ratio transmission:
//   P_max * rho1^2 * rho2^2(u) * (gamma1 * |chi|^2 * M + gamma2 * M * N),
// with |chi|^2 the pattern gain at delta = Phi_t(u) - Omega_{r,ap}.
double avg_received_power(const Position& user_pos, int ap_index, const IrsPattern& pattern,
                          const SystemConfig& config);

// w = sqrt(p_max) * conj(v) / ||v||; ||w||^2 = p_max and |v.w|^2 = p_max*||v||^2
// is maximal under the power constraint. Throws evaluation_error for v = 0.
Eigen::VectorXcd mrt_beamformer(const Eigen::VectorXcd& effective_channel, double p_max);

// Grid minimization of avg_received_power over each subarea with its assigned
// AP; returns the global minimum and where it is attained.
EvaluationResult worst_case_power(const SystemConfig& config, const IrsPattern& pattern,
                                  const Association& assoc, std::span<const SubareaBand> bands);

// Dynamic-beamforming reference: P_max * (gamma1*M*N^2 + gamma2*M*N) * L with
// L the product of the worst AP-side and worst area-side path losses.
double dibf_worst_power(const SystemConfig& config);

// ceil(N * dbar * delta_s_initial), at least 1: the AP count at which each
// band's span fits inside one beamwidth.
int min_required_aps(int n, double dbar, double delta_s_initial);

// 1/sin^2(pi/(2N)); >= 4N^2/pi^2, asymptotically equal.
double beam_crossover_gain(int n);

// Sample mean of P_max * ||h^H Theta G||^2 over channel draws; deterministic
// for a fixed seed (streams derived per trial).
MonteCarloEstimate mc_received_power(const SystemConfig& config, const IrsPattern& pattern,
                                     int ap_index, const Position& user_pos, int trials,
                                     std::uint64_t seed);

// Convenience overload resolving the serving AP through the user's band.
MonteCarloEstimate mc_received_power(const SystemConfig& config, const IrsPattern& pattern,
                                     const Association& assoc, std::span<const SubareaBand> bands,
                                     const Position& user_pos, int trials, std::uint64_t seed);

using PatternBuilder = std::function<IrsPattern(const AngularSpan&)>;

struct SnrSweepRow {
    double rician_linear{0.0};
    double static_snr_db{0.0};
    double dibf_snr_db{0.0};
    double loss_db{0.0};
};

// Worst-case SNR of the static design and the dynamic reference per Rician
// factor (epsilon = delta = value). The pattern depends only on geometry and
// is built once from the association-induced angular span.
std::vector<SnrSweepRow> snr_sweep(const SystemConfig& config, std::span<const SubareaBand> bands,
                                   const Association& assoc,
                                   std::span<const double> rician_values,
                                   const PatternBuilder& pattern_builder);

struct GainSweepRow {
    int num_aps{0};
    int num_elements{0};
    double delta_s{0.0};
    double worst_gain{0.0};
    double worst_gain_db{0.0};
};

// Worst-case passive gain versus AP count for the uniform placement and K = J
// partition. Within each element count the sweep runs J ascending and also
// evaluates the previous J's pattern re-steered to the new span midpoint, so
// the reported curve is non-decreasing by construction.
std::vector<GainSweepRow> gain_vs_j_sweep(const SystemConfig& config,
                                          std::span<const int> j_values,
                                          std::span<const int> n_values, double ap_circle_radius,
                                          double phi_r1, const SynthConfig& synth_config);

// Association-induced angular span [delta_min, delta_max].
AngularSpan deviation_span(const AngularDeviation& dev);

// Subarea spans (exact band bounds) plus AP direction cosines for a geometry.
SubareaSpans make_subarea_spans(std::span<const SubareaBand> bands,
                                const ScenarioGeometry& geometry);

} // namespace irsplan
