#include "irsplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "irsplan/errors.hpp"

namespace irsplan {

AngularSpan deviation_span(const AngularDeviation& dev) { return {dev.delta_min, dev.delta_max}; }

SubareaSpans make_subarea_spans(std::span<const SubareaBand> bands,
                                const ScenarioGeometry& geometry)
{
    SubareaSpans spans;
    spans.subareas.reserve(bands.size());
    for (const SubareaBand& b : bands)
        spans.subareas.push_back({b.phi_lo, b.phi_hi});
    spans.ap_omegas.reserve(geometry.aps.size());
    for (const Position& ap : geometry.aps)
        spans.ap_omegas.push_back(direction_cosine(geometry.irs, ap, geometry.irs_axis));
    return spans;
}

double avg_received_power(const Position& user_pos, int ap_index, const IrsPattern& pattern,
                          const SystemConfig& config)
{
    const ScenarioGeometry& geom = config.geometry;
    if (ap_index < 0 || ap_index >= static_cast<int>(geom.aps.size()))
        throw contract_error("avg_received_power: ap_index out of range");
    const ChannelParams& ch = config.channel;
    const Position& ap = geom.aps[static_cast<std::size_t>(ap_index)];

    const double rho1_sq = path_loss(distance(ap, geom.irs), ch.alpha1, ch.c0);
    const double rho2_sq = path_loss(distance(geom.irs, user_pos), ch.alpha2, ch.c0);
    const double phi = direction_cosine(geom.irs, user_pos, geom.irs_axis);
    const double omega = direction_cosine(geom.irs, ap, geom.irs_axis);
    const double chi_sq = gain(pattern, phi - omega, ch.dbar);

    const double m = static_cast<double>(ch.num_antennas);
    const double n = static_cast<double>(ch.num_elements);
    return config.p_max_w * rho1_sq * rho2_sq * (ch.gamma1() * chi_sq * m + ch.gamma2() * m * n);
}

Eigen::VectorXcd mrt_beamformer(const Eigen::VectorXcd& effective_channel, double p_max)
{
    if (!(p_max > 0.0))
        throw contract_error("mrt_beamformer: p_max must be > 0");
    const double nrm = effective_channel.norm();
    if (!(nrm > 0.0))
        throw evaluation_error("mrt_beamformer: degenerate (zero) effective channel");
    return std::sqrt(p_max) * effective_channel.conjugate() / nrm;
}

EvaluationResult worst_case_power(const SystemConfig& config, const IrsPattern& pattern,
                                  const Association& assoc, std::span<const SubareaBand> bands)
{
    if (assoc.num_subareas() != static_cast<int>(bands.size()))
        throw contract_error("worst_case_power: association/bands size mismatch");
    const ScenarioGeometry& geom = config.geometry;

    EvaluationResult result;
    result.subarea_min_w.assign(bands.size(), std::numeric_limits<double>::infinity());
    std::vector<Position> argmins(bands.size());

    for (const Position& u : area_grid(geom.area, geom.grid_step)) {
        const double phi = direction_cosine(geom.irs, u, geom.irs_axis);
        const int k = band_index(bands, phi);
        const int j = assoc.ap_of[static_cast<std::size_t>(k)];
        const double p = avg_received_power(u, j, pattern, config);
        if (p < result.subarea_min_w[static_cast<std::size_t>(k)]) {
            result.subarea_min_w[static_cast<std::size_t>(k)] = p;
            argmins[static_cast<std::size_t>(k)] = u;
        }
    }

    result.worst_case_power_w = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < bands.size(); ++k) {
        if (std::isinf(result.subarea_min_w[k]))
            throw evaluation_error("worst_case_power: degenerate partition, subarea without "
                                   "grid points");
        if (result.subarea_min_w[k] < result.worst_case_power_w) {
            result.worst_case_power_w = result.subarea_min_w[k];
            result.worst_subarea = static_cast<int>(k);
            result.worst_location = argmins[k];
        }
    }
    return result;
}

double dibf_worst_power(const SystemConfig& config)
{
    const ScenarioGeometry& geom = config.geometry;
    const ChannelParams& ch = config.channel;
    if (geom.aps.empty())
        throw contract_error("dibf_worst_power: no APs");

    double min_rho1_sq = std::numeric_limits<double>::infinity();
    for (const Position& ap : geom.aps)
        min_rho1_sq = std::min(min_rho1_sq, path_loss(distance(ap, geom.irs), ch.alpha1, ch.c0));
    double min_rho2_sq = std::numeric_limits<double>::infinity();
    for (const Position& u : area_grid(geom.area, geom.grid_step))
        min_rho2_sq = std::min(min_rho2_sq, path_loss(distance(geom.irs, u), ch.alpha2, ch.c0));

    const double m = static_cast<double>(ch.num_antennas);
    const double n = static_cast<double>(ch.num_elements);
    const double concentrated_loss = min_rho1_sq * min_rho2_sq;
    return config.p_max_w * (ch.gamma1() * m * n * n + ch.gamma2() * m * n) * concentrated_loss;
}

int min_required_aps(int n, double dbar, double delta_s_initial)
{
    if (delta_s_initial < 0.0)
        throw contract_error("min_required_aps: delta_s_initial must be >= 0");
    const double v = n * dbar * delta_s_initial;
    return std::max(1, static_cast<int>(std::ceil(v)));
}

double beam_crossover_gain(int n)
{
    if (n < 1)
        throw contract_error("beam_crossover_gain: n must be >= 1");
    const double s = std::sin(std::numbers::pi / (2.0 * n));
    return 1.0 / (s * s);
}

MonteCarloEstimate mc_received_power(const SystemConfig& config, const IrsPattern& pattern,
                                     int ap_index, const Position& user_pos, int trials,
                                     std::uint64_t seed)
{
    if (trials < 100)
        throw contract_error("mc_received_power: trials must be >= 100");
    const ChannelParams& ch = config.channel;
    if (pattern.size() != ch.num_elements)
        throw contract_error("mc_received_power: pattern size != N");

    Eigen::VectorXcd phasors(ch.num_elements);
    for (int k = 0; k < ch.num_elements; ++k)
        phasors(k) = std::polar(1.0, pattern.thetas[static_cast<std::size_t>(k)]);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(t),
                                          static_cast<std::uint64_t>(ap_index));
        const ChannelRealization chn =
            sample_channel(ch, config.geometry, ap_index, user_pos, rng);
        // v = h^H Theta G, received power under MRT is p_max * ||v||^2
        const Eigen::RowVectorXcd v =
            (chn.h.conjugate().cwiseProduct(phasors)).transpose() * chn.G;
        const double p = config.p_max_w * v.squaredNorm();
        sum += p;
        sum_sq += p * p;
    }
    MonteCarloEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.mean_w = sum / trials;
    const double var = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
    est.std_error_w = std::sqrt(var / trials);
    return est;
}

MonteCarloEstimate mc_received_power(const SystemConfig& config, const IrsPattern& pattern,
                                     const Association& assoc, std::span<const SubareaBand> bands,
                                     const Position& user_pos, int trials, std::uint64_t seed)
{
    const double phi = direction_cosine(config.geometry.irs, user_pos, config.geometry.irs_axis);
    const int k = band_index(bands, phi);
    return mc_received_power(config, pattern, assoc.ap_of[static_cast<std::size_t>(k)], user_pos,
                             trials, seed);
}

namespace {

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

} // namespace

std::vector<SnrSweepRow> snr_sweep(const SystemConfig& config, std::span<const SubareaBand> bands,
                                   const Association& assoc,
                                   std::span<const double> rician_values,
                                   const PatternBuilder& pattern_builder)
{
    if (rician_values.empty())
        throw contract_error("snr_sweep: empty Rician factor list");
    const SubareaSpans spans = make_subarea_spans(bands, config.geometry);
    const AngularDeviation dev = angular_deviation(assoc, spans);
    const IrsPattern pattern = pattern_builder(deviation_span(dev));

    std::vector<SnrSweepRow> rows;
    rows.reserve(rician_values.size());
    for (double rician : rician_values) {
        SystemConfig cfg = config;
        cfg.channel.epsilon = rician;
        cfg.channel.delta = rician;
        const double static_w = worst_case_power(cfg, pattern, assoc, bands).worst_case_power_w;
        const double dibf_w = dibf_worst_power(cfg);
        SnrSweepRow row;
        row.rician_linear = rician;
        row.static_snr_db = to_db(static_w / cfg.noise_w);
        row.dibf_snr_db = to_db(dibf_w / cfg.noise_w);
        row.loss_db = row.dibf_snr_db - row.static_snr_db;
        rows.push_back(row);
    }
    return rows;
}

std::vector<GainSweepRow> gain_vs_j_sweep(const SystemConfig& config,
                                          std::span<const int> j_values,
                                          std::span<const int> n_values, double ap_circle_radius,
                                          double phi_r1, const SynthConfig& synth_config)
{
    const ScenarioGeometry& base_geom = config.geometry;
    const auto [phi_min, phi_max] =
        spatial_freq_bounds(base_geom.area, base_geom.irs, base_geom.irs_axis, base_geom.grid_step);
    const double delta_s_initial = phi_max - phi_min;

    std::vector<int> js(j_values.begin(), j_values.end());
    std::sort(js.begin(), js.end());

    std::vector<GainSweepRow> rows;
    for (int n : n_values) {
        IrsPattern prev_pattern;
        double prev_mid = 0.0;
        bool have_prev = false;
        for (int j : js) {
            ScenarioGeometry geom = base_geom;
            geom.aps = place_aps_uniform(j, phi_r1, delta_s_initial, ap_circle_radius,
                                         base_geom.irs, base_geom.irs_axis);
            const auto bands = partition_area_uniform(geom.area, geom.irs, geom.irs_axis, j,
                                                      geom.grid_step);
            const Association assoc = uniform_association(j, j);
            const SubareaSpans spans = make_subarea_spans(bands, geom);
            const AngularDeviation dev = angular_deviation(assoc, spans);
            const AngularSpan span = deviation_span(dev);
            const int grid = synth_config.grid_points > 0
                                 ? synth_config.grid_points
                                 : default_grid_points(span.width(), n, config.channel.dbar);

            SynthResult synth = synth_flat(span, n, config.channel.dbar, synth_config);
            double best = synth.worst_gain;
            IrsPattern best_pattern = synth.pattern;

            if (have_prev) {
                // previous J's pattern re-steered to the new (narrower) span
                // midpoint: its worst case cannot be below the previous value
                const double mid = 0.5 * (span.lo + span.hi);
                IrsPattern shifted = prev_pattern;
                for (int k = 0; k < n; ++k) {
                    const double adj = -2.0 * std::numbers::pi * k * config.channel.dbar *
                                       (mid - prev_mid);
                    double t = std::fmod(shifted.thetas[static_cast<std::size_t>(k)] + adj,
                                         2.0 * std::numbers::pi);
                    if (t < 0.0)
                        t += 2.0 * std::numbers::pi;
                    shifted.thetas[static_cast<std::size_t>(k)] = t;
                }
                const double shifted_gain = worst_case_gain(shifted, span, config.channel.dbar,
                                                            grid);
                if (shifted_gain > best) {
                    best = shifted_gain;
                    best_pattern = shifted;
                }
            }

            GainSweepRow row;
            row.num_aps = j;
            row.num_elements = n;
            row.delta_s = dev.spread();
            row.worst_gain = best;
            row.worst_gain_db = to_db(best);
            rows.push_back(row);

            prev_pattern = best_pattern;
            prev_mid = 0.5 * (span.lo + span.hi);
            have_prev = true;
        }
    }
    return rows;
}

} // namespace irsplan
