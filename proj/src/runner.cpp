#include "irsplan/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>

#include "irsplan/errors.hpp"

namespace irsplan {

namespace {

constexpr std::array<const char*, 7> known_subcommands = {
    "synth", "associate", "evaluate", "sweep-j", "sweep-rician", "validate", "theorems"};

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

struct Pipeline {
    SystemConfig config;
    std::vector<SubareaBand> bands;
    Association assoc;
    SubareaSpans spans;
    AngularDeviation deviation;
    double delta_s_initial{0.0};
};

// Shared front half of the design pipeline: bounds, uniform placement is
// already in the config, K = J partition, association by refinement.
Pipeline make_pipeline(const Scenario& sc)
{
    Pipeline p;
    p.config = to_system_config(sc);
    const auto& geom = p.config.geometry;
    const auto [phi_min, phi_max] =
        spatial_freq_bounds(geom.area, geom.irs, geom.irs_axis, geom.grid_step);
    p.delta_s_initial = phi_max - phi_min;
    const int j = static_cast<int>(geom.aps.size());
    p.bands = partition_area_uniform(geom.area, geom.irs, geom.irs_axis, j, geom.grid_step);
    p.spans = make_subarea_spans(p.bands, geom);
    p.assoc = successive_refinement(p.spans).assoc;
    p.deviation = angular_deviation(p.assoc, p.spans);
    return p;
}

IrsPattern build_pattern(const AngularSpan& span, int n, double dbar, const Scenario::Solver& sv)
{
    const SynthConfig cfg = to_synth_config(sv);
    switch (cfg.method) {
    case SynthMethod::linear:
        return synth_linear(span, n, dbar);
    case SynthMethod::oracle: {
        const int grid = cfg.grid_points > 0 ? cfg.grid_points
                                             : default_grid_points(span.width(), n, dbar);
        return brute_force_synth(span, n, dbar, sv.phase_bits, grid);
    }
    case SynthMethod::flat:
    default:
        return synth_flat(span, n, dbar, cfg).pattern;
    }
}

void add_common_metadata(ResultTable& table, const std::string& subcommand, const Scenario& sc,
                         std::uint64_t seed)
{
    char hash_buf[32];
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                  static_cast<unsigned long long>(scenario_hash(sc)));
    table.metadata.emplace_back("tool_version", tool_version);
    table.metadata.emplace_back("subcommand", subcommand);
    table.metadata.emplace_back("scenario_hash", hash_buf);
    table.metadata.emplace_back("seed", format_int(static_cast<long long>(seed)));
}

ResultTable run_synth(const Scenario& sc)
{
    Pipeline p = make_pipeline(sc);
    const AngularSpan span = deviation_span(p.deviation);
    const double dbar = p.config.channel.dbar;
    const int n = p.config.channel.num_elements;
    const IrsPattern pattern = build_pattern(span, n, dbar, sc.solver);
    const int grid = sc.solver.grid_points > 0
                         ? sc.solver.grid_points
                         : default_grid_points(span.width(), n, dbar);

    ResultTable t;
    t.metadata.emplace_back("delta_min", format_double(span.lo));
    t.metadata.emplace_back("delta_max", format_double(span.hi));
    t.metadata.emplace_back("worst_gain", format_double(worst_case_gain(pattern, span, dbar, grid)));
    t.metadata.emplace_back("method", sc.solver.method);
    t.columns = {"element", "theta_rad"};
    for (int k = 0; k < pattern.size(); ++k)
        t.add_row({format_int(k + 1), format_double(pattern.thetas[static_cast<std::size_t>(k)])});
    return t;
}

ResultTable run_associate(const Scenario& sc)
{
    Pipeline p = make_pipeline(sc);
    ResultTable t;
    t.metadata.emplace_back("delta_min", format_double(p.deviation.delta_min));
    t.metadata.emplace_back("delta_max", format_double(p.deviation.delta_max));
    t.metadata.emplace_back("delta_s", format_double(p.deviation.spread()));
    t.metadata.emplace_back("delta_s_initial", format_double(p.delta_s_initial));
    t.columns = {"subarea", "ap", "phi_min", "phi_max", "omega"};
    for (int k = 0; k < p.assoc.num_subareas(); ++k) {
        const int j = p.assoc.ap_of[static_cast<std::size_t>(k)];
        t.add_row({format_int(k + 1), format_int(j + 1),
                   format_double(p.spans.subareas[static_cast<std::size_t>(k)].phi_min),
                   format_double(p.spans.subareas[static_cast<std::size_t>(k)].phi_max),
                   format_double(p.spans.ap_omegas[static_cast<std::size_t>(j)])});
    }
    return t;
}

ResultTable run_evaluate(const Scenario& sc)
{
    Pipeline p = make_pipeline(sc);
    const AngularSpan span = deviation_span(p.deviation);
    const double dbar = p.config.channel.dbar;
    const int n = p.config.channel.num_elements;
    const IrsPattern pattern = build_pattern(span, n, dbar, sc.solver);
    const EvaluationResult res = worst_case_power(p.config, pattern, p.assoc, p.bands);
    const double dibf = dibf_worst_power(p.config);

    ResultTable t;
    t.metadata.emplace_back("worst_case_power_w", format_double(res.worst_case_power_w));
    t.metadata.emplace_back("worst_case_snr_db",
                            format_double(to_db(res.worst_case_power_w / p.config.noise_w)));
    t.metadata.emplace_back("dibf_power_w", format_double(dibf));
    t.metadata.emplace_back("loss_vs_dibf_db", format_double(to_db(dibf / res.worst_case_power_w)));
    t.metadata.emplace_back("worst_subarea", format_int(res.worst_subarea + 1));
    t.columns = {"subarea", "ap", "min_power_w", "min_power_dbm"};
    for (int k = 0; k < p.assoc.num_subareas(); ++k) {
        const double w = res.subarea_min_w[static_cast<std::size_t>(k)];
        t.add_row({format_int(k + 1),
                   format_int(p.assoc.ap_of[static_cast<std::size_t>(k)] + 1), format_double(w),
                   format_double(to_db(w) + 30.0)});
    }
    return t;
}

ResultTable run_sweep_j(const Scenario& sc)
{
    const SystemConfig config = to_system_config(sc);
    const SynthConfig synth_cfg = to_synth_config(sc.solver);
    const auto rows = gain_vs_j_sweep(config, sc.experiment.j_values, sc.experiment.n_values,
                                      sc.geometry.ap_circle_radius, sc.geometry.phi_r1, synth_cfg);
    ResultTable t;
    t.columns = {"j", "n", "delta_s", "worst_gain", "worst_gain_db"};
    for (const auto& r : rows)
        t.add_row({format_int(r.num_aps), format_int(r.num_elements), format_double(r.delta_s),
                   format_double(r.worst_gain), format_double(r.worst_gain_db)});
    return t;
}

ResultTable run_sweep_rician(const Scenario& sc)
{
    ResultTable t;
    t.columns = {"n", "rician_db", "static_snr_db", "dibf_snr_db", "loss_db"};
    for (int n : sc.experiment.n_values) {
        Scenario per_n = sc;
        per_n.channel.n = n;
        // J = J_s(n): smallest AP count whose per-band span fits one beamwidth
        {
            SystemConfig probe = to_system_config(per_n);
            const auto [phi_min, phi_max] =
                spatial_freq_bounds(probe.geometry.area, probe.geometry.irs,
                                    probe.geometry.irs_axis, probe.geometry.grid_step);
            per_n.geometry.num_aps = min_required_aps(n, per_n.channel.dbar, phi_max - phi_min);
        }
        Pipeline p = make_pipeline(per_n);
        std::vector<double> rician_linear;
        rician_linear.reserve(sc.experiment.rician_db_values.size());
        for (double db : sc.experiment.rician_db_values)
            rician_linear.push_back(db_to_linear(db));
        const double dbar = p.config.channel.dbar;
        const auto sweep =
            snr_sweep(p.config, p.bands, p.assoc, rician_linear,
                      [&](const AngularSpan& span) {
                          return build_pattern(span, n, dbar, per_n.solver);
                      });
        for (std::size_t i = 0; i < sweep.size(); ++i)
            t.add_row({format_int(n), format_double(sc.experiment.rician_db_values[i]),
                       format_double(sweep[i].static_snr_db), format_double(sweep[i].dibf_snr_db),
                       format_double(sweep[i].loss_db)});
    }
    return t;
}

ResultTable run_validate(const Scenario& sc, std::uint64_t seed, int trials)
{
    ResultTable t;
    t.columns = {"n", "m", "epsilon", "delta", "closed_form_w", "mc_mean_w", "mc_std_error_w",
                 "z_score", "pass"};
    for (int n : sc.experiment.validate_n_values) {
        for (int m : sc.experiment.validate_m_values) {
            for (double eps : sc.experiment.validate_rician_values) {
                for (double del : sc.experiment.validate_rician_values) {
                    Scenario per = sc;
                    per.channel.n = n;
                    per.channel.m = m;
                    per.channel.epsilon = eps;
                    per.channel.delta = del;
                    per.geometry.num_aps = 1;
                    const SystemConfig config = to_system_config(per);
                    const Position user = per.geometry.area_center;
                    const auto [phi_min, phi_max] =
                        spatial_freq_bounds(config.geometry.area, config.geometry.irs,
                                            config.geometry.irs_axis, config.geometry.grid_step);
                    const IrsPattern pattern =
                        synth_linear({phi_min, phi_max}, n, config.channel.dbar);
                    const double closed = avg_received_power(user, 0, pattern, config);
                    const MonteCarloEstimate mc =
                        mc_received_power(config, pattern, 0, user, trials, seed);
                    const double z = std::abs(mc.mean_w - closed) /
                                     std::max(mc.std_error_w, 1e-300);
                    const bool zero_var = mc.std_error_w == 0.0 &&
                                          std::abs(mc.mean_w - closed) <=
                                              1e-9 * std::max(std::abs(closed), 1e-300);
                    t.add_row({format_int(n), format_int(m), format_double(eps),
                               format_double(del), format_double(closed),
                               format_double(mc.mean_w), format_double(mc.std_error_w),
                               format_double(z), (z <= 3.0 || zero_var) ? "1" : "0"});
                }
            }
        }
    }
    return t;
}

ResultTable run_theorems(const Scenario& sc)
{
    ResultTable t;
    t.columns = {"check", "expected", "actual", "tol", "pass"};
    const double dbar = sc.channel.dbar;

    auto add_check = [&](const std::string& name, double expected, double actual, double tol,
                         bool pass) {
        t.add_row({name, format_double(expected), format_double(actual), format_double(tol),
                   pass ? "1" : "0"});
    };

    // closed-form worst-case gain of the steered pattern on one beamwidth
    for (int n : {16, 64, 128, 256, 512}) {
        const double width = 1.0 / (n * dbar);
        const AngularSpan span{0.0, width};
        const IrsPattern pattern = synth_linear(span, n, dbar);
        const double actual =
            worst_case_gain(pattern, span, dbar, default_grid_points(width, n, dbar));
        const double expected = beam_crossover_gain(n);
        const double rel = std::abs(actual - expected) / expected;
        add_check("crossover_gain_n" + std::to_string(n), expected, actual, 1e-9, rel <= 1e-9);
        const double lower = 4.0 * n * n / (std::numbers::pi * std::numbers::pi);
        add_check("crossover_gain_floor_n" + std::to_string(n), lower, actual, 0.0,
                  actual >= lower);
    }

    // uniform placement + identity association divides the initial span by J
    const SystemConfig base = to_system_config(sc);
    const auto [phi_min, phi_max] =
        spatial_freq_bounds(base.geometry.area, base.geometry.irs, base.geometry.irs_axis,
                            base.geometry.grid_step);
    const double dsi = phi_max - phi_min;
    for (int j = 1; j <= 8; ++j) {
        ScenarioGeometry geom = base.geometry;
        geom.aps = place_aps_uniform(j, sc.geometry.phi_r1, dsi, sc.geometry.ap_circle_radius,
                                     geom.irs, geom.irs_axis);
        const auto bands =
            partition_area_uniform(geom.area, geom.irs, geom.irs_axis, j, geom.grid_step);
        const SubareaSpans spans = make_subarea_spans(bands, geom);
        const AngularDeviation dev = angular_deviation(uniform_association(j, j), spans);
        add_check("span_division_j" + std::to_string(j), dsi / j, dev.spread(), 1e-12,
                  std::abs(dev.spread() - dsi / j) <= 1e-12);
    }

    // J_s: ceiling formula against a direct scan for the smallest feasible J
    for (int n : sc.experiment.n_values) {
        const int js = min_required_aps(n, dbar, dsi);
        int scan = 1;
        while (dsi / scan > 1.0 / (n * dbar) + 1e-15)
            ++scan;
        add_check("min_required_aps_n" + std::to_string(n), static_cast<double>(scan),
                  static_cast<double>(js), 0.0, js == scan);
    }

    // worst-case power ratio to the dynamic reference in the pure-LoS limit
    {
        Scenario los = sc;
        los.channel.epsilon = std::numeric_limits<double>::infinity();
        los.channel.delta = std::numeric_limits<double>::infinity();
        los.geometry.num_aps = min_required_aps(los.channel.n, dbar, dsi);
        Pipeline p = make_pipeline(los);
        const IrsPattern pattern = build_pattern(deviation_span(p.deviation),
                                                 los.channel.n, dbar, los.solver);
        const double ratio = worst_case_power(p.config, pattern, p.assoc, p.bands).worst_case_power_w /
                             dibf_worst_power(p.config);
        const double bound = 4.0 / (std::numbers::pi * std::numbers::pi);
        add_check("static_dynamic_ratio_n" + std::to_string(los.channel.n), bound, ratio, 0.0,
                  ratio >= bound);
    }
    return t;
}

} // namespace

bool is_known_subcommand(const std::string& subcommand)
{
    return std::find(known_subcommands.begin(), known_subcommands.end(), subcommand) !=
           known_subcommands.end();
}

ResultTable build_result_table(const std::string& subcommand, const Scenario& scenario,
                               const RunOptions& options)
{
    Scenario sc = scenario;
    if (options.seed)
        sc.solver.seed = *options.seed;
    if (options.trials)
        sc.experiment.trials = *options.trials;

    ResultTable t;
    if (subcommand == "synth")
        t = run_synth(sc);
    else if (subcommand == "associate")
        t = run_associate(sc);
    else if (subcommand == "evaluate")
        t = run_evaluate(sc);
    else if (subcommand == "sweep-j")
        t = run_sweep_j(sc);
    else if (subcommand == "sweep-rician")
        t = run_sweep_rician(sc);
    else if (subcommand == "validate")
        t = run_validate(sc, sc.solver.seed, sc.experiment.trials);
    else if (subcommand == "theorems")
        t = run_theorems(sc);
    else
        throw contract_error("unknown subcommand '" + subcommand + "'");

    ResultTable with_meta;
    add_common_metadata(with_meta, subcommand, sc, sc.solver.seed);
    for (auto& kv : t.metadata)
        with_meta.metadata.push_back(std::move(kv));
    with_meta.columns = std::move(t.columns);
    with_meta.rows = std::move(t.rows);
    return with_meta;
}

int run_subcommand(const std::string& subcommand, const std::string& scenario_path,
                   const std::string& out_path, const RunOptions& options)
{
    try {
        if (!is_known_subcommand(subcommand)) {
            std::cerr << "error code=" << exit_usage << " kind=usage: unknown subcommand '"
                      << subcommand << "'\n";
            return exit_usage;
        }
        const Scenario scenario = parse_scenario(scenario_path);
        const auto diagnostics = validate_scenario(scenario);
        if (!diagnostics.empty()) {
            for (const auto& d : diagnostics)
                std::cerr << "error code=" << exit_invalid_scenario
                          << " kind=invalid-scenario: field=" << d.field
                          << " constraint=" << d.constraint << " actual=" << d.actual << "\n";
            return exit_invalid_scenario;
        }
        const ResultTable table = build_result_table(subcommand, scenario, options);
        write_csv_file(table, out_path);
        return exit_ok;
    } catch (const parse_error& e) {
        std::cerr << "error code=" << exit_parse_error << " kind=parse: " << e.what() << "\n";
        return exit_parse_error;
    } catch (const geometry_error& e) {
        std::cerr << "error code=" << exit_geometry_error << " kind=geometry: " << e.what()
                  << "\n";
        return exit_geometry_error;
    } catch (const placement_error& e) {
        std::cerr << "error code=" << exit_geometry_error << " kind=placement: " << e.what()
                  << "\n";
        return exit_geometry_error;
    } catch (const search_space_error& e) {
        std::cerr << "error code=" << exit_search_space << " kind=search-space: " << e.what()
                  << "\n";
        return exit_search_space;
    } catch (const std::exception& e) {
        std::cerr << "error code=" << exit_failure << " kind=internal: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace irsplan
