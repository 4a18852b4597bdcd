#include "irsplan/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "irsplan/errors.hpp"

namespace irsplan {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double theta)
{
    double t = std::fmod(theta, two_pi);
    if (t < 0.0)
        t += two_pi;
    return t;
}

std::vector<double> span_grid(const AngularSpan& span, int grid_points)
{
    if (span.hi < span.lo)
        throw contract_error("AngularSpan: hi < lo");
    if (span.width() == 0.0)
        return {span.lo};
    if (grid_points < 2)
        throw contract_error("worst-case grid needs >= 2 points for a non-point span");
    std::vector<double> deltas(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        deltas[static_cast<std::size_t>(i)] = span.lo + t * span.width();
    }
    deltas.front() = span.lo;
    deltas.back() = span.hi;
    return deltas;
}

// Per-element grid phase factors e^{i*2*pi*n*dbar*delta_g}, g-major layout.
std::vector<std::complex<double>> phase_table(const std::vector<double>& deltas, int n, double dbar)
{
    std::vector<std::complex<double>> table(deltas.size() * static_cast<std::size_t>(n));
    for (std::size_t g = 0; g < deltas.size(); ++g)
        for (int k = 0; k < n; ++k) {
            const double ph = two_pi * k * dbar * deltas[g];
            table[g * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = {std::cos(ph),
                                                                                    std::sin(ph)};
        }
    return table;
}

struct GriddedObjective {
    const std::vector<std::complex<double>>& table;
    std::size_t grid;
    int n;

    std::vector<std::complex<double>> sums(const std::vector<double>& thetas) const
    {
        std::vector<std::complex<double>> s(grid, {0.0, 0.0});
        for (int k = 0; k < n; ++k) {
            const std::complex<double> c = std::polar(1.0, thetas[static_cast<std::size_t>(k)]);
            for (std::size_t g = 0; g < grid; ++g)
                s[g] += c * table[g * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
        }
        return s;
    }

    static double min_gain(const std::vector<std::complex<double>>& s)
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& v : s)
            m = std::min(m, std::norm(v));
        return m;
    }
};

struct CdOutcome {
    std::vector<double> thetas;
    double value{0.0};
    bool converged{false};
    int sweeps{0};
};

// Cyclic coordinate descent on the gridded min objective. Each element update
// keeps the current phase in the candidate set, so the objective never drops.
CdOutcome coordinate_descent(std::vector<double> thetas, const GriddedObjective& obj,
                             const SynthConfig& cfg)
{
    const int n = obj.n;
    const std::size_t grid = obj.grid;
    auto s = obj.sums(thetas);
    double value = GriddedObjective::min_gain(s);
    CdOutcome out;

    std::vector<std::complex<double>> s_minus(grid);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

    int sweep = 0;
    bool converged = false;
    for (; sweep < cfg.max_iters && !converged; ++sweep) {
        const double prev = value;
        for (int k = 0; k < n; ++k) {
            const std::complex<double> c_old = std::polar(1.0, thetas[static_cast<std::size_t>(k)]);
            for (std::size_t g = 0; g < grid; ++g)
                s_minus[g] = s[g] - c_old * obj.table[g * static_cast<std::size_t>(n) +
                                                      static_cast<std::size_t>(k)];

            auto eval = [&](double phase) {
                const std::complex<double> c = std::polar(1.0, phase);
                double m = std::numeric_limits<double>::infinity();
                for (std::size_t g = 0; g < grid; ++g) {
                    const std::complex<double> v =
                        s_minus[g] + c * obj.table[g * static_cast<std::size_t>(n) +
                                                   static_cast<std::size_t>(k)];
                    m = std::min(m, std::norm(v));
                }
                return m;
            };

            double best_phase = thetas[static_cast<std::size_t>(k)];
            double best_val = eval(best_phase);

            if (cfg.phase_bits > 0) {
                const int levels = 1 << cfg.phase_bits;
                for (int q = 0; q < levels; ++q) {
                    const double phase = two_pi * q / levels;
                    const double v = eval(phase);
                    if (v > best_val) {
                        best_val = v;
                        best_phase = phase;
                    }
                }
            } else {
                const int coarse = std::max(4, cfg.coarse_candidates);
                double scan_phase = best_phase;
                double scan_val = best_val;
                for (int q = 0; q < coarse; ++q) {
                    const double phase = two_pi * q / coarse;
                    const double v = eval(phase);
                    if (v > scan_val) {
                        scan_val = v;
                        scan_phase = phase;
                    }
                }
                // golden-section refinement around the scan winner
                double a = scan_phase - two_pi / coarse;
                double b = scan_phase + two_pi / coarse;
                double x1 = b - golden * (b - a);
                double x2 = a + golden * (b - a);
                double f1 = eval(x1);
                double f2 = eval(x2);
                for (int it = 0; it < cfg.refine_iters; ++it) {
                    if (f1 < f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + golden * (b - a);
                        f2 = eval(x2);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - golden * (b - a);
                        f1 = eval(x1);
                    }
                }
                const double mid = wrap_phase(0.5 * (a + b));
                const double vm = eval(mid);
                if (vm > scan_val) {
                    scan_val = vm;
                    scan_phase = mid;
                }
                if (scan_val > best_val) {
                    best_val = scan_val;
                    best_phase = scan_phase;
                }
            }

            thetas[static_cast<std::size_t>(k)] = wrap_phase(best_phase);
            const std::complex<double> c_new = std::polar(1.0, thetas[static_cast<std::size_t>(k)]);
            for (std::size_t g = 0; g < grid; ++g)
                s[g] = s_minus[g] + c_new * obj.table[g * static_cast<std::size_t>(n) +
                                                      static_cast<std::size_t>(k)];
        }
        // fresh sums each sweep to stop incremental drift
        s = obj.sums(thetas);
        value = GriddedObjective::min_gain(s);
        if (value - prev <= cfg.tol * std::max(prev, 1e-30))
            converged = true;
    }

    out.thetas = std::move(thetas);
    out.value = value;
    out.converged = converged;
    out.sweeps = sweep;
    return out;
}

std::vector<double> chirp_init(const AngularSpan& span, int n, double dbar)
{
    // quadratic phase, spreads the beam across the span
    const double mid = 0.5 * (span.lo + span.hi);
    const double width = span.width();
    std::vector<double> thetas(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        thetas[static_cast<std::size_t>(k)] =
            wrap_phase(-two_pi * k * dbar * mid -
                       std::numbers::pi * dbar * static_cast<double>(k) * k * width / n);
    return thetas;
}

std::vector<double> steer_init(double delta, int n, double dbar)
{
    std::vector<double> thetas(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        thetas[static_cast<std::size_t>(k)] = wrap_phase(-two_pi * k * dbar * delta);
    return thetas;
}

std::vector<double> quantize_phases(const std::vector<double>& thetas, int bits)
{
    const int levels = 1 << bits;
    std::vector<double> q(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double step = two_pi / levels;
        const auto idx = static_cast<long>(std::llround(wrap_phase(thetas[i]) / step));
        q[i] = step * static_cast<double>(((idx % levels) + levels) % levels);
    }
    return q;
}

} // namespace

int default_grid_points(double width, int n, double dbar)
{
    const double per_beamwidth = 64.0 * width * n * dbar;
    return std::max(256, static_cast<int>(std::ceil(per_beamwidth)));
}

double gain(const IrsPattern& pattern, double delta, double dbar)
{
    std::complex<double> s{0.0, 0.0};
    const int n = pattern.size();
    for (int k = 0; k < n; ++k) {
        const double ph = pattern.thetas[static_cast<std::size_t>(k)] + two_pi * k * dbar * delta;
        s += std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return std::norm(s);
}

double worst_case_gain(const IrsPattern& pattern, const AngularSpan& span, double dbar,
                       int grid_points)
{
    double m = std::numeric_limits<double>::infinity();
    for (double delta : span_grid(span, grid_points))
        m = std::min(m, gain(pattern, delta, dbar));
    return m;
}

IrsPattern synth_linear(const AngularSpan& span, int n, double dbar)
{
    if (n < 1)
        throw contract_error("synth_linear: n must be >= 1");
    if (span.hi < span.lo)
        throw contract_error("AngularSpan: hi < lo");
    const double mid = 0.5 * (span.lo + span.hi);
    return IrsPattern{steer_init(mid, n, dbar)};
}

SynthResult synth_flat(const AngularSpan& span, int n, double dbar, const SynthConfig& config)
{
    if (n < 1)
        throw contract_error("synth_flat: n must be >= 1");
    if (span.hi < span.lo)
        throw contract_error("AngularSpan: hi < lo");
    if (!(config.tol > 0.0))
        throw contract_error("SynthConfig: tol must be > 0");

    const int grid_points =
        config.grid_points > 0 ? config.grid_points : default_grid_points(span.width(), n, dbar);
    const auto deltas = span_grid(span, span.width() == 0.0 ? 1 : grid_points);
    const auto table = phase_table(deltas, n, dbar);
    const GriddedObjective obj{table, deltas.size(), n};

    SynthResult result;

    // linear candidate first: never return anything worse
    {
        IrsPattern lin = synth_linear(span, n, dbar);
        if (config.phase_bits > 0)
            lin.thetas = quantize_phases(lin.thetas, config.phase_bits);
        result.pattern = lin;
        result.worst_gain = GriddedObjective::min_gain(obj.sums(lin.thetas));
        result.converged = true;
        result.sweeps = 0;
    }

    std::vector<std::vector<double>> inits;
    inits.push_back(chirp_init(span, n, dbar));
    if (config.phase_bits > 0) {
        // small quantized searches benefit from a few deterministic restarts
        inits.push_back(steer_init(0.5 * (span.lo + span.hi), n, dbar));
        inits.push_back(steer_init(span.lo, n, dbar));
        inits.push_back(steer_init(span.hi, n, dbar));
        inits.push_back(std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (auto& init : inits)
            init = quantize_phases(init, config.phase_bits);
    }

    for (const auto& init : inits) {
        CdOutcome cd = coordinate_descent(init, obj, config);
        if (cd.value > result.worst_gain) {
            result.worst_gain = cd.value;
            result.pattern.thetas = std::move(cd.thetas);
            result.converged = cd.converged;
            result.sweeps = cd.sweeps;
        }
    }
    return result;
}

IrsPattern brute_force_synth(const AngularSpan& span, int n, double dbar, int phase_bits,
                             int grid_points)
{
    if (n < 1)
        throw contract_error("brute_force_synth: n must be >= 1");
    if (phase_bits < 1)
        throw contract_error("brute_force_synth: phase_bits must be >= 1");
    const int levels = 1 << phase_bits;
    const double log_size = n * std::log2(static_cast<double>(levels));
    if (log_size > 24.0)
        throw search_space_error("brute_force_synth: search space exceeds 2^24 candidates");

    const auto deltas = span_grid(span, span.width() == 0.0 ? 1 : grid_points);
    const std::size_t grid = deltas.size();
    const auto table = phase_table(deltas, n, dbar);

    // Per-level phasors e^{i*2*pi*q/levels}.
    std::vector<std::complex<double>> level_phasor(static_cast<std::size_t>(levels));
    for (int q = 0; q < levels; ++q)
        level_phasor[static_cast<std::size_t>(q)] = std::polar(1.0, two_pi * q / levels);

    // Depth-first enumeration in lexicographic digit order with running
    // partial sums; strict improvement keeps the first (smallest) optimum.
    std::vector<std::vector<std::complex<double>>> partial(
        static_cast<std::size_t>(n) + 1, std::vector<std::complex<double>>(grid, {0.0, 0.0}));
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> best_digits;
    double best = -1.0;

    auto upper_bound = [&](int level) {
        // remaining elements can add at most (n - level) in magnitude at
        // every grid point
        const double rest = static_cast<double>(n - level);
        double ub = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < grid; ++g) {
            const double mag = std::abs(partial[static_cast<std::size_t>(level)][g]) + rest;
            ub = std::min(ub, mag * mag);
        }
        return ub;
    };

    auto dfs = [&](auto&& self, int level) -> void {
        if (level == n) {
            const double v = GriddedObjective::min_gain(partial[static_cast<std::size_t>(n)]);
            if (v > best) {
                best = v;
                best_digits = digits;
            }
            return;
        }
        if (best >= 0.0 && upper_bound(level) <= best)
            return;
        for (int q = 0; q < levels; ++q) {
            digits[static_cast<std::size_t>(level)] = q;
            const std::complex<double> c = level_phasor[static_cast<std::size_t>(q)];
            for (std::size_t g = 0; g < grid; ++g)
                partial[static_cast<std::size_t>(level) + 1][g] =
                    partial[static_cast<std::size_t>(level)][g] +
                    c * table[g * static_cast<std::size_t>(n) + static_cast<std::size_t>(level)];
            self(self, level + 1);
        }
    };
    dfs(dfs, 0);

    IrsPattern pattern;
    pattern.thetas.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        pattern.thetas[static_cast<std::size_t>(k)] =
            two_pi * best_digits[static_cast<std::size_t>(k)] / levels;
    return pattern;
}

} // namespace irsplan
