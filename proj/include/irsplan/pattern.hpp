#pragma once

#include <vector>

namespace irsplan {

// A single static set of reflection phase shifts, radians in [0, 2*pi).
// Every implied reflection coefficient e^{i*theta_n} has unit modulus.
struct IrsPattern {
    std::vector<double> thetas;

    int size() const { return static_cast<int>(thetas.size()); }
};

// Interval of effective spatial-frequency offsets (values of Phi_t - Omega_r).
struct AngularSpan {
    double lo{0.0};
    double hi{0.0};

    double width() const { return hi - lo; }
};

enum class SynthMethod { linear, flat, oracle };

struct SynthConfig {
    SynthMethod method{SynthMethod::flat};
    int grid_points{0};       // 0 selects default_grid_points()
    int max_iters{50};        // coordinate-descent sweeps
    double tol{1e-6};         // relative improvement stopping threshold
    int phase_bits{0};        // 0 = continuous phases; >0 = quantized updates
    int coarse_candidates{32};// scan resolution before golden-section refine
    int refine_iters{40};     // golden-section iterations per element
};

struct SynthResult {
    IrsPattern pattern;
    bool converged{true};
    int sweeps{0};
    double worst_gain{0.0}; // gridded min of the array gain over the span
};

// Span discretization rule: at least 64 samples per beamwidth 1/(n*dbar),
// never fewer than 256 points.
int default_grid_points(double width, int n, double dbar);

// Passive beamforming gain |sum_n e^{i(theta_n + 2*pi*(n-1)*dbar*delta)}|^2.
// Always in [0, n^2].
double gain(const IrsPattern& pattern, double delta, double dbar);

// Minimum of gain() over a uniform grid on the span including both endpoints;
// a grid lower-envelope estimate of the true worst case.
double worst_case_gain(const IrsPattern& pattern, const AngularSpan& span, double dbar,
                       int grid_points);

// Linear phase steering at the span midpoint. For width = 1/(n*dbar) this is
// the closed-form pattern whose worst-case gain equals 1/sin^2(pi/(2n)).
IrsPattern synth_linear(const AngularSpan& span, int n, double dbar);

// Beam flattening: cyclic coordinate descent from a quadratic-phase (chirp)
// start, with the linear pattern kept as a candidate so the result never
// falls below it. Quantized mode (phase_bits > 0) restricts every update to
// the 2^bits phase set and adds deterministic restarts; it exists for
// oracle cross-checks at small n.
SynthResult synth_flat(const AngularSpan& span, int n, double dbar, const SynthConfig& config);

// Exhaustive search over ((2^phase_bits)^n) quantized patterns for the
// gridded min-max objective. Ties resolve to the lexicographically smallest
// phase vector. Throws search_space_error beyond ~2^24 candidates.
IrsPattern brute_force_synth(const AngularSpan& span, int n, double dbar, int phase_bits,
                             int grid_points);

} // namespace irsplan
