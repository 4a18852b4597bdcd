#pragma once

#include <vector>

namespace irsplan {

// AP-subarea association. Stored as one AP index per subarea, which makes the
// "each row sums to exactly 1" invariant structural: an unserved subarea
// would pin the worst-case power at zero, so the optimizer always assigns.
struct Association {
    int num_aps{0};
    std::vector<int> ap_of; // subarea k -> AP index in [0, num_aps)

    int num_subareas() const { return static_cast<int>(ap_of.size()); }
    bool lambda(int k, int j) const { return ap_of[static_cast<std::size_t>(k)] == j; }

    // Validates a K x J binary matrix (entries 0/1, each row summing to
    // exactly 1); throws contract_error otherwise.
    static Association from_matrix(const std::vector<std::vector<int>>& lambda);
};

// Inputs of the association problem: per-subarea extremes of the effective
// spatial frequency and per-AP direction cosines.
struct SubareaSpans {
    struct PhiSpan {
        double phi_min{0.0};
        double phi_max{0.0};
    };
    std::vector<PhiSpan> subareas;
    std::vector<double> ap_omegas;

    int num_subareas() const { return static_cast<int>(subareas.size()); }
    int num_aps() const { return static_cast<int>(ap_omegas.size()); }
};

struct AngularDeviation {
    double delta_min{0.0};
    double delta_max{0.0};

    double spread() const { return delta_max - delta_min; } // Delta_s >= 0
};

// Delta_max = max_k (phi_max_k - omega_{j(k)}), Delta_min the analogous min.
AngularDeviation angular_deviation(const Association& assoc, const SubareaSpans& spans);

struct RefinementResult {
    Association assoc;
    // spread after the initial assignment and after each accepted move;
    // strictly decreasing by the strict-improvement stopping rule
    std::vector<double> spread_trace;
};

// Successive refinement: start from every subarea on one AP, then repeatedly
// reassign the bottleneck subarea (either extreme) to the AP that shrinks the
// deviation most, until no single reassignment improves. Runs one descent per
// initial AP choice (ordered by ascending direction cosine) and keeps the
// best; the run started at argmin omega is tried first.
RefinementResult successive_refinement(const SubareaSpans& spans);

// Identity association for the K = J uniform construction; contract_error if
// the counts differ.
Association uniform_association(int num_subareas, int num_aps);

// Exhaustive minimization of the angular deviation over all J^K assignments
// (lexicographic tie-break). Throws search_space_error above 10^7 candidates.
Association brute_force_association(const SubareaSpans& spans);

} // namespace irsplan
