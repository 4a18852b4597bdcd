#include "irsplan/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "irsplan/errors.hpp"

namespace irsplan {

Association Association::from_matrix(const std::vector<std::vector<int>>& lambda)
{
    Association assoc;
    if (lambda.empty())
        throw contract_error("Association: empty matrix");
    assoc.num_aps = static_cast<int>(lambda.front().size());
    for (const auto& row : lambda) {
        if (static_cast<int>(row.size()) != assoc.num_aps)
            throw contract_error("Association: ragged matrix");
        int sum = 0;
        int assigned = -1;
        for (int j = 0; j < assoc.num_aps; ++j) {
            if (row[static_cast<std::size_t>(j)] != 0 && row[static_cast<std::size_t>(j)] != 1)
                throw contract_error("Association: entries must be binary");
            if (row[static_cast<std::size_t>(j)] == 1) {
                sum += 1;
                assigned = j;
            }
        }
        if (sum != 1)
            throw contract_error("Association: each subarea must be assigned exactly one AP");
        assoc.ap_of.push_back(assigned);
    }
    return assoc;
}

AngularDeviation angular_deviation(const Association& assoc, const SubareaSpans& spans)
{
    const int num_subareas = spans.num_subareas();
    if (assoc.num_subareas() != num_subareas)
        throw contract_error("angular_deviation: association/spans size mismatch");
    if (num_subareas == 0)
        throw contract_error("angular_deviation: no subareas");
    AngularDeviation dev{std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity()};
    for (int k = 0; k < num_subareas; ++k) {
        const int j = assoc.ap_of[static_cast<std::size_t>(k)];
        if (j < 0 || j >= spans.num_aps())
            throw contract_error("angular_deviation: unassigned or out-of-range AP");
        const double omega = spans.ap_omegas[static_cast<std::size_t>(j)];
        const auto& s = spans.subareas[static_cast<std::size_t>(k)];
        dev.delta_max = std::max(dev.delta_max, s.phi_max - omega);
        dev.delta_min = std::min(dev.delta_min, s.phi_min - omega);
    }
    return dev;
}

namespace {

struct Move {
    double spread;
    double slack; // smaller is better: new extreme contribution of the moved row
    int ap;
    int subarea;

    bool better_than(const Move& other) const
    {
        if (spread != other.spread)
            return spread < other.spread;
        if (slack != other.slack)
            return slack < other.slack;
        if (ap != other.ap)
            return ap < other.ap;
        return subarea < other.subarea;
    }
};

// One descent from the all-to-one-AP start.
RefinementResult refine_from(const SubareaSpans& spans, int init_ap)
{
    const int num_subareas = spans.num_subareas();
    const int num_aps = spans.num_aps();
    RefinementResult result;
    result.assoc.num_aps = num_aps;
    result.assoc.ap_of.assign(static_cast<std::size_t>(num_subareas), init_ap);
    result.spread_trace.push_back(angular_deviation(result.assoc, spans).spread());

    auto& ap_of = result.assoc.ap_of;
    while (true) {
        const double current = result.spread_trace.back();

        // bottleneck subareas at both extremes of the deviation interval
        int k_hi = 0, k_lo = 0;
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (int k = 0; k < num_subareas; ++k) {
            const double omega = spans.ap_omegas[static_cast<std::size_t>(ap_of[static_cast<std::size_t>(k)])];
            const auto& s = spans.subareas[static_cast<std::size_t>(k)];
            if (s.phi_max - omega > hi) {
                hi = s.phi_max - omega;
                k_hi = k;
            }
            if (s.phi_min - omega < lo) {
                lo = s.phi_min - omega;
                k_lo = k;
            }
        }

        bool have_move = false;
        Move best{};
        for (const auto& [kb, is_hi] : {std::pair{k_hi, true}, std::pair{k_lo, false}}) {
            const int old_ap = ap_of[static_cast<std::size_t>(kb)];
            for (int j = 0; j < num_aps; ++j) {
                if (j == old_ap)
                    continue;
                ap_of[static_cast<std::size_t>(kb)] = j;
                const double spread = angular_deviation(result.assoc, spans).spread();
                const auto& s = spans.subareas[static_cast<std::size_t>(kb)];
                const double omega = spans.ap_omegas[static_cast<std::size_t>(j)];
                // prefer the reassignment that leaves the moved row the most
                // slack toward its own extreme
                const double slack = is_hi ? (s.phi_max - omega) : -(s.phi_min - omega);
                const Move move{spread, slack, j, kb};
                if (!have_move || move.better_than(best)) {
                    best = move;
                    have_move = true;
                }
                ap_of[static_cast<std::size_t>(kb)] = old_ap;
            }
        }

        if (have_move && best.spread < current - 1e-15) {
            ap_of[static_cast<std::size_t>(best.subarea)] = best.ap;
            result.spread_trace.push_back(best.spread);
        } else {
            break;
        }
    }
    return result;
}

} // namespace

RefinementResult successive_refinement(const SubareaSpans& spans)
{
    if (spans.num_subareas() < 1 || spans.num_aps() < 1)
        throw contract_error("successive_refinement: need at least one subarea and one AP");

    // init order: ascending omega, ties by index, so the argmin-omega start
    // (the canonical initialization) runs first and wins ties
    std::vector<int> order(static_cast<std::size_t>(spans.num_aps()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return spans.ap_omegas[static_cast<std::size_t>(a)] <
               spans.ap_omegas[static_cast<std::size_t>(b)];
    });

    RefinementResult best;
    bool have = false;
    for (int init_ap : order) {
        RefinementResult run = refine_from(spans, init_ap);
        if (!have || run.spread_trace.back() < best.spread_trace.back() - 1e-18) {
            best = std::move(run);
            have = true;
        }
    }
    return best;
}

Association uniform_association(int num_subareas, int num_aps)
{
    if (num_subareas != num_aps)
        throw contract_error("uniform_association: requires K == J");
    if (num_subareas < 1)
        throw contract_error("uniform_association: need K >= 1");
    Association assoc;
    assoc.num_aps = num_aps;
    assoc.ap_of.resize(static_cast<std::size_t>(num_subareas));
    std::iota(assoc.ap_of.begin(), assoc.ap_of.end(), 0);
    return assoc;
}

Association brute_force_association(const SubareaSpans& spans)
{
    const int num_subareas = spans.num_subareas();
    const int num_aps = spans.num_aps();
    if (num_subareas < 1 || num_aps < 1)
        throw contract_error("brute_force_association: need at least one subarea and one AP");
    const double size = std::pow(static_cast<double>(num_aps), num_subareas);
    if (size > 1e7)
        throw search_space_error("brute_force_association: search space exceeds 10^7 assignments");

    std::vector<int> digits(static_cast<std::size_t>(num_subareas), 0);
    std::vector<int> best_digits;
    double best = std::numeric_limits<double>::infinity();

    // DFS in lexicographic order with running extremes; first optimum wins.
    auto dfs = [&](auto&& self, int k, double hi, double lo) -> void {
        if (k == num_subareas) {
            const double spread = hi - lo;
            if (spread < best) {
                best = spread;
                best_digits = digits;
            }
            return;
        }
        if (k > 0 && hi - lo >= best)
            return; // spread can only grow
        const auto& s = spans.subareas[static_cast<std::size_t>(k)];
        for (int j = 0; j < num_aps; ++j) {
            digits[static_cast<std::size_t>(k)] = j;
            const double omega = spans.ap_omegas[static_cast<std::size_t>(j)];
            self(self, k + 1, std::max(hi, s.phi_max - omega), std::min(lo, s.phi_min - omega));
        }
    };
    dfs(dfs, 0, -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity());

    Association assoc;
    assoc.num_aps = num_aps;
    assoc.ap_of = best_digits;
    return assoc;
}

} // namespace irsplan
