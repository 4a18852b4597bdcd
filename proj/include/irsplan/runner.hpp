#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "irsplan/scenario.hpp"

namespace irsplan {

// Exit codes; the CLI prints `error code=<n> kind=<name>: <message>` on stderr.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,          // unexpected error
    exit_parse_error = 2,      // malformed scenario
    exit_invalid_scenario = 3, // scenario violates an invariant
    exit_geometry_error = 4,   // degenerate geometry or infeasible placement
    exit_search_space = 5,     // oracle refused: search space too large
    exit_usage = 64,           // unknown subcommand / bad arguments
};

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

// Builds the result table for one subcommand. Deterministic for a fixed
// scenario: identical inputs give identical tables. Throws on error.
ResultTable build_result_table(const std::string& subcommand, const Scenario& scenario,
                               const RunOptions& options = {});

// Loads + validates the scenario, runs the subcommand, writes the CSV.
// Returns an ExitCode instead of throwing; diagnostics go to stderr.
int run_subcommand(const std::string& subcommand, const std::string& scenario_path,
                   const std::string& out_path, const RunOptions& options = {});

bool is_known_subcommand(const std::string& subcommand);

} // namespace irsplan
