#pragma once

#include <stdexcept>

namespace irsplan {

// Degenerate or invalid geometric input (zero-length displacement, bad area, ...).
struct geometry_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested AP direction cosine cannot be realized on the deployment circle.
struct placement_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated an interface contract (row sums, K != J, bad counts).
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Exhaustive oracle was asked to enumerate more candidates than allowed.
struct search_space_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation cannot proceed (empty subarea grid, zero effective channel).
struct evaluation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario file is malformed or has the wrong types.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace irsplan
