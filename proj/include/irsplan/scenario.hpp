#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsplan/evaluation.hpp"
#include "irsplan/geometry.hpp"
#include "irsplan/pattern.hpp"

namespace irsplan {

inline constexpr const char* tool_version = "0.1.0";

// Declarative experiment description. One UTF-8 JSON document; dB-valued
// fields carry a _db/_dbm suffix and are converted to linear at this boundary.
struct Scenario {
    struct Geometry {
        Position irs{0.0, 0.0, 10.0};
        Vec3 irs_axis{1.0, 0.0, 0.0};
        double ap_circle_radius{10.0};
        int num_aps{4};
        double phi_r1{0.0}; // direction cosine of AP 1 as seen from the IRS
        Position area_center{150.0, 0.0, 0.0};
        double area_length_x{100.0};
        double area_width_y{40.0};
        double grid_step{0.5};
    } geometry;

    struct Channel {
        double epsilon{10.0}; // linear Rician factor, IRS-user
        double delta{10.0};   // linear Rician factor, AP-IRS
        double alpha1{2.0};
        double alpha2{2.0};
        double c0_db{-40.0};
        double dbar{0.5};
        int n{128};
        int m{4};
    } channel;

    struct System {
        double p_max_dbm{23.0};
        double noise_dbm{-90.0};
    } system;

    struct Solver {
        std::string method{"flat"}; // linear | flat | oracle
        int grid_points{0};
        int max_iters{50};
        double tol{1e-6};
        int phase_bits{3}; // used only by method = oracle
        std::uint64_t seed{1};
    } solver;

    struct Experiment {
        std::vector<int> j_values{1, 2, 3, 4, 5, 6, 7, 8};
        std::vector<int> n_values{128, 256, 512};
        std::vector<double> rician_db_values{0.0, 10.0, 20.0, 30.0};
        std::vector<int> validate_n_values{4, 16};
        std::vector<int> validate_m_values{1, 4};
        std::vector<double> validate_rician_values{0.0, 1.0, 10.0};
        int trials{100000};
    } experiment;
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);

Scenario parse_scenario(const std::string& path);       // throws parse_error
Scenario parse_scenario_text(const std::string& text);  // throws parse_error
std::string serialize_scenario(const Scenario& scenario); // canonical JSON

struct Diagnostic {
    std::string field;
    std::string constraint;
    std::string actual;
};

// Empty list iff every invariant holds.
std::vector<Diagnostic> validate_scenario(const Scenario& scenario);

// FNV-1a over the canonical serialization; identifies a run's inputs.
std::uint64_t scenario_hash(const Scenario& scenario);

// Materializes the runtime configuration: places the APs on the circle and
// converts dB fields to linear.
SystemConfig to_system_config(const Scenario& scenario);

SynthConfig to_synth_config(const Scenario::Solver& solver);

// Column-oriented result with a '#'-prefixed metadata header. Cells are
// pre-formatted so the emitted CSV is byte-stable: doubles use 17 significant
// digits via to_chars, LF line endings, '.' decimal separator.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

std::string format_double(double v);
std::string format_int(long long v);

std::string to_csv(const ResultTable& table);
void write_csv_file(const ResultTable& table, const std::string& path);

} // namespace irsplan
