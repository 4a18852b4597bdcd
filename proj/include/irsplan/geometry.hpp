#pragma once

#include <span>
#include <utility>
#include <vector>

namespace irsplan {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};
};

using Position = Vec3;

Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator+(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
double distance(const Position& a, const Position& b);
Vec3 normalized(const Vec3& v); // throws geometry_error on zero length

// Axis-aligned rectangle in the z = center.z plane.
struct TargetArea {
    Position center;
    double length_x{0.0}; // extent along x, meters
    double width_y{0.0};  // extent along y, meters
};

struct ScenarioGeometry {
    Position irs;
    Vec3 irs_axis{1.0, 0.0, 0.0}; // ULA orientation, unit vector
    std::vector<Position> aps;
    TargetArea area;
    double grid_step{0.5}; // meters, area discretization
};

// Contiguous interval of effective spatial frequency. A partition's bands are
// disjoint and tile [phi_min, phi_max]; a value on a shared boundary belongs
// to the lower-index band.
struct SubareaBand {
    double phi_lo{0.0};
    double phi_hi{0.0};
};

// Direction cosine of (to - from) along `axis`. This is the single scalar
// ("sin(zenith) * cos(azimuth)" for an x-aligned ULA) that all array-factor
// formulas consume.
double direction_cosine(const Position& from, const Position& to, const Vec3& axis);

// Rectangular grid over the area with spacing `grid_step`, both boundary rows
// forced so all four corners are present. A zero-size area yields one point.
std::vector<Position> area_grid(const TargetArea& area, double grid_step);

// Min/max direction cosine from the IRS over the area grid plus corners.
std::pair<double, double> spatial_freq_bounds(const TargetArea& area, const Position& irs,
                                              const Vec3& axis, double grid_step);

// Places `num_aps` APs on the circle of radius `radius` around the IRS ground
// projection (z = 0) so that the direction cosine from the IRS to AP j equals
// phi_r1 + j * delta_s_initial / num_aps, j = 0..num_aps-1.
std::vector<Position> place_aps_uniform(int num_aps, double phi_r1, double delta_s_initial,
                                        double radius, const Position& irs, const Vec3& axis);

// K contiguous equal-width bands tiling [phi_min, phi_max] of the area.
std::vector<SubareaBand> partition_area_uniform(const TargetArea& area, const Position& irs,
                                                const Vec3& axis, int num_bands,
                                                double grid_step);

// Index of the band containing `phi`; boundary ties go to the lower index.
int band_index(std::span<const SubareaBand> bands, double phi);

} // namespace irsplan
