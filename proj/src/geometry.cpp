#include "irsplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsplan/errors.hpp"

namespace irsplan {

Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

double distance(const Position& a, const Position& b) { return norm(a - b); }

Vec3 normalized(const Vec3& v)
{
    const double n = norm(v);
    if (!(n > 0.0))
        throw geometry_error("cannot normalize zero-length vector");
    return {v.x / n, v.y / n, v.z / n};
}

double direction_cosine(const Position& from, const Position& to, const Vec3& axis)
{
    const Vec3 d = to - from;
    const double n = norm(d);
    if (!(n > 0.0))
        throw geometry_error("direction_cosine: zero-length displacement");
    const double c = dot(d, axis) / n;
    // unit axis assumed; clamp rounding spill
    return std::clamp(c, -1.0, 1.0);
}

namespace {

// Closed samples of [lo, hi] at spacing `step`, exact endpoints.
std::vector<double> closed_samples(double lo, double hi, double step)
{
    if (!(step > 0.0))
        throw geometry_error("grid_step must be > 0");
    if (!(hi >= lo))
        throw geometry_error("closed_samples: hi < lo");
    std::vector<double> out;
    const double len = hi - lo;
    const auto n = static_cast<long>(std::floor(len / step + 1e-9));
    out.reserve(static_cast<std::size_t>(n) + 2);
    for (long i = 0; i <= n; ++i)
        out.push_back(lo + static_cast<double>(i) * step);
    if (out.back() < hi - 1e-9 * std::max(1.0, std::abs(hi)))
        out.push_back(hi);
    else
        out.back() = hi;
    return out;
}

} // namespace

std::vector<Position> area_grid(const TargetArea& area, double grid_step)
{
    if (area.length_x < 0.0 || area.width_y < 0.0)
        throw geometry_error("area extents must be >= 0");
    const double x0 = area.center.x - area.length_x / 2.0;
    const double x1 = area.center.x + area.length_x / 2.0;
    const double y0 = area.center.y - area.width_y / 2.0;
    const double y1 = area.center.y + area.width_y / 2.0;
    const auto xs = closed_samples(x0, x1, grid_step);
    const auto ys = closed_samples(y0, y1, grid_step);
    std::vector<Position> pts;
    pts.reserve(xs.size() * ys.size());
    for (double x : xs)
        for (double y : ys)
            pts.push_back({x, y, area.center.z});
    return pts;
}

std::pair<double, double> spatial_freq_bounds(const TargetArea& area, const Position& irs,
                                              const Vec3& axis, double grid_step)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    auto take = [&](const Position& p) {
        const double c = direction_cosine(irs, p, axis);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    };
    for (const Position& p : area_grid(area, grid_step))
        take(p);
    const double hx = area.length_x / 2.0, hy = area.width_y / 2.0;
    const Position c = area.center;
    take({c.x - hx, c.y - hy, c.z});
    take({c.x - hx, c.y + hy, c.z});
    take({c.x + hx, c.y - hy, c.z});
    take({c.x + hx, c.y + hy, c.z});
    return {lo, hi};
}

std::vector<Position> place_aps_uniform(int num_aps, double phi_r1, double delta_s_initial,
                                        double radius, const Position& irs, const Vec3& axis)
{
    if (num_aps < 1)
        throw contract_error("place_aps_uniform: num_aps must be >= 1");
    if (!(radius > 0.0))
        throw geometry_error("place_aps_uniform: radius must be > 0");
    if (delta_s_initial < 0.0)
        throw contract_error("place_aps_uniform: delta_s_initial must be >= 0");

    // Circle around the IRS ground projection keeps every AP at the same
    // distance to the IRS, so the AP-side path losses coincide.
    const Position center{irs.x, irs.y, 0.0};
    const double dist = std::hypot(radius, irs.z);
    const double r_xy = std::hypot(axis.x, axis.y);
    if (!(r_xy > 1e-12))
        throw placement_error("place_aps_uniform: axis has no horizontal component, "
                              "direction cosine cannot be adjusted on the circle");
    const double alpha = std::atan2(axis.y, axis.x);

    std::vector<Position> aps;
    aps.reserve(static_cast<std::size_t>(num_aps));
    for (int j = 0; j < num_aps; ++j) {
        const double omega = phi_r1 + static_cast<double>(j) * delta_s_initial / num_aps;
        if (std::abs(omega) > 1.0)
            throw placement_error("place_aps_uniform: target direction cosine outside [-1,1]");
        // dot(p - irs, axis)/dist = (radius*r_xy*cos(psi - alpha) - irs.z*axis.z)/dist = omega
        const double cos_arg = (omega * dist + irs.z * axis.z) / (radius * r_xy);
        if (std::abs(cos_arg) > 1.0 + 1e-12)
            throw placement_error("place_aps_uniform: direction cosine unreachable on circle");
        const double psi = alpha + std::acos(std::clamp(cos_arg, -1.0, 1.0));
        aps.push_back({center.x + radius * std::cos(psi), center.y + radius * std::sin(psi), 0.0});
    }
    return aps;
}

std::vector<SubareaBand> partition_area_uniform(const TargetArea& area, const Position& irs,
                                                const Vec3& axis, int num_bands, double grid_step)
{
    if (num_bands < 1)
        throw contract_error("partition_area_uniform: num_bands must be >= 1");
    const auto [phi_min, phi_max] = spatial_freq_bounds(area, irs, axis, grid_step);
    const double span = phi_max - phi_min;
    std::vector<SubareaBand> bands;
    bands.reserve(static_cast<std::size_t>(num_bands));
    double lo = phi_min;
    for (int k = 0; k < num_bands; ++k) {
        // shared boundaries, exact last endpoint
        const double hi = (k + 1 == num_bands)
                              ? phi_max
                              : phi_min + span * (static_cast<double>(k + 1) / num_bands);
        bands.push_back({lo, hi});
        lo = hi;
    }
    return bands;
}

int band_index(std::span<const SubareaBand> bands, double phi)
{
    if (bands.empty())
        throw contract_error("band_index: empty partition");
    for (std::size_t k = 0; k + 1 < bands.size(); ++k)
        if (phi <= bands[k].phi_hi)
            return static_cast<int>(k);
    return static_cast<int>(bands.size()) - 1;
}

} // namespace irsplan
