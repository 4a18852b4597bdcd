#include "irsplan/channel.hpp"

#include <cmath>
#include <numbers>

#include "irsplan/errors.hpp"

namespace irsplan {

double rician_los_fraction(double factor)
{
    if (std::isinf(factor))
        return 1.0;
    if (!(factor >= 0.0))
        throw contract_error("Rician factor must be >= 0");
    return factor / (factor + 1.0);
}

double ChannelParams::gamma1() const
{
    return rician_los_fraction(epsilon) * rician_los_fraction(delta);
}

double ChannelParams::gamma2() const { return 1.0 - gamma1(); }

void ChannelParams::validate() const
{
    if (!(epsilon >= 0.0) || !(delta >= 0.0))
        throw contract_error("ChannelParams: Rician factors must be >= 0");
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
        throw contract_error("ChannelParams: path-loss exponents must be finite");
    if (!(c0 > 0.0) || c0 > 1.0)
        throw contract_error("ChannelParams: c0 must be in (0, 1]");
    if (!(dbar > 0.0))
        throw contract_error("ChannelParams: dbar must be > 0");
    if (num_elements < 1 || num_antennas < 1)
        throw contract_error("ChannelParams: N and M must be >= 1");
}

double path_loss(double distance_m, double exponent, double c0)
{
    if (!(distance_m > 0.0))
        throw geometry_error("path_loss: distance must be > 0");
    return c0 * std::pow(distance_m, -exponent);
}

Eigen::VectorXcd los_steering(int count, double cosine, double dbar)
{
    if (count < 1)
        throw contract_error("los_steering: count must be >= 1");
    if (std::abs(cosine) > 1.0)
        throw contract_error("los_steering: |direction cosine| must be <= 1");
    Eigen::VectorXcd a(count);
    for (int n = 0; n < count; ++n) {
        const double phase = -2.0 * std::numbers::pi * n * dbar * cosine;
        a(n) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return a;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : gen_(seed) {}

RngStream RngStream::derive(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t ap_index)
{
    std::uint64_t s = master_seed;
    std::uint64_t mixed = splitmix64(s);
    s ^= (trial + 1) * 0xD1B54A32D192ED03ULL;
    mixed ^= splitmix64(s);
    s ^= (ap_index + 1) * 0x8CB92BA72F3D8DD7ULL;
    mixed ^= splitmix64(s);
    return RngStream(mixed);
}

double RngStream::uniform()
{
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> RngStream::complex_gaussian()
{
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

ChannelRealization sample_channel(const ChannelParams& params, const ScenarioGeometry& geometry,
                                  int ap_index, const Position& user_pos, RngStream& rng)
{
    params.validate();
    if (ap_index < 0 || ap_index >= static_cast<int>(geometry.aps.size()))
        throw contract_error("sample_channel: ap_index out of range");
    const Position& ap = geometry.aps[static_cast<std::size_t>(ap_index)];
    const int n = params.num_elements;
    const int m = params.num_antennas;

    const double rho1 = std::sqrt(path_loss(distance(ap, geometry.irs), params.alpha1, params.c0));
    const double rho2 = std::sqrt(path_loss(distance(geometry.irs, user_pos), params.alpha2, params.c0));

    const double omega = direction_cosine(geometry.irs, ap, geometry.irs_axis);
    const double phi = direction_cosine(geometry.irs, user_pos, geometry.irs_axis);
    const double ap_cos = direction_cosine(ap, geometry.irs, geometry.irs_axis);

    const Eigen::VectorXcd a_rx = los_steering(n, omega, params.dbar);
    const Eigen::VectorXcd a_user = los_steering(n, phi, params.dbar);
    const Eigen::VectorXcd a_ap = los_steering(m, ap_cos, params.dbar);

    const double wlos_g = std::sqrt(rician_los_fraction(params.delta));
    const double wnlos_g = std::sqrt(1.0 - rician_los_fraction(params.delta));
    const double wlos_h = std::sqrt(rician_los_fraction(params.epsilon));
    const double wnlos_h = std::sqrt(1.0 - rician_los_fraction(params.epsilon));

    // Fixed draw order (G row-major, then h) keeps realizations reproducible.
    Eigen::MatrixXcd g_nlos(n, m);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c)
            g_nlos(r, c) = rng.complex_gaussian();
    Eigen::VectorXcd h_nlos(n);
    for (int r = 0; r < n; ++r)
        h_nlos(r) = rng.complex_gaussian();

    ChannelRealization ch;
    ch.G = rho1 * (wlos_g * (a_rx * a_ap.adjoint()) + wnlos_g * g_nlos);
    ch.h = rho2 * (wlos_h * a_user + wnlos_h * h_nlos);
    return ch;
}

} // namespace irsplan
