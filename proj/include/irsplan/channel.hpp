#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "irsplan/geometry.hpp"

namespace irsplan {

// Rician channel model parameters. Rician factors are linear scale here;
// +infinity selects the pure line-of-sight limit. dB conversion happens only
// at the CLI boundary.
struct ChannelParams {
    double epsilon{0.0}; // Rician factor of the IRS-user link
    double delta{0.0};   // Rician factor of the AP-IRS link
    double alpha1{2.0};  // path-loss exponent, AP-IRS
    double alpha2{2.0};  // path-loss exponent, IRS-user
    double c0{1e-4};     // reference power gain at 1 m, linear
    double dbar{0.5};    // element spacing over wavelength
    int num_elements{1}; // N, IRS elements
    int num_antennas{1}; // M, AP antennas

    double gamma1() const; // eps*delta / ((eps+1)(delta+1)), in [0,1]
    double gamma2() const; // 1 - gamma1
    void validate() const; // throws contract_error on bad fields
};

struct ChannelRealization {
    Eigen::MatrixXcd G; // N x M, AP -> IRS
    Eigen::VectorXcd h; // N, IRS -> user
};

// x/(x+1) with the +infinity limit mapping to 1.
double rician_los_fraction(double factor);

// c0 * distance^(-exponent); a power gain, use its square root for amplitudes.
double path_loss(double distance_m, double exponent, double c0);

// Element n (1-indexed) is exp(-i*2*pi*(n-1)*dbar*direction_cosine).
Eigen::VectorXcd los_steering(int count, double cosine, double dbar);

// Deterministic complex-Gaussian stream. Draws are reproducible across
// platforms: raw mt19937_64 output is mapped to (0,1] uniforms and turned into
// CN(0,1) samples without implementation-defined distributions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);
    // Independent stream for (master seed, trial, ap); different tuples give
    // decorrelated streams so trials may run in any order.
    static RngStream derive(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t ap_index);

    double uniform();                         // (0, 1]
    std::complex<double> complex_gaussian();  // CN(0,1), E|z|^2 = 1

private:
    std::mt19937_64 gen_;
};

// One Rician fading draw of (G_j, h(u)). LoS parts are steering-vector outer
// products from the true positions; NLoS entries are i.i.d. CN(0,1).
ChannelRealization sample_channel(const ChannelParams& params, const ScenarioGeometry& geometry,
                                  int ap_index, const Position& user_pos, RngStream& rng);

} // namespace irsplan
