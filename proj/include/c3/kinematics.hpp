// System configuration (masses, charges, couplings), Jacobi coordinate
// sets for the three pairings, momentum bookkeeping and the asymptotic
// domain predicates.
#pragma once

#include <array>
#include <cmath>

#include "c3/numerics.hpp"

namespace c3 {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 hat() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};
inline Vec3 operator*(double c, const Vec3& v) { return v * c; }
inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

struct SystemConfig {
    std::array<double, 3> mass{1.0, 1.0, 1.0};
    std::array<double, 3> charge{0.0, 0.0, 0.0};

    bool equal_masses() const;
};

// Pair couplings alpha_l = sqrt(2 mu_ij) Z_i Z_j ({ijl} an even
// permutation) and the screen potentials alpha_eff.
struct Couplings {
    std::array<double, 3> alpha{};      // alpha_1..alpha_3, 1-based as [l-1]
    std::array<double, 3> alpha_eff{};  // per screen
    std::array<bool, 3> attractive{};   // alpha_l < 0
};
Couplings couplings(const SystemConfig& config);

// Configuration point in the pairing `pair_index`: x is the pair
// separation, y the spectator coordinate.
struct JacobiState {
    int pair_index = 1;  // 1..3
    Vec3 x, y;

    double hyper_radius2() const { return dot(x, x) + dot(y, y); }
};

// Same physical point expressed in the target pairing (equal masses only).
JacobiState to_pairing(const SystemConfig& config, const JacobiState& state,
                       int target_pair);

enum class Domain { Omega_mu, Omega_plus, Omega_munu };

struct DomainSpec {
    double mu = 0.6;
    double nu = 0.9;

    bool valid() const { return 0.5 < mu && mu < nu && nu < 1.0; }
};

// Membership of (x, y) magnitudes in the named asymptotic domain:
//   Omega_mu:   y^mu < x < y
//   Omega_plus: x <= y^nu
//   Omega_munu: y^mu < x < y^nu
bool in_domain(const JacobiState& state, const DomainSpec& spec, Domain which);

// Momentum-side bookkeeping for the pairing-1 frame: q = (k, p), E = q^2,
// per-pair momenta via the same rotations as the coordinates,
// Sommerfeld parameters and the combination b = eta_eff - omega.
struct Momenta {
    Vec3 k, p;
    double E = 0.0;
    std::array<Vec3, 3> k_pair{};
    std::array<Vec3, 3> p_pair{};
    std::array<double, 3> eta{};  // eta_j = alpha_j / (2 |k_j|)
    double omega = 0.0;           // eta_2 + eta_3
    double eta_eff = 0.0;         // alpha_eff(screen 1) / (2 |p|)
    double b = 0.0;               // eta_eff - omega

    // Channel momentum p'_n = sqrt(E + alpha_1^2 / (4 n^2)).
    double channel_momentum(int n, double alpha1) const {
        return std::sqrt(E + alpha1 * alpha1 / (4.0 * static_cast<double>(n) * n));
    }
};
Momenta make_momenta(const SystemConfig& config, const Vec3& k, const Vec3& p);

}  // namespace c3
