#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "htclag/vec2.hpp"

namespace htclag {

/// Ideal-gas complete equation of state eps(tau, S).
///
/// All thermodynamics derive from the potential
///   eps = exp(S/c_v) / (tau^(gamma-1) (gamma-1)),
/// so p = (gamma-1) eps / tau, theta = eps / c_v and a = sqrt(gamma p tau)
/// are strictly positive whenever tau > 0 and S is finite.
struct IdealGas {
    double gamma = 1.4;
    double cv = 1.0;

    IdealGas() = default;
    IdealGas(double gamma_, double cv_) : gamma(gamma_), cv(cv_) {
        if (!(gamma > 1.0)) throw std::invalid_argument("IdealGas: gamma must exceed 1");
        if (!(cv > 0.0)) throw std::invalid_argument("IdealGas: c_v must be positive");
    }
};

/// Derived thermodynamic state at one (tau, S) point.
struct Thermo {
    double eps;   // specific internal energy
    double p;     // pressure
    double theta; // temperature
    double a;     // isentropic sound speed
};

inline double internal_energy(const IdealGas& g, double tau, double S) {
    if (!(tau > 0.0)) throw std::domain_error("internal_energy: tau must be positive");
    return std::exp(S / g.cv + (1.0 - g.gamma) * std::log(tau)) / (g.gamma - 1.0);
}

inline Thermo evaluate(const IdealGas& g, double tau, double S) {
    const double eps = internal_energy(g, tau, S);
    const double p = (g.gamma - 1.0) * eps / tau;
    const double theta = eps / g.cv;
    const double a = std::sqrt(g.gamma * (g.gamma - 1.0) * eps);
    return {eps, p, theta, a};
}

inline std::array<double, 2> pressure_temperature(const IdealGas& g, double tau, double S) {
    const Thermo t = evaluate(g, tau, S);
    return {t.p, t.theta};
}

inline double sound_speed(const IdealGas& g, double tau, double p) {
    if (!(tau > 0.0)) throw std::domain_error("sound_speed: tau must be positive");
    if (p < 0.0) throw std::domain_error("sound_speed: negative pressure");
    return std::sqrt(g.gamma * p * tau);
}

/// Inverse EOS: entropy of a (rho, p) primitive state, S = c_v ln(p tau^gamma).
inline double entropy_from_primitive(const IdealGas& g, double rho, double p) {
    if (!(rho > 0.0)) throw std::domain_error("entropy_from_primitive: rho must be positive");
    if (!(p > 0.0)) throw std::domain_error("entropy_from_primitive: p must be positive");
    return g.cv * (std::log(p) - g.gamma * std::log(rho));
}

/// Specific total energy E = eps + v^2/2.
inline double total_specific_energy(const IdealGas& g, double tau, Vec2 v, double S) {
    return internal_energy(g, tau, S) + 0.5 * v.norm2();
}

/// Dual variables of the energy potential, w = dE/d(tau, v, S) = (-p, v, theta).
inline std::array<double, 4> dual_energy(const IdealGas& g, double tau, Vec2 v, double S) {
    const Thermo t = evaluate(g, tau, S);
    if (!(t.theta > 0.0)) throw std::domain_error("dual_energy: non-positive temperature");
    return {-t.p, v.x, v.y, t.theta};
}

/// Dual variables of the entropy potential, w* = dS/d(tau, v, E) = (p, -v, 1)/theta.
inline std::array<double, 4> dual_entropy(const IdealGas& g, double tau, Vec2 v, double S) {
    const Thermo t = evaluate(g, tau, S);
    if (!(t.theta > 0.0)) throw std::domain_error("dual_entropy: non-positive temperature");
    return {t.p / t.theta, -v.x / t.theta, -v.y / t.theta, 1.0 / t.theta};
}

} // namespace htclag
