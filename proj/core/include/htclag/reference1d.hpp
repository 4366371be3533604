#pragma once

#include <vector>

#include "htclag/eos.hpp"

namespace htclag {

enum class Geom1D { Planar, Cylindrical };

/// End condition of the 1D reference solver: impermeable wall or prescribed
/// pressure.
struct Bc1D {
    bool wall = true;
    double pb = 0.0;
};

/// Initial layout for the 1D Lagrangian reference run. Interfaces r (n+1
/// entries) and per-cell primitives (n entries).
struct Ref1DSetup {
    Geom1D geometry = Geom1D::Planar;
    std::vector<double> r;
    std::vector<double> rho, u, p;
    Bc1D left, right;
    double t_final = 0.0;
    double cfl = 0.4;
    // cap on the relative volume / internal-energy change per step; the
    // binding constraint at strong fronts, where it also sets the drift level
    double rate_limit = 0.1;
};

struct Ref1DResult {
    std::vector<double> r;   // cell center coordinates at t_final
    std::vector<double> rho, u, p, S, eps;
    double energy_drift = 0.0; // |E(t_f) - E(0) - boundary work| / |E(0)|
    long steps = 0;
};

/// First-order entropy-form Lagrangian solver with acoustic interface fluxes
/// and RK4 time integration; the high-resolution comparison curve for the
/// radially symmetric and planar test problems.
Ref1DResult run_reference1d(const Ref1DSetup& setup, const IdealGas& gas);

/// Uniform interface grid on [r0, r1].
std::vector<double> uniform_grid(double r0, double r1, int n);

} // namespace htclag
