#pragma once

#include <string>

#include "htclag/detector.hpp"
#include "htclag/meshgen.hpp"
#include "htclag/reference1d.hpp"
#include "htclag/riemann.hpp"
#include "htclag/timeloop.hpp"

namespace htclag {

/// One of the built-in benchmark problems, fully specified: mesh, initial
/// state, final time and the detector it is normally run with.
struct TestCase {
    std::string name;
    MeshInput mesh_input;
    double t_final = 0.0;
    IdealGas gas{1.4, 1.0};
    DetectorConfig detector;
    std::function<void(Simulation&)> initialize;
};

/// Isentropic vortex on [0,10]^2, fully periodic, background (1,(1,1),1).
/// target_h is the characteristic size sqrt(|omega_c|).
TestCase make_vortex_case(double target_h);

/// Initial vortex primitive state at x.
void vortex_state(Vec2 x, double& rho, Vec2& v, double& p);

/// Exact vortex solution at time t: the initial field advected by (1,1),
/// wrapped periodically into [0,10]^2.
void vortex_exact(Vec2 x, double t, double& rho, Vec2& v, double& p);

/// Riemann problems RP1 (Sod), RP2 (Lax), RP3 (double rarefaction) on the
/// strip [-0.5,0.5] x [-0.05,0.05], y-periodic, x walls.
TestCase make_riemann_case(int which, double h = 1.0 / 200.0);
RiemannSide riemann_left(int which);
RiemannSide riemann_right(int which);
double riemann_t_final(int which);

/// Sedov blast on [0,1.2]^2 with walls at the axes. `edge` is the structured
/// quad edge length (the paper counts cells by edge size).
TestCase make_sedov_case(double edge = 0.03);
inline constexpr double sedov_energy = 0.244816;

/// Cylindrical expansion into vacuum on the quarter shell r in [0.1,1].
TestCase make_vacuum_case(int nr = 90, int nphi = 15);

/// 1D reference setups matching the cases above.
Ref1DSetup riemann_reference_setup(int which, int ncells);
Ref1DSetup sedov_reference_setup(int ncells);
Ref1DSetup vacuum_reference_setup(int ncells);

TestCase make_case(const std::string& name, double h);

} // namespace htclag
