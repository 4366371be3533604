#include "htclag/cases.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace htclag {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kVortexBeta = 5.0;

double wrap(double x, double lo, double hi) {
    const double L = hi - lo;
    double y = std::fmod(x - lo, L);
    if (y < 0.0) y += L;
    return y + lo;
}

} // namespace

void vortex_state(Vec2 x, double& rho, Vec2& v, double& p) {
    const double gamma = 1.4;
    const double dx = x.x - 5.0;
    const double dy = x.y - 5.0;
    const double r2 = dx * dx + dy * dy;
    const double dT = -(gamma - 1.0) * kVortexBeta * kVortexBeta /
                      (8.0 * gamma * kPi * kPi) * std::exp(1.0 - r2);
    const double T = 1.0 + dT;
    const double swirl = kVortexBeta / (2.0 * kPi) * std::exp(0.5 * (1.0 - r2));
    rho = std::pow(T, 1.0 / (gamma - 1.0));
    p = std::pow(T, gamma / (gamma - 1.0));
    v = {1.0 - swirl * dy, 1.0 + swirl * dx};
}

void vortex_exact(Vec2 x, double t, double& rho, Vec2& v, double& p) {
    const Vec2 x0{wrap(x.x - t, 0.0, 10.0), wrap(x.y - t, 0.0, 10.0)};
    vortex_state(x0, rho, v, p);
}

TestCase make_vortex_case(double target_h) {
    TestCase tc;
    tc.name = "vortex";
    RectMeshSpec spec;
    spec.x0 = 0.0;
    spec.x1 = 10.0;
    spec.y0 = 0.0;
    spec.y1 = 10.0;
    // convergence-table sizing: target_h is the longest cell edge (the
    // convention that reproduces the reported cell counts and error levels),
    // so the quads have side target_h / sqrt(2)
    spec.h = 0.5 * target_h;
    spec.periodic_x = spec.periodic_y = true;
    tc.mesh_input = generate_rect_mesh(spec);
    tc.t_final = 1.0;
    tc.detector.mode = DetectorMode::AlwaysEcl; // smooth flow, no detection
    tc.initialize = [](Simulation& sim) {
        sim.initialize(
            [](Vec2 x) { double r; Vec2 v; double p; vortex_state(x, r, v, p); return r; },
            [](Vec2 x) { double r; Vec2 v; double p; vortex_state(x, r, v, p); return v; },
            [](Vec2 x) { double r; Vec2 v; double p; vortex_state(x, r, v, p); return p; });
    };
    return tc;
}

RiemannSide riemann_left(int which) {
    switch (which) {
        case 1: return {1.0, 0.0, 1.0};
        case 2: return {0.445, 0.698, 3.528};
        case 3: return {1.0, -2.0, 0.4};
    }
    throw std::invalid_argument("riemann_left: unknown problem");
}

RiemannSide riemann_right(int which) {
    switch (which) {
        case 1: return {0.125, 0.0, 0.1};
        case 2: return {0.5, 0.0, 0.571};
        case 3: return {1.0, 2.0, 0.4};
    }
    throw std::invalid_argument("riemann_right: unknown problem");
}

double riemann_t_final(int which) {
    switch (which) {
        case 1: return 0.20;
        case 2: return 0.14;
        case 3: return 0.15;
    }
    throw std::invalid_argument("riemann_t_final: unknown problem");
}

TestCase make_riemann_case(int which, double h) {
    TestCase tc;
    tc.name = "rp" + std::to_string(which);
    RectMeshSpec spec;
    spec.x0 = -0.5;
    spec.x1 = 0.5;
    spec.y0 = -0.05;
    spec.y1 = 0.05;
    spec.h = h;
    spec.periodic_y = true;
    spec.left.kind = BcKind::Wall;
    spec.right.kind = BcKind::Wall;
    tc.mesh_input = generate_rect_mesh(spec);
    tc.t_final = riemann_t_final(which);
    tc.detector.mode = DetectorMode::Mood;
    const RiemannSide L = riemann_left(which);
    const RiemannSide R = riemann_right(which);
    tc.initialize = [L, R](Simulation& sim) {
        sim.initialize([L, R](Vec2 x) { return x.x < 0.0 ? L.rho : R.rho; },
                       [L, R](Vec2 x) { return Vec2{x.x < 0.0 ? L.u : R.u, 0.0}; },
                       [L, R](Vec2 x) { return x.x < 0.0 ? L.p : R.p; });
    };
    return tc;
}

TestCase make_sedov_case(double edge) {
    TestCase tc;
    tc.name = "sedov";
    RectMeshSpec spec;
    spec.x0 = spec.y0 = 0.0;
    spec.x1 = spec.y1 = 1.2;
    spec.nx = spec.ny = std::max(1, static_cast<int>(std::lround(1.2 / edge)));
    spec.left.kind = BcKind::Wall;
    spec.bottom.kind = BcKind::Wall;
    spec.right = {BcKind::Pressure, 1e-6}; // transmissive ambient
    spec.top = {BcKind::Pressure, 1e-6};
    tc.mesh_input = generate_rect_mesh(spec);
    tc.t_final = 1.0;
    tc.detector.mode = DetectorMode::APriori;
    tc.initialize = [](Simulation& sim) {
        sim.initialize([](Vec2) { return 1.0; }, [](Vec2) { return Vec2{}; },
                       [](Vec2) { return 1e-6; });
        // concentrate the released energy in the cells touching the origin
        int origin_dof = -1;
        double best = std::numeric_limits<double>::max();
        for (int d = 0; d < sim.mesh.n_dofs(); ++d) {
            const double r2 = sim.mesh.pos[sim.mesh.dof_nodes[d]].norm2();
            if (r2 < best) {
                best = r2;
                origin_dof = d;
            }
        }
        double vol = 0.0;
        for (int i = sim.mesh.corner_start[origin_dof]; i < sim.mesh.corner_start[origin_dof + 1];
             ++i)
            vol += sim.geom.area[sim.mesh.corner_cell[i]];
        const double p_or = (sim.gas.gamma - 1.0) * 1.0 * sedov_energy / vol;
        for (int i = sim.mesh.corner_start[origin_dof]; i < sim.mesh.corner_start[origin_dof + 1];
             ++i) {
            const int c = sim.mesh.corner_cell[i];
            sim.fields.S[c] = entropy_from_primitive(sim.gas, 1.0, p_or);
        }
    };
    return tc;
}

TestCase make_vacuum_case(int nr, int nphi) {
    TestCase tc;
    tc.name = "vacuum";
    ShellMeshSpec spec;
    spec.r0 = 0.1;
    spec.r1 = 1.0;
    spec.phi0 = 0.0;
    spec.phi1 = 0.5 * kPi;
    spec.nr = nr;
    spec.nphi = nphi;
    spec.inner = {BcKind::Pressure, 0.0}; // free boundaries
    spec.outer = {BcKind::Pressure, 0.0};
    tc.mesh_input = generate_shell_mesh(spec);
    tc.t_final = 0.3;
    tc.detector.mode = DetectorMode::AlwaysEcl; // zero entropy production run
    // low ambient pressure: the inner escape front 2a/(gamma-1) must not
    // reach the axis before t_f, or the shell would degenerate
    tc.initialize = [](Simulation& sim) {
        sim.initialize([](Vec2) { return 1.0; }, [](Vec2) { return Vec2{}; },
                       [](Vec2) { return 1e-3; });
    };
    return tc;
}

Ref1DSetup riemann_reference_setup(int which, int ncells) {
    const RiemannSide L = riemann_left(which);
    const RiemannSide R = riemann_right(which);
    Ref1DSetup s;
    s.geometry = Geom1D::Planar;
    s.r = uniform_grid(-0.5, 0.5, ncells);
    s.rho.resize(ncells);
    s.u.resize(ncells);
    s.p.resize(ncells);
    for (int i = 0; i < ncells; ++i) {
        const double x = 0.5 * (s.r[i] + s.r[i + 1]);
        s.rho[i] = x < 0.0 ? L.rho : R.rho;
        s.u[i] = x < 0.0 ? L.u : R.u;
        s.p[i] = x < 0.0 ? L.p : R.p;
    }
    s.left = {true, 0.0};
    s.right = {true, 0.0};
    s.t_final = riemann_t_final(which);
    return s;
}

Ref1DSetup sedov_reference_setup(int ncells) {
    Ref1DSetup s;
    s.geometry = Geom1D::Cylindrical;
    s.r = uniform_grid(0.0, 1.2, ncells);
    s.rho.assign(ncells, 1.0);
    s.u.assign(ncells, 0.0);
    // softened ambient pressure: the shock Mach number at t = 1 stays above
    // 40, so the counter-pressure error in the profile is O(1e-3) while the
    // entropy-form front stiffness drops by orders of magnitude
    s.p.assign(ncells, 1e-4);
    // quadrant energy eps0 spread over pi/2 radians, deposited near the origin
    const double e_per_rad = sedov_energy / (0.5 * kPi);
    const double r_dep = std::max(s.r[1], 0.02);
    const double v_dep = 0.5 * r_dep * r_dep;
    for (int i = 0; i < ncells; ++i)
        if (s.r[i + 1] <= r_dep * (1.0 + 1e-12)) s.p[i] = (1.4 - 1.0) * e_per_rad / v_dep;
    s.left = {true, 0.0};
    s.right = {false, 1e-4};
    s.t_final = 1.0;
    s.rate_limit = 0.04;
    return s;
}

Ref1DSetup vacuum_reference_setup(int ncells) {
    Ref1DSetup s;
    s.geometry = Geom1D::Cylindrical;
    s.r = uniform_grid(0.1, 1.0, ncells);
    s.rho.assign(ncells, 1.0);
    s.u.assign(ncells, 0.0);
    s.p.assign(ncells, 1e-3);
    s.left = {false, 0.0};
    s.right = {false, 0.0};
    s.t_final = 0.3;
    return s;
}

TestCase make_case(const std::string& name, double h) {
    if (name == "vortex") return make_vortex_case(h > 0.0 ? h : 0.1283);
    if (name == "rp1") return make_riemann_case(1, h > 0.0 ? h : 1.0 / 200.0);
    if (name == "rp2") return make_riemann_case(2, h > 0.0 ? h : 1.0 / 200.0);
    if (name == "rp3") return make_riemann_case(3, h > 0.0 ? h : 1.0 / 200.0);
    if (name == "sedov") return make_sedov_case(h > 0.0 ? h : 0.03);
    if (name == "vacuum") return make_vacuum_case();
    throw std::invalid_argument("make_case: unknown test case " + name);
}

} // namespace htclag
