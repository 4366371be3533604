#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "htclag/cases.hpp"
#include "test_support.hpp"

using namespace htclag;
using namespace htclag_test;

namespace {

const IdealGas gas{1.4, 1.0};

/// Entropy chosen so the sound speed is exactly `a` at tau = 1.
double entropy_for_sound_speed(double a) {
    const double eps = a * a / (gas.gamma * (gas.gamma - 1.0));
    return gas.cv * std::log(eps * (gas.gamma - 1.0));
}

} // namespace

TEST_CASE("CFL time step") {
    // single triangle of area 0.5, sound speed 1, CFL 0.4 -> dt = 0.2
    MeshInput in;
    in.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    in.cells = {{0, 1, 2}};
    SimOptions opt;
    Simulation sim(build_mesh(in), gas, opt);
    sim.fields.resize(1);
    sim.fields.tau[0] = 1.0;
    sim.fields.S[0] = entropy_for_sound_speed(1.0);
    sim.masses.m = {0.5};
    CHECK(sim.compute_dt() == doctest::Approx(0.2).epsilon(1e-12));

    // two cells with |omega|/a = 0.5 and 0.1: the minimum rules
    MeshInput in2;
    in2.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    in2.cells = {{0, 1, 2}, {1, 3, 2}};
    Simulation sim2(build_mesh(in2), gas, opt);
    sim2.fields.resize(2);
    sim2.fields.tau = {1.0, 1.0};
    sim2.fields.S = {entropy_for_sound_speed(1.0), entropy_for_sound_speed(5.0)};
    sim2.masses.m = {0.5, 0.5};
    CHECK(sim2.compute_dt() == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("uniform state is a fixed point of the full step") {
    RectMeshSpec spec;
    spec.nx = spec.ny = 4;
    spec.periodic_x = spec.periodic_y = true;
    SimOptions opt;
    opt.detector.mode = DetectorMode::AlwaysEcl;
    Simulation sim(build_mesh(generate_rect_mesh(spec)), gas, opt);
    sim.initialize([](Vec2) { return 1.0; }, [](Vec2) { return Vec2{}; },
                   [](Vec2) { return 1.0; });
    const Fields before = sim.fields;
    const auto pos_before = sim.mesh.pos;
    sim.advance(sim.compute_dt());
    for (int c = 0; c < sim.mesh.n_cells(); ++c) {
        CHECK(sim.fields.tau[c] == before.tau[c]);
        CHECK(sim.fields.vx[c] == before.vx[c]);
        CHECK(sim.fields.S[c] == before.S[c]);
    }
    for (int n = 0; n < sim.mesh.n_nodes(); ++n) {
        CHECK(sim.mesh.pos[n].x == pos_before[n].x);
        CHECK(sim.mesh.pos[n].y == pos_before[n].y);
    }
}

TEST_CASE("rigid translation moves every node by v dt exactly") {
    RectMeshSpec spec;
    spec.nx = spec.ny = 4;
    spec.periodic_x = spec.periodic_y = true;
    SimOptions opt;
    opt.detector.mode = DetectorMode::AlwaysEcl;
    Simulation sim(build_mesh(generate_rect_mesh(spec)), gas, opt);
    const Vec2 v0{0.7, -0.3};
    sim.initialize([](Vec2) { return 1.0; }, [v0](Vec2) { return v0; },
                   [](Vec2) { return 1.0; });
    const auto pos_before = sim.mesh.pos;
    const Fields before = sim.fields;
    const double dt = sim.compute_dt();
    sim.advance(dt);
    for (int d = 0; d < sim.mesh.n_dofs(); ++d) {
        const int n = sim.mesh.dof_nodes[d];
        CHECK(sim.mesh.pos[n].x == doctest::Approx(pos_before[n].x + v0.x * dt).epsilon(1e-15));
        CHECK(sim.mesh.pos[n].y == doctest::Approx(pos_before[n].y + v0.y * dt).epsilon(1e-15));
    }
    for (int c = 0; c < sim.mesh.n_cells(); ++c) CHECK(sim.fields.tau[c] == before.tau[c]);
    CHECK(sim.gcl_audit() < 1e-14);
}

TEST_CASE("vortex step: tiny energy drift and fourth-order GCL") {
    TestCase tc = make_vortex_case(0.45);
    SimOptions opt;
    opt.detector.mode = DetectorMode::AlwaysEcl;

    SUBCASE("one step energy drift") {
        Simulation sim(build_mesh(tc.mesh_input), gas, opt);
        tc.initialize(sim);
        const double e0 = total_energy(sim.fields, sim.masses, gas);
        sim.advance(sim.compute_dt());
        const double e1 = total_energy(sim.fields, sim.masses, gas);
        CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-10);
    }

    SUBCASE("GCL mismatch decays at fourth order in dt") {
        double mismatch[3];
        const double base_dt = 0.02;
        for (int lev = 0; lev < 3; ++lev) {
            Simulation sim(build_mesh(tc.mesh_input), gas, opt);
            tc.initialize(sim);
            const double dt = base_dt / (1 << lev);
            const int steps = 4 * (1 << lev);
            for (int s = 0; s < steps; ++s) sim.advance(dt);
            mismatch[lev] = sim.gcl_audit();
        }
        CHECK(mismatch[0] / mismatch[1] == doctest::Approx(16.0).epsilon(0.6));
        CHECK(mismatch[1] / mismatch[2] == doctest::Approx(16.0).epsilon(0.6));
        CHECK(mismatch[2] < 1e-8);
    }
}

TEST_CASE("run: zero final time echoes the initial state") {
    TestCase tc = make_vortex_case(0.8);
    SimOptions opt;
    Simulation sim(build_mesh(tc.mesh_input), gas, opt);
    tc.initialize(sim);
    const Fields before = sim.fields;
    const auto records = sim.run(0.0);
    CHECK(records.size() == 1);
    CHECK(sim.t == 0.0);
    for (int c = 0; c < sim.mesh.n_cells(); ++c) CHECK(sim.fields.tau[c] == before.tau[c]);
}

TEST_CASE("run hits output times exactly and keeps masses frozen") {
    TestCase tc = make_riemann_case(1, 1.0 / 12.0);
    SimOptions opt;
    opt.detector.mode = DetectorMode::Mood;
    Simulation sim(build_mesh(tc.mesh_input), gas, opt);
    tc.initialize(sim);
    const std::vector<double> masses_before = sim.masses.m;

    std::vector<double> hit;
    const auto records = sim.run(0.02, {0.007, 0.013},
                                 [&](const Simulation& s, double t) { hit.push_back(s.t); });
    REQUIRE(hit.size() == 3); // two interior output times plus t_final
    CHECK(hit[0] == doctest::Approx(0.007).epsilon(1e-12));
    CHECK(hit[1] == doctest::Approx(0.013).epsilon(1e-12));
    CHECK(hit[2] == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(sim.masses.m == masses_before); // bit-identical over the run

    // records are monotone in t with finite diagnostics
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].t > records[i - 1].t);
        CHECK(std::isfinite(records[i].energy));
        CHECK(records[i].min_rho > 0.0);
    }
}

TEST_CASE("entropy is non-decreasing across accepted steps") {
    TestCase tc = make_riemann_case(1, 1.0 / 15.0);
    SimOptions opt;
    opt.detector.mode = DetectorMode::Mood;
    Simulation sim(build_mesh(tc.mesh_input), gas, opt);
    tc.initialize(sim);
    const auto records = sim.run(0.05);
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i].entropy >= records[i - 1].entropy - 1e-13);
    CHECK(sim.min_stage_dS >= 0.0);
}

TEST_CASE("determinism: identical configs give bitwise-identical trajectories") {
    auto run_once = [&](int threads) {
        TestCase tc = make_riemann_case(1, 1.0 / 15.0);
        SimOptions opt;
        opt.detector.mode = DetectorMode::Mood;
        opt.threads = threads;
        Simulation sim(build_mesh(tc.mesh_input), gas, opt);
        tc.initialize(sim);
        sim.run(0.03);
        return sim.fields;
    };
    const Fields a = run_once(1);
    const Fields b = run_once(1);
    const Fields c = run_once(2);
    CHECK(a.tau == b.tau);
    CHECK(a.vx == b.vx);
    CHECK(a.S == b.S);
    CHECK(a.tau == c.tau);  // independent of the thread count
    CHECK(a.vx == c.vx);
    CHECK(a.S == c.S);
}

TEST_CASE("global vacuum aborts the step computation") {
    MeshInput in;
    in.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    in.cells = {{0, 1, 2}};
    SimOptions opt;
    Simulation sim(build_mesh(in), gas, opt);
    sim.fields.resize(1);
    sim.fields.tau[0] = 1.0;
    sim.fields.S[0] = -1e6; // eps ~ 0: sound speed underflows to zero
    sim.masses.m = {0.5};
    CHECK_THROWS_AS(sim.compute_dt(), std::runtime_error);
}
