// Command-line driver for the thermodynamically compatible Lagrangian solver:
// single runs from a config file, the vortex convergence table, and the
// Riemann / Sedov / vacuum-expansion benchmarks with exact or high-resolution
// reference curves.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htclag/cases.hpp"
#include "htclag/config.hpp"
#include "htclag/norms.hpp"
#include "htclag/output.hpp"

namespace {

using namespace htclag;

struct CliOverrides {
    std::string scheme;   // empty = keep config/case default
    std::string detector; // empty = keep default
    double cfl = -1.0;
    double t_final = -1.0;
    double h = -1.0;
    int threads = 0;
    std::string output_dir;
    bool write_mesh = false;
};

void add_common_flags(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--scheme", ov.scheme, "ecl | esl | hybrid")
        ->check(CLI::IsMember({"ecl", "esl", "hybrid"}));
    cmd->add_option("--detector", ov.detector, "apriori | mood | off")
        ->check(CLI::IsMember({"apriori", "mood", "off"}));
    cmd->add_option("--cfl", ov.cfl, "CFL number (default 0.4)");
    cmd->add_option("--tf", ov.t_final, "final time override");
    cmd->add_option("--mesh-h", ov.h, "characteristic mesh size override");
    cmd->add_option("--threads", ov.threads, "worker threads (default 1)");
    cmd->add_option("--output", ov.output_dir, "output directory");
    cmd->add_flag("--write-mesh", ov.write_mesh, "save the generated mesh file");
}

RunConfig apply_overrides(RunConfig cfg, const CliOverrides& ov) {
    if (!ov.scheme.empty()) cfg.scheme = ov.scheme;
    if (!ov.detector.empty()) cfg.detector = ov.detector;
    if (ov.cfl > 0.0) cfg.cfl = ov.cfl;
    if (ov.t_final >= 0.0) cfg.t_final = ov.t_final;
    if (ov.h > 0.0) cfg.mesh_h = ov.h;
    if (ov.threads > 0) cfg.threads = ov.threads;
    if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
    return cfg;
}

std::unique_ptr<Simulation> make_simulation(const TestCase& tc, const RunConfig& cfg) {
    SimOptions opt;
    opt.cfl = cfg.cfl;
    opt.detector = tc.detector;
    opt.detector.mode = resolve_mode(cfg);
    opt.detector.kappa = cfg.kappa;
    opt.detector.delta = cfg.delta;
    opt.eval.ecl_guard = cfg.ecl_guard;
    opt.threads = cfg.threads;
    Mesh mesh = cfg.mesh_file.empty() ? build_mesh(tc.mesh_input)
                                      : build_mesh(read_mesh_file(cfg.mesh_file));
    auto sim = std::make_unique<Simulation>(std::move(mesh), IdealGas(cfg.gamma, cfg.cv), opt);
    tc.initialize(*sim);
    return sim;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    const std::string dir = resolve_output_dir(cfg);
    std::filesystem::create_directories(dir);
    return dir + "/" + name;
}

/// Exact Riemann curve sampled on a fine grid, in scatter-file layout.
std::vector<ScatterRow> exact_riemann_rows(int which, double t, const IdealGas& gas) {
    const ExactRiemann ex(riemann_left(which), riemann_right(which), gas.gamma);
    std::vector<ScatterRow> rows;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double x = -0.5 + i / static_cast<double>(n);
        const auto s = ex.sample(x / t);
        ScatterRow r;
        r.coord = x;
        r.rho = s.rho;
        r.u = s.u;
        r.p = s.p;
        r.S = s.rho > 0.0 && s.p > 0.0 ? entropy_from_primitive(gas, s.rho, s.p) : 0.0;
        r.eps = s.rho > 0.0 ? s.p / ((gas.gamma - 1.0) * s.rho) : 0.0;
        rows.push_back(r);
    }
    return rows;
}

int run_case(const RunConfig& cfg, ProfileAxis axis, bool write_exact_rp = false,
             int which_rp = 0, int reference_cells = 0, bool write_mesh = false) {
    TestCase tc = make_case(cfg.test_case, cfg.mesh_h);
    tc.gas = IdealGas(cfg.gamma, cfg.cv);
    RunConfig effective = cfg;
    if (effective.t_final < 0.0) effective.t_final = tc.t_final;
    if (write_mesh)
        write_mesh_file(out_path(effective, cfg.test_case + ".htclag-mesh"), tc.mesh_input);

    auto sim_ptr = make_simulation(tc, effective);
    Simulation& sim = *sim_ptr;
    const std::string tag = cfg.test_case + "_" + cfg.scheme;

    std::vector<double> frames = effective.output_times;
    auto on_output = [&](const Simulation& s, double tt) {
        if (!effective.vtk) return;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s_t%.6f.vtk", tag.c_str(), tt);
        write_vtk(out_path(effective, buf), s.mesh, s.geom, s.fields, s.gas, s.beta);
    };
    const auto records = sim.run(effective.t_final, frames, on_output);

    if (effective.csv) {
        write_records_csv(out_path(effective, tag + "_records.csv"), records);
        write_scatter_csv(out_path(effective, tag + "_scatter.csv"),
                          scatter_profile(sim.mesh, sim.geom, sim.fields, sim.gas, axis));
        if (write_exact_rp)
            write_scatter_csv(out_path(effective, tag + "_exact.csv"),
                              exact_riemann_rows(which_rp, effective.t_final, sim.gas));
        if (reference_cells > 0) {
            Ref1DSetup setup;
            if (cfg.test_case == "sedov")
                setup = sedov_reference_setup(reference_cells);
            else if (cfg.test_case == "vacuum")
                setup = vacuum_reference_setup(reference_cells);
            else
                setup = riemann_reference_setup(which_rp, reference_cells);
            setup.t_final = effective.t_final;
            write_profile_csv(out_path(effective, tag + "_reference.csv"),
                              run_reference1d(setup, sim.gas));
        }
    }
    if (effective.vtk)
        write_vtk(out_path(effective, tag + "_final.vtk"), sim.mesh, sim.geom, sim.fields,
                  sim.gas, sim.beta);

    std::printf("%s: %ld steps to t = %g, dE/E = %.3e, troubled steps = %ld\n", tag.c_str(),
                sim.step_count, sim.t,
                (records.back().energy - records.front().energy) / records.front().energy,
                sim.troubled_steps);
    return 0;
}

int run_convergence(int levels, const RunConfig& base) {
    const double table_h[] = {0.3254, 0.2490, 0.1654, 0.1283};
    std::vector<double> hs;
    for (int l = 0; l < levels; ++l)
        hs.push_back(l < 4 ? table_h[l] : table_h[3] * std::pow(0.5, l - 3));

    std::printf("%-10s %-12s %-6s %-12s %-6s %-12s %-6s\n", "h", "L2(rho)", "O", "L2(u)", "O",
                "L2(E)", "O");
    std::vector<double> h_eff, er, eu, ee;
    for (const double h : hs) {
        TestCase tc = make_vortex_case(h);
        RunConfig cfg = base;
        cfg.test_case = "vortex";
        if (cfg.t_final < 0.0) cfg.t_final = tc.t_final;
        auto sim_ptr = make_simulation(tc, cfg);
        Simulation& sim = *sim_ptr;
        sim.run(cfg.t_final);

        const double tf = cfg.t_final;
        const IdealGas gas = sim.gas;
        const L2Errors err = l2_error(
            sim.mesh, sim.geom, sim.fields, gas,
            [tf](Vec2 x) { double r; Vec2 v; double p; vortex_exact(x, tf, r, v, p); return r; },
            [tf](Vec2 x) { double r; Vec2 v; double p; vortex_exact(x, tf, r, v, p); return v.x; },
            [tf, gas](Vec2 x) {
                double r2;
                Vec2 v;
                double p;
                vortex_exact(x, tf, r2, v, p);
                return p / ((gas.gamma - 1.0) * r2) + 0.5 * v.norm2();
            });

        // characteristic size reported as the longest cell edge, the
        // convention the error tables are calibrated to
        double hmax = 0.0;
        for (int c = 0; c < sim.mesh.n_cells(); ++c)
            for (int k = 0; k < 3; ++k)
                hmax = std::max(hmax,
                                (sim.mesh.vertex(c, (k + 1) % 3) - sim.mesh.vertex(c, k)).norm());
        h_eff.push_back(hmax);
        er.push_back(err.rho);
        eu.push_back(err.u);
        ee.push_back(err.E);

        const std::size_t i = h_eff.size() - 1;
        if (i == 0) {
            std::printf("%-10.4e %-12.4e %-6s %-12.4e %-6s %-12.4e %-6s\n", h_eff[i], er[i], "-",
                        eu[i], "-", ee[i], "-");
        } else {
            std::printf("%-10.4e %-12.4e %-6.2f %-12.4e %-6.2f %-12.4e %-6.2f\n", h_eff[i], er[i],
                        convergence_order(er[i - 1], er[i], h_eff[i - 1], h_eff[i]), eu[i],
                        convergence_order(eu[i - 1], eu[i], h_eff[i - 1], h_eff[i]), ee[i],
                        convergence_order(ee[i - 1], ee[i], h_eff[i - 1], h_eff[i]));
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"htclag: thermodynamically compatible cell-centered Lagrangian hydrodynamics"};
    app.require_subcommand(1);

    // run <config>
    std::string config_path;
    CliOverrides run_ov;
    CLI::App* cmd_run = app.add_subcommand("run", "run a simulation from a config file");
    cmd_run->add_option("config", config_path, "key = value config file")->required();
    add_common_flags(cmd_run, run_ov);

    // convergence vortex --levels N
    CLI::App* cmd_conv = app.add_subcommand("convergence", "mesh refinement study");
    std::string conv_what = "vortex";
    int levels = 4;
    CliOverrides conv_ov;
    cmd_conv->add_option("problem", conv_what, "only 'vortex' is available")
        ->check(CLI::IsMember({"vortex"}));
    cmd_conv->add_option("--levels", levels, "number of meshes (default 4)")
        ->check(CLI::PositiveNumber);
    add_common_flags(cmd_conv, conv_ov);

    // riemann rp1|rp2|rp3
    CLI::App* cmd_rp = app.add_subcommand("riemann", "Riemann problem with exact overlay");
    std::string rp_name = "rp1";
    int rp_reference = 0;
    CliOverrides rp_ov;
    cmd_rp->add_option("problem", rp_name, "rp1 | rp2 | rp3")
        ->required()
        ->check(CLI::IsMember({"rp1", "rp2", "rp3"}));
    cmd_rp->add_option("--reference", rp_reference, "also emit a 1D reference with N cells");
    add_common_flags(cmd_rp, rp_ov);

    CLI::App* cmd_sedov = app.add_subcommand("sedov", "Sedov blast with radial scatter");
    int sedov_reference = 5000;
    CliOverrides sedov_ov;
    cmd_sedov->add_option("--reference", sedov_reference, "1D reference resolution (0 = off)");
    add_common_flags(cmd_sedov, sedov_ov);

    CLI::App* cmd_vac = app.add_subcommand("vacuum", "cylindrical expansion into vacuum");
    int vac_reference = 20000;
    CliOverrides vac_ov;
    cmd_vac->add_option("--reference", vac_reference, "1D reference resolution (0 = off)");
    add_common_flags(cmd_vac, vac_ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_run->parsed()) {
            RunConfig cfg = apply_overrides(load_config_file(config_path), run_ov);
            ProfileAxis axis = ProfileAxis::X;
            if (cfg.test_case == "sedov" || cfg.test_case == "vacuum") axis = ProfileAxis::Radial;
            const bool is_rp = cfg.test_case.rfind("rp", 0) == 0;
            return run_case(cfg, axis, is_rp, is_rp ? cfg.test_case[2] - '0' : 0, 0,
                            run_ov.write_mesh);
        }
        if (cmd_conv->parsed()) {
            RunConfig cfg = apply_overrides(RunConfig{}, conv_ov);
            cfg.scheme = conv_ov.scheme.empty() ? "ecl" : conv_ov.scheme;
            cfg.detector = "off";
            return run_convergence(levels, cfg);
        }
        if (cmd_rp->parsed()) {
            RunConfig cfg = apply_overrides(RunConfig{}, rp_ov);
            cfg.test_case = rp_name;
            if (cfg.scheme.empty()) cfg.scheme = "hybrid";
            return run_case(cfg, ProfileAxis::X, true, rp_name[2] - '0', rp_reference,
                            rp_ov.write_mesh);
        }
        if (cmd_sedov->parsed()) {
            RunConfig cfg = apply_overrides(RunConfig{}, sedov_ov);
            cfg.test_case = "sedov";
            cfg.detector = sedov_ov.detector.empty() ? "apriori" : sedov_ov.detector;
            return run_case(cfg, ProfileAxis::Radial, false, 0, sedov_reference,
                            sedov_ov.write_mesh);
        }
        if (cmd_vac->parsed()) {
            RunConfig cfg = apply_overrides(RunConfig{}, vac_ov);
            cfg.test_case = "vacuum";
            cfg.scheme = vac_ov.scheme.empty() ? "ecl" : vac_ov.scheme;
            return run_case(cfg, ProfileAxis::Radial, false, 0, vac_reference,
                            vac_ov.write_mesh);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "htclag: %s\n", e.what());
        return 1;
    }
    return 0;
}
