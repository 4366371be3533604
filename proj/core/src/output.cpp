#include "htclag/output.hpp"

#include <fstream>
#include <stdexcept>

namespace htclag {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f.precision(16);
    return f;
}

} // namespace

void write_vtk(const std::string& path, const Mesh& mesh, const CornerGeometry& geom,
               const Fields& f, const IdealGas& gas, const std::vector<double>& beta) {
    std::ofstream out = open_out(path);
    const int nn = mesh.n_nodes();
    const int nc = mesh.n_cells();

    out << "# vtk DataFile Version 3.0\n";
    out << "htclag state\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nn << " double\n";
    for (const Vec2& x : mesh.pos) out << x.x << " " << x.y << " 0\n";
    out << "CELLS " << nc << " " << 4 * nc << "\n";
    for (const auto& c : mesh.cells) out << "3 " << c[0] << " " << c[1] << " " << c[2] << "\n";
    out << "CELL_TYPES " << nc << "\n";
    for (int c = 0; c < nc; ++c) out << "5\n";

    out << "CELL_DATA " << nc << "\n";
    auto scalars = [&](const std::string& name, auto&& value) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int c = 0; c < nc; ++c) out << value(c) << "\n";
    };
    scalars("rho", [&](int c) { return 1.0 / f.tau[c]; });
    scalars("p", [&](int c) { return evaluate(gas, f.tau[c], f.S[c]).p; });
    scalars("S", [&](int c) { return f.S[c]; });
    scalars("eps", [&](int c) { return internal_energy(gas, f.tau[c], f.S[c]); });
    scalars("beta", [&](int c) {
        double b = 0.0;
        for (int k = 0; k < 3; ++k)
            b = std::max(b, beta.empty() ? 0.0 : beta[mesh.dof_index[mesh.cells[c][k]]]);
        return b;
    });

    // nodal velocity: corner-weighted average of the adjacent cell velocities
    out << "POINT_DATA " << nn << "\n";
    out << "VECTORS velocity double\n";
    for (int n = 0; n < nn; ++n) {
        const int d = mesh.dof_index[n];
        double wsum = 0.0;
        Vec2 v{};
        for (int i = mesh.corner_start[d]; i < mesh.corner_start[d + 1]; ++i) {
            const int c = mesh.corner_cell[i];
            const double w = geom.at(c, mesh.corner_local[i]).lnorm;
            wsum += w;
            v += f.vel(c) * w;
        }
        if (wsum > 0.0) v *= 1.0 / wsum;
        out << v.x << " " << v.y << " 0\n";
    }
}

void write_records_csv(const std::string& path, const std::vector<StepRecord>& records) {
    std::ofstream out = open_out(path);
    out << "t,dt,E_tot,S_tot,min_rho,min_p,gcl,n_troubled\n";
    for (const StepRecord& r : records)
        out << r.t << "," << r.dt << "," << r.energy << "," << r.entropy << "," << r.min_rho
            << "," << r.min_p << "," << r.gcl << "," << r.n_troubled << "\n";
}

void write_scatter_csv(const std::string& path, const std::vector<ScatterRow>& rows) {
    std::ofstream out = open_out(path);
    out << "coordinate,rho,u,p,S,eps\n";
    for (const ScatterRow& r : rows)
        out << r.coord << "," << r.rho << "," << r.u << "," << r.p << "," << r.S << "," << r.eps
            << "\n";
}

void write_profile_csv(const std::string& path, const Ref1DResult& profile) {
    std::ofstream out = open_out(path);
    out << "coordinate,rho,u,p,S,eps\n";
    for (std::size_t i = 0; i < profile.r.size(); ++i)
        out << profile.r[i] << "," << profile.rho[i] << "," << profile.u[i] << "," << profile.p[i]
            << "," << profile.S[i] << "," << profile.eps[i] << "\n";
}

} // namespace htclag
