#pragma once

#include <string>
#include <vector>

#include "htclag/norms.hpp"
#include "htclag/reference1d.hpp"
#include "htclag/timeloop.hpp"

namespace htclag {

/// Legacy ASCII VTK unstructured grid: triangle cells, cell data (rho, p, S,
/// eps, beta marker) and nodal velocity vectors.
void write_vtk(const std::string& path, const Mesh& mesh, const CornerGeometry& geom,
               const Fields& f, const IdealGas& gas, const std::vector<double>& beta);

/// Step history: t, dt, E_tot, S_tot, min_rho, min_p, gcl, n_troubled.
void write_records_csv(const std::string& path, const std::vector<StepRecord>& records);

/// Scatter rows with header (coordinate, rho, u, p, S, eps).
void write_scatter_csv(const std::string& path, const std::vector<ScatterRow>& rows);

/// 1D reference profile with the same header as the scatter files.
void write_profile_csv(const std::string& path, const Ref1DResult& profile);

} // namespace htclag
