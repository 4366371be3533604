#pragma once

#include <vector>

#include "htclag/geometry.hpp"
#include "htclag/mesh.hpp"
#include "htclag/state.hpp"

namespace htclag {

enum class DetectorMode { APriori, Mood, AlwaysEcl, AlwaysEsl };

struct DetectorConfig {
    DetectorMode mode = DetectorMode::Mood;
    double kappa = 0.1;  // a priori compression threshold
    double delta = 0.05; // relaxation of the discrete maximum principle
};

/// A priori shock flag per node: 1 where the dual-cell velocity divergence
/// signals a compression stronger than kappa times the local sound speed.
std::vector<double> a_priori_detect(const Mesh& mesh, const CornerGeometry& geom,
                                    const Fields& f, const ThermoCache& thermo, double kappa);

/// A posteriori admissibility of a candidate step: flags cells with
/// non-finite values, nonpositive tau, negative pressure, or densities
/// violating the relaxed min/max of the previous state over the node-sharing
/// neighborhood. Neighborhoods whose range is below h_c^3 (relative) count
/// as plateaus and are exempt from the maximum principle, so uniform regions
/// do not flag on roundoff-scale ripples. cell_h holds sqrt(|omega_c|) of the
/// previous state. Returns flagged cell ids (sorted).
std::vector<int> mood_detect(const Mesh& mesh, const Fields& candidate, const Fields& previous,
                             const IdealGas& gas, double delta, const std::vector<double>& cell_h);

/// Nodal blending factors from flagged cells: a troubled cell receives full
/// dissipation from all its corners.
void beta_from_cell_flags(const Mesh& mesh, const std::vector<int>& flagged,
                          std::vector<double>& beta);

} // namespace htclag
