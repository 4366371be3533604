#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "htclag/detector.hpp"
#include "htclag/scheme.hpp"

namespace htclag {

struct StepRecord {
    double t = 0.0;
    double dt = 0.0;
    double energy = 0.0;
    double entropy = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
    double gcl = 0.0;
    int n_troubled = 0;
};

struct SimOptions {
    double cfl = 0.4;
    DetectorConfig detector;
    EvalOptions eval;
    int threads = 1;
    int max_dt_halvings = 2;
    int record_every = 1;    // step-record cadence; validity checks stay per-step
    double rate_limit = 0.05; // cap on the relative tau/eps change per step
};

/// Driver: CFL step control, classical RK4 on cell states and node positions,
/// troubled-cell handling and per-step conservation bookkeeping.
class Simulation {
public:
    Simulation(Mesh mesh_, IdealGas gas_, SimOptions opt_);

    Mesh mesh;
    CornerGeometry geom;
    Fields fields;
    MassField masses;
    IdealGas gas;
    SimOptions opt;

    std::vector<double> beta; // blend field of the last accepted step
    double t = 0.0;
    long step_count = 0;
    double min_stage_dS = 0.0;    // most negative per-cell dS/dt seen in accepted stages
    long fallback_nodes = 0;      // total singular nodal solves over the run
    long troubled_steps = 0;      // steps that needed a MOOD recompute

    /// Sample primitive fields at barycenters; masses fixed here.
    void initialize(const std::function<double(Vec2)>& rho, const std::function<Vec2(Vec2)>& vel,
                    const std::function<double(Vec2)>& p);

    /// CFL time step cfl * min_c |omega_c| / a_c over cells with a_c > 0.
    double compute_dt();

    /// One accepted step of size at most dt (halved when a stage tangles the
    /// mesh outside MOOD mode). Returns the actually advanced dt.
    double advance(double dt);

    /// Run until t_final, clipping dt to land exactly on every requested
    /// output time; on_output fires at each of them (and at t_final).
    std::vector<StepRecord> run(double t_final, std::vector<double> output_times = {},
                                const std::function<void(const Simulation&, double)>& on_output = {});

    /// max_c |m_c tau_c - |omega_c|| / |omega_c| at the current state.
    double gcl_audit();

    StepRecord make_record(double dt, int n_troubled);

    /// Semi-discrete rates at the current state for a given blend field;
    /// audit/analysis entry point.
    bool evaluate(const std::vector<double>& beta_field, Rates& out, EvalDiag& diag);

private:
    struct StateVec {
        Fields f;
        std::vector<double> px, py; // dof positions
    };

    void load_state(StateVec& dst) const;
    void apply_state(const StateVec& src);
    static void saxpy(StateVec& y, const StateVec& y0, double a, const Rates& k);

    /// Full RK4 step into `candidate`; dt may be reduced by the stiffness
    /// cap. False when a stage or the final state is inadmissible; bad cells
    /// are collected in stage_bad_.
    bool rk4(double& dt, const std::vector<double>& beta_field, StateVec& candidate);

    double advance_fixed(double dt, const std::vector<double>& beta_field);
    double advance_mood(double dt);
    void commit(const StateVec& y, double dt, int n_troubled);

    ThermoCache thermo_;
    NodeData nodes_;
    Rates k1_, k2_, k3_, k4_;
    StateVec y0_, ywork_, ycand_;
    EvalDiag diag_;
    ThreadPool pool_;
    double last_dt_ = std::numeric_limits<double>::max();
    std::vector<double> eps0_;
    std::vector<int> stage_bad_;
    std::vector<int> mood_flags_; // sticky troubled cells, sorted
    std::vector<int> hysteresis_; // per-dof persistence of a priori flags
    double pass_min_dS_ = 0.0;
    int last_troubled_ = 0;
};

} // namespace htclag
