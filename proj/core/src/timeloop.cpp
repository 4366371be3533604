#include "htclag/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace htclag {

namespace {

std::string cell_diag(const Mesh& mesh, const Fields& f, const std::vector<int>& cells) {
    std::string s;
    const int n = std::min<int>(4, static_cast<int>(cells.size()));
    for (int i = 0; i < n; ++i) {
        const int c = cells[i];
        s += " cell " + std::to_string(c) + " (tau=" + std::to_string(f.tau[c]) + ")";
    }
    if (static_cast<int>(cells.size()) > n) s += " ...";
    return s;
}

} // namespace

Simulation::Simulation(Mesh mesh_, IdealGas gas_, SimOptions opt_)
    : mesh(std::move(mesh_)), gas(gas_), opt(opt_), pool_(opt_.threads) {
    mesh.sync_images();
    if (!geom.update(mesh))
        throw std::invalid_argument("Simulation: initial mesh has nonpositive cell areas");
    beta.assign(mesh.n_dofs(), 0.0);
}

void Simulation::initialize(const std::function<double(Vec2)>& rho,
                            const std::function<Vec2(Vec2)>& vel,
                            const std::function<double(Vec2)>& p) {
    init_from_primitive(mesh, geom, rho, vel, p, gas, fields, masses);
}

double Simulation::compute_dt() {
    thermo_.update(fields, gas);
    double m = std::numeric_limits<double>::max();
    bool any = false;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const double a = thermo_.a[c];
        if (!(a > 0.0)) continue; // vacuum cells do not constrain the step
        any = true;
        m = std::min(m, geom.area[c] / a);
    }
    if (!any) throw std::runtime_error("compute_dt: global vacuum, no acoustic time scale");
    return opt.cfl * m;
}

void Simulation::load_state(StateVec& dst) const {
    dst.f = fields;
    const int nd = mesh.n_dofs();
    dst.px.resize(nd);
    dst.py.resize(nd);
    for (int d = 0; d < nd; ++d) {
        const Vec2 x = mesh.pos[mesh.dof_nodes[d]];
        dst.px[d] = x.x;
        dst.py[d] = x.y;
    }
}

void Simulation::apply_state(const StateVec& src) {
    fields = src.f;
    for (int d = 0; d < mesh.n_dofs(); ++d)
        mesh.pos[mesh.dof_nodes[d]] = {src.px[d], src.py[d]};
    mesh.sync_images();
}

void Simulation::saxpy(StateVec& y, const StateVec& y0, double a, const Rates& k) {
    const int nc = static_cast<int>(y0.f.tau.size());
    y.f.tau.resize(nc);
    y.f.vx.resize(nc);
    y.f.vy.resize(nc);
    y.f.S.resize(nc);
    for (int c = 0; c < nc; ++c) {
        y.f.tau[c] = y0.f.tau[c] + a * k.dtau[c];
        y.f.vx[c] = y0.f.vx[c] + a * k.dvx[c];
        y.f.vy[c] = y0.f.vy[c] + a * k.dvy[c];
        y.f.S[c] = y0.f.S[c] + a * k.dS[c];
    }
    const int nd = static_cast<int>(y0.px.size());
    y.px.resize(nd);
    y.py.resize(nd);
    for (int d = 0; d < nd; ++d) {
        y.px[d] = y0.px[d] + a * k.ux[d];
        y.py[d] = y0.py[d] + a * k.uy[d];
    }
}

bool Simulation::evaluate(const std::vector<double>& beta_field, Rates& out, EvalDiag& diag) {
    return eval_rates(mesh, geom, fields, masses, gas, beta_field, thermo_, nodes_, out, diag,
                      opt.eval, pool_);
}

bool Simulation::rk4(double& dt, const std::vector<double>& beta_field, StateVec& candidate) {
    stage_bad_.clear();
    pass_min_dS_ = 0.0;
    load_state(y0_);

    auto stage = [&](const StateVec& y, Rates& k) -> bool {
        // write stage geometry/fields into the working containers
        fields = y.f;
        for (int d = 0; d < mesh.n_dofs(); ++d)
            mesh.pos[mesh.dof_nodes[d]] = {y.px[d], y.py[d]};
        mesh.sync_images();
        const bool ok = eval_rates(mesh, geom, fields, masses, gas, beta_field, thermo_, nodes_,
                                   k, diag_, opt.eval, pool_);
        if (!ok)
            stage_bad_.insert(stage_bad_.end(), diag_.bad_cells.begin(), diag_.bad_cells.end());
        else
            pass_min_dS_ = std::min(pass_min_dS_, diag_.min_dS_rate);
        fallback_nodes += diag_.fallback_count;
        return ok;
    };

    bool ok = stage(y0_, k1_);
    if (ok) {
        // Stiffness cap from the first-stage rates: blast fronts sweeping a
        // cold background change tau and eps by decades within an acoustic
        // step, far too fast for the time integrator otherwise. The thermo
        // cache still holds the pre-step state here; keep a copy for the
        // post-step growth check below.
        double cap = std::numeric_limits<double>::max();
        eps0_ = thermo_.eps;
        for (int c = 0; c < mesh.n_cells(); ++c) {
            if (k1_.dtau[c] != 0.0)
                cap = std::min(cap, fields.tau[c] / std::abs(k1_.dtau[c]));
            const double deps = thermo_.theta[c] * k1_.dS[c] - thermo_.p[c] * k1_.dtau[c];
            if (deps != 0.0) cap = std::min(cap, thermo_.eps[c] / std::abs(deps));
        }
        dt = std::min(dt, opt.rate_limit * cap);
    }

    const int nc = mesh.n_cells();
    const int nd = mesh.n_dofs();
    candidate.f.resize(nc);
    candidate.px.resize(nd);
    candidate.py.resize(nd);

    // Entropy growth is irreversible, so an under-resolved step creates
    // energy that can never be removed; when the realized change outruns the
    // first-stage estimate the step is redone at half the size (k1 does not
    // depend on dt and is reused).
    for (int attempt = 0; ok && attempt < 40; ++attempt) {
        saxpy(ywork_, y0_, 0.5 * dt, k1_);
        ok = stage(ywork_, k2_);
        if (ok) {
            saxpy(ywork_, y0_, 0.5 * dt, k2_);
            ok = stage(ywork_, k3_);
        }
        if (ok) {
            saxpy(ywork_, y0_, dt, k3_);
            ok = stage(ywork_, k4_);
        }
        if (!ok) break;

        const double w = dt / 6.0;
        for (int c = 0; c < nc; ++c) {
            candidate.f.tau[c] = y0_.f.tau[c] +
                                 w * (k1_.dtau[c] + 2.0 * k2_.dtau[c] + 2.0 * k3_.dtau[c] + k4_.dtau[c]);
            candidate.f.vx[c] =
                y0_.f.vx[c] + w * (k1_.dvx[c] + 2.0 * k2_.dvx[c] + 2.0 * k3_.dvx[c] + k4_.dvx[c]);
            candidate.f.vy[c] =
                y0_.f.vy[c] + w * (k1_.dvy[c] + 2.0 * k2_.dvy[c] + 2.0 * k3_.dvy[c] + k4_.dvy[c]);
            candidate.f.S[c] =
                y0_.f.S[c] + w * (k1_.dS[c] + 2.0 * k2_.dS[c] + 2.0 * k3_.dS[c] + k4_.dS[c]);
        }
        for (int d = 0; d < nd; ++d) {
            candidate.px[d] =
                y0_.px[d] + w * (k1_.ux[d] + 2.0 * k2_.ux[d] + 2.0 * k3_.ux[d] + k4_.ux[d]);
            candidate.py[d] =
                y0_.py[d] + w * (k1_.uy[d] + 2.0 * k2_.uy[d] + 2.0 * k3_.uy[d] + k4_.uy[d]);
        }

        double rel = 0.0;
        for (int c = 0; c < nc; ++c) {
            const double tau = candidate.f.tau[c];
            if (!(tau > 0.0) || !std::isfinite(tau)) {
                rel = std::numeric_limits<double>::max();
                break;
            }
            rel = std::max(rel, std::abs(tau - y0_.f.tau[c]) / y0_.f.tau[c]);
            const double eps = internal_energy(gas, tau, candidate.f.S[c]);
            rel = std::max(rel, std::abs(eps - eps0_[c]) / eps0_[c]);
        }
        if (rel <= 5.0 * opt.rate_limit) break;
        dt *= 0.5;
        ok = true; // redo stages 2-4 at the smaller step
    }

    // restore the pre-step state regardless of outcome
    apply_state(y0_);
    return ok;
}

void Simulation::commit(const StateVec& y, double dt, int n_troubled) {
    apply_state(y);
    if (!geom.update(mesh))
        throw std::runtime_error("timeloop: accepted state has tangled mesh," +
                                 cell_diag(mesh, fields, geom.bad_cells));
    for (int c = 0; c < mesh.n_cells(); ++c)
        if (!(fields.tau[c] > 0.0) || !std::isfinite(fields.tau[c]))
            throw std::runtime_error("timeloop: accepted state has invalid specific volume," +
                                     cell_diag(mesh, fields, {c}));
    min_stage_dS = std::min(min_stage_dS, pass_min_dS_);
    t += dt;
    ++step_count;
    last_dt_ = dt;
    last_troubled_ = n_troubled;
}

double Simulation::advance_fixed(double dt, const std::vector<double>& beta_field) {
    double use = dt;
    for (int attempt = 0; attempt <= opt.max_dt_halvings; ++attempt) {
        if (rk4(use, beta_field, ycand_)) {
            bool valid = true;
            for (int c = 0; c < mesh.n_cells() && valid; ++c)
                valid = ycand_.f.tau[c] > 0.0 && std::isfinite(ycand_.f.tau[c]);
            if (valid) {
                beta = beta_field;
                int troubled = 0;
                for (int c = 0; c < mesh.n_cells(); ++c)
                    for (int k = 0; k < 3; ++k)
                        if (beta_field[mesh.dof_index[mesh.cells[c][k]]] > 0.0) {
                            ++troubled;
                            break;
                        }
                commit(ycand_, use, troubled);
                return use;
            }
        }
        use *= 0.5;
    }
    throw std::runtime_error("timeloop: step rejected after " +
                             std::to_string(opt.max_dt_halvings) + " halvings," +
                             cell_diag(mesh, fields, stage_bad_));
}

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> merged(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

double Simulation::advance_mood(double dt) {
    // The candidate runs with the flags detected during the previous step;
    // a recompute is needed only when new violations appear, so a steady
    // shock costs a single pass while staying dissipated.
    std::vector<double> b;
    beta_from_cell_flags(mesh, mood_flags_, b);
    bool ok = rk4(dt, b, ycand_);

    std::vector<int> detected;
    if (ok) {
        geom.update(mesh); // pre-step geometry for the neighborhood scales
        std::vector<double> cell_h(mesh.n_cells());
        for (int c = 0; c < mesh.n_cells(); ++c) cell_h[c] = std::sqrt(geom.area[c]);
        detected = mood_detect(mesh, ycand_.f, fields, gas, opt.detector.delta, cell_h);
    } else {
        detected = sorted_unique(stage_bad_);
    }

    if (!ok || !std::includes(mood_flags_.begin(), mood_flags_.end(), detected.begin(),
                              detected.end())) {
        mood_flags_ = merged(mood_flags_, detected);
        beta_from_cell_flags(mesh, mood_flags_, b);
        if (!rk4(dt, b, ycand_))
            throw std::runtime_error("timeloop: entropy-stable recompute failed," +
                                     cell_diag(mesh, fields, stage_bad_));
        ++troubled_steps;
    }
    beta = b;
    const int used = static_cast<int>(mood_flags_.size());
    commit(ycand_, dt, used);

    // flags for the next candidate: structural compression flags of the
    // accepted state plus any violations observed in this step
    thermo_.update(fields, gas);
    const std::vector<double> nodal = a_priori_detect(mesh, geom, fields, thermo_,
                                                      opt.detector.kappa);
    std::vector<int> structural;
    for (int c = 0; c < mesh.n_cells(); ++c)
        for (int k = 0; k < 3; ++k)
            if (nodal[mesh.dof_index[mesh.cells[c][k]]] > 0.0) {
                structural.push_back(c);
                break;
            }
    mood_flags_ = merged(structural, detected);
    return dt;
}

double Simulation::advance(double dt) {
    // gentle ramp from the last accepted step so the growth-based rejection
    // does not re-halve from the acoustic scale at every stiff-front step
    dt = std::min(dt, 1.25 * last_dt_);
    switch (opt.detector.mode) {
        case DetectorMode::AlwaysEcl:
            return advance_fixed(dt, std::vector<double>(mesh.n_dofs(), 0.0));
        case DetectorMode::AlwaysEsl:
            return advance_fixed(dt, std::vector<double>(mesh.n_dofs(), 1.0));
        case DetectorMode::APriori: {
            if (!geom.update(mesh))
                throw std::runtime_error("timeloop: tangled mesh before detection");
            thermo_.update(fields, gas);
            std::vector<double> b =
                a_priori_detect(mesh, geom, fields, thermo_, opt.detector.kappa);
            // temporal hysteresis: intermittent compression (hot bubbles,
            // oscillating fronts) must not toggle corners between the
            // schemes step by step, or the conservative phases ring and the
            // stable phases rectify the ringing into spurious entropy
            hysteresis_.resize(mesh.n_dofs(), 0);
            for (int d = 0; d < mesh.n_dofs(); ++d) {
                if (b[d] > 0.0)
                    hysteresis_[d] = 40;
                else if (hysteresis_[d] > 0) {
                    --hysteresis_[d];
                    b[d] = 1.0;
                }
            }
            return advance_fixed(dt, b);
        }
        case DetectorMode::Mood:
            return advance_mood(dt);
    }
    return 0.0;
}

double Simulation::gcl_audit() {
    geom.update(mesh);
    double worst = 0.0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const double vol = masses.m[c] * fields.tau[c];
        worst = std::max(worst, std::abs(vol - geom.area[c]) / geom.area[c]);
    }
    return worst;
}

StepRecord Simulation::make_record(double dt, int n_troubled) {
    thermo_.update(fields, gas);
    StepRecord r;
    r.t = t;
    r.dt = dt;
    r.energy = total_energy(fields, masses, gas);
    r.entropy = total_entropy(fields, masses);
    double min_rho = std::numeric_limits<double>::max();
    double min_p = std::numeric_limits<double>::max();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        min_rho = std::min(min_rho, 1.0 / fields.tau[c]);
        min_p = std::min(min_p, thermo_.p[c]);
    }
    r.min_rho = min_rho;
    r.min_p = min_p;
    r.gcl = gcl_audit();
    r.n_troubled = n_troubled;
    return r;
}

std::vector<StepRecord> Simulation::run(
    double t_final, std::vector<double> output_times,
    const std::function<void(const Simulation&, double)>& on_output) {
    std::sort(output_times.begin(), output_times.end());
    std::vector<StepRecord> records;
    records.push_back(make_record(0.0, 0));

    std::size_t next_out = 0;
    const double tol = 1e-12 * std::max(1.0, std::abs(t_final));
    while (next_out < output_times.size() && output_times[next_out] <= t + tol) {
        if (on_output) on_output(*this, output_times[next_out]);
        ++next_out;
    }

    while (t < t_final - tol) {
        double dt = compute_dt();
        double stop = t_final;
        if (next_out < output_times.size()) stop = std::min(stop, output_times[next_out]);
        if (t + dt > stop) dt = stop - t;
        const double used = advance(dt);
        if (opt.record_every <= 1 || step_count % opt.record_every == 0 || t >= t_final - tol)
            records.push_back(make_record(used, last_troubled_));
        while (next_out < output_times.size() && output_times[next_out] <= t + tol) {
            if (on_output) on_output(*this, output_times[next_out]);
            ++next_out;
        }
    }
    if (on_output) on_output(*this, t_final);
    return records;
}

} // namespace htclag
