#include "htclag/reference1d.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "htclag/vec2.hpp"

namespace htclag {

namespace {

struct Work {
    std::vector<double> tau, u, S;     // cell states
    std::vector<double> r;             // interfaces
    std::vector<double> dtau, du, dS, dr;
    std::vector<double> p, theta, z, a; // thermo: z = rho a
    double work_rate = 0.0;             // boundary work of the last evaluation
};

double cell_volume(Geom1D g, double rl, double rr) {
    return g == Geom1D::Planar ? rr - rl : 0.5 * (rr * rr - rl * rl);
}

double face_area(Geom1D g, double r) { return g == Geom1D::Planar ? 1.0 : r; }

bool thermo_update(Work& w, const IdealGas& gas) {
    const int n = static_cast<int>(w.tau.size());
    const double gm1 = gas.gamma - 1.0;
    for (int i = 0; i < n; ++i) {
        if (!(w.tau[i] > 0.0)) return false;
        const double eps = std::exp(w.S[i] / gas.cv + (1.0 - gas.gamma) * std::log(w.tau[i])) / gm1;
        w.p[i] = gm1 * eps / w.tau[i];
        w.theta[i] = eps / gas.cv;
        const double a = std::sqrt(gas.gamma * gm1 * eps);
        w.a[i] = a;
        w.z[i] = a / w.tau[i];
    }
    return true;
}

// Acoustic interface values and entropy-form rates in fluctuation form; the
// geometric source of the cylindrical momentum equation is exactly the
// p_i sum(A n) closure term of the fluctuations.
bool eval(Work& w, const Ref1DSetup& s, const std::vector<double>& mass, const IdealGas& gas) {
    const int n = static_cast<int>(w.tau.size());
    if (!thermo_update(w, gas)) return false;

    std::vector<double>& dr = w.dr;
    std::vector<double> pstar(n + 1), vstar(n + 1);
    for (int k = 0; k <= n; ++k) {
        if (k == 0) {
            if (face_area(s.geometry, w.r[0]) == 0.0) {
                vstar[0] = 0.0;
                pstar[0] = w.p[0];
            } else if (s.left.wall) {
                vstar[0] = 0.0;
                pstar[0] = w.p[0] + w.z[0] * (0.0 - w.u[0]); // p - z n (v*-u), n = -1
            } else {
                vstar[0] = w.u[0] - (w.p[0] - s.left.pb) / w.z[0];
                pstar[0] = s.left.pb;
            }
        } else if (k == n) {
            if (s.right.wall) {
                vstar[n] = 0.0;
                pstar[n] = w.p[n - 1] - w.z[n - 1] * (0.0 - w.u[n - 1]);
            } else {
                vstar[n] = w.u[n - 1] + (w.p[n - 1] - s.right.pb) / w.z[n - 1];
                pstar[n] = s.right.pb;
            }
        } else {
            const double zl = w.z[k - 1], zr = w.z[k];
            vstar[k] = (zl * w.u[k - 1] + zr * w.u[k] + w.p[k - 1] - w.p[k]) / (zl + zr);
            pstar[k] = (zr * w.p[k - 1] + zl * w.p[k] - zl * zr * (w.u[k] - w.u[k - 1])) / (zl + zr);
        }
        dr[k] = vstar[k];
    }

    for (int i = 0; i < n; ++i) {
        const double Al = face_area(s.geometry, w.r[i]);
        const double Ar = face_area(s.geometry, w.r[i + 1]);
        const double inv_m = 1.0 / mass[i];
        w.dtau[i] = (Ar * vstar[i + 1] - Al * vstar[i]) * inv_m;
        w.du[i] = -(Ar * (pstar[i + 1] - w.p[i]) - Al * (pstar[i] - w.p[i])) * inv_m;
        const double jl = vstar[i] - w.u[i];
        const double jr = vstar[i + 1] - w.u[i];
        w.dS[i] = (Al * w.z[i] * jl * jl + Ar * w.z[i] * jr * jr) / w.theta[i] * inv_m;
    }

    w.work_rate = 0.0;
    if (!s.left.wall && face_area(s.geometry, w.r[0]) > 0.0)
        w.work_rate += face_area(s.geometry, w.r[0]) * pstar[0] * vstar[0];
    if (!s.right.wall)
        w.work_rate -= face_area(s.geometry, w.r[n]) * pstar[n] * vstar[n];
    return true;
}

} // namespace

std::vector<double> uniform_grid(double r0, double r1, int n) {
    std::vector<double> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = r0 + (r1 - r0) * static_cast<double>(k) / n;
    return r;
}

Ref1DResult run_reference1d(const Ref1DSetup& setup, const IdealGas& gas) {
    const int n = static_cast<int>(setup.rho.size());
    if (static_cast<int>(setup.r.size()) != n + 1)
        throw std::invalid_argument("run_reference1d: r must have one more entry than the cells");

    Work w;
    w.r = setup.r;
    w.tau.resize(n);
    w.u = setup.u;
    w.S.resize(n);
    w.dtau.resize(n);
    w.du.resize(n);
    w.dS.resize(n);
    w.dr.resize(n + 1);
    w.p.resize(n);
    w.theta.resize(n);
    w.z.resize(n);
    w.a.resize(n);

    std::vector<double> mass(n);
    for (int i = 0; i < n; ++i) {
        w.tau[i] = 1.0 / setup.rho[i];
        w.S[i] = entropy_from_primitive(gas, setup.rho[i], setup.p[i]);
        mass[i] = cell_volume(setup.geometry, setup.r[i], setup.r[i + 1]) * setup.rho[i];
    }

    auto energy = [&]() {
        NeumaierSum e;
        for (int i = 0; i < n; ++i)
            e.add(mass[i] * (internal_energy(gas, w.tau[i], w.S[i]) + 0.5 * w.u[i] * w.u[i]));
        return e.value();
    };
    const double e0 = energy();
    double work = 0.0;

    // RK4 with the work integral accumulated at matching stage weights
    Work s1 = w, s2 = w, s3 = w, s4 = w;
    double t = 0.0;
    long steps = 0;
    Work trial = w;
    while (t < setup.t_final * (1.0 - 1e-14)) {
        // acoustic CFL plus volume- and internal-energy-change limiters from
        // the first-stage rates; blast fronts are stiff in entropy form and
        // would otherwise collapse or overheat their neighbor cell
        s1 = w;
        if (!eval(s1, setup, mass, gas))
            throw std::runtime_error("reference1d: invalid state");
        double dt_min = std::numeric_limits<double>::max();
        const double gm1 = gas.gamma - 1.0;
        for (int i = 0; i < n; ++i) {
            if (s1.a[i] > 0.0)
                dt_min = std::min(dt_min, setup.cfl * (w.r[i + 1] - w.r[i]) / s1.a[i]);
            if (s1.dtau[i] != 0.0)
                dt_min = std::min(dt_min, setup.rate_limit * w.tau[i] / std::abs(s1.dtau[i]));
            const double eps = s1.p[i] * w.tau[i] / gm1;
            const double deps = s1.theta[i] * s1.dS[i] - s1.p[i] * s1.dtau[i];
            if (deps != 0.0)
                dt_min = std::min(dt_min, setup.rate_limit * eps / std::abs(deps));
        }
        double dt = dt_min;
        if (t + dt > setup.t_final) dt = setup.t_final - t;

        auto shift = [&](Work& dst, const Work& k, double a) {
            for (int i = 0; i < n; ++i) {
                dst.tau[i] = w.tau[i] + a * k.dtau[i];
                dst.u[i] = w.u[i] + a * k.du[i];
                dst.S[i] = w.S[i] + a * k.dS[i];
            }
            for (int i = 0; i <= n; ++i) dst.r[i] = w.r[i] + a * k.dr[i];
        };

        // step rejection: halve dt until all stages and the result are valid
        bool accepted = false;
        for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
            bool ok = true;
            shift(s2, s1, 0.5 * dt);
            ok = ok && eval(s2, setup, mass, gas);
            if (ok) {
                shift(s3, s2, 0.5 * dt);
                ok = ok && eval(s3, setup, mass, gas);
            }
            if (ok) {
                shift(s4, s3, dt);
                ok = ok && eval(s4, setup, mass, gas);
            }
            if (ok) {
                for (int i = 0; i < n; ++i) {
                    trial.tau[i] =
                        w.tau[i] + dt / 6.0 * (s1.dtau[i] + 2 * s2.dtau[i] + 2 * s3.dtau[i] + s4.dtau[i]);
                    trial.u[i] = w.u[i] + dt / 6.0 * (s1.du[i] + 2 * s2.du[i] + 2 * s3.du[i] + s4.du[i]);
                    trial.S[i] = w.S[i] + dt / 6.0 * (s1.dS[i] + 2 * s2.dS[i] + 2 * s3.dS[i] + s4.dS[i]);
                    if (!(trial.tau[i] > 0.0)) ok = false;
                }
                for (int i = 0; i <= n; ++i)
                    trial.r[i] = w.r[i] + dt / 6.0 * (s1.dr[i] + 2 * s2.dr[i] + 2 * s3.dr[i] + s4.dr[i]);
                for (int i = 0; i < n && ok; ++i)
                    if (!(trial.r[i + 1] > trial.r[i])) ok = false;
            }
            if (ok) {
                std::swap(w.tau, trial.tau);
                std::swap(w.u, trial.u);
                std::swap(w.S, trial.S);
                std::swap(w.r, trial.r);
                work += dt / 6.0 *
                        (s1.work_rate + 2 * s2.work_rate + 2 * s3.work_rate + s4.work_rate);
                t += dt;
                ++steps;
                accepted = true;
            } else {
                dt *= 0.5;
            }
        }
        if (!accepted) throw std::runtime_error("reference1d: step rejection stalled");
    }

    Ref1DResult out;
    out.steps = steps;
    out.r.resize(n);
    out.rho.resize(n);
    out.u = w.u;
    out.p.resize(n);
    out.S = w.S;
    out.eps.resize(n);
    if (!thermo_update(w, gas)) throw std::runtime_error("reference1d: invalid final state");
    for (int i = 0; i < n; ++i) {
        out.r[i] = 0.5 * (w.r[i] + w.r[i + 1]);
        out.rho[i] = 1.0 / w.tau[i];
        out.p[i] = w.p[i];
        out.eps[i] = internal_energy(gas, w.tau[i], w.S[i]);
    }
    out.energy_drift = std::abs(energy() - e0 - work) / std::abs(e0);
    return out;
}

} // namespace htclag
