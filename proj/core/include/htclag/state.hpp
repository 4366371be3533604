#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "htclag/eos.hpp"
#include "htclag/geometry.hpp"
#include "htclag/mesh.hpp"

namespace htclag {

/// Evolved per-cell quantities q = (tau, v, S), structure-of-arrays.
struct Fields {
    std::vector<double> tau, vx, vy, S;

    int size() const { return static_cast<int>(tau.size()); }
    void resize(int n) {
        tau.assign(n, 0.0);
        vx.assign(n, 0.0);
        vy.assign(n, 0.0);
        S.assign(n, 0.0);
    }
    Vec2 vel(int c) const { return {vx[c], vy[c]}; }
};

/// Constant cell masses, fixed at t = 0.
struct MassField {
    std::vector<double> m;
};

/// Cached thermodynamics, refreshed once per stage evaluation.
struct ThermoCache {
    std::vector<double> p, theta, a, rho_a, eps;

    void update(const Fields& f, const IdealGas& gas) {
        const int n = f.size();
        p.resize(n);
        theta.resize(n);
        a.resize(n);
        rho_a.resize(n);
        eps.resize(n);
        const double gm1 = gas.gamma - 1.0;
        const double gg = gas.gamma * gm1;
        for (int c = 0; c < n; ++c) {
            const double tau = f.tau[c];
            const double e = std::exp(f.S[c] / gas.cv + (1.0 - gas.gamma) * std::log(tau)) / gm1;
            eps[c] = e;
            p[c] = gm1 * e / tau;
            theta[c] = e / gas.cv;
            const double snd = std::sqrt(gg * e);
            a[c] = snd;
            rho_a[c] = snd / tau;
        }
    }
};

/// Initialize cell states and masses by sampling primitive fields at cell
/// barycenters; m_c = |omega_c(0)| rho_c.
inline void init_from_primitive(const Mesh& mesh, const CornerGeometry& geom,
                                const std::function<double(Vec2)>& rho,
                                const std::function<Vec2(Vec2)>& vel,
                                const std::function<double(Vec2)>& pres, const IdealGas& gas,
                                Fields& f, MassField& masses) {
    const int nc = mesh.n_cells();
    f.resize(nc);
    masses.m.resize(nc);
    for (int c = 0; c < nc; ++c) {
        const Vec2 x = geom.barycenter[c];
        const double r = rho(x);
        const double p = pres(x);
        if (!(r > 0.0) || !(p > 0.0))
            throw std::invalid_argument("init_from_primitive: nonpositive density or pressure");
        const Vec2 v = vel(x);
        f.tau[c] = 1.0 / r;
        f.vx[c] = v.x;
        f.vy[c] = v.y;
        f.S[c] = entropy_from_primitive(gas, r, p);
        masses.m[c] = geom.area[c] * r;
    }
}

/// Total energy sum_c m_c (eps_c + |v_c|^2 / 2), compensated fixed-order sum.
inline double total_energy(const Fields& f, const MassField& masses, const IdealGas& gas) {
    NeumaierSum s;
    for (int c = 0; c < f.size(); ++c)
        s.add(masses.m[c] * total_specific_energy(gas, f.tau[c], f.vel(c), f.S[c]));
    return s.value();
}

inline Vec2 total_momentum(const Fields& f, const MassField& masses) {
    NeumaierSum sx, sy;
    for (int c = 0; c < f.size(); ++c) {
        sx.add(masses.m[c] * f.vx[c]);
        sy.add(masses.m[c] * f.vy[c]);
    }
    return {sx.value(), sy.value()};
}

inline double total_entropy(const Fields& f, const MassField& masses) {
    NeumaierSum s;
    for (int c = 0; c < f.size(); ++c) s.add(masses.m[c] * f.S[c]);
    return s.value();
}

} // namespace htclag
