#include "htclag/riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace htclag {

namespace {

struct PressureFn {
    double g;
    const RiemannSide& s;
    double a;

    // f_K(p) and its derivative: shock branch above p_K, rarefaction below.
    double value(double p) const {
        if (p > s.p) {
            const double A = 2.0 / ((g + 1.0) * s.rho);
            const double B = s.p * (g - 1.0) / (g + 1.0);
            return (p - s.p) * std::sqrt(A / (p + B));
        }
        const double z = (g - 1.0) / (2.0 * g);
        return 2.0 * a / (g - 1.0) * (std::pow(p / s.p, z) - 1.0);
    }
    double deriv(double p) const {
        if (p > s.p) {
            const double A = 2.0 / ((g + 1.0) * s.rho);
            const double B = s.p * (g - 1.0) / (g + 1.0);
            return std::sqrt(A / (p + B)) * (1.0 - 0.5 * (p - s.p) / (B + p));
        }
        return 1.0 / (s.rho * a) * std::pow(p / s.p, -(g + 1.0) / (2.0 * g));
    }
};

} // namespace

ExactRiemann::ExactRiemann(RiemannSide left, RiemannSide right, double gamma)
    : L_(left), R_(right), g_(gamma) {
    if (!(L_.rho > 0.0) || !(R_.rho > 0.0) || L_.p < 0.0 || R_.p < 0.0)
        throw std::invalid_argument("ExactRiemann: invalid initial states");
    aL_ = std::sqrt(g_ * L_.p / L_.rho);
    aR_ = std::sqrt(g_ * R_.p / R_.rho);

    // pressure positivity condition; otherwise the two fans separate and a
    // vacuum region opens between them
    if (2.0 * (aL_ + aR_) / (g_ - 1.0) <= R_.u - L_.u) {
        vacuum_ = true;
        lw_ = {false, L_.u - aL_, L_.u + 2.0 * aL_ / (g_ - 1.0), 0.0};
        rw_ = {false, R_.u + aR_, R_.u - 2.0 * aR_ / (g_ - 1.0), 0.0};
        return;
    }

    const PressureFn fL{g_, L_, aL_};
    const PressureFn fR{g_, R_, aR_};
    const double du = R_.u - L_.u;

    // two-rarefaction estimate as the initial guess
    const double z = (g_ - 1.0) / (2.0 * g_);
    double p = std::pow((aL_ + aR_ - 0.5 * (g_ - 1.0) * du) /
                            (aL_ / std::pow(L_.p, z) + aR_ / std::pow(R_.p, z)),
                        1.0 / z);
    p = std::max(p, 1e-14 * (L_.p + R_.p));

    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double f = fL.value(p) + fR.value(p) + du;
        const double df = fL.deriv(p) + fR.deriv(p);
        double pn = p - f / df;
        if (pn <= 0.0) pn = 0.5 * p;
        const double change = std::abs(pn - p) / (0.5 * (pn + p));
        p = pn;
        if (change < 1e-14) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("ExactRiemann: Newton iteration stalled");
    ps_ = p;
    us_ = 0.5 * (L_.u + R_.u) + 0.5 * (fR.value(p) - fL.value(p));

    const double g6 = (g_ - 1.0) / (g_ + 1.0);
    auto wave = [&](const RiemannSide& s, double a, int sign) {
        Wave w;
        const double r = ps_ / s.p;
        if (ps_ > s.p) {
            w.is_shock = true;
            const double q = std::sqrt((g_ + 1.0) / (2.0 * g_) * r + (g_ - 1.0) / (2.0 * g_));
            w.head = w.tail = s.u + sign * a * q;
            w.rho_star = s.rho * (r + g6) / (g6 * r + 1.0);
        } else {
            w.head = s.u + sign * a;
            const double astar = a * std::pow(r, (g_ - 1.0) / (2.0 * g_));
            w.tail = us_ + sign * astar;
            w.rho_star = s.rho * std::pow(r, 1.0 / g_);
        }
        return w;
    };
    lw_ = wave(L_, aL_, -1);
    rw_ = wave(R_, aR_, +1);
}

ExactRiemann::Sample ExactRiemann::sample_vacuum(double xi) const {
    if (xi <= lw_.head) return {L_.rho, L_.u, L_.p};
    if (xi >= rw_.head) return {R_.rho, R_.u, R_.p};
    const double gp = g_ + 1.0;
    const double gm = g_ - 1.0;
    if (xi < lw_.tail) { // left fan
        const double a = 2.0 / gp * (aL_ + 0.5 * gm * (L_.u - xi));
        const double u = 2.0 / gp * (aL_ + 0.5 * gm * L_.u + xi);
        const double rho = L_.rho * std::pow(a / aL_, 2.0 / gm);
        return {rho, u, L_.p * std::pow(a / aL_, 2.0 * g_ / gm)};
    }
    if (xi > rw_.tail) { // right fan
        const double a = 2.0 / gp * (aR_ - 0.5 * gm * (R_.u - xi));
        const double u = 2.0 / gp * (-aR_ + 0.5 * gm * R_.u + xi);
        const double rho = R_.rho * std::pow(a / aR_, 2.0 / gm);
        return {rho, u, R_.p * std::pow(a / aR_, 2.0 * g_ / gm)};
    }
    return {0.0, xi, 0.0}; // vacuum between the fans
}

ExactRiemann::Sample ExactRiemann::sample(double xi) const {
    if (vacuum_) return sample_vacuum(xi);
    const double gp = g_ + 1.0;
    const double gm = g_ - 1.0;
    if (xi <= us_) {
        if (lw_.is_shock)
            return (xi < lw_.head) ? Sample{L_.rho, L_.u, L_.p} : Sample{lw_.rho_star, us_, ps_};
        if (xi < lw_.head) return {L_.rho, L_.u, L_.p};
        if (xi > lw_.tail) return {lw_.rho_star, us_, ps_};
        const double a = 2.0 / gp * (aL_ + 0.5 * gm * (L_.u - xi));
        const double u = 2.0 / gp * (aL_ + 0.5 * gm * L_.u + xi);
        return {L_.rho * std::pow(a / aL_, 2.0 / gm), u, L_.p * std::pow(a / aL_, 2.0 * g_ / gm)};
    }
    if (rw_.is_shock)
        return (xi > rw_.head) ? Sample{R_.rho, R_.u, R_.p} : Sample{rw_.rho_star, us_, ps_};
    if (xi > rw_.head) return {R_.rho, R_.u, R_.p};
    if (xi < rw_.tail) return {rw_.rho_star, us_, ps_};
    const double a = 2.0 / gp * (aR_ - 0.5 * gm * (R_.u - xi));
    const double u = 2.0 / gp * (-aR_ + 0.5 * gm * R_.u + xi);
    return {R_.rho * std::pow(a / aR_, 2.0 / gm), u, R_.p * std::pow(a / aR_, 2.0 * g_ / gm)};
}

} // namespace htclag
