#pragma once

namespace htclag {

/// One side of a planar Riemann problem (density, normal velocity, pressure).
struct RiemannSide {
    double rho;
    double u;
    double p;
};

/// Exact solution of the 1D Euler Riemann problem for an ideal gas, with the
/// star state found by Newton iteration on the pressure function and full
/// wave-fan sampling in the similarity variable xi = x/t.
class ExactRiemann {
public:
    struct Sample {
        double rho, u, p;
    };
    struct Wave {
        bool is_shock = false;
        double head = 0.0;     // fastest signal of the wave
        double tail = 0.0;     // equals head for a shock
        double rho_star = 0.0; // density adjacent to the contact
    };

    ExactRiemann(RiemannSide left, RiemannSide right, double gamma);

    double star_p() const { return ps_; }
    double star_u() const { return us_; }
    bool vacuum() const { return vacuum_; }
    Wave left_wave() const { return lw_; }
    Wave right_wave() const { return rw_; }

    Sample sample(double xi) const;

private:
    Sample sample_vacuum(double xi) const;

    RiemannSide L_, R_;
    double g_;
    double aL_, aR_;
    double ps_ = 0.0, us_ = 0.0;
    bool vacuum_ = false;
    Wave lw_, rw_;
};

} // namespace htclag
