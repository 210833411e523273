#pragma once

#include <array>
#include <span>
#include <vector>

#include "kinsl/config.hpp"
#include "kinsl/grid.hpp"
#include "kinsl/solver1d.hpp"
#include "kinsl/state.hpp"
#include "kinsl/velocity.hpp"

namespace kinsl {

/// sigma_s(x, y) of the variable-scattering Gaussian test.
double variable_sigma(double x, double y);

/// Gaussian initial density 1/(4 pi s2) exp(-(x^2 + y^2) / (4 s2)), s2 = 1e-2.
double gaussian_initial(double x, double y);

/// Manufactured solution f = e^{-t} S (1 + eps (eta + eta^3)/3), S = sin^2(2 pi x) sin^2(2 pi y).
double manufactured_f(double t, double x, double y, double eta, double eps);
double manufactured_rho(double t, double x, double y);

/// Source G that makes manufactured_f exact (sigma_s = 1, sigma_a = 0).
double manufactured_source_2d(double t, double x, double y, const std::array<double, 3>& v, double eps);

/// (dG/dx, dG/dy).
std::array<double, 2> manufactured_source_gradient_2d(double t, double x, double y, const std::array<double, 3>& v,
                                                      double eps);

/// Macro-micro stepper on a periodic 2D grid. Nodes are indexed p = i * ny + j.
class Solver2D {
public:
    Solver2D(SchemeConfig cfg, Axis x, Axis y, VelocitySpace vs, bool manufactured = false);

    const SchemeConfig& config() const { return cfg_; }
    const Axis& x_axis() const { return x_; }
    const Axis& y_axis() const { return y_; }
    const VelocitySpace& velocities() const { return vs_; }
    std::size_t points() const { return std::size_t(x_.n) * std::size_t(y_.n); }

    double sigma_s_at(std::size_t p) const { return sigma_[p]; }

    StepReport step(KineticState& s) const { return step(s, cfg_.dt); }
    StepReport step(KineticState& s, double h) const;

    std::vector<double> macro_step(const KineticState& s, double h, const TimeWeights& w) const;
    std::vector<double> micro_step(const KineticState& s, std::span<const double> sigma, double h,
                                   const TimeWeights& w) const;

    /// <xi (f - rho)_x + eta (f - rho)_y> at the feet, per node.
    std::vector<double> transport_term(const KineticState& s, double h) const;

    void set_verify_solves(bool on) { verify_ = on; }
    double max_solve_residual() const { return max_residual_; }

private:
    SchemeConfig cfg_;
    Axis x_;
    Axis y_;
    VelocitySpace vs_;
    bool manufactured_;
    std::vector<double> sigma_;
    bool verify_ = false;
    mutable double max_residual_ = 0.0;
};

RunStats run_until(const Solver2D& solver, KineticState& s, double t_end, double dt);

}  // namespace kinsl
