#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kinsl/config.hpp"
#include "kinsl/grid.hpp"
#include "kinsl/state.hpp"
#include "kinsl/velocity.hpp"

namespace kinsl {

enum class Side { Left, Right };

/// Prescribed inflow f(v, t) at each end of a bounded axis.
struct Boundary1D {
    std::function<double(double v, double t)> left;
    std::function<double(double v, double t)> right;
};

struct StepReport {
    int picard_iterations = 0;
    double picard_change = 0.0;
};

/// Macro-micro stepper on a 1D grid.
class Solver1D {
public:
    Solver1D(SchemeConfig cfg, Axis axis, VelocitySpace vs, Boundary1D bc = {},
             std::function<double(double x)> source = {});

    const SchemeConfig& config() const { return cfg_; }
    const Axis& axis() const { return axis_; }
    const VelocitySpace& velocities() const { return vs_; }

    StepReport step(KineticState& s) const { return step(s, cfg_.dt); }
    StepReport step(KineticState& s, double h) const;

    /// Pre-correction density sigma^{n+1}. For Burgers, `lagged` is the
    /// previous Picard iterate of sigma (defaults to rho^n).
    std::vector<double> macro_step(const KineticState& s, double h, const TimeWeights& w,
                                   std::span<const double> lagged = {}) const;

    /// f^{n+1} from sigma^{n+1}. For Burgers, `f_lagged` is the previous
    /// Picard iterate of f (defaults to f^n).
    std::vector<double> micro_step(const KineticState& s, std::span<const double> sigma, double h,
                                   const TimeWeights& w, std::span<const double> f_lagged = {}) const;

    struct PicardResult {
        std::vector<double> sigma;
        std::vector<double> f;
        int iterations = 0;
        double change = 0.0;
    };
    PicardResult picard_burgers(const KineticState& s, double h, const TimeWeights& w) const;

    /// Boundary value of f for velocity k at time t: inflow data for incoming
    /// velocities, linear extrapolation of f_source for outgoing ones.
    double resolve_boundary(std::span<const double> f_source, Side side, std::size_t k, double t) const;

    /// Boundary density from the two half ranges.
    double boundary_density(std::span<const double> f_source, Side side, double t) const;

    /// Transported term <v (f - rho)_x> at the feet, per node.
    std::vector<double> transport_term(const KineticState& s, double h) const;

    /// Record max relative residual of every linear solve (testing aid).
    void set_verify_solves(bool on) { verify_ = on; }
    double max_solve_residual() const { return max_residual_; }

private:
    double stiffness() const;
    double one_minus_decay(double h) const;

    SchemeConfig cfg_;
    Axis axis_;
    VelocitySpace vs_;
    Boundary1D bc_;
    std::function<double(double)> source_;
    bool verify_ = false;
    mutable double max_residual_ = 0.0;
};

/// Per-run statistics from run_until.
struct RunStats {
    std::size_t steps = 0;
    std::vector<int> picard_iterations;
};

/// Advance to t_end with the step_schedule of dt.
RunStats run_until(const Solver1D& solver, KineticState& s, double t_end, double dt);

}  // namespace kinsl
