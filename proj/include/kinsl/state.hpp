#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kinsl/velocity.hpp"

namespace kinsl {

/// f is velocity-major: f[k * points + i].
struct KineticState {
    std::size_t velocities = 0;
    std::size_t points = 0;
    std::vector<double> f;
    std::vector<double> rho;
    std::vector<double> f_prev;
    std::vector<double> rho_prev;
    bool has_history = false;
    double dt_prev = 0.0;
    double t = 0.0;

    KineticState() = default;
    KineticState(std::size_t nv, std::size_t np);

    std::span<double> f_slice(std::size_t k) { return {f.data() + k * points, points}; }
    std::span<const double> f_slice(std::size_t k) const { return {f.data() + k * points, points}; }
    std::span<const double> f_prev_slice(std::size_t k) const { return {f_prev.data() + k * points, points}; }

    /// rho_i = <f_i>.
    void correct_density(const VelocitySpace& vs);

    /// Moves the current level into the history slots.
    void push_history(double dt);
};

/// rho = <f> for a velocity-major f.
std::vector<double> correct_density(std::span<const double> f, const VelocitySpace& vs, std::size_t points);

/// Time-derivative weights: (a_new y^{n+1} - a_cur y^n + a_prev y^{n-1}) / h.
/// Backward Euler is (1, 1, 0); BDF2 with step ratio w = h / h_prev is
/// ((1+2w)/(1+w), 1+w, w^2/(1+w)).
struct TimeWeights {
    double a_new = 1.0;
    double a_cur = 1.0;
    double a_prev = 0.0;
};

TimeWeights time_weights(int order, bool has_history, double h, double h_prev);

/// Step sizes that advance t0 to t_end with steps of dt and one shorter
/// final step when dt does not divide the interval.
std::vector<double> step_schedule(double t0, double t_end, double dt);

}  // namespace kinsl
