#pragma once

#include <string>
#include <vector>

#include "kinsl/config.hpp"
#include "kinsl/solver1d.hpp"
#include "kinsl/solver2d.hpp"
#include "kinsl/state.hpp"

namespace kinsl {

/// Names accepted by problem_defaults().
const std::vector<std::string>& problem_names();

bool is_two_dimensional(const std::string& problem);

/// Initial kinetic state for a 1D problem.
KineticState initial_state_1d(const std::string& problem, const Axis& axis, const VelocitySpace& vs,
                              const SchemeConfig& scheme);

KineticState initial_state_2d(const std::string& problem, const Axis& x, const Axis& y, const VelocitySpace& vs,
                              const SchemeConfig& scheme);

/// Inflow data for the bounded 1D problems (empty functions for periodic ones).
Boundary1D boundary_data(const std::string& problem, const SchemeConfig& scheme);

struct Problem1D {
    Solver1D solver;
    KineticState state;
};

struct Problem2D {
    Solver2D solver;
    KineticState state;
};

/// cfg.scheme.dt is replaced by the resolved step.
Problem1D make_problem_1d(const RunConfig& cfg);
Problem2D make_problem_2d(const RunConfig& cfg);

/// True when the problem has a closed-form rho at the final time.
bool has_exact_solution(const std::string& problem, double eps);

/// Exact rho at (x, y, t); y is ignored in 1D.
double exact_rho(const std::string& problem, double eps, double x, double y, double t);

/// Exact f at velocity node (v components); `v` is the full node.
double exact_f(const std::string& problem, double eps, double x, double y, const std::array<double, 3>& v, double t);

/// Velocity index at which f errors are reported: v = 1 for the two-velocity
/// space, otherwise the first node.
std::size_t designated_velocity(const VelocitySpace& vs);

}  // namespace kinsl
