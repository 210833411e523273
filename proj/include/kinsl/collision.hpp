#pragma once

#include "kinsl/config.hpp"
#include "kinsl/velocity.hpp"

namespace kinsl {

/// Pointwise collision operator C(f). OneGroup/TwoD return only the stiff
/// part sigma_s (rho - f); absorption and source are handled by the solvers.
double collide(const Collision& c, double f, double rho, double v, double eps);

/// Diffusion coefficient of the limiting equation.
double limiting_diffusion_coefficient(const Collision& c, const VelocitySpace& vs, double eps, int axis = 0);

/// Same, with a local scattering coefficient (variable sigma_s in 2D).
double limiting_diffusion_coefficient(const Collision& c, const VelocitySpace& vs, double eps, double sigma_s,
                                      int axis);

}  // namespace kinsl
