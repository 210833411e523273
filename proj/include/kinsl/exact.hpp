#pragma once

namespace kinsl {

/// erf by a positive-term series (|x| < 3) and a continued fraction for erfc beyond.
double error_function(double x);
double complementary_error_function(double x);

struct TelegraphExact {
    double rho;
    double f;
};

/// Smooth telegraph solution; requires eps <= 1/2.
TelegraphExact exact_telegraph(double x, double t, double eps, double v = 0.0);

/// Decay rate r = -2 / (1 + sqrt(1 - 4 eps^2)).
double telegraph_rate(double eps);

struct AdvDiffExact {
    double rho;
    double j;
};

/// rho = e^{-t} sin(x - t), j = e^{-t} (sin(x - t) - cos(x - t)).
AdvDiffExact exact_advdiff(double x, double t);

/// Limiting advection-diffusion solution for Riemann data; t > 0.
double exact_riemann_erf(double x, double t, double rho_l, double rho_r);

/// j = rho^2 / (1 + sqrt(1 + rho^2 eps^2)).
double burgers_equilibrium_j(double rho, double eps);

}  // namespace kinsl
