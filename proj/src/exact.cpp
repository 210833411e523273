#include "kinsl/exact.hpp"

#include <cmath>
#include <numbers>

#include "kinsl/errors.hpp"

namespace kinsl {

namespace {

constexpr double two_over_sqrt_pi = 2.0 / 1.7724538509055160273;

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (1 3 5 ... (2n+1)), x >= 0.
double erf_series(double x)
{
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return two_over_sqrt_pi * std::exp(-x2) * sum;
}

// erfc(x) for x > 0 by the continued fraction
// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
double erfc_fraction(double x)
{
    const double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / (1.7724538509055160273 * f);
}

}  // namespace

double error_function(double x)
{
    if (std::isnan(x)) return x;
    const double a = std::abs(x);
    double r;
    if (a < 3.0)
        r = erf_series(a);
    else
        r = 1.0 - erfc_fraction(a);
    return x < 0 ? -r : r;
}

double complementary_error_function(double x)
{
    if (x >= 3.0) return erfc_fraction(x);
    return 1.0 - error_function(x);
}

double telegraph_rate(double eps)
{
    const double disc = 1.0 - 4.0 * eps * eps;
    if (disc < 0.0) throw ConfigError("telegraph exact solution needs eps <= 1/2");
    return -2.0 / (1.0 + std::sqrt(disc));
}

TelegraphExact exact_telegraph(double x, double t, double eps, double v)
{
    const double r = telegraph_rate(eps);
    const double e = std::exp(r * t);
    const double rho = e * std::sin(x) / r;
    return {rho, rho + v * eps * e * std::cos(x)};
}

AdvDiffExact exact_advdiff(double x, double t)
{
    const double e = std::exp(-t);
    return {e * std::sin(x - t), e * (std::sin(x - t) - std::cos(x - t))};
}

double exact_riemann_erf(double x, double t, double rho_l, double rho_r)
{
    if (!(t > 0.0)) throw ConfigError("riemann exact solution needs t > 0");
    return 0.5 * (rho_l + rho_r) + 0.5 * (rho_l - rho_r) * error_function((t - x) / (2.0 * std::sqrt(t)));
}

double burgers_equilibrium_j(double rho, double eps)
{
    return rho * rho / (1.0 + std::sqrt(1.0 + rho * rho * eps * eps));
}

}  // namespace kinsl
