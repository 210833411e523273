#include "kinsl/semilag.hpp"

#include <cmath>

namespace kinsl {

Shift split_shift(double lambda)
{
    double r = std::round(lambda);
    if (std::abs(lambda - r) <= 1e-12 * std::max(1.0, lambda)) lambda = r;
    Shift s;
    if (lambda <= 0.0) return s;
    s.m = std::int64_t(std::ceil(lambda)) - 1;
    s.xi = lambda - double(s.m);
    return s;
}

Foot locate_foot(std::int64_t i, double v, double eps, double dt, const Axis& axis)
{
    const double dx = axis.spacing();
    Foot foot;
    foot.position = axis.lo + double(i) * dx - v * dt / eps;
    if (v == 0.0) {
        foot.cell = i;
        return foot;
    }
    Shift s = split_shift(std::abs(v) * dt / (eps * dx));
    if (v > 0.0) {
        foot.direction = 1;
        foot.cell = i - s.m;
        foot.offset = s.xi;
    } else {
        foot.direction = -1;
        foot.cell = i + s.m + 1;
        foot.offset = 1.0 - s.xi;
    }
    return foot;
}

Bias bias_for(Quantity q, int direction)
{
    bool left = direction >= 0;
    if (q == Quantity::Rho) left = !left;
    return left ? Bias::Left : Bias::Right;
}

double upwind_first(const FieldView& a, const Foot& foot, Bias bias, double dx)
{
    const auto c = foot.cell;
    if (bias == Bias::Left) return (a(c - 1) - a(c - 2)) / dx;
    return (a(c + 1) - a(c)) / dx;
}

double upwind_first(const FieldView& a, const Foot& foot, Quantity q, double dx)
{
    return upwind_first(a, foot, bias_for(q, foot.direction), dx);
}

double offset_second(const FieldView& a, const Foot& foot, Bias bias, double dx)
{
    const auto c = foot.cell;
    const double t = foot.offset;
    if (bias == Bias::Left)
        return ((1.0 - 2.0 * t) * a(c - 2) - (4.0 - 4.0 * t) * a(c - 1) + (3.0 - 2.0 * t) * a(c)) / (2.0 * dx);
    return (-(1.0 + 2.0 * t) * a(c - 1) + 4.0 * t * a(c) + (1.0 - 2.0 * t) * a(c + 1)) / (2.0 * dx);
}

double offset_second(const FieldView& a, const Foot& foot, Quantity q, double dx)
{
    return offset_second(a, foot, bias_for(q, foot.direction), dx);
}

double van_albada(double r)
{
    if (!(r > 0.0)) return 0.0;
    return (r * r + r) / (r * r + 1.0);
}

double limiter_ratio(double num, double den)
{
    if (std::abs(den) < 1e-14) return 0.0;
    return van_albada(num / den);
}

namespace {

// Left-leaning limited divergence on an accessor b with cell index 0.
template <class Access>
double limited_left(const Access& b, double t, double dx)
{
    auto flux = [&](std::int64_t k) {
        double d = b(k) - b(k - 1);
        return b(k) + 0.5 * (1.0 - 2.0 * t) * limiter_ratio(b(k - 1) - b(k - 2), d) * d;
    };
    return (flux(0) - flux(-1)) / dx;
}

}  // namespace

double limited_explicit_flux_divergence(const FieldView& a, const Foot& foot, double dx)
{
    const auto c = foot.cell;
    if (foot.direction >= 0) {
        auto b = [&](std::int64_t k) { return a(c + k); };
        return limited_left(b, foot.offset, dx);
    }
    // mirror: b(k) = a(c - 1 - k), offset 1 - eta
    auto b = [&](std::int64_t k) { return a(c - 1 - k); };
    return -limited_left(b, 1.0 - foot.offset, dx);
}

double derivative_at_foot(const FieldView& field, const Foot& foot, Quantity q, int order, bool limited, double dx)
{
    if (order == 1) return upwind_first(field, foot, q, dx);
    if (limited && q == Quantity::F) return limited_explicit_flux_divergence(field, foot, dx);
    return offset_second(field, foot, q, dx);
}

UpwindCoefficients unlimited_coefficients(int order)
{
    if (order == 1) return {1.0, -1.0, 0.0};
    return {1.5, -2.0, 0.5};
}

UpwindCoefficients limited_implicit_coefficients(const FieldView& a, std::int64_t i, int direction)
{
    const std::int64_t s = direction >= 0 ? 1 : -1;
    auto phi = [&](std::int64_t k) { return limiter_ratio(a(k - s) - a(k - 2 * s), a(k) - a(k - s)); };
    const double p0 = phi(i);
    const double p1 = phi(i - s);
    return {1.0 + 0.5 * p0, -(1.0 + 0.5 * p0 + 0.5 * p1), 0.5 * p1};
}

}  // namespace kinsl
