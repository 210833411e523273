#pragma once

#include <cstdint>
#include <span>

#include "kinsl/grid.hpp"

namespace kinsl {

/// Characteristic foot x* = x_i - v dt / eps.
///
/// For v > 0, x* lies in [x_{cell-1}, x_cell); for v < 0 in (x_{cell-1}, x_cell].
/// offset = (x_cell - x*) / dx, so offset is in (0, 1] for v > 0 and [0, 1) for v < 0.
struct Foot {
    double position = 0.0;
    std::int64_t cell = 0;
    double offset = 0.0;
    int direction = 0;  // sign of v
};

/// Index-space shift m and fraction xi with m < lambda <= m + 1.
struct Shift {
    std::int64_t m = 0;
    double xi = 0.0;
};

/// Splits lambda = |v| dt / (eps dx) >= 0. Values within round-off of an
/// integer are snapped to it.
Shift split_shift(double lambda);

Foot locate_foot(std::int64_t i, double v, double eps, double dt, const Axis& axis);

enum class Quantity { F, Rho };

/// Which side a stencil leans on. Left uses nodes at and left of the cell
/// (f for v > 0, rho for v < 0); Right is the mirror.
enum class Bias { Left, Right };

Bias bias_for(Quantity q, int direction);

/// Read-only view of a nodal field with periodic wrap or boundary clamp.
class FieldView {
public:
    FieldView(std::span<const double> data, const Axis& axis) : data_(data), axis_(&axis) {}
    double operator()(std::int64_t j) const { return data_[std::size_t(axis_->resolve(j))]; }
    std::span<const double> data() const { return data_; }
    const Axis& axis() const { return *axis_; }

private:
    std::span<const double> data_;
    const Axis* axis_;
};

double upwind_first(const FieldView& field, const Foot& foot, Bias bias, double dx);
double upwind_first(const FieldView& field, const Foot& foot, Quantity q, double dx);

double offset_second(const FieldView& field, const Foot& foot, Bias bias, double dx);
double offset_second(const FieldView& field, const Foot& foot, Quantity q, double dx);

/// Stencil of the given order, optionally limited (order 2, quantity f only).
double derivative_at_foot(const FieldView& field, const Foot& foot, Quantity q, int order, bool limited, double dx);

/// Van Albada limiter, zero for r <= 0.
double van_albada(double r);

/// phi(r) for r = num / den, with phi = 0 when |den| < 1e-14.
double limiter_ratio(double num, double den);

/// Conservative limited form of the second-order f stencil at a foot.
double limited_explicit_flux_divergence(const FieldView& field, const Foot& foot, double dx);

/// Coefficients of the implicit upwind operator at node i, on the unknowns
/// (f_i, f_{i-s}, f_{i-2s}) with s = sign(v), divided by dx. Ratios are frozen
/// from field_prev.
struct UpwindCoefficients {
    double c0 = 1.0;
    double c1 = -1.0;
    double c2 = 0.0;
};

UpwindCoefficients limited_implicit_coefficients(const FieldView& field_prev, std::int64_t i, int direction);
UpwindCoefficients unlimited_coefficients(int order);

}  // namespace kinsl
