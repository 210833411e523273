#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kinsl {

enum class BoundaryKind { Periodic, InflowOutflow };

std::string to_string(BoundaryKind b);
BoundaryKind boundary_from_string(const std::string& s);

/// One uniform mesh direction.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;
    BoundaryKind boundary = BoundaryKind::Periodic;

    Axis() = default;
    Axis(double lo_, double hi_, int n_, BoundaryKind b);

    bool periodic() const { return boundary == BoundaryKind::Periodic; }
    double spacing() const;
    double node(std::int64_t i) const;
    std::vector<double> nodes() const;

    /// Periodic axes wrap, bounded axes clamp to [0, n-1].
    std::int64_t resolve(std::int64_t i) const;
};

struct Grid {
    int dim = 1;
    Axis x;
    Axis y;

    static Grid line(const Axis& x);
    static Grid plane(const Axis& x, const Axis& y);

    std::size_t size() const { return dim == 1 ? std::size_t(x.n) : std::size_t(x.n) * std::size_t(y.n); }
};

}  // namespace kinsl
