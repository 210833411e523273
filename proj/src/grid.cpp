#include "kinsl/grid.hpp"

#include "kinsl/errors.hpp"

namespace kinsl {

std::string to_string(BoundaryKind b)
{
    return b == BoundaryKind::Periodic ? "periodic" : "inflow_outflow";
}

BoundaryKind boundary_from_string(const std::string& s)
{
    if (s == "periodic") return BoundaryKind::Periodic;
    if (s == "inflow_outflow" || s == "inflow-outflow") return BoundaryKind::InflowOutflow;
    throw ConfigError("unknown boundary kind '" + s + "'");
}

Axis::Axis(double lo_, double hi_, int n_, BoundaryKind b) : lo(lo_), hi(hi_), n(n_), boundary(b)
{
    if (!(hi > lo)) throw ConfigError("grid: hi must exceed lo");
    if (n < 3) throw ConfigError("grid: need at least 3 points");
}

double Axis::spacing() const
{
    return periodic() ? (hi - lo) / n : (hi - lo) / (n - 1);
}

double Axis::node(std::int64_t i) const
{
    if (!periodic() && i == n - 1) return hi;
    return lo + double(i) * spacing();
}

std::vector<double> Axis::nodes() const
{
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[std::size_t(i)] = node(i);
    return out;
}

std::int64_t Axis::resolve(std::int64_t i) const
{
    if (periodic()) {
        std::int64_t r = i % n;
        return r < 0 ? r + n : r;
    }
    if (i < 0) return 0;
    if (i >= n) return n - 1;
    return i;
}

Grid Grid::line(const Axis& x)
{
    Grid g;
    g.dim = 1;
    g.x = x;
    return g;
}

Grid Grid::plane(const Axis& x, const Axis& y)
{
    Grid g;
    g.dim = 2;
    g.x = x;
    g.y = y;
    return g;
}

}  // namespace kinsl
