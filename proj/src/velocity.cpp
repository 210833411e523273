#include "kinsl/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "kinsl/errors.hpp"

namespace kinsl {

std::string to_string(VelocityKind k)
{
    switch (k) {
        case VelocityKind::DiscreteTwo: return "two";
        case VelocityKind::GaussLegendre16: return "gl16";
        case VelocityKind::Lebedev86: return "lebedev86";
    }
    return "?";
}

VelocityKind velocity_kind_from_string(const std::string& s)
{
    if (s == "two" || s == "discrete_two") return VelocityKind::DiscreteTwo;
    if (s == "gl16" || s == "gauss_legendre16") return VelocityKind::GaussLegendre16;
    if (s == "lebedev86") return VelocityKind::Lebedev86;
    throw ConfigError("unknown velocity kind '" + s + "'");
}

double VelocitySpace::average(std::span<const double> g) const
{
    if (g.size() != weights.size()) throw ConfigError("velocity average: length mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += weights[k] * g[k];
    return s;
}

double VelocitySpace::second_moment(int axis) const
{
    double s = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
        double c = component(k, axis);
        s += weights[k] * c * c;
    }
    return s;
}

VelocitySpace discrete_two()
{
    VelocitySpace vs;
    vs.kind = VelocityKind::DiscreteTwo;
    vs.nodes = {{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    vs.weights = {0.5, 0.5};
    return vs;
}

namespace {

// P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z)
{
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

}  // namespace

VelocitySpace build_gauss_legendre(int n)
{
    if (n <= 0) throw ConfigError("Gauss-Legendre: n must be positive");
    std::vector<double> x(std::size_t(n), 0.0), w(std::size_t(n), 0.0);
    for (int i = 0; i < n / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, z);
            double dz = p / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        double dp = legendre(n, z).second;
        double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[std::size_t(i)] = -z;
        x[std::size_t(n - 1 - i)] = z;
        w[std::size_t(i)] = w[std::size_t(n - 1 - i)] = wi;
    }
    if (n % 2 == 1) {
        double dp = n == 1 ? 1.0 : legendre(n, 0.0).second;
        w[std::size_t(n / 2)] = 2.0 / (dp * dp);
    }

    VelocitySpace vs;
    vs.kind = VelocityKind::GaussLegendre16;
    for (int i = 0; i < n; ++i) {
        vs.nodes.push_back({x[std::size_t(i)], 0.0, 0.0});
        vs.weights.push_back(0.5 * w[std::size_t(i)]);
    }
    return vs;
}

VelocitySpace make_velocity_space(VelocityKind kind)
{
    switch (kind) {
        case VelocityKind::DiscreteTwo: return discrete_two();
        case VelocityKind::GaussLegendre16: return build_gauss_legendre(16);
        case VelocityKind::Lebedev86: return lebedev86();
    }
    throw ConfigError("unknown velocity kind");
}

double velocity_average(std::span<const double> f_slice, const VelocitySpace& vs)
{
    return vs.average(f_slice);
}

double velocity_second_moment(const VelocitySpace& vs)
{
    return vs.second_moment(0);
}

std::array<double, 2> velocity_second_moment_2d(const VelocitySpace& vs)
{
    return {vs.second_moment(0), vs.second_moment(1)};
}

}  // namespace kinsl
