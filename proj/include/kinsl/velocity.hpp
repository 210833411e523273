#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace kinsl {

enum class VelocityKind { DiscreteTwo, GaussLegendre16, Lebedev86 };

std::string to_string(VelocityKind k);
VelocityKind velocity_kind_from_string(const std::string& s);

/// Quadrature in velocity. Weights are normalized so that <1> = 1.
/// 1D spaces store v in nodes[k][0]; Lebedev stores (xi, eta, gamma).
struct VelocitySpace {
    VelocityKind kind = VelocityKind::DiscreteTwo;
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double v(std::size_t k) const { return nodes[k][0]; }
    double component(std::size_t k, int axis) const { return nodes[k][std::size_t(axis)]; }

    /// Sum_k w_k g_k.
    double average(std::span<const double> g) const;

    /// <v_axis^2>.
    double second_moment(int axis = 0) const;
};

VelocitySpace discrete_two();
VelocitySpace build_gauss_legendre(int n);
VelocitySpace lebedev86();
VelocitySpace make_velocity_space(VelocityKind kind);

double velocity_average(std::span<const double> f_slice, const VelocitySpace& vs);
double velocity_second_moment(const VelocitySpace& vs);
std::array<double, 2> velocity_second_moment_2d(const VelocitySpace& vs);

}  // namespace kinsl
