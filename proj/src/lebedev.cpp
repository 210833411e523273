#include <array>
#include <cmath>
#include <vector>

#include "kinsl/velocity.hpp"

namespace kinsl {

namespace {

using Node = std::array<double, 3>;

// Octahedral orbit generators, Lebedev-Laikov numbering.
void orbit_axes(std::vector<Node>& p, std::vector<double>& w, double wt)
{
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0}) {
            Node n{0.0, 0.0, 0.0};
            n[std::size_t(axis)] = s;
            p.push_back(n);
            w.push_back(wt);
        }
}

void orbit_corners(std::vector<Node>& p, std::vector<double>& w, double wt)
{
    const double a = 1.0 / std::sqrt(3.0);
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
            for (double sz : {1.0, -1.0}) {
                p.push_back({sx * a, sy * a, sz * a});
                w.push_back(wt);
            }
}

// (a, a, b) with b = sqrt(1 - 2a^2), b placed on each axis in turn.
void orbit_aab(std::vector<Node>& p, std::vector<double>& w, double a, double wt)
{
    const double b = std::sqrt(1.0 - 2.0 * a * a);
    for (int axis = 0; axis < 3; ++axis)
        for (double s0 : {1.0, -1.0})
            for (double s1 : {1.0, -1.0})
                for (double s2 : {1.0, -1.0}) {
                    Node n{s0 * a, s1 * a, s2 * a};
                    n[std::size_t(axis)] = (axis == 0 ? s0 : axis == 1 ? s1 : s2) * b;
                    p.push_back(n);
                    w.push_back(wt);
                }
}

// (0, a, b) with b = sqrt(1 - a^2), all placements.
void orbit_0ab(std::vector<Node>& p, std::vector<double>& w, double a, double wt)
{
    const double b = std::sqrt(1.0 - a * a);
    for (int zero = 0; zero < 3; ++zero) {
        int i1 = (zero + 1) % 3, i2 = (zero + 2) % 3;
        for (bool swap : {false, true})
            for (double s1 : {1.0, -1.0})
                for (double s2 : {1.0, -1.0}) {
                    Node n{0.0, 0.0, 0.0};
                    n[std::size_t(i1)] = s1 * (swap ? b : a);
                    n[std::size_t(i2)] = s2 * (swap ? a : b);
                    p.push_back(n);
                    w.push_back(wt);
                }
    }
}

}  // namespace

VelocitySpace lebedev86()
{
    VelocitySpace vs;
    vs.kind = VelocityKind::Lebedev86;
    orbit_axes(vs.nodes, vs.weights, 0.1154401154401154e-1);
    orbit_corners(vs.nodes, vs.weights, 0.1194390908585628e-1);
    orbit_aab(vs.nodes, vs.weights, 0.3696028464541502, 0.1111055571060340e-1);
    orbit_aab(vs.nodes, vs.weights, 0.6943540066026664, 0.1187650129453714e-1);
    orbit_0ab(vs.nodes, vs.weights, 0.3742430390903412, 0.1181230374690448e-1);
    return vs;
}

}  // namespace kinsl
