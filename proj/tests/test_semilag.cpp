#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kinsl/semilag.hpp"

using namespace kinsl;

namespace {

// Derivative at x of the quadratic through (x_j, y_j), j = 0..2.
double lagrange_derivative(const double* xs, const double* ys, double x)
{
    double d = 0.0;
    for (int j = 0; j < 3; ++j) {
        const int a = (j + 1) % 3, b = (j + 2) % 3;
        d += ys[j] * ((x - xs[a]) + (x - xs[b])) / ((xs[j] - xs[a]) * (xs[j] - xs[b]));
    }
    return d;
}

std::vector<double> sample(const Axis& ax, double (*g)(double))
{
    std::vector<double> out(std::size_t(ax.n));
    for (int j = 0; j < ax.n; ++j) out[std::size_t(j)] = g(ax.node(j));
    return out;
}

}  // namespace

TEST_CASE("foot location")
{
    Axis ax(0.0, 10.0, 100, BoundaryKind::Periodic);
    Foot f = locate_foot(5, -1.0, 0.01, 0.02, ax);
    CHECK(f.position == doctest::Approx(2.5));
    CHECK(ax.node(f.cell) - f.offset * ax.spacing() == doctest::Approx(2.5));

    Shift s = split_shift(2.5);
    CHECK(s.m == 2);
    CHECK(s.xi == 0.5);
    s = split_shift(3.0);
    CHECK(s.m == 2);
    CHECK(s.xi == 1.0);
    s = split_shift(3.0 - 1e-14);
    CHECK(s.m == 2);
    CHECK(s.xi == 1.0);

    f = locate_foot(7, 0.0, 0.1, 0.3, ax);
    CHECK(f.position == ax.node(7));
    CHECK(f.offset == 0.0);
}

TEST_CASE("foot invariants over random velocities")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> vd(-1.0, 1.0), ed(1e-3, 1.0);
    Axis ax(-50.0, 50.0, 1000, BoundaryKind::Periodic);
    const double dx = ax.spacing();
    for (int trial = 0; trial < 500; ++trial) {
        const double v = vd(rng), eps = ed(rng), dt = 0.05;
        if (v == 0.0) continue;
        const Foot f = locate_foot(500, v, eps, dt, ax);
        // traced forward over dt the characteristic lands on the node
        CHECK(std::abs(f.position + v * dt / eps - ax.node(500)) < 1e-10);
        CHECK(std::abs(ax.lo + double(f.cell) * dx - f.offset * dx - f.position) < 1e-9);
        if (v > 0) {
            CHECK(f.offset > 0.0);
            CHECK(f.offset <= 1.0);
        } else {
            CHECK(f.offset >= 0.0);
            CHECK(f.offset < 1.0);
        }
        const Shift sh = split_shift(std::abs(v) * dt / (eps * dx));
        const double lam = std::abs(v) * dt / (eps * dx);
        CHECK(double(sh.m) < lam + 1e-9);
        CHECK(lam <= double(sh.m) + 1.0 + 1e-9);
    }
}

TEST_CASE("first order upwind")
{
    Axis ax(0.0, 1.0, 20, BoundaryKind::Periodic);
    std::vector<double> data(20, 0.0);
    data[3] = 1.0;
    data[4] = 3.0;
    Foot foot;
    foot.cell = 5;
    foot.direction = 1;
    CHECK(upwind_first(FieldView(data, ax), foot, Quantity::F, 0.5) == 4.0);

    Axis big(0.0, 100.0, 101, BoundaryKind::InflowOutflow);
    auto lin = sample(big, [](double x) { return 2.0 * x - 1.0; });
    auto flat = std::vector<double>(101, 3.3);
    for (double v : {-0.9, -0.2, 0.4, 1.0})
        for (auto q : {Quantity::F, Quantity::Rho}) {
            const Foot ft = locate_foot(50, v, 0.1, 0.37, big);
            CHECK(upwind_first(FieldView(lin, big), ft, q, big.spacing()) == doctest::Approx(2.0).epsilon(1e-13));
            CHECK(upwind_first(FieldView(flat, big), ft, q, big.spacing()) == 0.0);
        }
}

TEST_CASE("offset second order stencil")
{
    Axis ax(0.0, 100.0, 101, BoundaryKind::InflowOutflow);
    const double dx = ax.spacing();

    SUBCASE("linear at zero offset")
    {
        auto lin = sample(ax, [](double x) { return x; });
        Foot ft;
        ft.cell = 40;
        ft.direction = 1;
        CHECK(offset_second(FieldView(lin, ax), ft, Quantity::F, dx) == 1.0);
    }
    SUBCASE("quadratics differentiate exactly at the foot")
    {
        auto quad = sample(ax, [](double x) { return x * x; });
        for (double v : {-1.0, -0.55, -0.1, 0.1, 0.55, 1.0})
            for (double dt : {0.013, 0.25, 0.5, 0.91})
                for (auto q : {Quantity::F, Quantity::Rho}) {
                    const Foot ft = locate_foot(50, v, 0.1, dt, ax);
                    CHECK(std::abs(offset_second(FieldView(quad, ax), ft, q, dx) - 2.0 * ft.position) < 1e-11);
                }
    }
    SUBCASE("matches the quadratic interpolant on arbitrary data")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> data(101);
        for (auto& d : data) d = u(rng);
        for (double v : {-0.8, -0.3, 0.3, 0.8})
            for (double dt : {0.07, 0.21, 0.66}) {
                const Foot ft = locate_foot(50, v, 0.1, dt, ax);
                for (auto bias : {Bias::Left, Bias::Right}) {
                    const std::int64_t first = bias == Bias::Left ? ft.cell - 2 : ft.cell - 1;
                    double xs[3], ys[3];
                    for (int j = 0; j < 3; ++j) {
                        xs[j] = ax.node(first + j);
                        ys[j] = data[std::size_t(first + j)];
                    }
                    const double oracle = lagrange_derivative(xs, ys, ft.position);
                    CHECK(std::abs(offset_second(FieldView(data, ax), ft, bias, dx) - oracle) < 1e-11);
                }
            }
    }
    SUBCASE("constant field")
    {
        std::vector<double> flat(101, -2.0);
        for (double dt : {0.1, 0.3, 0.77}) {
            const Foot ft = locate_foot(50, 0.6, 0.1, dt, ax);
            CHECK(offset_second(FieldView(flat, ax), ft, Quantity::F, dx) == 0.0);
            CHECK(limited_explicit_flux_divergence(FieldView(flat, ax), ft, dx) == 0.0);
        }
    }
}

TEST_CASE("van albada limiter")
{
    CHECK(van_albada(1.0) == 1.0);
    CHECK(van_albada(0.0) == 0.0);
    CHECK(van_albada(-1.0) == 0.0);
    CHECK(van_albada(-5.0) == 0.0);
    CHECK(van_albada(2.0) == doctest::Approx(6.0 / 5.0));
    for (double r : {0.1, 0.5, 3.0, 10.0}) CHECK(van_albada(r) == doctest::Approx(r * van_albada(1.0 / r)));
    CHECK(limiter_ratio(1.0, 0.0) == 0.0);
    CHECK(limiter_ratio(0.0, 0.0) == 0.0);
    CHECK(limiter_ratio(2.0, 2.0) == 1.0);
}

TEST_CASE("limited explicit divergence")
{
    Axis ax(0.0, 1.0, 64, BoundaryKind::Periodic);
    const double dx = ax.spacing();

    SUBCASE("linear data equals the unlimited stencil")
    {
        std::vector<double> lin(64);
        for (int j = 0; j < 64; ++j) lin[std::size_t(j)] = 0.5 * j;
        for (double v : {-1.0, 1.0})
            for (double dt : {0.004, 0.011, 0.023}) {
                const Foot ft = locate_foot(32, v, 0.5, dt, ax);
                CHECK(std::abs(limited_explicit_flux_divergence(FieldView(lin, ax), ft, dx) -
                               offset_second(FieldView(lin, ax), ft, Quantity::F, dx)) < 1e-12);
            }
    }
    SUBCASE("direct flux formula on 3-point patterns")
    {
        const double levels[] = {0.0, 1.0, 2.5};
        for (double a : levels)
            for (double b : levels)
                for (double c : levels)
                    for (double d : levels) {
                        std::vector<double> data(64, 0.0);
                        data[20] = a;
                        data[21] = b;
                        data[22] = c;
                        data[23] = d;
                        const Foot ft = locate_foot(30, 1.0, 1.0, 0.3 * dx + 7.0 * dx, ax);
                        REQUIRE(ft.cell == 23);
                        const double t = ft.offset;
                        auto phi = [](double num, double den) {
                            if (std::abs(den) < 1e-14) return 0.0;
                            const double r = num / den;
                            return r > 0 ? (r * r + r) / (r * r + 1) : 0.0;
                        };
                        auto h = [&](double fm2, double fm1, double f0) {
                            return f0 + 0.5 * (1 - 2 * t) * phi(fm1 - fm2, f0 - fm1) * (f0 - fm1);
                        };
                        const double oracle = (h(b, c, d) - h(a, b, c)) / dx;
                        CHECK(std::abs(limited_explicit_flux_divergence(FieldView(data, ax), ft, dx) - oracle) <
                              1e-12);
                    }
    }
}

TEST_CASE("limited implicit coefficients")
{
    Axis ax(0.0, 1.0, 16, BoundaryKind::Periodic);
    std::vector<double> lin(16), alt(16);
    for (int j = 0; j < 16; ++j) {
        lin[std::size_t(j)] = 2.0 * j;
        alt[std::size_t(j)] = j % 2;
    }
    for (int dir : {1, -1}) {
        const auto c = limited_implicit_coefficients(FieldView(lin, ax), 8, dir);
        const auto u2 = unlimited_coefficients(2);
        CHECK(c.c0 == u2.c0);
        CHECK(c.c1 == u2.c1);
        CHECK(c.c2 == u2.c2);
        const auto z = limited_implicit_coefficients(FieldView(alt, ax), 8, dir);
        const auto u1 = unlimited_coefficients(1);
        CHECK(z.c0 == u1.c0);
        CHECK(z.c1 == u1.c1);
        CHECK(z.c2 == u1.c2);
    }

    // smooth data: coefficients approach the unlimited ones, first order since phi'(1) = 1/2
    double prev = 0.0;
    for (int n : {512, 1024, 2048, 4096}) {
        Axis a(0.0, 2 * std::numbers::pi, n, BoundaryKind::Periodic);
        auto s = sample(a, [](double x) { return std::sin(x) + 0.1 * x * x; });
        const auto c = limited_implicit_coefficients(FieldView(s, a), n / 8, 1);
        const double err = std::abs(c.c0 - 1.5) + std::abs(c.c1 + 2.0) + std::abs(c.c2 - 0.5);
        if (prev > 0.0) CHECK(std::log2(prev / err) > 0.9);
        prev = err;
    }
}

TEST_CASE("stencils are translation invariant")
{
    Axis ax(0.0, 1.0, 40, BoundaryKind::Periodic);
    const double dx = ax.spacing();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> data(40);
    for (auto& d : data) d = u(rng);
    for (int k : {1, 5, 17, 39}) {
        std::vector<double> shifted(40);
        for (int j = 0; j < 40; ++j) shifted[std::size_t((j + k) % 40)] = data[std::size_t(j)];
        for (double v : {-1.0, 1.0}) {
            Foot a = locate_foot(10, v, 0.3, 0.02, ax);
            Foot b = a;
            b.cell += k;
            for (auto q : {Quantity::F, Quantity::Rho}) {
                CHECK(upwind_first(FieldView(data, ax), a, q, dx) == upwind_first(FieldView(shifted, ax), b, q, dx));
                CHECK(offset_second(FieldView(data, ax), a, q, dx) == offset_second(FieldView(shifted, ax), b, q, dx));
            }
            CHECK(limited_explicit_flux_divergence(FieldView(data, ax), a, dx) ==
                  limited_explicit_flux_divergence(FieldView(shifted, ax), b, dx));
        }
    }
}
