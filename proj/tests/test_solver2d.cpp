#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "kinsl/errors.hpp"
#include "kinsl/solver2d.hpp"

using namespace kinsl;

namespace {

SchemeConfig scheme2d(double sigma_s, double eps, double dt, int order)
{
    SchemeConfig s;
    s.collision = Collision::two_d(sigma_s, 0.0);
    s.eps = eps;
    s.dt = dt;
    s.order = order;
    return s;
}

template <class F>
KineticState make_state(const Solver2D& solver, F f)
{
    const auto& vs = solver.velocities();
    const Axis& x = solver.x_axis();
    const Axis& y = solver.y_axis();
    KineticState s(vs.size(), solver.points());
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < y.n; ++j)
                s.f[k * s.points + std::size_t(i) * std::size_t(y.n) + std::size_t(j)] =
                    f(x.node(i), y.node(j), vs.nodes[k]);
    s.correct_density(vs);
    return s;
}

double total(const std::vector<double>& v)
{
    long double m = 0.0L;
    for (double r : v) m += r;
    return double(m);
}

}  // namespace

TEST_CASE("variable scattering coefficient")
{
    CHECK(variable_sigma(0.0, 0.0) == doctest::Approx(0.001));
    CHECK(variable_sigma(1.0, 0.0) == 1.0);
    CHECK(variable_sigma(-0.8, 0.9) == 1.0);
    const double c = 0.5, r2 = std::sqrt(2.0);
    const double oracle = 0.999 * std::pow(c, 4) * std::pow(c + r2, 2) * std::pow(c - r2, 2) + 0.001;
    CHECK(variable_sigma(0.3, 0.4) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(oracle == doctest::Approx(0.19).epsilon(0.05));
}

TEST_CASE("manufactured solution")
{
    const auto leb = lebedev86();
    for (double eps : {1.0, 1e-3}) {
        std::vector<double> f(leb.size());
        for (std::size_t k = 0; k < leb.size(); ++k) f[k] = manufactured_f(0.4, 0.13, 0.71, leb.nodes[k][1], eps);
        CHECK(std::abs(velocity_average(f, leb) - manufactured_rho(0.4, 0.13, 0.71)) < 1e-14);
    }
    CHECK(manufactured_rho(0.0, 0.5, 0.3) == doctest::Approx(0.0).epsilon(1e-30));
}

TEST_CASE("manufactured source against finite differences")
{
    const double h = 1e-5;
    for (double eps : {1.0, 0.3})
        for (const auto& v : {std::array<double, 3>{0.6, 0.0, 0.8}, std::array<double, 3>{-0.48, 0.6, 0.64}}) {
            const double t = 0.3, x = 0.17, y = 0.62;
            auto f = [&](double tt, double xx, double yy) { return manufactured_f(tt, xx, yy, v[1], eps); };
            const double ft = (f(t + h, x, y) - f(t - h, x, y)) / (2 * h);
            const double fx = (f(t, x + h, y) - f(t, x - h, y)) / (2 * h);
            const double fy = (f(t, x, y + h) - f(t, x, y - h)) / (2 * h);
            const double rho = manufactured_rho(t, x, y);
            const double g = ft + (v[0] * fx + v[1] * fy) / eps - (rho - f(t, x, y)) / (eps * eps);
            CHECK(manufactured_source_2d(t, x, y, v, eps) == doctest::Approx(g).epsilon(1e-7));

            auto gsrc = [&](double xx, double yy) { return manufactured_source_2d(t, xx, yy, v, eps); };
            const auto grad = manufactured_source_gradient_2d(t, x, y, v, eps);
            CHECK(grad[0] == doctest::Approx((gsrc(x + h, y) - gsrc(x - h, y)) / (2 * h)).epsilon(1e-6));
            CHECK(grad[1] == doctest::Approx((gsrc(x, y + h) - gsrc(x, y - h)) / (2 * h)).epsilon(1e-6));
        }
}

TEST_CASE("source parity in eta")
{
    // G(eta) - G(-eta) only carries the eta-odd factor (eta + eta^3)/3
    const double t = 0.2, x = 0.3, y = 0.1, eps = 0.5;
    const std::array<double, 3> up{0.36, 0.48, 0.8}, down{0.36, -0.48, 0.8};
    const double hv = (0.48 + std::pow(0.48, 3)) / 3.0;
    const double e = std::exp(-t);
    const double pi = std::numbers::pi;
    const double S = std::pow(std::sin(2 * pi * x) * std::sin(2 * pi * y), 2);
    const double Sx = 2 * pi * std::sin(4 * pi * x) * std::pow(std::sin(2 * pi * y), 2);
    const double Sy = 2 * pi * std::sin(4 * pi * y) * std::pow(std::sin(2 * pi * x), 2);
    const double odd = e * (-S * eps * hv + eps * hv * 0.36 * Sx / eps + 0.48 * Sy / eps + S * hv / eps);
    const double diff = manufactured_source_2d(t, x, y, up, eps) - manufactured_source_2d(t, x, y, down, eps);
    CHECK(diff == doctest::Approx(2.0 * odd).epsilon(1e-12));

    // where S and its gradient vanish, G vanishes for every velocity
    for (const auto& v : {up, down}) CHECK(std::abs(manufactured_source_2d(t, 0.5, 0.0, v, eps)) < 1e-14);
}

TEST_CASE("constant state is unchanged")
{
    Axis ax(0.0, 1.0, 12, BoundaryKind::Periodic);
    for (int order : {1, 2}) {
        Solver2D solver(scheme2d(1.0, 1e-3, 0.25, order), ax, ax, lebedev86());
        auto s = make_state(solver, [](double, double, const std::array<double, 3>&) { return 0.9; });
        for (int n = 0; n < 3; ++n) solver.step(s);
        for (double f : s.f) CHECK(std::abs(f - 0.9) < 1e-12);
    }
}

TEST_CASE("2D mass conservation")
{
    Axis ax(0.0, 1.0, 16, BoundaryKind::Periodic);
    const double pi = std::numbers::pi;
    for (int order : {1, 2})
        for (double eps : {1.0, 1e-2, 1e-6}) {
            Solver2D solver(scheme2d(1.5, eps, 0.2, order), ax, ax, lebedev86());
            auto s = make_state(solver, [&](double x, double y, const std::array<double, 3>& v) {
                return 2.0 + std::sin(2 * pi * x) * std::cos(2 * pi * y) + 0.3 * v[0] * std::cos(4 * pi * y) +
                       (x < 0.5 ? 0.4 * v[1] : 0.0);
            });
            const double m0 = total(s.rho);
            for (int n = 0; n < 5; ++n) {
                solver.step(s);
                CHECK(std::abs(total(s.rho) - m0) / m0 < 1e-11);
            }
        }
}

TEST_CASE("vanishing eps reduces the 2D macro step to a heat step")
{
    const int n = 12;
    Axis ax(0.0, 1.0, n, BoundaryKind::Periodic);
    const double h = 0.02, dx = ax.spacing(), sig = 2.0;
    const double pi = std::numbers::pi;
    Solver2D solver(scheme2d(sig, 1e-10, h, 1), ax, ax, lebedev86());
    solver.set_verify_solves(true);
    auto s = make_state(solver, [&](double x, double y, const std::array<double, 3>&) {
        return 1.0 + std::sin(2 * pi * x) * std::cos(4 * pi * y) + 0.5 * std::cos(2 * pi * (x + y));
    });
    const auto sigma = solver.macro_step(s, h, time_weights(1, false, h, 0.0));

    const int np = n * n;
    const double r = h * (1.0 / 3.0) / sig / (dx * dx);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(np, np);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int p = i * n + j;
            m(p, p) += 4 * r;
            m(p, ((i + 1) % n) * n + j) -= r;
            m(p, ((i + n - 1) % n) * n + j) -= r;
            m(p, i * n + (j + 1) % n) -= r;
            m(p, i * n + (j + n - 1) % n) -= r;
        }
    const Eigen::VectorXd ref = m.lu().solve(Eigen::Map<const Eigen::VectorXd>(s.rho.data(), np));
    for (int p = 0; p < np; ++p) CHECK(std::abs(sigma[std::size_t(p)] - ref(p)) < 1e-8);

    const auto f = solver.micro_step(s, sigma, h, time_weights(1, false, h, 0.0));
    for (std::size_t k = 0; k < solver.velocities().size(); ++k)
        for (int p = 0; p < np; ++p) CHECK(std::abs(f[k * np + std::size_t(p)] - sigma[std::size_t(p)]) < 1e-8);
}

TEST_CASE("2D solver rejects unsupported setups")
{
    Axis per(0.0, 1.0, 8, BoundaryKind::Periodic), bnd(0.0, 1.0, 8, BoundaryKind::InflowOutflow);
    CHECK_THROWS_AS(Solver2D(scheme2d(1.0, 1.0, 0.1, 1), per, bnd, lebedev86()), ConfigError);
    SchemeConfig tg;
    CHECK_THROWS_AS(Solver2D(tg, per, per, lebedev86()), ConfigError);
}
