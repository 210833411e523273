#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "kinsl/errors.hpp"
#include "kinsl/stability.hpp"

using namespace kinsl;

namespace {

const double pi = std::numbers::pi;

// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by Faddeev-LeVerrier.
std::vector<Complex> char_poly(const Eigen::MatrixXcd& a)
{
    const Eigen::Index n = a.rows();
    std::vector<Complex> c(std::size_t(n) + 1);
    c[std::size_t(n)] = 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[std::size_t(n - k + 1)] * Eigen::MatrixXcd::Identity(n, n);
        c[std::size_t(n - k)] = -(a * m).trace() / double(k);
    }
    return c;
}

// Durand-Kerner roots of a monic polynomial. Negligible trailing coefficients
// are factored out as roots at zero first.
std::vector<Complex> poly_roots(std::vector<Complex> c)
{
    double scale = 0.0;
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    std::size_t zeros = 0;
    while (c.size() > 2 && std::abs(c.front()) < 1e-14 * scale) {
        c.erase(c.begin());
        ++zeros;
    }
    const std::size_t n = c.size() - 1;
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(Complex(0.4, 0.9), double(k));
    auto p = [&](Complex x) {
        Complex s = 0.0;
        for (std::size_t k = n + 1; k-- > 0;) s = s * x + c[k];
        return s;
    };
    for (int it = 0; it < 5000; ++it) {
        double moved = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= z[k] - z[j];
            const Complex dz = p(z[k]) / den;
            z[k] -= dz;
            moved = std::max(moved, std::abs(dz));
        }
        if (moved < 1e-15) break;
    }
    z.insert(z.end(), zeros, Complex(0.0));
    return z;
}

// Largest distance from a root to the nearest unused eigenvalue.
double match_distance(std::vector<Complex> a, std::vector<Complex> b)
{
    double worst = 0.0;
    for (const auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

double spectral_radius(const Eigen::MatrixXcd& m)
{
    double r = 0.0;
    for (const auto& l : eigenvalues(m)) r = std::max(r, std::abs(l));
    return r;
}

}  // namespace

TEST_CASE("small eigenvalue problems")
{
    auto ev = eigenvalues(Eigen::MatrixXcd::Identity(4, 4));
    for (const auto& l : ev) CHECK(std::abs(l - 1.0) < 1e-15);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d.diagonal() << 0.5, 0.25, 0.0, -1.0;
    CHECK(match_distance({0.5, 0.25, 0.0, -1.0}, eigenvalues(d)) < 1e-15);

    CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXcd::Zero(2, 3)), ConfigError);
}

TEST_CASE("eigenvalues agree with polynomial roots")
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    for (int n : {4, 7})
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXcd a(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng)) / std::sqrt(double(n));
            CHECK(match_distance(poly_roots(char_poly(a)), eigenvalues(a)) < 1e-9);
        }

    const Eigen::MatrixXcd g1 = amplification_first({1, 0.1, 0.1, 1.0, pi / 2});
    CHECK(match_distance(poly_roots(char_poly(g1)), eigenvalues(g1)) < 1e-10);
}

TEST_CASE("constant mode at omega = 0")
{
    for (int order : {1, 2})
        for (double eps : {1e-8, 1e-2, 1.0, 100.0})
            for (double dt : {1e-3, 0.1, 10.0}) {
                const Eigen::MatrixXcd g = amplification_matrix({order, dt, 0.01, eps, 0.0});
                double closest = 1e300;
                for (const auto& l : eigenvalues(g)) closest = std::min(closest, std::abs(l - 1.0));
                CHECK(closest < 1e-9);
                CHECK(spectral_radius(g) <= 1.0 + 1e-9);
                CHECK(unit_modes_diagonalizable(g));
            }
    // the state f = rho = const is a fixed point
    const Eigen::MatrixXcd g1 = amplification_first({1, 0.3, 0.1, 0.5, 0.0});
    const Eigen::VectorXcd one1 = Eigen::VectorXcd::Ones(4);
    CHECK((g1 * one1 - one1).norm() < 1e-12);
    const Eigen::MatrixXcd g2 = amplification_second({2, 0.3, 0.1, 0.5, 0.0});
    const Eigen::VectorXcd one2 = Eigen::VectorXcd::Ones(7);
    CHECK((g2 * one2 - one2).norm() < 1e-12);
}

TEST_CASE("negative frequencies give conjugate matrices")
{
    for (int order : {1, 2})
        for (double w : {0.3, 1.7, 3.0}) {
            const auto a = amplification_matrix({order, 0.05, 0.01, 0.1, w});
            const auto b = amplification_matrix({order, 0.05, 0.01, 0.1, -w});
            CHECK((a - b.conjugate()).norm() < 1e-12 * (1.0 + a.norm()));
        }
}

TEST_CASE("diffusive limit is the heat step")
{
    const double dx = 1e-2, eps = 1e-10;
    for (double dt : {1e-3, 1e-2, 10.0})
        for (double w : {0.1, 1.0, pi}) {
            const double r = dt / (dx * dx), s = 2.0 - 2.0 * std::cos(w);
            const double be = 1.0 / (1.0 + r * s);
            CHECK(spectral_radius(amplification_first({1, dt, dx, eps, w})) == doctest::Approx(be).epsilon(1e-7));

            // BDF2: (3 + 2 r s) z^2 - 4 z + 1 = 0
            const Complex a = 3.0 + 2.0 * r * s, disc = std::sqrt(Complex(16.0) - 4.0 * a);
            const double bdf = std::max(std::abs((4.0 + disc) / (2.0 * a)), std::abs((4.0 - disc) / (2.0 * a)));
            CHECK(spectral_radius(amplification_second({2, dt, dx, eps, w})) == doctest::Approx(bdf).epsilon(1e-7));
            CHECK(bdf < 1.0);
        }
}

TEST_CASE("shift split and its seam")
{
    auto sp = amplification_shift(0.25, 0.1, 1.0);
    CHECK(sp.m == 2);
    CHECK(sp.xi == doctest::Approx(0.5));
    sp = amplification_shift(0.3, 0.1, 1.0);
    CHECK(sp.m == 2);
    CHECK(sp.xi == doctest::Approx(1.0));

    // the matrices are continuous as dt/(eps dx) rises to an integer
    for (int order : {1, 2})
        for (double w : {0.4, 2.2}) {
            const auto at = amplification_matrix({order, 0.3, 0.1, 1.0, w});
            const auto below = amplification_matrix({order, 0.3 * (1.0 - 1e-9), 0.1, 1.0, w});
            CHECK((at - below).norm() < 1e-7);
        }
}

TEST_CASE("stability verdicts")
{
    SUBCASE("unconditional stability in the diffusive regime")
    {
        for (int order : {1, 2}) {
            const auto v = check_stability({order, 10.0, 1e-2, 1e-10, 0.0}, 200);
            CHECK(v.stable);
            CHECK(v.diagonalizable_checked);
        }
    }
    SUBCASE("explicit upwind at Courant number 2 is unstable")
    {
        const auto v = check_matrix_family(
            [](double w) {
                return Eigen::MatrixXcd::Constant(1, 1, 1.0 - 2.0 * (1.0 - std::exp(Complex(0.0, -w))));
            },
            101);
        CHECK_FALSE(v.stable);
        CHECK(v.max_modulus == doctest::Approx(3.0));
    }
    SUBCASE("a Jordan block on the unit circle is rejected")
    {
        Eigen::MatrixXcd j(2, 2);
        j << 1.0, 1.0, 0.0, 1.0;
        CHECK_FALSE(unit_modes_diagonalizable(j));
        CHECK_FALSE(check_matrix_family([&](double) { return j; }, 10).stable);
        CHECK(check_matrix_family([](double) { return Eigen::MatrixXcd::Identity(2, 2); }, 10).stable);
    }
    SUBCASE("omega samples")
    {
        const auto w = omega_samples(5);
        REQUIRE(w.size() == 6);
        CHECK(w.front() == doctest::Approx(-pi));
        CHECK(w[4] == doctest::Approx(pi));
        CHECK(w.back() == 0.0);
        CHECK_THROWS_AS(omega_samples(1), ConfigError);
    }
}

TEST_CASE("sweep")
{
    SweepGrid one;
    one.orders = {2};
    one.dx = {1e-2};
    one.dt_factor = {1e3};
    one.eps = {1e-10};
    const auto rows = sweep(one, 100);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].dt == doctest::Approx(10.0));
    CHECK(rows[0].verdict.stable);

    CHECK(SweepGrid::paper().size() == 2 * 4 * 7 * 16);
    CHECK_THROWS_AS(sweep(SweepGrid{}, 100), ConfigError);

    std::ostringstream os;
    write_stability_csv(os, rows);
    const std::string text = os.str();
    CHECK(text.rfind("order,dx,dt,eps,max_modulus,stable,marginal\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
