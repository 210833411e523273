#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinsl/collision.hpp"
#include "kinsl/errors.hpp"

using namespace kinsl;

TEST_CASE("collision examples")
{
    CHECK(collide(Collision::telegraph(), 1.0, 1.0, 1.0, 0.1) == 0.0);
    CHECK(collide(Collision::advdiff(1.0), 1.0, 1.0, 1.0, 0.1) == doctest::Approx(0.1));
    CHECK(collide(Collision::burgers(0.5), 1.0, 1.0, 1.0, 0.1) == doctest::Approx(0.05));
    CHECK(collide(Collision::one_group(2.0, 0.0), 1.0, 3.0, 0.2, 0.1) == doctest::Approx(4.0));
}

TEST_CASE("collision conserves mass at equilibrium-shifted states")
{
    // <C(f)> = 0 whenever rho = <f>, for the linear models on the two-velocity space
    const auto vs = discrete_two();
    for (auto c : {Collision::telegraph(), Collision::advdiff(0.7)}) {
        const double p = 1.3, q = 0.4, rho = 0.5 * (p + q);
        std::vector<double> cf{collide(c, vs.v(0) < 0 ? q : p, rho, vs.v(0), 0.2),
                               collide(c, vs.v(1) < 0 ? q : p, rho, vs.v(1), 0.2)};
        CHECK(std::abs(velocity_average(cf, vs)) < 1e-15);
    }
    const auto gl = build_gauss_legendre(16);
    std::vector<double> f(gl.size()), cf(gl.size());
    for (std::size_t k = 0; k < gl.size(); ++k) f[k] = 1.0 + gl.v(k) + 0.3 * gl.v(k) * gl.v(k);
    const double rho = velocity_average(f, gl);
    for (std::size_t k = 0; k < gl.size(); ++k) cf[k] = collide(Collision::one_group(1.5, 0.0), f[k], rho, gl.v(k), 0.1);
    CHECK(std::abs(velocity_average(cf, gl)) < 1e-14);
}

TEST_CASE("limiting diffusion coefficient")
{
    CHECK(limiting_diffusion_coefficient(Collision::telegraph(), discrete_two(), 1e-6) == 1.0);
    const auto gl = build_gauss_legendre(16);
    CHECK(std::abs(limiting_diffusion_coefficient(Collision::one_group(1.0, 0.0), gl, 1e-8) - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(limiting_diffusion_coefficient(Collision::one_group(2.0, 1.0), gl, 1.0) - 1.0 / 9.0) < 1e-14);
    CHECK(std::abs(limiting_diffusion_coefficient(Collision::two_d(1.0, 0.0), lebedev86(), 1e-6, 1) - 1.0 / 3.0) <
          1e-10);
}

TEST_CASE("q2 is rejected")
{
    Collision q;
    q.kind = CollisionKind::Q2;
    CHECK_THROWS_AS(collide(q, 1.0, 1.0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(limiting_diffusion_coefficient(q, discrete_two(), 1.0), ConfigError);
    CHECK_THROWS_AS(collision_kind_from_string("bogus"), ConfigError);
}
