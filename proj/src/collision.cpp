#include "kinsl/collision.hpp"

#include "kinsl/errors.hpp"

namespace kinsl {

double collide(const Collision& c, double f, double rho, double v, double eps)
{
    switch (c.kind) {
        case CollisionKind::Telegraph: return rho - f;
        case CollisionKind::AdvDiff: return rho - f + c.A * eps * v * rho;
        case CollisionKind::Burgers: {
            double d = rho - f;
            return d + c.C * eps * v * (rho * rho - d * d);
        }
        case CollisionKind::OneGroup:
        case CollisionKind::TwoD: return c.sigma_s * (rho - f);
        case CollisionKind::Q2: break;
    }
    throw ConfigError("collision operator q2 is not supported");
}

double limiting_diffusion_coefficient(const Collision& c, const VelocitySpace& vs, double eps, double sigma_s,
                                      int axis)
{
    const double m2 = vs.second_moment(axis);
    switch (c.kind) {
        case CollisionKind::Telegraph:
        case CollisionKind::AdvDiff:
        case CollisionKind::Burgers: return m2;
        case CollisionKind::OneGroup:
        case CollisionKind::TwoD: return m2 / (sigma_s + eps * eps * c.sigma_a);
        case CollisionKind::Q2: break;
    }
    throw ConfigError("collision operator q2 is not supported");
}

double limiting_diffusion_coefficient(const Collision& c, const VelocitySpace& vs, double eps, int axis)
{
    return limiting_diffusion_coefficient(c, vs, eps, c.sigma_s, axis);
}

}  // namespace kinsl
