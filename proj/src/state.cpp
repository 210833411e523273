#include "kinsl/state.hpp"

#include <cmath>

#include "kinsl/errors.hpp"

namespace kinsl {

KineticState::KineticState(std::size_t nv, std::size_t np)
    : velocities(nv), points(np), f(nv * np, 0.0), rho(np, 0.0)
{
}

void KineticState::correct_density(const VelocitySpace& vs)
{
    rho = kinsl::correct_density(f, vs, points);
}

void KineticState::push_history(double dt)
{
    f_prev = f;
    rho_prev = rho;
    dt_prev = dt;
    has_history = true;
}

std::vector<double> correct_density(std::span<const double> f, const VelocitySpace& vs, std::size_t points)
{
    if (f.size() != vs.size() * points) throw ConfigError("correct_density: shape mismatch");
    std::vector<double> rho(points, 0.0);
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double w = vs.weights[k];
        const double* fk = f.data() + k * points;
        for (std::size_t i = 0; i < points; ++i) rho[i] += w * fk[i];
    }
    return rho;
}

TimeWeights time_weights(int order, bool has_history, double h, double h_prev)
{
    if (order == 1 || !has_history || !(h_prev > 0.0)) return {};
    const double w = h / h_prev;
    return {(1.0 + 2.0 * w) / (1.0 + w), 1.0 + w, w * w / (1.0 + w)};
}

std::vector<double> step_schedule(double t0, double t_end, double dt)
{
    if (!(dt > 0.0)) throw ConfigError("step_schedule: dt must be positive");
    std::vector<double> steps;
    const double span = t_end - t0;
    if (span <= 0.0) return steps;
    const double ratio = span / dt;
    double whole = std::floor(ratio);
    double frac = ratio - whole;
    if (frac > 1.0 - 1e-9) {
        whole += 1.0;
        frac = 0.0;
    } else if (frac < 1e-9) {
        frac = 0.0;
    }
    const auto n = std::size_t(whole);
    if (frac == 0.0) {
        // n equal steps, rescaled so they land on t_end
        steps.assign(n, span / double(n));
        return steps;
    }
    steps.assign(n, dt);
    steps.push_back(span - double(n) * dt);
    return steps;
}

}  // namespace kinsl
