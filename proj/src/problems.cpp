#include "kinsl/problems.hpp"

#include <cmath>

#include "kinsl/errors.hpp"
#include "kinsl/exact.hpp"

namespace kinsl {

namespace {

struct RiemannData {
    double left;
    double right;
};

RiemannData riemann_states(const std::string& problem)
{
    if (problem == "telegraph_riemann") return {2.0, 1.0};
    if (problem == "advdiff_riemann") return {4.0, 2.0};
    if (problem == "burgers_riemann") return {2.0, 1.0};
    throw ConfigError("no riemann data for problem '" + problem + "'");
}

// Equilibrium f for a Riemann state at velocity v.
double riemann_f(const std::string& problem, double rho, double v, double eps)
{
    if (problem == "burgers_riemann") return rho + v * eps * burgers_equilibrium_j(rho, eps);
    return rho;
}

}  // namespace

const std::vector<std::string>& problem_names()
{
    static const std::vector<std::string> names = {
        "telegraph_smooth", "advdiff_smooth",    "onegroup_smooth", "telegraph_riemann",     "advdiff_riemann",
        "burgers_riemann",  "onegroup_isotropic", "twod_manufactured", "twod_gaussian", "twod_gaussian_variable"};
    return names;
}

bool is_two_dimensional(const std::string& problem)
{
    return problem.rfind("twod_", 0) == 0;
}

KineticState initial_state_1d(const std::string& problem, const Axis& axis, const VelocitySpace& vs,
                              const SchemeConfig& scheme)
{
    const double eps = scheme.eps;
    KineticState s(vs.size(), std::size_t(axis.n));
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double v = vs.v(k);
        auto fk = s.f_slice(k);
        for (int i = 0; i < axis.n; ++i) {
            const double x = axis.node(i);
            double f;
            if (problem == "telegraph_smooth") {
                f = exact_telegraph(x, 0.0, eps, v).f;
            } else if (problem == "advdiff_smooth") {
                auto e = exact_advdiff(x, 0.0);
                f = e.rho + eps * v * e.j;
            } else if (problem == "onegroup_smooth") {
                f = 2.0 + std::sin(x) - eps * v * std::cos(x);
            } else if (problem == "onegroup_isotropic") {
                f = 0.0;
            } else if (problem == "telegraph_riemann" || problem == "advdiff_riemann" || problem == "burgers_riemann") {
                auto st = riemann_states(problem);
                const double fl = riemann_f(problem, st.left, v, eps);
                const double fr = riemann_f(problem, st.right, v, eps);
                f = x < 0.0 ? fl : (x > 0.0 ? fr : 0.5 * (fl + fr));
            } else {
                throw ConfigError("problem '" + problem + "' is not a 1D problem");
            }
            fk[std::size_t(i)] = f;
        }
    }
    s.correct_density(vs);
    return s;
}

KineticState initial_state_2d(const std::string& problem, const Axis& x, const Axis& y, const VelocitySpace& vs,
                              const SchemeConfig& scheme)
{
    const std::size_t np = std::size_t(x.n) * std::size_t(y.n);
    KineticState s(vs.size(), np);
    for (std::size_t k = 0; k < vs.size(); ++k) {
        auto fk = s.f_slice(k);
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < y.n; ++j) {
                const double xv = x.node(i), yv = y.node(j);
                double f;
                if (problem == "twod_manufactured")
                    f = manufactured_f(0.0, xv, yv, vs.component(k, 1), scheme.eps);
                else if (problem == "twod_gaussian" || problem == "twod_gaussian_variable")
                    f = gaussian_initial(xv, yv);
                else
                    throw ConfigError("problem '" + problem + "' is not a 2D problem");
                fk[std::size_t(i) * std::size_t(y.n) + std::size_t(j)] = f;
            }
    }
    s.correct_density(vs);
    return s;
}

Boundary1D boundary_data(const std::string& problem, const SchemeConfig& scheme)
{
    const double eps = scheme.eps;
    if (problem == "onegroup_isotropic")
        return {[](double, double) { return 1.0; }, [](double, double) { return 0.0; }};
    if (problem == "telegraph_riemann" || problem == "advdiff_riemann" || problem == "burgers_riemann") {
        auto st = riemann_states(problem);
        return {[=](double v, double) { return riemann_f(problem, st.left, v, eps); },
                [=](double v, double) { return riemann_f(problem, st.right, v, eps); }};
    }
    return {};
}

Problem1D make_problem_1d(const RunConfig& cfg)
{
    if (cfg.dim != 1) throw ConfigError("make_problem_1d: config is two-dimensional");
    SchemeConfig scheme = cfg.scheme;
    scheme.dt = cfg.resolved_dt();
    VelocitySpace vs = make_velocity_space(cfg.velocity);
    KineticState st = initial_state_1d(cfg.problem, cfg.grid_x, vs, scheme);
    Solver1D solver(scheme, cfg.grid_x, vs, boundary_data(cfg.problem, scheme));
    return {std::move(solver), std::move(st)};
}

Problem2D make_problem_2d(const RunConfig& cfg)
{
    if (cfg.dim != 2) throw ConfigError("make_problem_2d: config is one-dimensional");
    SchemeConfig scheme = cfg.scheme;
    scheme.dt = cfg.resolved_dt();
    VelocitySpace vs = make_velocity_space(cfg.velocity);
    KineticState st = initial_state_2d(cfg.problem, cfg.grid_x, cfg.grid_y, vs, scheme);
    Solver2D solver(scheme, cfg.grid_x, cfg.grid_y, vs, cfg.problem == "twod_manufactured");
    return {std::move(solver), std::move(st)};
}

bool has_exact_solution(const std::string& problem, double eps)
{
    if (problem == "telegraph_smooth") return eps <= 0.5;
    return problem == "advdiff_smooth" || problem == "twod_manufactured" || problem == "advdiff_riemann";
}

double exact_rho(const std::string& problem, double eps, double x, double y, double t)
{
    if (problem == "telegraph_smooth") return exact_telegraph(x, t, eps).rho;
    if (problem == "advdiff_smooth") return exact_advdiff(x, t).rho;
    if (problem == "twod_manufactured") return manufactured_rho(t, x, y);
    if (problem == "advdiff_riemann") return exact_riemann_erf(x, t, 4.0, 2.0);
    throw ConfigError("problem '" + problem + "' has no exact solution");
}

double exact_f(const std::string& problem, double eps, double x, double y, const std::array<double, 3>& v, double t)
{
    if (problem == "telegraph_smooth") return exact_telegraph(x, t, eps, v[0]).f;
    if (problem == "advdiff_smooth") {
        auto e = exact_advdiff(x, t);
        return e.rho + eps * v[0] * e.j;
    }
    if (problem == "twod_manufactured") return manufactured_f(t, x, y, v[1], eps);
    if (problem == "advdiff_riemann") return exact_riemann_erf(x, t, 4.0, 2.0);
    throw ConfigError("problem '" + problem + "' has no exact solution");
}

std::size_t designated_velocity(const VelocitySpace& vs)
{
    if (vs.kind == VelocityKind::DiscreteTwo) return 1;
    return 0;
}

}  // namespace kinsl
