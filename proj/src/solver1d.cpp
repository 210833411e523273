#include "kinsl/solver1d.hpp"

#include <algorithm>
#include <cmath>

#include "kinsl/banded.hpp"
#include "kinsl/collision.hpp"
#include "kinsl/errors.hpp"
#include "kinsl/parallel.hpp"
#include "kinsl/semilag.hpp"

namespace kinsl {

namespace {

// First or second order upwind derivative of a nodal field at node i,
// leaning left when s > 0.
double upwind_derivative(const FieldView& a, std::int64_t i, int s, int order, double dx)
{
    const std::int64_t d = s >= 0 ? 1 : -1;
    if (order == 1) return double(d) * (a(i) - a(i - d)) / dx;
    return double(d) * (3.0 * a(i) - 4.0 * a(i - d) + a(i - 2 * d)) / (2.0 * dx);
}

}  // namespace

Solver1D::Solver1D(SchemeConfig cfg, Axis axis, VelocitySpace vs, Boundary1D bc, std::function<double(double)> source)
    : cfg_(std::move(cfg)), axis_(axis), vs_(std::move(vs)), bc_(std::move(bc)), source_(std::move(source))
{
    cfg_.validate();
    if (cfg_.collision.kind == CollisionKind::TwoD) throw ConfigError("solver1d: collision twod needs the 2D solver");
    if (cfg_.order == 2 && axis_.n < 5) throw ConfigError("solver1d: order 2 needs at least 5 nodes");
    if (!axis_.periodic() && (!bc_.left || !bc_.right))
        throw ConfigError("solver1d: bounded axis needs inflow data on both sides");
}

double Solver1D::stiffness() const
{
    return cfg_.mu();
}

double Solver1D::one_minus_decay(double h) const
{
    return -std::expm1(-cfg_.mu() * h);
}

double Solver1D::resolve_boundary(std::span<const double> f_source, Side side, std::size_t k, double t) const
{
    const double v = vs_.v(k);
    const std::size_t n = axis_.n;
    const double* fk = f_source.data() + k * n;
    if (side == Side::Left) {
        if (v > 0.0) return bc_.left(v, t);
        return 2.0 * fk[1] - fk[2];
    }
    if (v < 0.0) return bc_.right(v, t);
    return 2.0 * fk[n - 2] - fk[n - 3];
}

double Solver1D::boundary_density(std::span<const double> f_source, Side side, double t) const
{
    double rho = 0.0;
    for (std::size_t k = 0; k < vs_.size(); ++k) rho += vs_.weights[k] * resolve_boundary(f_source, side, k, t);
    return rho;
}

std::vector<double> Solver1D::transport_term(const KineticState& s, double h) const
{
    const std::size_t n = s.points;
    const double dx = axis_.spacing();
    const bool limited = cfg_.limiter && cfg_.order == 2;
    std::vector<double> out(n, 0.0);
    FieldView rho(s.rho, axis_);
    for (std::size_t k = 0; k < vs_.size(); ++k) {
        const double v = vs_.v(k);
        if (v == 0.0) continue;
        FieldView fk(s.f_slice(k), axis_);
        const double wv = vs_.weights[k] * v;
        for (std::size_t i = 0; i < n; ++i) {
            Foot foot = locate_foot(std::int64_t(i), v, cfg_.eps, h, axis_);
            double df = derivative_at_foot(fk, foot, Quantity::F, cfg_.order, limited, dx);
            double dr = derivative_at_foot(rho, foot, Quantity::Rho, cfg_.order, false, dx);
            out[i] += wv * (df - dr);
        }
    }
    return out;
}

std::vector<double> Solver1D::macro_step(const KineticState& s, double h, const TimeWeights& w,
                                         std::span<const double> lagged) const
{
    const int n = axis_.n;
    const double dx = axis_.spacing();
    const double decay = decay_factor(cfg_.mu() * h);
    const double omd = one_minus_decay(h);
    const double D = limiting_diffusion_coefficient(cfg_.collision, vs_, cfg_.eps);
    const Collision& col = cfg_.collision;
    const bool periodic = axis_.periodic();

    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double r = w.a_cur * s.rho[std::size_t(i)];
        if (w.a_prev != 0.0) r -= w.a_prev * s.rho_prev[std::size_t(i)];
        rhs[std::size_t(i)] = r;
    }

    const double coef = decay / cfg_.eps;
    if (coef >= 1e-300) {
        auto tr = transport_term(s, h);
        for (int i = 0; i < n; ++i) rhs[std::size_t(i)] -= h * coef * tr[std::size_t(i)];
    }

    const int band = (col.kind == CollisionKind::AdvDiff && cfg_.order == 2) ? 2 : 1;
    BandMatrix m(n, band, band, periodic);
    const double lam = h * D * omd / (dx * dx);
    for (int i = 0; i < n; ++i) {
        m.at(i, 0) = static_cast<long double>(w.a_new) + 2.0L * lam;
        m.at(i, -1) = -lam;
        m.at(i, 1) = -lam;
    }

    if (col.kind == CollisionKind::AdvDiff) {
        const double a = h * vs_.second_moment() * col.A * omd;
        const int d = a >= 0.0 ? 1 : -1;
        const double q = std::abs(a) / dx;
        for (int i = 0; i < n; ++i) {
            const bool near = !periodic && (i - 2 * d < 0 || i - 2 * d >= n);
            if (cfg_.order == 1 || near) {
                m.at(i, 0) += q;
                m.at(i, -d) -= q;
            } else {
                m.at(i, 0) += 1.5L * q;
                m.at(i, -d) -= 2.0L * q;
                m.at(i, -2 * d) += 0.5L * q;
            }
        }
    }

    if (col.kind == CollisionKind::OneGroup) {
        for (int i = 0; i < n; ++i) {
            m.at(i, 0) += h * col.sigma_a;
            if (source_) rhs[std::size_t(i)] += h * source_(axis_.node(i));
        }
    }

    if (col.kind == CollisionKind::Burgers) {
        const double cb = h * col.C * omd;
        const double m2 = vs_.second_moment();
        std::span<const double> lag = lagged.empty() ? std::span<const double>(s.rho) : lagged;
        std::vector<double> sq(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) sq[std::size_t(i)] = lag[std::size_t(i)] * lag[std::size_t(i)];
        FieldView sqv(sq, axis_);
        for (int i = 0; i < n; ++i) {
            const int sgn = lag[std::size_t(i)] >= 0.0 ? 1 : -1;
            rhs[std::size_t(i)] -= cb * m2 * upwind_derivative(sqv, i, sgn, cfg_.order, dx);
        }
        // < v^2 (rho - f)^2 >_x at the feet, from level n
        std::vector<double> g(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < vs_.size(); ++k) {
            const double v = vs_.v(k);
            auto fk = s.f_slice(k);
            for (int i = 0; i < n; ++i) {
                double d = s.rho[std::size_t(i)] - fk[std::size_t(i)];
                g[std::size_t(i)] = d * d;
            }
            FieldView gv(g, axis_);
            const double wv2 = vs_.weights[k] * v * v;
            for (int i = 0; i < n; ++i) {
                Foot foot = locate_foot(i, v, cfg_.eps, h, axis_);
                double dg = cfg_.order == 1 ? upwind_first(gv, foot, Bias::Right, dx)
                                            : offset_second(gv, foot, Bias::Right, dx);
                rhs[std::size_t(i)] += cb * wv2 * dg;
            }
        }
    }

    if (!periodic) {
        const double t1 = s.t + h;
        for (int edge : {0, n - 1}) {
            for (int o = -band; o <= band; ++o) m.at(edge, o) = 0.0;
            m.at(edge, 0) = 1.0;
            rhs[std::size_t(edge)] = boundary_density(s.f, edge == 0 ? Side::Left : Side::Right, t1);
        }
        // drop entries that would reach outside the domain
        for (int i = 0; i < n; ++i)
            for (int o = -band; o <= band; ++o)
                if (i + o < 0 || i + o >= n) m.at(i, o) = 0.0;
    }

    auto sigma = m.solve(rhs);
    if (verify_) max_residual_ = std::max(max_residual_, relative_residual(m, sigma, rhs));
    return sigma;
}

std::vector<double> Solver1D::micro_step(const KineticState& s, std::span<const double> sigma, double h,
                                         const TimeWeights& w, std::span<const double> f_lagged) const
{
    const int n = axis_.n;
    const std::size_t np = s.points;
    const double dx = axis_.spacing();
    const Collision& col = cfg_.collision;
    const bool periodic = axis_.periodic();
    const bool limited = cfg_.limiter && cfg_.order == 2;
    const double eps = cfg_.eps;
    const double t1 = s.t + h;
    const double diag_stiff = h * stiffness();

    std::vector<double> out(vs_.size() * np);
    std::vector<double> residuals(vs_.size(), 0.0);

    parallel_for(vs_.size(), [&](std::size_t k) {
        const double v = vs_.v(k);
        const int d = v >= 0.0 ? 1 : -1;
        const double speed = std::abs(v) * h / (eps * dx);
        auto fn = s.f_slice(k);
        std::span<const double> fl = f_lagged.empty() ? fn : f_lagged.subspan(k * np, np);

        const int reach = cfg_.order == 1 ? 1 : 2;
        BandMatrix m(n, d > 0 ? reach : 0, d > 0 ? 0 : reach, periodic);
        std::vector<double> rhs(np);
        FieldView fview(fn, axis_);

        for (int i = 0; i < n; ++i) {
            const std::size_t iu = std::size_t(i);
            double r = w.a_cur * fn[iu];
            if (w.a_prev != 0.0) r -= w.a_prev * s.f_prev_slice(k)[iu];
            const double sg = sigma[iu];
            switch (col.kind) {
                case CollisionKind::Telegraph: r += h * sg / (eps * eps); break;
                case CollisionKind::AdvDiff: r += h * (sg + col.A * eps * v * sg) / (eps * eps); break;
                case CollisionKind::Burgers: {
                    double q = sg - fl[iu];
                    r += h * (sg + col.C * eps * v * (sg * sg - q * q)) / (eps * eps);
                    break;
                }
                case CollisionKind::OneGroup:
                    r += h * col.sigma_s * sg / (eps * eps);
                    if (source_) r += h * source_(axis_.node(i));
                    break;
                default: throw ConfigError("solver1d: unsupported collision");
            }
            rhs[iu] = r;

            UpwindCoefficients c;
            const bool near = !periodic && (i - 2 * d < 0 || i - 2 * d >= n);
            if (cfg_.order == 1 || near)
                c = unlimited_coefficients(1);
            else if (limited)
                c = limited_implicit_coefficients(fview, i, d);
            else
                c = unlimited_coefficients(2);
            m.at(i, 0) = static_cast<long double>(w.a_new) + diag_stiff + static_cast<long double>(speed) * c.c0;
            m.at(i, -d) = static_cast<long double>(speed) * c.c1;
            if (reach == 2) m.at(i, -2 * d) = static_cast<long double>(speed) * c.c2;
        }

        if (!periodic) {
            const int inflow = d > 0 ? 0 : n - 1;
            for (int o = -reach; o <= reach; ++o)
                if (o >= -m.lower() && o <= m.upper()) m.at(inflow, o) = 0.0;
            m.at(inflow, 0) = 1.0;
            rhs[std::size_t(inflow)] = d > 0 ? bc_.left(v, t1) : bc_.right(v, t1);
            for (int i = 0; i < n; ++i)
                for (int o = -m.lower(); o <= m.upper(); ++o)
                    if (i + o < 0 || i + o >= n) m.at(i, o) = 0.0;
        }

        auto x = m.solve(rhs);
        if (verify_) residuals[k] = relative_residual(m, x, rhs);
        std::copy(x.begin(), x.end(), out.begin() + std::ptrdiff_t(k * np));
    });

    if (verify_)
        for (double r : residuals) max_residual_ = std::max(max_residual_, r);
    return out;
}

Solver1D::PicardResult Solver1D::picard_burgers(const KineticState& s, double h, const TimeWeights& w) const
{
    const Collision& col = cfg_.collision;
    PicardResult res;
    std::vector<double> sigma_prev = s.rho;
    std::vector<double> f_prev = s.f;
    double change = 0.0;
    for (int it = 1; it <= col.picard_max; ++it) {
        auto sigma = macro_step(s, h, w, sigma_prev);
        auto f = micro_step(s, sigma, h, w, f_prev);
        change = 0.0;
        for (std::size_t i = 0; i < sigma.size(); ++i) change = std::max(change, std::abs(sigma[i] - sigma_prev[i]));
        if (!std::isfinite(change)) throw SolverError("picard iteration diverged");
        sigma_prev = std::move(sigma);
        f_prev = std::move(f);
        if (change < col.picard_tol) {
            res.sigma = std::move(sigma_prev);
            res.f = std::move(f_prev);
            res.iterations = it;
            res.change = change;
            return res;
        }
    }
    throw ConvergenceError("picard iteration did not converge in " + std::to_string(col.picard_max) + " iterations",
                           change);
}

StepReport Solver1D::step(KineticState& s, double h) const
{
    if (s.points != std::size_t(axis_.n) || s.velocities != vs_.size())
        throw ConfigError("solver1d: state shape does not match grid and velocity space");
    if (!(h > 0.0)) throw ConfigError("solver1d: step must be positive");
    const TimeWeights w = time_weights(cfg_.order, s.has_history, h, s.dt_prev);
    StepReport report;
    std::vector<double> f;
    if (cfg_.collision.kind == CollisionKind::Burgers) {
        auto pr = picard_burgers(s, h, w);
        f = std::move(pr.f);
        report.picard_iterations = pr.iterations;
        report.picard_change = pr.change;
    } else {
        auto sigma = macro_step(s, h, w);
        f = micro_step(s, sigma, h, w);
    }
    s.push_history(h);
    s.f = std::move(f);
    s.correct_density(vs_);
    s.t += h;
    return report;
}

RunStats run_until(const Solver1D& solver, KineticState& s, double t_end, double dt)
{
    RunStats stats;
    const double t0 = s.t;
    auto steps = step_schedule(t0, t_end, dt);
    for (std::size_t j = 0; j < steps.size(); ++j) {
        auto r = solver.step(s, steps[j]);
        if (solver.config().collision.kind == CollisionKind::Burgers) stats.picard_iterations.push_back(r.picard_iterations);
        ++stats.steps;
    }
    if (!steps.empty()) s.t = t_end;
    return stats;
}

}  // namespace kinsl
