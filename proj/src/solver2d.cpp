#include "kinsl/solver2d.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "kinsl/collision.hpp"
#include "kinsl/errors.hpp"
#include "kinsl/parallel.hpp"
#include "kinsl/semilag.hpp"

namespace kinsl {

namespace {

constexpr double pi = std::numbers::pi;

struct SFactors {
    double S, Sx, Sy, Sxx, Syy, Sxy;
};

SFactors s_factors(double x, double y)
{
    const double sx = std::sin(2 * pi * x), sy = std::sin(2 * pi * y);
    const double ax = sx * sx, ay = sy * sy;
    const double dax = 2 * pi * std::sin(4 * pi * x), day = 2 * pi * std::sin(4 * pi * y);
    const double ddax = 8 * pi * pi * std::cos(4 * pi * x), dday = 8 * pi * pi * std::cos(4 * pi * y);
    return {ax * ay, dax * ay, ax * day, ddax * ay, ax * dday, dax * day};
}

double hfun(double eta) { return (eta + eta * eta * eta) / 3.0; }

std::int64_t wrap(std::int64_t i, std::int64_t n)
{
    i %= n;
    return i < 0 ? i + n : i;
}

// Interpolation of a periodic line at fractional index s.
struct Interp {
    std::int64_t base = 0;
    int count = 1;
    double w[3] = {1.0, 0.0, 0.0};
};

Interp make_interp(double s, int order)
{
    Interp it;
    if (order == 1) {
        double b = std::floor(s);
        double th = s - b;
        it.base = std::int64_t(b);
        it.count = 2;
        it.w[0] = 1.0 - th;
        it.w[1] = th;
        return it;
    }
    double b = std::round(s);
    double th = s - b;
    it.base = std::int64_t(b) - 1;
    it.count = 3;
    it.w[0] = 0.5 * th * (th - 1.0);
    it.w[1] = 1.0 - th * th;
    it.w[2] = 0.5 * th * (th + 1.0);
    return it;
}

}  // namespace

double variable_sigma(double x, double y)
{
    const double c = std::sqrt(x * x + y * y);
    if (c >= 1.0) return 1.0;
    const double r2 = std::numbers::sqrt2;
    const double a = (c + r2) * (c - r2);
    return 0.999 * c * c * c * c * a * a + 0.001;
}

double gaussian_initial(double x, double y)
{
    const double s2 = 1e-2;
    return std::exp(-(x * x + y * y) / (4.0 * s2)) / (4.0 * pi * s2);
}

double manufactured_rho(double t, double x, double y)
{
    return std::exp(-t) * s_factors(x, y).S;
}

double manufactured_f(double t, double x, double y, double eta, double eps)
{
    return manufactured_rho(t, x, y) * (1.0 + eps * hfun(eta));
}

double manufactured_source_2d(double t, double x, double y, const std::array<double, 3>& v, double eps)
{
    const auto s = s_factors(x, y);
    const double h = hfun(v[1]);
    const double e = std::exp(-t);
    return e * (-s.S * (1.0 + eps * h) + (1.0 + eps * h) * (v[0] * s.Sx + v[1] * s.Sy) / eps + s.S * h / eps);
}

std::array<double, 2> manufactured_source_gradient_2d(double t, double x, double y, const std::array<double, 3>& v,
                                                      double eps)
{
    const auto s = s_factors(x, y);
    const double h = hfun(v[1]);
    const double e = std::exp(-t);
    const double gx = -s.Sx * (1.0 + eps * h) + (1.0 + eps * h) * (v[0] * s.Sxx + v[1] * s.Sxy) / eps + s.Sx * h / eps;
    const double gy = -s.Sy * (1.0 + eps * h) + (1.0 + eps * h) * (v[0] * s.Sxy + v[1] * s.Syy) / eps + s.Sy * h / eps;
    return {e * gx, e * gy};
}

Solver2D::Solver2D(SchemeConfig cfg, Axis x, Axis y, VelocitySpace vs, bool manufactured)
    : cfg_(std::move(cfg)), x_(x), y_(y), vs_(std::move(vs)), manufactured_(manufactured)
{
    cfg_.validate();
    if (cfg_.collision.kind != CollisionKind::TwoD) throw ConfigError("solver2d: collision must be twod");
    if (!x_.periodic() || !y_.periodic()) throw ConfigError("solver2d: only periodic boundaries are supported");
    if (cfg_.limiter) throw ConfigError("solver2d: limiter is not supported in 2D");
    if (cfg_.order == 2 && (x_.n < 5 || y_.n < 5)) throw ConfigError("solver2d: order 2 needs at least 5 nodes");
    sigma_.resize(points());
    for (int i = 0; i < x_.n; ++i)
        for (int j = 0; j < y_.n; ++j)
            sigma_[std::size_t(i) * std::size_t(y_.n) + std::size_t(j)] =
                cfg_.collision.variable_sigma ? variable_sigma(x_.node(i), y_.node(j)) : cfg_.collision.sigma_s;
}

std::vector<double> Solver2D::transport_term(const KineticState& s, double h) const
{
    const std::int64_t nx = x_.n, ny = y_.n;
    const std::size_t np = points();
    const double dx = x_.spacing(), dy = y_.spacing();
    const double eps = cfg_.eps;
    const int order = cfg_.order;

    std::vector<std::vector<double>> partial(vs_.size());
    parallel_for(vs_.size(), [&](std::size_t k) {
        const double xi = vs_.component(k, 0), eta = vs_.component(k, 1);
        auto fk = s.f_slice(k);
        std::vector<double> out(np, 0.0);
        std::vector<double> line_f, line_r, deriv(np);
        auto add_axis = [&](int axis, double c) {
            if (c == 0.0) return;
            const Axis& a = axis == 0 ? x_ : y_;
            const std::int64_t na = axis == 0 ? nx : ny;
            const std::int64_t nb = axis == 0 ? ny : nx;
            const double da = axis == 0 ? dx : dy;
            const double other = axis == 0 ? eta : xi;
            const double db = axis == 0 ? dy : dx;
            auto index = [&](std::int64_t ia, std::int64_t ib) {
                return std::size_t(axis == 0 ? ia * ny + ib : ib * ny + ia);
            };
            line_f.assign(std::size_t(na), 0.0);
            line_r.assign(std::size_t(na), 0.0);
            // derivative along `axis` at the 1D foot, for every line
            for (std::int64_t ib = 0; ib < nb; ++ib) {
                for (std::int64_t ia = 0; ia < na; ++ia) {
                    line_f[std::size_t(ia)] = fk[index(ia, ib)];
                    line_r[std::size_t(ia)] = s.rho[index(ia, ib)];
                }
                FieldView vf(line_f, a), vr(line_r, a);
                for (std::int64_t ia = 0; ia < na; ++ia) {
                    Foot foot = locate_foot(ia, c, eps, h, a);
                    deriv[index(ia, ib)] = derivative_at_foot(vf, foot, Quantity::F, order, false, da) -
                                           derivative_at_foot(vr, foot, Quantity::Rho, order, false, da);
                }
            }
            // evaluate at the foot in the other direction
            const double shift = other * h / (eps * db);
            for (std::int64_t ib = 0; ib < nb; ++ib) {
                Interp it = other == 0.0 ? Interp{} : make_interp(double(ib) - shift, order);
                if (other == 0.0) it.base = ib;
                for (std::int64_t ia = 0; ia < na; ++ia) {
                    double v = 0.0;
                    for (int q = 0; q < it.count; ++q) v += it.w[q] * deriv[index(ia, wrap(it.base + q, nb))];
                    out[index(ia, ib)] += c * v;
                }
            }
        };
        add_axis(0, xi);
        add_axis(1, eta);
        partial[k] = std::move(out);
    });

    std::vector<double> total(np, 0.0);
    for (std::size_t k = 0; k < vs_.size(); ++k) {
        const double wk = vs_.weights[k];
        for (std::size_t p = 0; p < np; ++p) total[p] += wk * partial[k][p];
    }
    return total;
}

std::vector<double> Solver2D::macro_step(const KineticState& s, double h, const TimeWeights& w) const
{
    const int nx = x_.n, ny = y_.n;
    const std::size_t np = points();
    const double dx = x_.spacing(), dy = y_.spacing();
    const double eps = cfg_.eps;
    const Collision& col = cfg_.collision;
    const double t1 = s.t + h;
    const double m2x = vs_.second_moment(0), m2y = vs_.second_moment(1);

    std::vector<double> E(np), W(np), rhs(np);
    double max_coef = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        const double mu = cfg_.mu(sigma_[p]);
        E[p] = decay_factor(mu * h);
        const double omd = -std::expm1(-mu * h);
        W[p] = std::max(h * omd / (sigma_[p] + eps * eps * col.sigma_a), 1e-300);
        max_coef = std::max(max_coef, E[p] / eps);
        double r = w.a_cur * s.rho[p];
        if (w.a_prev != 0.0) r -= w.a_prev * s.rho_prev[p];
        rhs[p] = r;
    }

    if (max_coef >= 1e-300) {
        auto tr = transport_term(s, h);
        for (std::size_t p = 0; p < np; ++p) rhs[p] -= h * (E[p] / eps) * tr[p];
    }

    if (manufactured_) {
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const std::size_t p = std::size_t(i) * std::size_t(ny) + std::size_t(j);
                const double x = x_.node(i), y = y_.node(j);
                const double mu = cfg_.mu(sigma_[p]);
                double g = 0.0, divg = 0.0;
                for (std::size_t k = 0; k < vs_.size(); ++k) {
                    g += vs_.weights[k] * manufactured_source_2d(t1, x, y, vs_.nodes[k], eps);
                    auto grad = manufactured_source_gradient_2d(t1, x, y, vs_.nodes[k], eps);
                    divg += vs_.weights[k] * (vs_.nodes[k][0] * grad[0] + vs_.nodes[k][1] * grad[1]);
                }
                const double omd = -std::expm1(-mu * h);
                rhs[p] += h * g - h * omd / (eps * mu) * divg;
            }
    }

    // Scaled by 1/W so the operator is symmetric positive definite.
    const double cx = m2x / (dx * dx), cy = m2y / (dy * dy);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * np);
    Eigen::VectorXd b(static_cast<Eigen::Index>(np));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const int p = i * ny + j;
            const double diag = (w.a_new + h * col.sigma_a) / W[std::size_t(p)] + 2.0 * cx + 2.0 * cy;
            trip.emplace_back(p, p, diag);
            trip.emplace_back(p, int(wrap(i - 1, nx)) * ny + j, -cx);
            trip.emplace_back(p, int(wrap(i + 1, nx)) * ny + j, -cx);
            trip.emplace_back(p, i * ny + int(wrap(j - 1, ny)), -cy);
            trip.emplace_back(p, i * ny + int(wrap(j + 1, ny)), -cy);
            b[p] = rhs[std::size_t(p)] / W[std::size_t(p)];
        }
    Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(np));
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-14);
    cg.setMaxIterations(20000);
    cg.compute(A);
    Eigen::VectorXd x = cg.solve(b);
    const double bnorm = b.cwiseAbs().maxCoeff();
    const double res = bnorm > 0.0 ? (A * x - b).cwiseAbs().maxCoeff() / bnorm : 0.0;
    if (!std::isfinite(res) || res > 1e-10) throw ConvergenceError("solver2d: macro CG did not converge", res);
    if (verify_) max_residual_ = std::max(max_residual_, res);
    return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> Solver2D::micro_step(const KineticState& s, std::span<const double> sigma, double h,
                                         const TimeWeights& w) const
{
    const std::int64_t nx = x_.n, ny = y_.n;
    const std::size_t np = points();
    const double dx = x_.spacing(), dy = y_.spacing();
    const double eps = cfg_.eps;
    const Collision& col = cfg_.collision;
    const double t1 = s.t + h;
    const auto c = unlimited_coefficients(cfg_.order);

    std::vector<double> out(vs_.size() * np);
    std::vector<double> residuals(vs_.size(), 0.0);
    parallel_for(vs_.size(), [&](std::size_t k) {
        const double xi = vs_.component(k, 0), eta = vs_.component(k, 1);
        const std::int64_t sx = xi >= 0.0 ? 1 : -1, sy = eta >= 0.0 ? 1 : -1;
        const double ax = std::abs(xi) * h / (eps * dx), ay = std::abs(eta) * h / (eps * dy);
        auto fn = s.f_slice(k);
        std::vector<double> rhs(np), diag(np);
        for (std::int64_t i = 0; i < nx; ++i)
            for (std::int64_t j = 0; j < ny; ++j) {
                const std::size_t p = std::size_t(i * ny + j);
                double r = w.a_cur * fn[p];
                if (w.a_prev != 0.0) r -= w.a_prev * s.f_prev_slice(k)[p];
                r += h * sigma_[p] * sigma[p] / (eps * eps);
                if (manufactured_) r += h * manufactured_source_2d(t1, x_.node(i), y_.node(j), vs_.nodes[k], eps);
                rhs[p] = r;
                diag[p] = w.a_new + h * (sigma_[p] / (eps * eps) + col.sigma_a) + (ax + ay) * c.c0;
            }
        std::vector<double> f(fn.begin(), fn.end());
        auto at = [&](std::int64_t i, std::int64_t j) { return f[std::size_t(wrap(i, nx) * ny + wrap(j, ny))]; };
        auto row_off = [&](std::int64_t i, std::int64_t j) {
            double o = ax * (c.c1 * at(i - sx, j) + c.c2 * at(i - 2 * sx, j));
            o += ay * (c.c1 * at(i, j - sy) + c.c2 * at(i, j - 2 * sy));
            return o;
        };
        double scale = 0.0;
        for (double r : rhs) scale = std::max(scale, std::abs(r));
        const std::int64_t i0 = sx > 0 ? 0 : nx - 1, j0 = sy > 0 ? 0 : ny - 1;
        bool done = false;
        for (int sweep = 0; sweep < 500 && !done; ++sweep) {
            double change = 0.0, size = 0.0;
            for (std::int64_t a = 0; a < nx; ++a) {
                const std::int64_t i = i0 + sx * a;
                for (std::int64_t b = 0; b < ny; ++b) {
                    const std::int64_t j = j0 + sy * b;
                    const std::size_t p = std::size_t(i * ny + j);
                    const double nv = (rhs[p] - row_off(i, j)) / diag[p];
                    change = std::max(change, std::abs(nv - f[p]));
                    size = std::max(size, std::abs(nv));
                    f[p] = nv;
                }
            }
            done = change <= 1e-15 * std::max(size, 1e-300);
        }
        double res = 0.0;
        for (std::int64_t i = 0; i < nx; ++i)
            for (std::int64_t j = 0; j < ny; ++j) {
                const std::size_t p = std::size_t(i * ny + j);
                res = std::max(res, std::abs(diag[p] * f[p] + row_off(i, j) - rhs[p]));
            }
        residuals[k] = scale > 0.0 ? res / scale : res;
        std::copy(f.begin(), f.end(), out.begin() + std::ptrdiff_t(k * np));
    });
    for (double r : residuals) {
        if (!std::isfinite(r) || r > 1e-10) throw ConvergenceError("solver2d: micro sweep did not converge", r);
        if (verify_) max_residual_ = std::max(max_residual_, r);
    }
    return out;
}

StepReport Solver2D::step(KineticState& s, double h) const
{
    if (s.points != points() || s.velocities != vs_.size())
        throw ConfigError("solver2d: state shape does not match grid and velocity space");
    if (!(h > 0.0)) throw ConfigError("solver2d: step must be positive");
    const TimeWeights w = time_weights(cfg_.order, s.has_history, h, s.dt_prev);
    auto sigma = macro_step(s, h, w);
    auto f = micro_step(s, sigma, h, w);
    s.push_history(h);
    s.f = std::move(f);
    s.correct_density(vs_);
    s.t += h;
    return {};
}

RunStats run_until(const Solver2D& solver, KineticState& s, double t_end, double dt)
{
    RunStats stats;
    auto steps = step_schedule(s.t, t_end, dt);
    for (double h : steps) {
        solver.step(s, h);
        ++stats.steps;
    }
    if (!steps.empty()) s.t = t_end;
    return stats;
}

}  // namespace kinsl
