#include "kinsl/stability.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "kinsl/config.hpp"
#include "kinsl/errors.hpp"
#include "kinsl/parallel.hpp"
#include "kinsl/semilag.hpp"

namespace kinsl {

namespace {

constexpr Complex I{0.0, 1.0};

Complex cis(double a) { return std::exp(I * a); }

// e^{-mu dt}, and the transport weight e^{-mu dt} dt/(eps dx) flushed to 0.
struct Coeffs {
    double decay;
    double transport;
};

Coeffs coeffs(const AmplificationSpec& s)
{
    const double mu = 1.0 / (s.eps * s.eps);
    const double decay = decay_factor(mu * s.dt);
    double transport = 0.0;
    if (decay / s.eps >= 1e-300) transport = decay * s.dt / (s.eps * s.dx);
    return {decay, transport};
}

}  // namespace

ShiftPair amplification_shift(double dt, double dx, double eps)
{
    Shift sh = split_shift(dt / (eps * dx));
    return {sh.m, sh.xi};
}

Eigen::MatrixXcd amplification_first(const AmplificationSpec& s)
{
    const auto [decay, tr] = coeffs(s);
    const auto [m_, xi] = amplification_shift(s.dt, s.dx, s.eps);
    const double m = double(m_);
    const double w = s.omega;
    const double a = s.dt / (s.eps * s.dx);
    const double relax = s.dt / (s.eps * s.eps);

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(4, 4), R = Eigen::MatrixXcd::Zero(4, 4);
    L(0, 0) = 1.0 + s.dt / (s.dx * s.dx) * (1.0 - decay) * (2.0 - 2.0 * std::cos(w));
    L(1, 0) = -relax;
    L(1, 1) = 1.0 + a * (1.0 - cis(-w)) + relax;
    L(2, 0) = -relax;
    L(2, 2) = 1.0 + a * (1.0 - cis(w)) + relax;
    L(3, 1) = -0.5;
    L(3, 2) = -0.5;
    L(3, 3) = 1.0;

    R(0, 1) = -0.5 * tr * (cis(-(m + 1) * w) - cis(-(m + 2) * w));
    R(0, 2) = -0.5 * tr * (cis((m + 1) * w) - cis((m + 2) * w));
    R(0, 3) = 1.0 + tr * (std::cos((m - 1) * w) - std::cos(m * w));
    R(1, 1) = 1.0;
    R(2, 2) = 1.0;
    return L.partialPivLu().solve(R);
}

Eigen::MatrixXcd amplification_second(const AmplificationSpec& s)
{
    const auto [decay, tr] = coeffs(s);
    const auto [m_, xi] = amplification_shift(s.dt, s.dx, s.eps);
    const double m = double(m_);
    const double w = s.omega;
    const double a = s.dt / (s.eps * s.dx);
    const double relax = 2.0 * s.dt / (s.eps * s.eps);

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(7, 7), R = Eigen::MatrixXcd::Zero(7, 7);
    L(0, 0) = 3.0 + 2.0 * s.dt / (s.dx * s.dx) * (1.0 - decay) * (2.0 - 2.0 * std::cos(w));
    L(1, 0) = -relax;
    L(1, 1) = 3.0 + a * (3.0 - 4.0 * cis(-w) + cis(-2 * w)) + relax;
    L(2, 0) = -relax;
    L(2, 2) = 3.0 + a * (3.0 - 4.0 * cis(w) + cis(2 * w)) + relax;
    L(3, 3) = 1.0;
    L(4, 4) = 1.0;
    L(5, 5) = 1.0;
    L(6, 1) = -0.5;
    L(6, 2) = -0.5;
    L(6, 6) = 1.0;

    R(0, 1) = -0.5 * tr *
              ((3 - 2 * xi) * cis(-m * w) - (4 - 4 * xi) * cis(-(m + 1) * w) + (1 - 2 * xi) * cis(-(m + 2) * w));
    R(0, 2) = -0.5 * tr *
              ((3 - 2 * xi) * cis(m * w) - (4 - 4 * xi) * cis((m + 1) * w) + (1 - 2 * xi) * cis((m + 2) * w));
    R(0, 3) = -1.0;
    R(0, 6) = 4.0 + tr * ((1 - 2 * xi) * std::cos((m - 1) * w) + 4 * xi * std::cos(m * w) -
                          (1 + 2 * xi) * std::cos((m + 1) * w));
    R(1, 1) = 4.0;
    R(1, 4) = -1.0;
    R(2, 2) = 4.0;
    R(2, 5) = -1.0;
    R(3, 6) = 1.0;
    R(4, 1) = 1.0;
    R(5, 2) = 1.0;
    return L.partialPivLu().solve(R);
}

Eigen::MatrixXcd amplification_matrix(const AmplificationSpec& s)
{
    if (s.order == 1) return amplification_first(s);
    if (s.order == 2) return amplification_second(s);
    throw ConfigError("stability: order must be 1 or 2");
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m)
{
    if (m.rows() != m.cols()) throw ConfigError("eigenvalues: matrix must be square");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) throw SolverError("eigenvalues: QR iteration did not converge");
    const auto& ev = es.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

bool unit_modes_diagonalizable(const Eigen::MatrixXcd& g, const StabilityTolerances& tol)
{
    const Eigen::Index n = g.rows();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g, true);
    if (es.info() != Eigen::Success) throw SolverError("eigenvalues: QR iteration did not converge");
    const auto& ev = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> gsvd(g);
    const double gnorm = gsvd.singularValues()(0);

    std::vector<bool> seen(std::size_t(n), false);
    for (Eigen::Index a = 0; a < n; ++a) {
        if (seen[std::size_t(a)] || std::abs(std::abs(ev(a)) - 1.0) > tol.marginal) continue;
        std::vector<Eigen::Index> cluster;
        for (Eigen::Index b = 0; b < n; ++b)
            if (std::abs(ev(b) - ev(a)) <= tol.cluster) {
                cluster.push_back(b);
                seen[std::size_t(b)] = true;
            }
        const auto alg = Eigen::Index(cluster.size());
        if (alg == 1) continue;  // simple eigenvalue

        Complex mean = 0.0;
        for (auto b : cluster) mean += ev(b);
        mean /= double(alg);
        Eigen::MatrixXcd shifted = g - mean * Eigen::MatrixXcd::Identity(n, n);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
        const auto& sv = svd.singularValues();
        Eigen::Index rank = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k)
            if (sv(k) > tol.rank * std::max(gnorm, 1e-300)) ++rank;
        if (n - rank >= alg) continue;

        // Close but distinct eigenvalues still have independent eigenvectors.
        Eigen::MatrixXcd v(n, alg);
        for (Eigen::Index c = 0; c < alg; ++c) v.col(c) = vecs.col(cluster[std::size_t(c)]).normalized();
        Eigen::JacobiSVD<Eigen::MatrixXcd> vsvd(v);
        if (vsvd.singularValues()(alg - 1) > tol.cluster) continue;
        return false;
    }
    return true;
}

std::vector<double> omega_samples(int n_omega)
{
    if (n_omega < 2) throw ConfigError("stability: need at least 2 omega samples");
    std::vector<double> w(std::size_t(n_omega) + 1);
    const double pi = std::numbers::pi;
    for (int s = 0; s < n_omega; ++s) w[std::size_t(s)] = -pi + 2.0 * pi * double(s) / double(n_omega - 1);
    w[std::size_t(n_omega)] = 0.0;
    return w;
}

StabilityVerdict check_matrix_family(const std::function<Eigen::MatrixXcd(double)>& family, int n_omega,
                                     const StabilityTolerances& tol)
{
    StabilityVerdict v;
    bool diag_ok = true;
    for (double w : omega_samples(n_omega)) {
        const Eigen::MatrixXcd g = family(w);
        double mx = 0.0;
        for (const auto& lam : eigenvalues(g)) mx = std::max(mx, std::abs(lam));
        if (!std::isfinite(mx)) mx = std::numeric_limits<double>::infinity();
        v.max_modulus = std::max(v.max_modulus, mx);
        if (std::abs(mx - 1.0) <= tol.marginal) {
            v.diagonalizable_checked = true;
            if (!unit_modes_diagonalizable(g, tol)) diag_ok = false;
        }
    }
    v.marginal = std::abs(v.max_modulus - 1.0) <= tol.marginal;
    v.stable = v.max_modulus < 1.0 - 1e-12 || (v.marginal && diag_ok);
    return v;
}

StabilityVerdict check_stability(const AmplificationSpec& spec, int n_omega, const StabilityTolerances& tol)
{
    return check_matrix_family(
        [&](double w) {
            AmplificationSpec s = spec;
            s.omega = w;
            return amplification_matrix(s);
        },
        n_omega, tol);
}

SweepGrid SweepGrid::paper(std::vector<int> orders)
{
    SweepGrid g;
    g.orders = std::move(orders);
    for (int j = 1; j <= 4; ++j) g.dx.push_back(std::pow(10.0, -j));
    for (int k = -3; k <= 3; ++k) g.dt_factor.push_back(std::pow(10.0, k));
    for (int l = -10; l <= 5; ++l) g.eps.push_back(std::pow(10.0, l));
    return g;
}

std::vector<StabilityRow> sweep(const SweepGrid& grid, int n_omega, const StabilityTolerances& tol)
{
    if (grid.size() == 0) throw ConfigError("stability: empty sweep grid");
    std::vector<StabilityRow> rows;
    rows.reserve(grid.size());
    for (int o : grid.orders)
        for (double dx : grid.dx)
            for (double f : grid.dt_factor)
                for (double e : grid.eps) rows.push_back({o, dx, f * dx, e, {}});
    parallel_for(rows.size(), [&](std::size_t r) {
        auto& row = rows[r];
        row.verdict = check_stability({row.order, row.dt, row.dx, row.eps, 0.0}, n_omega, tol);
    });
    return rows;
}

void write_stability_csv(std::ostream& os, const std::vector<StabilityRow>& rows)
{
    os << "order,dx,dt,eps,max_modulus,stable,marginal\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.10e,%.10e,%.10e,%.15e,%d,%d\n", r.order, r.dx, r.dt, r.eps,
                      r.verdict.max_modulus, r.verdict.stable ? 1 : 0, r.verdict.marginal ? 1 : 0);
        os << buf;
    }
}

}  // namespace kinsl
