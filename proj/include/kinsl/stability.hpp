#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace kinsl {

using Complex = std::complex<double>;

/// One point of the Fourier analysis of the two-velocity telegraph schemes.
struct AmplificationSpec {
    int order = 1;
    double dt = 0.1;
    double dx = 0.1;
    double eps = 1.0;
    double omega = 0.0;
};

/// m and xi with m < dt/(eps dx) <= m + 1, xi = dt/(eps dx) - m.
struct ShiftPair {
    long long m = 0;
    double xi = 0.0;
};
ShiftPair amplification_shift(double dt, double dx, double eps);

/// (sigma, p, q, rho) map of the first order scheme.
Eigen::MatrixXcd amplification_first(const AmplificationSpec& s);

/// (sigma, p, q, a, b, c, rho) map of the second order scheme.
Eigen::MatrixXcd amplification_second(const AmplificationSpec& s);

Eigen::MatrixXcd amplification_matrix(const AmplificationSpec& s);

/// Eigenvalues of a small dense complex matrix.
std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m);

struct StabilityTolerances {
    double marginal = 1e-9;
    double cluster = 1e-6;
    double rank = 1e-8;
};

struct StabilityVerdict {
    double max_modulus = 0.0;
    bool stable = false;
    bool marginal = false;
    bool diagonalizable_checked = false;
};

/// Diagonalizability of the eigenvalues with modulus within tol.marginal of 1.
bool unit_modes_diagonalizable(const Eigen::MatrixXcd& g, const StabilityTolerances& tol = {});

/// omega samples: n_omega uniform points in [-pi, pi] plus omega = 0.
std::vector<double> omega_samples(int n_omega);

/// Applies the stability principle to any omega -> matrix family.
StabilityVerdict check_matrix_family(const std::function<Eigen::MatrixXcd(double)>& family, int n_omega = 500,
                                     const StabilityTolerances& tol = {});

StabilityVerdict check_stability(const AmplificationSpec& spec, int n_omega = 500,
                                 const StabilityTolerances& tol = {});

struct StabilityRow {
    int order = 1;
    double dx = 0.0;
    double dt = 0.0;
    double eps = 0.0;
    StabilityVerdict verdict;
};

struct SweepGrid {
    std::vector<int> orders;
    std::vector<double> dx;
    std::vector<double> dt_factor;  // dt = factor * dx
    std::vector<double> eps;

    /// dx = 10^-j (1..4), dt = 10^k dx (-3..3), eps = 10^l (-10..5).
    static SweepGrid paper(std::vector<int> orders = {1, 2});
    std::size_t size() const { return orders.size() * dx.size() * dt_factor.size() * eps.size(); }
};

std::vector<StabilityRow> sweep(const SweepGrid& grid, int n_omega = 500, const StabilityTolerances& tol = {});

/// CSV with columns order, dx, dt, eps, max_modulus, stable, marginal.
void write_stability_csv(std::ostream& os, const std::vector<StabilityRow>& rows);

}  // namespace kinsl
