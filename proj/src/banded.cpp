#include "kinsl/banded.hpp"

#include <algorithm>
#include <cmath>

#include "kinsl/errors.hpp"

namespace kinsl {

BandMatrix::BandMatrix(int n, int kl, int ku, bool cyclic)
    : n_(n), kl_(kl), ku_(ku), cyclic_(cyclic), band_(std::size_t(kl + ku + 1), std::vector<long double>(std::size_t(n), 0.0L))
{
    if (n < 1 || kl < 0 || ku < 0) throw SolverError("band matrix: bad shape");
    if (cyclic && kl + ku >= n) throw SolverError("band matrix: band too wide for cyclic wrap");
}

void BandMatrix::set_zero()
{
    for (auto& d : band_) std::fill(d.begin(), d.end(), 0.0L);
}

int BandMatrix::column(int i, int offset) const
{
    int j = i + offset;
    if (j >= 0 && j < n_) return j;
    if (!cyclic_) return -1;
    return j < 0 ? j + n_ : j - n_;
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const
{
    std::vector<double> y(std::size_t(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        long double acc = 0.0L;
        for (int o = -kl_; o <= ku_; ++o) {
            const long double a = at(i, o);
            if (a == 0.0L) continue;
            int j = column(i, o);
            if (j >= 0) acc += a * x[std::size_t(j)];
        }
        y[std::size_t(i)] = double(acc);
    }
    return y;
}

namespace {

// Band LU (no pivoting) of the non-wrapped part; factors stored in place.
struct BandLU {
    int n, kl, ku;
    std::vector<double> lu;  // row-major, (kl + ku + 1) per row, column offset j - i + kl

    double& e(int i, int j) { return lu[std::size_t(i) * std::size_t(kl + ku + 1) + std::size_t(j - i + kl)]; }

    void factor()
    {
        for (int k = 0; k < n; ++k) {
            double p = e(k, k);
            if (p == 0.0 || !std::isfinite(p)) throw SolverError("band LU: zero pivot");
            for (int i = k + 1; i <= std::min(n - 1, k + kl); ++i) {
                double l = e(i, k) / p;
                e(i, k) = l;
                if (l == 0.0) continue;
                for (int j = k + 1; j <= std::min(n - 1, k + ku); ++j) e(i, j) -= l * e(k, j);
            }
        }
    }

    void solve_in_place(std::vector<double>& x)
    {
        for (int i = 0; i < n; ++i) {
            double s = x[std::size_t(i)];
            for (int j = std::max(0, i - kl); j < i; ++j) s -= e(i, j) * x[std::size_t(j)];
            x[std::size_t(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = x[std::size_t(i)];
            for (int j = i + 1; j <= std::min(n - 1, i + ku); ++j) s -= e(i, j) * x[std::size_t(j)];
            x[std::size_t(i)] = s / e(i, i);
        }
    }
};

// Small dense solve with partial pivoting, matrix row-major r x r.
void dense_solve(std::vector<double>& a, std::vector<double>& b, int r)
{
    for (int k = 0; k < r; ++k) {
        int piv = k;
        for (int i = k + 1; i < r; ++i)
            if (std::abs(a[std::size_t(i * r + k)]) > std::abs(a[std::size_t(piv * r + k)])) piv = i;
        if (a[std::size_t(piv * r + k)] == 0.0) throw SolverError("capacitance matrix is singular");
        if (piv != k) {
            for (int j = 0; j < r; ++j) std::swap(a[std::size_t(k * r + j)], a[std::size_t(piv * r + j)]);
            std::swap(b[std::size_t(k)], b[std::size_t(piv)]);
        }
        for (int i = k + 1; i < r; ++i) {
            double l = a[std::size_t(i * r + k)] / a[std::size_t(k * r + k)];
            for (int j = k; j < r; ++j) a[std::size_t(i * r + j)] -= l * a[std::size_t(k * r + j)];
            b[std::size_t(i)] -= l * b[std::size_t(k)];
        }
    }
    for (int i = r - 1; i >= 0; --i) {
        double s = b[std::size_t(i)];
        for (int j = i + 1; j < r; ++j) s -= a[std::size_t(i * r + j)] * b[std::size_t(j)];
        b[std::size_t(i)] = s / a[std::size_t(i * r + i)];
    }
}

}  // namespace

std::vector<double> BandMatrix::solve(std::span<const double> rhs) const
{
    if (int(rhs.size()) != n_) throw SolverError("band solve: size mismatch");
    BandLU f{n_, kl_, ku_, std::vector<double>(std::size_t(n_) * std::size_t(kl_ + ku_ + 1), 0.0)};
    for (int i = 0; i < n_; ++i)
        for (int o = -kl_; o <= ku_; ++o) {
            int j = i + o;
            if (j >= 0 && j < n_) f.e(i, j) = double(at(i, o));
        }
    f.factor();

    // Wrapped entries live in columns n-kl..n-1 (lower) and 0..ku-1 (upper).
    std::vector<int> cols;
    if (cyclic_) {
        for (int j = n_ - kl_; j < n_; ++j) cols.push_back(j);
        for (int j = 0; j < ku_; ++j) cols.push_back(j);
    }
    const int r = int(cols.size());

    // U: corner columns; Z = B^{-1} U; capacitance I + V^T Z.
    std::vector<std::vector<double>> z(std::size_t(r), std::vector<double>(std::size_t(n_), 0.0));
    for (int c = 0; c < r; ++c) {
        int j = cols[std::size_t(c)];
        for (int i = 0; i < n_; ++i)
            for (int o = -kl_; o <= ku_; ++o) {
                int jj = i + o;
                if (jj >= 0 && jj < n_) continue;
                if (column(i, o) == j) z[std::size_t(c)][std::size_t(i)] += double(at(i, o));
            }
        f.solve_in_place(z[std::size_t(c)]);
    }
    std::vector<double> cap(std::size_t(r * r), 0.0);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            cap[std::size_t(a * r + b)] = (a == b ? 1.0 : 0.0) + z[std::size_t(b)][std::size_t(cols[std::size_t(a)])];

    auto apply = [&](std::vector<double>& y) {
        f.solve_in_place(y);
        if (r == 0) return;
        std::vector<double> c = cap, w(static_cast<std::size_t>(r));
        for (int a = 0; a < r; ++a) w[std::size_t(a)] = y[std::size_t(cols[std::size_t(a)])];
        dense_solve(c, w, r);
        for (int k = 0; k < r; ++k)
            for (int i = 0; i < n_; ++i) y[std::size_t(i)] -= z[std::size_t(k)][std::size_t(i)] * w[std::size_t(k)];
    };

    std::vector<double> x(rhs.begin(), rhs.end());
    apply(x);

    // one step of iterative refinement, residual accumulated in extended precision
    std::vector<double> res(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        long double acc = rhs[std::size_t(i)];
        for (int o = -kl_; o <= ku_; ++o) {
            const int j = column(i, o);
            if (j >= 0) acc -= at(i, o) * x[std::size_t(j)];
        }
        res[std::size_t(i)] = double(acc);
    }
    apply(res);
    for (int i = 0; i < n_; ++i) x[std::size_t(i)] += res[std::size_t(i)];
    return x;
}

std::vector<double> thomas(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                           std::span<const double> d)
{
    const std::size_t n = b.size();
    std::vector<double> cp(n), dp(n), x(n);
    double den = b[0];
    if (den == 0.0) throw SolverError("thomas: zero pivot");
    cp[0] = n > 1 ? c[0] / den : 0.0;
    dp[0] = d[0] / den;
    for (std::size_t i = 1; i < n; ++i) {
        den = b[i] - a[i] * cp[i - 1];
        if (den == 0.0) throw SolverError("thomas: zero pivot");
        cp[i] = i + 1 < n ? c[i] / den : 0.0;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / den;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

std::vector<double> cyclic_thomas(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                                  std::span<const double> d)
{
    // a[0] couples row 0 to x[n-1]; c[n-1] couples row n-1 to x[0].
    const std::size_t n = b.size();
    if (n < 3) throw SolverError("cyclic_thomas: need n >= 3");
    const double gamma = -b[0];
    std::vector<double> bb(b.begin(), b.end());
    bb[0] -= gamma;
    bb[n - 1] -= a[0] * c[n - 1] / gamma;
    std::vector<double> x = thomas(a, bb, c, d);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    std::vector<double> z = thomas(a, bb, c, u);
    const double fact = (x[0] + a[0] * x[n - 1] / gamma) / (1.0 + z[0] + a[0] * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
    return x;
}

double relative_residual(const BandMatrix& m, std::span<const double> x, std::span<const double> rhs)
{
    auto y = m.multiply(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num = std::max(num, std::abs(y[i] - rhs[i]));
        den = std::max(den, std::abs(rhs[i]));
    }
    return den > 0.0 ? num / den : num;
}

}  // namespace kinsl
