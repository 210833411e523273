#pragma once

#include <span>
#include <vector>

namespace kinsl {

/// Square banded matrix with kl sub- and ku super-diagonals. When cyclic,
/// band entries that fall outside [0, n) wrap around (periodic grids).
///
/// Solved by band LU without pivoting on the non-wrapped part plus a
/// Woodbury correction for the wrapped corner columns, followed by one
/// refinement step. Coefficients are kept in extended precision and the
/// refinement residual uses them, so row and column sums survive assembly.
class BandMatrix {
public:
    BandMatrix(int n, int kl, int ku, bool cyclic);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }
    bool cyclic() const { return cyclic_; }

    /// Coefficient of x_{i+offset} in row i, offset in [-kl, ku].
    long double& at(int i, int offset) { return band_[std::size_t(offset + kl_)][std::size_t(i)]; }
    long double at(int i, int offset) const { return band_[std::size_t(offset + kl_)][std::size_t(i)]; }

    void set_zero();
    std::vector<double> multiply(std::span<const double> x) const;
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    int column(int i, int offset) const;

    int n_;
    int kl_;
    int ku_;
    bool cyclic_;
    std::vector<std::vector<long double>> band_;
};

/// Tridiagonal solve (Thomas). a: sub, b: diag, c: super.
std::vector<double> thomas(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                           std::span<const double> d);

/// Periodic tridiagonal solve via a Sherman-Morrison correction.
std::vector<double> cyclic_thomas(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                                  std::span<const double> d);

/// max |M x - rhs| / max |rhs|.
double relative_residual(const BandMatrix& m, std::span<const double> x, std::span<const double> rhs);

}  // namespace kinsl
