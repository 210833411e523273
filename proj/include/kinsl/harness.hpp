#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kinsl/config.hpp"
#include "kinsl/grid.hpp"

namespace kinsl {

struct ErrorNorms {
    double l1 = 0.0;
    double linf = 0.0;
};

/// L1 = cell * sum|a - b|, Linf = max|a - b|. `cell` is dx in 1D and dx*dy in 2D.
ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact, double cell);

/// log2(coarse / fine).
double observed_order(double err_coarse, double err_fine);

struct ConvergenceRow {
    int n = 0;
    double dt = 0.0;
    double linf_rho = 0.0;
    double order_linf_rho = 0.0;  // NaN on the first row
    double l1_rho = 0.0;
    double order_l1_rho = 0.0;
    double linf_f = 0.0;
    double order_linf_f = 0.0;
    double l1_f = 0.0;
    double order_l1_f = 0.0;
};

/// Recomputes the order columns from consecutive rows.
void fill_orders(std::vector<ConvergenceRow>& rows);

struct DtRule {
    enum class Kind { Cfl, Fixed };
    Kind kind = Kind::Cfl;
    double value = 1.0;

    static DtRule cfl_factor(double c) { return {Kind::Cfl, c}; }
    static DtRule fixed(double dt) { return {Kind::Fixed, dt}; }
    double dt(double dx) const { return kind == Kind::Cfl ? value * dx : value; }
};

/// rho and f at the designated velocity at the final time.
struct FieldSample {
    std::vector<double> rho;
    std::vector<double> f;
};

/// Config for one study row: the problem defaults with eps, order, n and dt set.
RunConfig study_config(const std::string& problem, int order, double eps, int n, double dt);

/// Runs the config to t_final.
FieldSample run_sample(const RunConfig& cfg);

/// Exact solution sampled at the nodes of cfg at t_final.
FieldSample exact_sample(const RunConfig& cfg);

/// Fine-mesh run interpolated onto the nodes of cfg. Order 1 with N = 5000
/// and dt = 0.2 dx, except onegroup_smooth which uses order 2, N = 5120, dt = 0.0005.
FieldSample reference_solution(const RunConfig& cfg);

/// Fine configuration used by reference_solution.
RunConfig reference_config(const RunConfig& cfg);

/// Linear interpolation of nodal values on `axis` at x (wraps on periodic axes).
double interpolate_linear(const Axis& axis, std::span<const double> values, double x);

/// Exact solution when one exists, otherwise the reference run.
FieldSample comparison_sample(const RunConfig& cfg);

struct StudyRun {
    int n;
    double dt;
};

std::vector<ConvergenceRow> run_study(const std::string& problem, int order, double eps,
                                      const std::vector<StudyRun>& runs);

/// Spatial study: one row per N with dt from the rule.
std::vector<ConvergenceRow> convergence_study(const std::string& problem, int order, double eps,
                                              const std::vector<int>& n_list, const DtRule& rule);

/// Temporal study on a fixed mesh: one row per dt.
std::vector<ConvergenceRow> temporal_study(const std::string& problem, int order, double eps, int n_fixed,
                                           const std::vector<double>& dt_list);

/// Mesh spacing for a study row of `problem` with n points.
double study_spacing(const std::string& problem, int n);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);

/// "{problem}_{order}_{eps}.csv".
std::string study_file_name(const std::string& problem, int order, double eps);

}  // namespace kinsl
