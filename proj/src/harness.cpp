#include "kinsl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>

#include "kinsl/errors.hpp"
#include "kinsl/problems.hpp"

namespace kinsl {

ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact, double cell)
{
    if (numeric.size() != exact.size()) throw ConfigError("error_norms: shape mismatch");
    ErrorNorms e;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double d = std::abs(numeric[i] - exact[i]);
        e.l1 += d;
        e.linf = std::max(e.linf, d);
    }
    e.l1 *= cell;
    return e;
}

double observed_order(double err_coarse, double err_fine)
{
    return std::log2(err_coarse / err_fine);
}

void fill_orders(std::vector<ConvergenceRow>& rows)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        if (r == 0) {
            row.order_linf_rho = row.order_l1_rho = row.order_linf_f = row.order_l1_f = nan;
            continue;
        }
        const auto& prev = rows[r - 1];
        row.order_linf_rho = observed_order(prev.linf_rho, row.linf_rho);
        row.order_l1_rho = observed_order(prev.l1_rho, row.l1_rho);
        row.order_linf_f = observed_order(prev.linf_f, row.linf_f);
        row.order_l1_f = observed_order(prev.l1_f, row.l1_f);
    }
}

RunConfig study_config(const std::string& problem, int order, double eps, int n, double dt)
{
    Json doc = problem_defaults(problem);
    doc["order"] = order;
    doc["eps"] = eps;
    doc["grid"]["n"] = n;
    doc["dt"] = dt;
    return parse_run_config(doc);
}

namespace {

FieldSample sample_state(const KineticState& s, const VelocitySpace& vs)
{
    FieldSample out;
    out.rho = s.rho;
    auto fk = s.f_slice(designated_velocity(vs));
    out.f.assign(fk.begin(), fk.end());
    return out;
}

double cell_size(const RunConfig& cfg)
{
    double c = cfg.grid_x.spacing();
    if (cfg.dim == 2) c *= cfg.grid_y.spacing();
    return c;
}

}  // namespace

FieldSample run_sample(const RunConfig& cfg)
{
    const double dt = cfg.resolved_dt();
    if (cfg.dim == 1) {
        auto p = make_problem_1d(cfg);
        run_until(p.solver, p.state, cfg.t_final, dt);
        return sample_state(p.state, p.solver.velocities());
    }
    auto p = make_problem_2d(cfg);
    run_until(p.solver, p.state, cfg.t_final, dt);
    return sample_state(p.state, p.solver.velocities());
}

FieldSample exact_sample(const RunConfig& cfg)
{
    const VelocitySpace vs = make_velocity_space(cfg.velocity);
    const auto& v = vs.nodes[designated_velocity(vs)];
    const double eps = cfg.scheme.eps;
    const double t = cfg.t_final;
    FieldSample out;
    if (cfg.dim == 1) {
        for (int i = 0; i < cfg.grid_x.n; ++i) {
            const double x = cfg.grid_x.node(i);
            out.rho.push_back(exact_rho(cfg.problem, eps, x, 0.0, t));
            out.f.push_back(exact_f(cfg.problem, eps, x, 0.0, v, t));
        }
        return out;
    }
    for (int i = 0; i < cfg.grid_x.n; ++i)
        for (int j = 0; j < cfg.grid_y.n; ++j) {
            const double x = cfg.grid_x.node(i), y = cfg.grid_y.node(j);
            out.rho.push_back(exact_rho(cfg.problem, eps, x, y, t));
            out.f.push_back(exact_f(cfg.problem, eps, x, y, v, t));
        }
    return out;
}

RunConfig reference_config(const RunConfig& cfg)
{
    if (cfg.dim != 1) throw ConfigError("reference_solution: 1D problems only");
    Json doc = to_json(cfg);
    if (cfg.problem == "onegroup_smooth") {
        doc["order"] = 2;
        doc["grid"]["n"] = 5120;
        doc["dt"] = 0.0005;
    } else {
        doc["order"] = 1;
        doc["grid"]["n"] = 5000;
        Axis fine = cfg.grid_x;
        fine.n = 5000;
        doc["dt"] = 0.2 * fine.spacing();
    }
    doc["limiter"] = false;
    return parse_run_config(doc);
}

double interpolate_linear(const Axis& axis, std::span<const double> values, double x)
{
    const double dx = axis.spacing();
    double s = (x - axis.lo) / dx;
    if (axis.periodic()) {
        const double n = double(axis.n);
        s = std::fmod(s, n);
        if (s < 0) s += n;
        auto i0 = std::int64_t(std::floor(s));
        const double w = s - double(i0);
        const double a = values[std::size_t(axis.resolve(i0))];
        const double b = values[std::size_t(axis.resolve(i0 + 1))];
        return a + w * (b - a);
    }
    s = std::clamp(s, 0.0, double(axis.n - 1));
    auto i0 = std::min<std::int64_t>(std::int64_t(std::floor(s)), axis.n - 2);
    const double w = s - double(i0);
    const double a = values[std::size_t(i0)];
    const double b = values[std::size_t(i0 + 1)];
    return a + w * (b - a);
}

FieldSample reference_solution(const RunConfig& cfg)
{
    static std::mutex mu;
    static std::map<std::string, FieldSample> cache;

    const RunConfig fine = reference_config(cfg);
    const std::string key = to_json(fine).dump();
    FieldSample ref;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) ref = it->second;
    }
    if (ref.rho.empty()) {
        ref = run_sample(fine);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, ref);
    }
    FieldSample out;
    for (int i = 0; i < cfg.grid_x.n; ++i) {
        const double x = cfg.grid_x.node(i);
        out.rho.push_back(interpolate_linear(fine.grid_x, ref.rho, x));
        out.f.push_back(interpolate_linear(fine.grid_x, ref.f, x));
    }
    return out;
}

FieldSample comparison_sample(const RunConfig& cfg)
{
    if (has_exact_solution(cfg.problem, cfg.scheme.eps)) return exact_sample(cfg);
    return reference_solution(cfg);
}

double study_spacing(const std::string& problem, int n)
{
    Json doc = problem_defaults(problem);
    const Json& g = doc["grid"];
    Axis a(g["lo"].get<double>(), g["hi"].get<double>(), n, boundary_from_string(g["boundary"].get<std::string>()));
    return a.spacing();
}

std::vector<ConvergenceRow> run_study(const std::string& problem, int order, double eps,
                                      const std::vector<StudyRun>& runs)
{
    std::vector<ConvergenceRow> rows;
    for (const auto& run : runs) {
        RunConfig cfg = study_config(problem, order, eps, run.n, run.dt);
        const FieldSample num = run_sample(cfg);
        const FieldSample ref = comparison_sample(cfg);
        const double cell = cell_size(cfg);
        const ErrorNorms er = error_norms(num.rho, ref.rho, cell);
        const ErrorNorms ef = error_norms(num.f, ref.f, cell);
        ConvergenceRow row;
        row.n = run.n;
        row.dt = run.dt;
        row.linf_rho = er.linf;
        row.l1_rho = er.l1;
        row.linf_f = ef.linf;
        row.l1_f = ef.l1;
        rows.push_back(row);
    }
    fill_orders(rows);
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const std::string& problem, int order, double eps,
                                              const std::vector<int>& n_list, const DtRule& rule)
{
    std::vector<StudyRun> runs;
    for (int n : n_list) runs.push_back({n, rule.dt(study_spacing(problem, n))});
    return run_study(problem, order, eps, runs);
}

std::vector<ConvergenceRow> temporal_study(const std::string& problem, int order, double eps, int n_fixed,
                                           const std::vector<double>& dt_list)
{
    std::vector<StudyRun> runs;
    for (double dt : dt_list) runs.push_back({n_fixed, dt});
    return run_study(problem, order, eps, runs);
}

namespace {

std::string order_text(double v, const char* fmt)
{
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows)
{
    os << "N,dt,err_Linf_rho,order_Linf_rho,err_L1_rho,order_L1_rho,err_Linf_f,order_Linf_f,err_L1_f,order_L1_f\n";
    char buf[64];
    for (const auto& r : rows) {
        os << r.n;
        for (double v : {r.dt, r.linf_rho, r.order_linf_rho, r.l1_rho, r.order_l1_rho, r.linf_f, r.order_linf_f,
                         r.l1_f, r.order_l1_f}) {
            os << ',';
            if (!std::isnan(v)) {
                std::snprintf(buf, sizeof buf, "%.10e", v);
                os << buf;
            }
        }
        os << '\n';
    }
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows)
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%6s %11s %11s %6s %11s %6s %11s %6s %11s %6s\n", "N", "dt", "Linf(rho)", "order",
                  "L1(rho)", "order", "Linf(f)", "order", "L1(f)", "order");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%6d %11.3e %11.3e %6s %11.3e %6s %11.3e %6s %11.3e %6s\n", r.n, r.dt,
                      r.linf_rho, order_text(r.order_linf_rho, "%.2f").c_str(), r.l1_rho,
                      order_text(r.order_l1_rho, "%.2f").c_str(), r.linf_f,
                      order_text(r.order_linf_f, "%.2f").c_str(), r.l1_f, order_text(r.order_l1_f, "%.2f").c_str());
        out += buf;
    }
    return out;
}

std::string study_file_name(const std::string& problem, int order, double eps)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return problem + "_" + std::to_string(order) + "_" + buf + ".csv";
}

}  // namespace kinsl
