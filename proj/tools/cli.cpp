#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kinsl/config.hpp"
#include "kinsl/errors.hpp"
#include "kinsl/harness.hpp"
#include "kinsl/io.hpp"
#include "kinsl/parallel.hpp"
#include "kinsl/problems.hpp"
#include "kinsl/stability.hpp"

namespace kinsl {

namespace fs = std::filesystem;

namespace {

Json load_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file '" + path + "'");
    try {
        return Json::parse(is);
    } catch (const Json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

Json picard_summary(const std::vector<int>& counts)
{
    Json j = {{"per_step", counts}};
    if (counts.empty()) return j;
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    double mean = 0.0;
    for (int c : counts) mean += c;
    mean /= double(counts.size());
    j["min"] = *lo;
    j["max"] = *hi;
    j["mean"] = mean;
    return j;
}

int run_document(const Json& doc, const std::string& out_dir, int threads, std::ostream& out)
{
    RunConfig cfg = parse_run_config(doc);
    set_thread_count(threads > 0 ? threads : cfg.threads);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    const double dt = cfg.resolved_dt();

    const auto t0 = std::chrono::steady_clock::now();
    RunStats stats;
    if (cfg.dim == 1) {
        auto p = make_problem_1d(cfg);
        stats = run_until(p.solver, p.state, cfg.t_final, dt);
        write_rho_csv(dir / "rho.csv", cfg.grid_x, p.state.rho);
        if (cfg.write_f) write_f_csv(dir / "f.csv", cfg.grid_x, p.solver.velocities(), p.state);
    } else {
        auto p = make_problem_2d(cfg);
        stats = run_until(p.solver, p.state, cfg.t_final, dt);
        write_rho2d_csv(dir / "rho.csv", cfg.grid_x, cfg.grid_y, p.state.rho);
        write_binary_field(dir / "rho.bin", std::uint32_t(cfg.grid_x.n), std::uint32_t(cfg.grid_y.n), p.state.rho);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Json manifest = {{"config", to_json(cfg)},
                     {"dt", dt},
                     {"wall_time_s", wall},
                     {"steps", stats.steps}};
    if (cfg.scheme.collision.kind == CollisionKind::Burgers) manifest["picard"] = picard_summary(stats.picard_iterations);
    write_json(dir / "manifest.json", manifest);
    out << "wrote " << (dir / "rho.csv").string() << " after " << stats.steps << " steps\n";
    return exit_ok;
}

SweepGrid load_sweep_grid(const std::string& spec, int order)
{
    if (spec == "default") return SweepGrid::paper({order});
    const Json j = load_json_file(spec);
    SweepGrid g;
    g.orders = {order};
    try {
        g.dx = j.value("dx", std::vector<double>{});
        g.dt_factor = j.value("dt_factor", std::vector<double>{});
        g.eps = j.value("eps", std::vector<double>{});
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad sweep grid: ") + e.what());
    }
    return g;
}

std::string preset_problem(const std::string& preset)
{
    if (preset == "telegraph") return "telegraph_riemann";
    if (preset == "advdiff") return "advdiff_riemann";
    if (preset == "burgers") return "burgers_riemann";
    if (preset == "onegroup-isotropic") return "onegroup_isotropic";
    throw ConfigError("unknown riemann preset '" + preset + "'");
}

bool study_problem(const std::string& p)
{
    return p == "telegraph_smooth" || p == "advdiff_smooth" || p == "onegroup_smooth" || p == "twod_manufactured" ||
           p == "telegraph_riemann" || p == "advdiff_riemann" || p == "burgers_riemann" || p == "onegroup_isotropic";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Asymptotic-preserving semi-Lagrangian kinetic solver"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (1 = deterministic)")->check(CLI::PositiveNumber);

    std::string config_path, out_dir = "out";
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "Run a simulation to its final time");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--set", overrides, "Override key=value (dotted keys)");

    std::string problem;
    int order = 1;
    double eps = 1e-6;
    std::vector<int> n_list;
    double cfl = 0.0;
    std::vector<double> dt_list;
    std::string study_out = ".";
    auto* converge = app.add_subcommand("converge", "Convergence study");
    converge->add_option("--problem", problem)->required();
    converge->add_option("--order", order)->check(CLI::IsMember({1, 2}));
    converge->add_option("--eps", eps);
    converge->add_option("--n", n_list)->delimiter(',')->required();
    auto* cfl_opt = converge->add_option("--cfl", cfl, "dt = cfl * dx");
    auto* dt_opt = converge->add_option("--dt-list", dt_list, "Fixed-mesh temporal study")->delimiter(',');
    cfl_opt->excludes(dt_opt);
    converge->add_option("--out", study_out, "Output directory");

    std::string grid_spec = "default";
    int n_omega = 500;
    bool inject_unstable = false;
    std::string stab_out = ".";
    auto* stability = app.add_subcommand("stability", "Von Neumann sweep of the amplification matrices");
    stability->add_option("--order", order)->required()->check(CLI::IsMember({1, 2}));
    stability->add_option("--grid", grid_spec, "'default' or a JSON file with dx, dt_factor, eps");
    stability->add_option("--omega", n_omega, "Frequency samples");
    stability->add_option("--out", stab_out, "Output directory");
    stability->add_flag("--test-unstable", inject_unstable, "Add a known unstable matrix to the sweep");

    std::string preset;
    int n_points = 0;
    auto* riemann = app.add_subcommand("riemann", "Run a Riemann preset");
    riemann->add_option("--preset", preset)
        ->required()
        ->check(CLI::IsMember({"telegraph", "advdiff", "burgers", "onegroup-isotropic"}));
    auto* r_eps = riemann->add_option("--eps", eps);
    auto* r_n = riemann->add_option("--n", n_points);
    auto* r_cfl = riemann->add_option("--cfl", cfl);
    riemann->add_option("--order", order)->check(CLI::IsMember({1, 2}));
    riemann->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate", "Check a config file");
    validate->add_option("--config", config_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (threads > 0) set_thread_count(threads);

        if (*run) {
            Json doc = load_json_file(config_path);
            for (const auto& o : overrides) apply_override(doc, o);
            return run_document(doc, out_dir, threads, out);
        }

        if (*validate) {
            parse_run_config(load_json_file(config_path));
            out << "config ok\n";
            return exit_ok;
        }

        if (*riemann) {
            Json doc = problem_defaults(preset_problem(preset));
            if (*r_eps) doc["eps"] = eps;
            if (*r_n) doc["grid"]["n"] = n_points;
            if (*r_cfl) doc["cfl"] = cfl;
            doc["order"] = order;
            return run_document(doc, out_dir, threads, out);
        }

        if (*converge) {
            if (!study_problem(problem)) throw ConfigError("unknown study problem '" + problem + "'");
            std::vector<ConvergenceRow> rows;
            if (!dt_list.empty()) {
                if (n_list.size() != 1) throw ConfigError("--dt-list needs exactly one --n");
                rows = temporal_study(problem, order, eps, n_list.front(), dt_list);
            } else {
                double c = cfl;
                if (!(c > 0.0)) c = problem_defaults(problem)["cfl"].get<double>();
                rows = convergence_study(problem, order, eps, n_list, DtRule::cfl_factor(c));
            }
            fs::create_directories(study_out);
            const fs::path csv = fs::path(study_out) / study_file_name(problem, order, eps);
            {
                std::ofstream os(csv);
                if (!os) throw IoError("cannot write '" + csv.string() + "'");
                write_convergence_csv(os, rows);
            }
            const std::string table = format_convergence_table(rows);
            fs::path txt = csv;
            txt.replace_extension(".txt");
            std::ofstream(txt) << table;
            out << table;
            return exit_ok;
        }

        if (*stability) {
            const SweepGrid grid = load_sweep_grid(grid_spec, order);
            std::vector<StabilityRow> rows = sweep(grid, n_omega);
            if (inject_unstable) {
                // Scalar growth factor 1 + 1e-3 at every frequency.
                StabilityRow bad{order, 0.0, 0.0, 0.0, {}};
                bad.verdict = check_matrix_family(
                    [](double) { return Eigen::MatrixXcd::Constant(1, 1, Complex(1.001, 0.0)); }, n_omega);
                rows.push_back(bad);
            }
            fs::create_directories(stab_out);
            const fs::path csv = fs::path(stab_out) / ("stability_order" + std::to_string(order) + ".csv");
            {
                std::ofstream os(csv);
                if (!os) throw IoError("cannot write '" + csv.string() + "'");
                write_stability_csv(os, rows);
            }
            std::size_t unstable = 0;
            double worst = 0.0;
            for (const auto& r : rows) {
                if (!r.verdict.stable) ++unstable;
                worst = std::max(worst, r.verdict.max_modulus);
            }
            out << rows.size() << " tuples, " << unstable << " unstable, max |lambda| = " << worst << '\n';
            return unstable == 0 ? exit_ok : exit_unstable;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    }
    return exit_usage;
}

}  // namespace kinsl
