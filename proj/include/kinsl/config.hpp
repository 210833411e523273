#pragma once

#include <string>

#include "kinsl/grid.hpp"
#include "kinsl/json.hpp"
#include "kinsl/velocity.hpp"

namespace kinsl {

enum class CollisionKind { Telegraph, AdvDiff, Burgers, OneGroup, TwoD, Q2 };

std::string to_string(CollisionKind k);
CollisionKind collision_kind_from_string(const std::string& s);

/// Collision model and its parameters. Only the fields of `kind` are read.
struct Collision {
    CollisionKind kind = CollisionKind::Telegraph;
    double A = 1.0;             // AdvDiff
    double C = 0.5;             // Burgers
    double picard_tol = 1e-8;   // Burgers
    int picard_max = 100;       // Burgers
    double sigma_s = 1.0;       // OneGroup / TwoD
    double sigma_a = 0.0;       // OneGroup / TwoD
    bool variable_sigma = false;  // TwoD: sigma_s(x, y) from variable_sigma()

    static Collision telegraph() { return {}; }
    static Collision advdiff(double A);
    static Collision burgers(double C, double tol = 1e-8, int max_it = 100);
    static Collision one_group(double sigma_s, double sigma_a);
    static Collision two_d(double sigma_s, double sigma_a, bool variable = false);
};

struct SchemeConfig {
    double eps = 1.0;
    double dt = 0.1;
    int order = 1;
    Collision collision;
    bool limiter = false;

    /// Stiffness rate for a given local scattering coefficient.
    double mu(double sigma_s) const;
    /// Stiffness rate with the configured constant sigma_s.
    double mu() const { return mu(collision.sigma_s); }

    /// Throws ConfigError on invalid parameter combinations.
    void validate() const;
};

/// exp(-x) that is exactly zero once it would underflow.
double decay_factor(double x);

/// Everything a run needs, as read from the JSON document.
struct RunConfig {
    std::string problem = "telegraph_smooth";
    SchemeConfig scheme;
    double cfl = 0.0;  // when > 0, dt = cfl * dx
    double t_final = 1.0;
    Axis grid_x;
    Axis grid_y;
    int dim = 1;
    VelocityKind velocity = VelocityKind::DiscreteTwo;
    bool write_f = false;
    int threads = 1;

    Grid grid() const;
    double resolved_dt() const;
    void validate() const;
};

/// Defaults for a named problem, as a JSON document.
Json problem_defaults(const std::string& problem);

/// Parse a config document. The document is merged over the problem defaults;
/// unknown keys are rejected.
RunConfig parse_run_config(const Json& doc);
Json to_json(const RunConfig& cfg);

/// Apply a dotted `key=value` override to a JSON document.
void apply_override(Json& doc, const std::string& assignment);

}  // namespace kinsl
