#include "kinsl/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "kinsl/errors.hpp"

namespace kinsl {

std::string to_string(CollisionKind k)
{
    switch (k) {
        case CollisionKind::Telegraph: return "telegraph";
        case CollisionKind::AdvDiff: return "advdiff";
        case CollisionKind::Burgers: return "burgers";
        case CollisionKind::OneGroup: return "onegroup";
        case CollisionKind::TwoD: return "twod";
        case CollisionKind::Q2: return "q2";
    }
    return "?";
}

CollisionKind collision_kind_from_string(const std::string& s)
{
    if (s == "telegraph") return CollisionKind::Telegraph;
    if (s == "advdiff") return CollisionKind::AdvDiff;
    if (s == "burgers") return CollisionKind::Burgers;
    if (s == "onegroup") return CollisionKind::OneGroup;
    if (s == "twod") return CollisionKind::TwoD;
    if (s == "q2") return CollisionKind::Q2;
    throw ConfigError("unknown collision kind '" + s + "'");
}

Collision Collision::advdiff(double A)
{
    Collision c;
    c.kind = CollisionKind::AdvDiff;
    c.A = A;
    return c;
}

Collision Collision::burgers(double C, double tol, int max_it)
{
    Collision c;
    c.kind = CollisionKind::Burgers;
    c.C = C;
    c.picard_tol = tol;
    c.picard_max = max_it;
    return c;
}

Collision Collision::one_group(double sigma_s, double sigma_a)
{
    Collision c;
    c.kind = CollisionKind::OneGroup;
    c.sigma_s = sigma_s;
    c.sigma_a = sigma_a;
    return c;
}

Collision Collision::two_d(double sigma_s, double sigma_a, bool variable)
{
    Collision c;
    c.kind = CollisionKind::TwoD;
    c.sigma_s = sigma_s;
    c.sigma_a = sigma_a;
    c.variable_sigma = variable;
    return c;
}

double SchemeConfig::mu(double sigma_s) const
{
    switch (collision.kind) {
        case CollisionKind::OneGroup:
        case CollisionKind::TwoD: return sigma_s / (eps * eps) + collision.sigma_a;
        default: return 1.0 / (eps * eps);
    }
}

void SchemeConfig::validate() const
{
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (order != 1 && order != 2) throw ConfigError("order must be 1 or 2");
    const auto& c = collision;
    switch (c.kind) {
        case CollisionKind::Q2:
            throw ConfigError("collision operator q2 is not supported (no approximation model)");
        case CollisionKind::AdvDiff:
            if (!(std::abs(c.A * eps) < 1.0)) throw ConfigError("advdiff requires |A*eps| < 1");
            break;
        case CollisionKind::Burgers:
            if (!(c.C > 0.0)) throw ConfigError("burgers requires C > 0");
            if (!(c.picard_tol > 0.0)) throw ConfigError("picard_tol must be positive");
            if (c.picard_max < 1) throw ConfigError("picard_max must be at least 1");
            break;
        case CollisionKind::OneGroup:
        case CollisionKind::TwoD:
            if (!(c.sigma_s > 0.0)) throw ConfigError("sigma_s must be positive");
            if (!(c.sigma_a >= 0.0)) throw ConfigError("sigma_a must be nonnegative");
            break;
        case CollisionKind::Telegraph: break;
    }
}

double decay_factor(double x)
{
    // exp underflows to a subnormal before reaching 0; flush those too
    if (x > 708.0) return 0.0;
    return std::exp(-x);
}

Grid RunConfig::grid() const
{
    return dim == 1 ? Grid::line(grid_x) : Grid::plane(grid_x, grid_y);
}

double RunConfig::resolved_dt() const
{
    if (scheme.dt > 0.0) return scheme.dt;
    return cfl * grid_x.spacing();
}

void RunConfig::validate() const
{
    if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (!(scheme.dt > 0.0) && !(cfl > 0.0)) throw ConfigError("either dt or cfl must be positive");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    SchemeConfig s = scheme;
    s.dt = resolved_dt();
    s.validate();
    if (scheme.order == 2 && grid_x.n < 5) throw ConfigError("order 2 needs at least 5 points");
    const bool twod = scheme.collision.kind == CollisionKind::TwoD;
    if (twod != (dim == 2)) throw ConfigError("collision 'twod' and grid dim 2 go together");
    if (dim == 2) {
        if (velocity != VelocityKind::Lebedev86) throw ConfigError("2D runs need velocity lebedev86");
        if (!grid_x.periodic() || !grid_y.periodic()) throw ConfigError("2D runs support periodic grids only");
        if (scheme.limiter) throw ConfigError("limiter is not available in 2D");
    } else if (velocity == VelocityKind::Lebedev86) {
        throw ConfigError("lebedev86 is a 2D velocity space");
    }
    if (scheme.collision.kind == CollisionKind::Burgers && velocity != VelocityKind::DiscreteTwo)
        throw ConfigError("burgers collision needs the two-velocity space");
}

namespace {

Json base_defaults()
{
    return Json{
        {"problem", "telegraph_smooth"},
        {"eps", 1e-6},
        {"dt", 0.0},
        {"cfl", 3.0},
        {"t_final", 1.0},
        {"order", 1},
        {"limiter", false},
        {"threads", 1},
        {"collision",
         {{"kind", "telegraph"},
          {"A", 1.0},
          {"C", 0.5},
          {"picard_tol", 1e-8},
          {"picard_max", 100},
          {"sigma_s", 1.0},
          {"sigma_a", 0.0},
          {"variable_sigma", false}}},
        {"grid", {{"dim", 1}, {"lo", -std::numbers::pi}, {"hi", std::numbers::pi}, {"n", 200}, {"boundary", "periodic"}}},
        {"velocity", {{"kind", "two"}}},
        {"output", {{"write_f", false}}},
    };
}

void check_keys(const Json& doc, const Json& allowed, const std::string& path)
{
    if (!doc.is_object()) throw ConfigError("config: '" + path + "' must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!allowed.contains(it.key())) throw ConfigError("config: unknown key '" + path + it.key() + "'");
        const Json& ref = allowed.at(it.key());
        if (ref.is_object()) check_keys(it.value(), ref, path + it.key() + ".");
    }
}

template <class T>
T get_as(const Json& j, const char* key, const std::string& path)
{
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError("config: bad value for '" + path + key + "'");
    }
}

}  // namespace

Json problem_defaults(const std::string& problem)
{
    Json d = base_defaults();
    d["problem"] = problem;
    const double pi = std::numbers::pi;
    if (problem == "telegraph_smooth") {
    } else if (problem == "advdiff_smooth") {
        d["collision"]["kind"] = "advdiff";
    } else if (problem == "onegroup_smooth") {
        d["collision"]["kind"] = "onegroup";
        d["velocity"]["kind"] = "gl16";
        d["cfl"] = 40.0 / (6.0 * pi);
        d["grid"]["n"] = 640;
    } else if (problem == "telegraph_riemann") {
        d["grid"] = {{"dim", 1}, {"lo", -1.0}, {"hi", 1.0}, {"n", 200}, {"boundary", "inflow_outflow"}};
        d["t_final"] = 0.04;
        d["cfl"] = 2.0;
    } else if (problem == "advdiff_riemann") {
        d["collision"]["kind"] = "advdiff";
        d["grid"] = {{"dim", 1}, {"lo", -10.0}, {"hi", 10.0}, {"n", 200}, {"boundary", "inflow_outflow"}};
        d["t_final"] = 3.0;
        d["cfl"] = 2.0;
    } else if (problem == "burgers_riemann") {
        d["collision"]["kind"] = "burgers";
        d["grid"] = {{"dim", 1}, {"lo", -10.0}, {"hi", 10.0}, {"n", 200}, {"boundary", "inflow_outflow"}};
        d["t_final"] = 2.0;
        d["cfl"] = 2.0;
    } else if (problem == "onegroup_isotropic") {
        d["collision"]["kind"] = "onegroup";
        d["velocity"]["kind"] = "gl16";
        d["grid"] = {{"dim", 1}, {"lo", 0.0}, {"hi", 1.0}, {"n", 200}, {"boundary", "inflow_outflow"}};
        d["eps"] = 1e-4;
        d["t_final"] = 0.1;
        d["cfl"] = 2.0;
    } else if (problem == "twod_manufactured") {
        d["collision"]["kind"] = "twod";
        d["velocity"]["kind"] = "lebedev86";
        d["grid"] = {{"dim", 2}, {"lo", 0.0}, {"hi", 1.0}, {"n", 64}, {"boundary", "periodic"}};
    } else if (problem == "twod_gaussian") {
        d["collision"]["kind"] = "twod";
        d["velocity"]["kind"] = "lebedev86";
        d["grid"] = {{"dim", 2}, {"lo", -1.0}, {"hi", 1.0}, {"n", 128}, {"boundary", "periodic"}};
        d["t_final"] = 0.1;
        d["cfl"] = 2.0;
    } else if (problem == "twod_gaussian_variable") {
        d["collision"]["kind"] = "twod";
        d["collision"]["variable_sigma"] = true;
        d["velocity"]["kind"] = "lebedev86";
        d["grid"] = {{"dim", 2}, {"lo", -1.0}, {"hi", 1.0}, {"n", 128}, {"boundary", "periodic"}};
        d["eps"] = 0.01;
        d["t_final"] = 0.006;
        d["cfl"] = 0.04;
    } else {
        throw ConfigError("unknown problem '" + problem + "'");
    }
    return d;
}

RunConfig parse_run_config(const Json& doc)
{
    if (!doc.is_object()) throw ConfigError("config: document must be an object");
    std::string problem = "telegraph_smooth";
    if (doc.contains("problem")) problem = get_as<std::string>(doc, "problem", "");
    Json merged = problem_defaults(problem);
    check_keys(doc, merged, "");
    merged.merge_patch(doc);

    RunConfig rc;
    rc.problem = problem;
    rc.scheme.eps = get_as<double>(merged, "eps", "");
    rc.scheme.dt = get_as<double>(merged, "dt", "");
    rc.scheme.order = get_as<int>(merged, "order", "");
    rc.scheme.limiter = get_as<bool>(merged, "limiter", "");
    rc.cfl = get_as<double>(merged, "cfl", "");
    rc.t_final = get_as<double>(merged, "t_final", "");
    rc.threads = get_as<int>(merged, "threads", "");

    const Json& c = merged["collision"];
    Collision& col = rc.scheme.collision;
    col.kind = collision_kind_from_string(get_as<std::string>(c, "kind", "collision."));
    col.A = get_as<double>(c, "A", "collision.");
    col.C = get_as<double>(c, "C", "collision.");
    col.picard_tol = get_as<double>(c, "picard_tol", "collision.");
    col.picard_max = get_as<int>(c, "picard_max", "collision.");
    col.sigma_s = get_as<double>(c, "sigma_s", "collision.");
    col.sigma_a = get_as<double>(c, "sigma_a", "collision.");
    col.variable_sigma = get_as<bool>(c, "variable_sigma", "collision.");

    const Json& g = merged["grid"];
    rc.dim = get_as<int>(g, "dim", "grid.");
    if (rc.dim != 1 && rc.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
    rc.grid_x = Axis(get_as<double>(g, "lo", "grid."), get_as<double>(g, "hi", "grid."), get_as<int>(g, "n", "grid."),
                     boundary_from_string(get_as<std::string>(g, "boundary", "grid.")));
    rc.grid_y = rc.grid_x;
    rc.velocity = velocity_kind_from_string(get_as<std::string>(merged["velocity"], "kind", "velocity."));
    rc.write_f = get_as<bool>(merged["output"], "write_f", "output.");
    rc.validate();
    return rc;
}

Json to_json(const RunConfig& rc)
{
    const auto& c = rc.scheme.collision;
    return Json{
        {"problem", rc.problem},
        {"eps", rc.scheme.eps},
        {"dt", rc.scheme.dt},
        {"cfl", rc.cfl},
        {"t_final", rc.t_final},
        {"order", rc.scheme.order},
        {"limiter", rc.scheme.limiter},
        {"threads", rc.threads},
        {"collision",
         {{"kind", to_string(c.kind)},
          {"A", c.A},
          {"C", c.C},
          {"picard_tol", c.picard_tol},
          {"picard_max", c.picard_max},
          {"sigma_s", c.sigma_s},
          {"sigma_a", c.sigma_a},
          {"variable_sigma", c.variable_sigma}}},
        {"grid",
         {{"dim", rc.dim},
          {"lo", rc.grid_x.lo},
          {"hi", rc.grid_x.hi},
          {"n", rc.grid_x.n},
          {"boundary", to_string(rc.grid_x.boundary)}}},
        {"velocity", {{"kind", to_string(rc.velocity)}}},
        {"output", {{"write_f", rc.write_f}}},
    };
}

void apply_override(Json& doc, const std::string& assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: '" + assignment + "'");
    std::string key = assignment.substr(0, eq);
    std::string text = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(text);
    } catch (const std::exception&) {
        value = text;
    }
    Json* node = &doc;
    std::size_t start = 0;
    while (true) {
        auto dot = key.find('.', start);
        std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("bad override key '" + key + "'");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        if (!node->contains(part) || !(*node)[part].is_object()) (*node)[part] = Json::object();
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace kinsl
