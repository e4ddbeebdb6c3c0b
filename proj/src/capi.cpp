#include "insulair.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "insulair/bounds.hpp"
#include "insulair/fem.hpp"
#include "insulair/radial.hpp"
#include "insulair/search.hpp"
#include "insulair/shape_spec.hpp"
#include "insulair/verify.hpp"

using nlohmann::json;

struct insulair_shape {
    insulair::ShapeSpec spec;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
insulair_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return INSULAIR_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return INSULAIR_ERR_INVALID;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return INSULAIR_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return INSULAIR_ERR_FAILED;
    }
}

insulair_status require(bool cond, const char* msg) {
    if (cond) return INSULAIR_OK;
    g_last_error = msg;
    return INSULAIR_ERR_INVALID;
}

json radial_record_json(int n, double R, double beta, double delta) {
    const insulair::RadialConfig cfg{n, R, beta, delta};
    const double I = insulair::dispersion_ball(cfg);
    json rec{{"n", n}, {"R", R}, {"delta", delta}, {"I", I}};
    if (insulair::is_dirichlet(beta)) {
        rec["beta"] = "inf";
        rec["c"] = nullptr;
        rec["threshold"] = nullptr;
    } else {
        rec["beta"] = beta;
        rec["c"] = beta == 0.0 ? 0.0
                   : (n == 2 ? insulair::c2(R, beta, delta)
                             : insulair::cn(n, R, beta, delta));
        if (beta > 0.0)
            rec["threshold"] = insulair::monotonicity_threshold(n, beta, R);
        else
            rec["threshold"] = nullptr;
    }
    return rec;
}

}  // namespace

extern "C" {

const char* insulair_version(void) { return "0.1.0"; }

const char* insulair_last_error(void) { return g_last_error.c_str(); }

void insulair_string_free(char* s) { delete[] s; }

insulair_status insulair_shape_from_json(const char* text, insulair_shape** out) {
    if (auto rc = require(text && out, "null argument")) return rc;
    return guarded([&] {
        auto shape = std::make_unique<insulair_shape>();
        shape->spec = insulair::ShapeSpec::parse(text);
        *out = shape.release();
    });
}

void insulair_shape_free(insulair_shape* shape) { delete shape; }

insulair_status insulair_shape_to_json(const insulair_shape* shape, char** out) {
    if (auto rc = require(shape && out, "null argument")) return rc;
    return guarded([&] { *out = dup_string(shape->spec.to_json()); });
}

insulair_status insulair_shape_area(const insulair_shape* shape, double* out) {
    if (auto rc = require(shape && out, "null argument")) return rc;
    return guarded([&] { *out = insulair::steiner_volume(shape->spec.quermass(), 0.0); });
}

insulair_status insulair_shape_perimeter(const insulair_shape* shape, double* out) {
    if (auto rc = require(shape && out, "null argument")) return rc;
    return guarded([&] { *out = insulair::steiner_perimeter(shape->spec.quermass(), 0.0); });
}

insulair_status insulair_shape_is_planar(const insulair_shape* shape, int* out) {
    if (auto rc = require(shape && out, "null argument")) return rc;
    *out = shape->spec.kind != insulair::ShapeSpec::Kind::Box ||
                   shape->spec.box_sides.size() == 2
               ? 1
               : 0;
    return INSULAIR_OK;
}

insulair_status insulair_radial_dispersion(int n, double R, double beta, double delta,
                                           double* out) {
    if (auto rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = insulair::dispersion_ball({n, R, beta, delta}); });
}

insulair_status insulair_monotonicity_threshold(int n, double beta, double R, double* out) {
    if (auto rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = insulair::monotonicity_threshold(n, beta, R); });
}

insulair_status insulair_radial_record(int n, double R, double beta, double delta,
                                       char** json_out) {
    if (auto rc = require(json_out != nullptr, "null argument")) return rc;
    return guarded([&] { *json_out = dup_string(radial_record_json(n, R, beta, delta).dump()); });
}

insulair_status insulair_dispersion(const insulair_shape* shape, double beta, double delta,
                                    int n_theta, int n_s, double* out) {
    if (auto rc = require(shape && out, "null argument")) return rc;
    return guarded([&] {
        *out = insulair::dispersion_of(shape->spec.to_shape(), beta, delta,
                                       {n_theta, n_s});
    });
}

insulair_status insulair_compute_record(const insulair_shape* shape, double beta,
                                        double delta, int n_theta, int n_s,
                                        char** json_out) {
    if (auto rc = require(shape && json_out, "null argument")) return rc;
    return guarded([&] {
        const insulair::Shape D = shape->spec.to_shape();
        const insulair::Resolution res{n_theta, n_s};
        const double I = insulair::dispersion_of(D, beta, delta, res);
        json rec{{"shape", json::parse(shape->spec.to_json())},
                 {"delta", delta},
                 {"I", I},
                 {"resolution", {{"n_theta", n_theta}, {"n_s", n_s}}}};
        if (insulair::is_dirichlet(beta))
            rec["beta"] = "inf";
        else
            rec["beta"] = beta;
        if (delta > 0.0) {
            const insulair::AprioriResult bounds =
                insulair::apriori_bounds(D, beta, delta, I, res);
            rec["bounds"] = {{"pass", bounds.pass},
                             {"capacity_margin", bounds.capacity_margin}};
            if (!insulair::is_dirichlet(beta))
                rec["bounds"]["beta_perimeter_margin"] = bounds.beta_perimeter_margin;
        }
        *json_out = dup_string(rec.dump());
    });
}

insulair_status insulair_verify(const char* suite, const char* config_json,
                                char** report_json) {
    if (auto rc = require(suite && report_json, "null argument")) return rc;
    return guarded([&] {
        json cfg = json::object();
        if (config_json && *config_json) cfg = json::parse(config_json);
        *report_json = dup_string(insulair::verify::run_suite(suite, cfg).dump());
    });
}

insulair_status insulair_optimize(const char* config_json, char** result_json) {
    if (auto rc = require(config_json && result_json, "null argument")) return rc;
    return guarded([&] {
        const json cfg = json::parse(config_json);
        insulair::SearchConfig sc;
        if (cfg.contains("m")) sc.m = cfg["m"].get<int>();
        if (cfg.contains("beta")) sc.beta = cfg["beta"].get<double>();
        if (cfg.contains("delta")) sc.delta = cfg["delta"].get<double>();
        if (cfg.contains("seed")) sc.seed = cfg["seed"].get<std::uint64_t>();
        if (cfg.contains("restarts")) sc.restarts = cfg["restarts"].get<int>();
        if (cfg.contains("max_iters")) sc.max_iters = cfg["max_iters"].get<int>();
        const std::string constraint = cfg.value("constraint", "perimeter");
        if (constraint == "perimeter")
            sc.constraint = insulair::Constraint::Perimeter;
        else if (constraint == "area")
            sc.constraint = insulair::Constraint::Area;
        else
            throw std::invalid_argument("optimize: constraint must be perimeter|area");
        if (!cfg.contains("value"))
            throw std::invalid_argument("optimize: missing constraint value");
        sc.constraint_value = cfg["value"].get<double>();
        if (cfg.contains("resolution")) {
            const std::string r = cfg["resolution"].get<std::string>();
            const auto x = r.find('x');
            if (x == std::string::npos)
                throw std::invalid_argument("optimize: resolution must look like 64x16");
            sc.search_res = {std::stoi(r.substr(0, x)), std::stoi(r.substr(x + 1))};
        }

        const insulair::SearchTrace trace = insulair::minimize_dispersion(sc);

        // Final shape, constraint-normalized, as a reusable shape spec.
        insulair::ConvexPolygon best = insulair::support_to_polygon(trace.best_shape);
        const double lambda =
            sc.constraint == insulair::Constraint::Perimeter
                ? sc.constraint_value / best.perimeter()
                : std::sqrt(sc.constraint_value / best.area());
        best = best.scaled(lambda);
        insulair::ShapeSpec spec;
        spec.kind = insulair::ShapeSpec::Kind::Polygon;
        spec.vertices = best.vertices();

        json iterations = json::array();
        for (const auto& it : trace.iterations)
            iterations.push_back({{"h", it.h}, {"objective", it.objective}});
        json out{{"config",
                  {{"m", sc.m},
                   {"beta", sc.beta},
                   {"delta", sc.delta},
                   {"constraint", constraint},
                   {"value", sc.constraint_value},
                   {"seed", sc.seed},
                   {"restarts", sc.restarts},
                   {"max_iters", sc.max_iters},
                   {"resolution", std::to_string(sc.search_res.n_theta) + "x" +
                                      std::to_string(sc.search_res.n_s)}}},
                 {"iterations", iterations},
                 {"best_value", trace.best_value},
                 {"final_value", trace.final_value},
                 {"best_support", trace.best_shape.h},
                 {"best_shape", json::parse(spec.to_json())}};
        *result_json = dup_string(out.dump());
    });
}

}  // extern "C"
