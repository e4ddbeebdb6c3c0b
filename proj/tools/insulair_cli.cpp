// Command-line driver for the insulair shared library. All numerics go
// through the C API in insulair.h; this translation unit only handles
// argument parsing, JSON/CSV assembly, and file output.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "insulair.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CliError : std::runtime_error {
    int code;
    CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError(code, msg); }

double parse_beta(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return INSULAIR_BETA_DIRICHLET;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(kExitUsage, "invalid --beta value \"" + s + "\" (number or \"inf\")");
    }
}

std::pair<int, int> parse_resolution(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos)
        fail(kExitUsage, "invalid --resolution \"" + s + "\" (expected NTxNS, e.g. 256x64)");
    try {
        return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    } catch (const std::exception&) {
        fail(kExitUsage, "invalid --resolution \"" + s + "\"");
    }
}

std::string consume(char* s) {
    std::string out(s ? s : "");
    insulair_string_free(s);
    return out;
}

void check(insulair_status rc) {
    if (rc != INSULAIR_OK)
        fail(rc == INSULAIR_ERR_INVALID ? kExitUsage : kExitVerifyFailed,
             insulair_last_error());
}

struct ShapeHandle {
    insulair_shape* ptr = nullptr;
    ~ShapeHandle() { insulair_shape_free(ptr); }
};

ShapeHandle load_shape(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kExitUsage, "cannot open shape file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    ShapeHandle h;
    const insulair_status rc = insulair_shape_from_json(buf.str().c_str(), &h.ptr);
    if (rc != INSULAIR_OK) fail(kExitUsage, insulair_last_error());
    return h;
}

// Atomic file write: temp + rename.
void write_file(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) fail(kExitVerifyFailed, "cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

json beta_to_json(double beta) {
    if (beta == INSULAIR_BETA_DIRICHLET) return "inf";
    return beta;
}

struct RunRecord {
    std::string command;
    json config;
    json outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json finish() const {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        return {{"command", command},
                {"config", config},
                {"version", insulair_version()},
                {"outputs", outputs},
                {"duration_ms", ms}};
    }
};

void emit(const RunRecord& rec, const std::string& out_dir) {
    const std::string text = rec.finish().dump(2);
    if (out_dir.empty()) {
        std::cout << text << "\n";
    } else {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / (rec.command + ".json"), text + "\n");
        std::cout << text << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Heat-dispersion computations for insulated convex bodies"};
    app.require_subcommand(1);

    std::string out_dir;
    app.add_option("--out", out_dir, "Directory for result files (atomic writes)");

    // radial ---------------------------------------------------------------
    auto* radial = app.add_subcommand("radial", "Closed-form concentric-ball dispersion");
    int r_n = 2;
    double r_R = 1.0, r_delta = 1.0;
    std::string r_beta = "1";
    radial->add_option("--n", r_n, "Dimension (>= 2)");
    radial->add_option("--R", r_R, "Inner radius");
    radial->add_option("--beta", r_beta, "Robin coefficient or \"inf\"");
    radial->add_option("--delta", r_delta, "Layer thickness");

    // compute --------------------------------------------------------------
    auto* compute = app.add_subcommand("compute", "FEM dispersion of a shape-spec file");
    std::string c_shape, c_beta = "1", c_res = "256x64";
    double c_delta = 1.0;
    compute->add_option("--shape", c_shape, "Shape spec JSON file")->required();
    compute->add_option("--beta", c_beta, "Robin coefficient or \"inf\"");
    compute->add_option("--delta", c_delta, "Layer thickness");
    compute->add_option("--resolution", c_res, "Mesh resolution NTxNS");

    // sweep ----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "(beta, delta) grid sweep, CSV output");
    std::string s_shape, s_res = "256x64";
    std::vector<double> s_betas, s_deltas;
    sweep->add_option("--shape", s_shape, "Shape spec JSON file")->required();
    sweep->add_option("--betas", s_betas, "Beta grid values")->delimiter(',');
    sweep->add_option("--deltas", s_deltas, "Delta grid values")->delimiter(',');
    sweep->add_option("--resolution", s_res, "Mesh resolution NTxNS");

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string v_suite = "all", v_beta, v_res;
    std::optional<int> v_samples, v_trials;
    std::optional<double> v_R, v_delta;
    std::optional<std::uint64_t> v_seed;
    verify->add_option("--suite", v_suite, "Suite name or \"all\"");
    verify->add_option("--samples", v_samples, "Sample count override");
    verify->add_option("--trials", v_trials, "Trial count override");
    verify->add_option("--beta", v_beta, "Beta override");
    verify->add_option("--R", v_R, "Radius override");
    verify->add_option("--delta", v_delta, "Delta override");
    verify->add_option("--seed", v_seed, "Seed override");
    verify->add_option("--resolution", v_res, "Resolution override NTxNS");

    // optimize -------------------------------------------------------------
    auto* optimize = app.add_subcommand("optimize", "Search for low-dispersion shapes");
    std::string o_config, o_constraint = "perimeter", o_res = "64x16";
    std::optional<double> o_value;
    double o_beta = 1.0, o_delta = 0.5;
    int o_m = 16, o_restarts = 10, o_iters = 200;
    std::uint64_t o_seed = 1;
    optimize->add_option("--config", o_config, "JSON config file (overrides flags)");
    optimize->add_option("--constraint", o_constraint, "perimeter | area");
    optimize->add_option("--value", o_value, "Constraint value");
    optimize->add_option("--m", o_m, "Number of support angles");
    optimize->add_option("--beta", o_beta, "Robin coefficient");
    optimize->add_option("--delta", o_delta, "Layer thickness");
    optimize->add_option("--seed", o_seed, "Master seed");
    optimize->add_option("--restarts", o_restarts, "Seeded restarts");
    optimize->add_option("--max-iters", o_iters, "Iterations per restart");
    optimize->add_option("--resolution", o_res, "Search resolution NTxNS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (radial->parsed()) {
        const double beta = parse_beta(r_beta);
        RunRecord rec;
        rec.command = "radial";
        rec.config = {{"n", r_n}, {"R", r_R}, {"beta", beta_to_json(beta)},
                      {"delta", r_delta}};
        char* s = nullptr;
        check(insulair_radial_record(r_n, r_R, beta, r_delta, &s));
        rec.outputs = json::parse(consume(s));
        emit(rec, out_dir);
        return kExitOk;
    }

    if (compute->parsed()) {
        const double beta = parse_beta(c_beta);
        const auto [nt, ns] = parse_resolution(c_res);
        const ShapeHandle shape = load_shape(c_shape);
        RunRecord rec;
        rec.command = "compute";
        rec.config = {{"shape_file", c_shape},
                      {"beta", beta_to_json(beta)},
                      {"delta", c_delta},
                      {"resolution", c_res}};
        char* s = nullptr;
        check(insulair_compute_record(shape.ptr, beta, c_delta, nt, ns, &s));
        rec.outputs = json::parse(consume(s));
        emit(rec, out_dir);
        return kExitOk;
    }

    if (sweep->parsed()) {
        if (s_betas.empty() || s_deltas.empty())
            fail(kExitUsage, "sweep: --betas and --deltas must be non-empty");
        const auto [nt, ns] = parse_resolution(s_res);
        const ShapeHandle shape = load_shape(s_shape);
        double perim = 0.0;
        check(insulair_shape_perimeter(shape.ptr, &perim));

        // Disk shapes get the analytic monotonicity-threshold column.
        std::optional<double> disk_R;
        {
            char* sj = nullptr;
            check(insulair_shape_to_json(shape.ptr, &sj));
            const json spec = json::parse(consume(sj));
            if (spec["type"] == "disk") disk_R = spec["radius"].get<double>();
        }

        std::ostringstream csv;
        csv << "beta,delta,I,bound_betaP,bound_dirichlet";
        if (disk_R) csv << ",threshold";
        csv << "\n";
        for (double beta : s_betas) {
            for (double delta : s_deltas) {
                double I = 0.0, I_dir = 0.0;
                check(insulair_dispersion(shape.ptr, beta, delta, nt, ns, &I));
                check(insulair_dispersion(shape.ptr, INSULAIR_BETA_DIRICHLET, delta, nt,
                                          ns, &I_dir));
                const double bound_betaP =
                    beta * (perim + 2.0 * 3.14159265358979323846 * delta);
                csv << beta << "," << delta << "," << I << "," << bound_betaP << ","
                    << I_dir;
                if (disk_R) {
                    double thr = 0.0;
                    check(insulair_monotonicity_threshold(2, beta, *disk_R, &thr));
                    csv << "," << thr;
                }
                csv << "\n";
            }
        }
        RunRecord rec;
        rec.command = "sweep";
        rec.config = {{"shape_file", s_shape},
                      {"betas", s_betas},
                      {"deltas", s_deltas},
                      {"resolution", s_res}};
        rec.outputs = {{"csv", csv.str()}};
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / "sweep.csv", csv.str());
        }
        std::cout << csv.str();
        emit(rec, out_dir);
        return kExitOk;
    }

    if (verify->parsed()) {
        json cfg = json::object();
        if (v_samples) cfg["samples"] = *v_samples;
        if (v_trials) cfg["trials"] = *v_trials;
        if (!v_beta.empty()) cfg["beta"] = parse_beta(v_beta);
        if (v_R) cfg["R"] = *v_R;
        if (v_delta) cfg["delta"] = *v_delta;
        if (v_seed) cfg["seed"] = *v_seed;
        if (!v_res.empty()) {
            const auto [nt, ns] = parse_resolution(v_res);
            cfg["n_theta"] = nt;
            cfg["n_s"] = ns;
        }
        char* s = nullptr;
        check(insulair_verify(v_suite.c_str(), cfg.dump().c_str(), &s));
        const json report = json::parse(consume(s));
        RunRecord rec;
        rec.command = "verify";
        rec.config = {{"suite", v_suite}, {"overrides", cfg}};
        rec.outputs = report;
        emit(rec, out_dir);
        return report["pass"].get<bool>() ? kExitOk : kExitVerifyFailed;
    }

    if (optimize->parsed()) {
        json cfg;
        if (!o_config.empty()) {
            std::ifstream in(o_config);
            if (!in) fail(kExitUsage, "cannot open config file " + o_config);
            try {
                in >> cfg;
            } catch (const json::exception& e) {
                fail(kExitUsage, std::string("invalid config JSON: ") + e.what());
            }
        } else {
            if (!o_value) fail(kExitUsage, "optimize: missing --value (or --config)");
            cfg = {{"constraint", o_constraint}, {"value", *o_value},
                   {"m", o_m},                   {"beta", o_beta},
                   {"delta", o_delta},           {"seed", o_seed},
                   {"restarts", o_restarts},     {"max_iters", o_iters},
                   {"resolution", o_res}};
        }
        char* s = nullptr;
        check(insulair_optimize(cfg.dump().c_str(), &s));
        const json result = json::parse(consume(s));

        RunRecord rec;
        rec.command = "optimize";
        rec.config = result["config"];
        rec.outputs = {{"best_value", result["best_value"]},
                       {"final_value", result["final_value"]},
                       {"best_shape", result["best_shape"]}};
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            std::ostringstream trace;
            for (const auto& it : result["iterations"]) trace << it.dump() << "\n";
            write_file(fs::path(out_dir) / "trace.jsonl", trace.str());
            write_file(fs::path(out_dir) / "shape.json",
                       result["best_shape"].dump(2) + "\n");
        }
        emit(rec, out_dir);
        return kExitOk;
    }

    fail(kExitUsage, "no subcommand");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}
