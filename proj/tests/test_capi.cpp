#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include <json.hpp>

#include "insulair.h"

using nlohmann::json;

namespace {

std::string consume(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    insulair_string_free(s);
    return out;
}

struct ShapeHandle {
    insulair_shape* ptr = nullptr;
    ~ShapeHandle() { insulair_shape_free(ptr); }
};

}  // namespace

TEST_CASE("version string is present") {
    const char* v = insulair_version();
    REQUIRE(v != nullptr);
    CHECK(std::strlen(v) > 0);
}

TEST_CASE("shape round trip through JSON") {
    ShapeHandle h;
    REQUIRE(insulair_shape_from_json(R"({"type":"disk","radius":2.0})", &h.ptr) ==
            INSULAIR_OK);
    double area = 0.0, perim = 0.0;
    CHECK(insulair_shape_area(h.ptr, &area) == INSULAIR_OK);
    CHECK(insulair_shape_perimeter(h.ptr, &perim) == INSULAIR_OK);
    CHECK(area == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-13));
    CHECK(perim == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-13));
    int planar = 0;
    CHECK(insulair_shape_is_planar(h.ptr, &planar) == INSULAIR_OK);
    CHECK(planar == 1);

    char* text = nullptr;
    REQUIRE(insulair_shape_to_json(h.ptr, &text) == INSULAIR_OK);
    const json round = json::parse(consume(text));
    CHECK(round["type"] == "disk");
    CHECK(round["radius"] == doctest::Approx(2.0));
}

TEST_CASE("polygon, regular polygon, and box specs parse") {
    ShapeHandle poly;
    REQUIRE(insulair_shape_from_json(
                R"({"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})", &poly.ptr) ==
            INSULAIR_OK);
    double area = 0.0;
    CHECK(insulair_shape_area(poly.ptr, &area) == INSULAIR_OK);
    CHECK(area == doctest::Approx(1.0).epsilon(1e-13));

    ShapeHandle ngon;
    REQUIRE(insulair_shape_from_json(
                R"({"type":"regular_ngon","sides":6,"perimeter":6.0})", &ngon.ptr) ==
            INSULAIR_OK);
    double perim = 0.0;
    CHECK(insulair_shape_perimeter(ngon.ptr, &perim) == INSULAIR_OK);
    CHECK(perim == doctest::Approx(6.0).epsilon(1e-12));

    ShapeHandle box;
    REQUIRE(insulair_shape_from_json(R"({"type":"box","sides":[1,2,3]})", &box.ptr) ==
            INSULAIR_OK);
    int planar = 1;
    CHECK(insulair_shape_is_planar(box.ptr, &planar) == INSULAIR_OK);
    CHECK(planar == 0);
}

TEST_CASE("errors set a status and a message") {
    insulair_shape* out = nullptr;
    CHECK(insulair_shape_from_json("not json at all", &out) == INSULAIR_ERR_INVALID);
    CHECK(out == nullptr);
    const char* msg = insulair_last_error();
    REQUIRE(msg != nullptr);
    CHECK(std::strlen(msg) > 0);

    CHECK(insulair_shape_from_json(R"({"type":"disk","radius":-1})", &out) ==
          INSULAIR_ERR_INVALID);
    CHECK(insulair_shape_from_json(R"({"type":"wedge"})", &out) == INSULAIR_ERR_INVALID);
    CHECK(insulair_shape_from_json(nullptr, &out) == INSULAIR_ERR_INVALID);

    double x = 0.0;
    CHECK(insulair_radial_dispersion(1, 1.0, 1.0, 1.0, &x) == INSULAIR_ERR_INVALID);
    CHECK(insulair_shape_area(nullptr, &x) == INSULAIR_ERR_INVALID);
}

TEST_CASE("radial dispersion values through the C boundary") {
    double I = 0.0;
    REQUIRE(insulair_radial_dispersion(2, 1.0, 1.0, 1.0, &I) == INSULAIR_OK);
    CHECK(I == doctest::Approx(5.266060557785402).epsilon(1e-12));
    REQUIRE(insulair_radial_dispersion(2, 1.0, INSULAIR_BETA_DIRICHLET, 1.0, &I) ==
            INSULAIR_OK);
    CHECK(I == doctest::Approx(9.064720283654388).epsilon(1e-12));

    double dstar = 0.0;
    REQUIRE(insulair_monotonicity_threshold(2, 0.25, 1.0, &dstar) == INSULAIR_OK);
    CHECK(dstar == doctest::Approx(3.0).epsilon(1e-13));

    char* rec_text = nullptr;
    REQUIRE(insulair_radial_record(2, 1.0, 1.0, 1.0, &rec_text) == INSULAIR_OK);
    const json rec = json::parse(consume(rec_text));
    CHECK(rec["I"] == doctest::Approx(5.266060557785402));
    CHECK(rec["threshold"] == doctest::Approx(0.0));

    REQUIRE(insulair_radial_record(2, 1.0, INSULAIR_BETA_DIRICHLET, 1.0, &rec_text) ==
            INSULAIR_OK);
    CHECK(json::parse(consume(rec_text))["beta"] == "inf");
}

TEST_CASE("FEM dispersion through the C boundary") {
    ShapeHandle disk;
    REQUIRE(insulair_shape_from_json(R"({"type":"disk","radius":1})", &disk.ptr) ==
            INSULAIR_OK);
    double I = 0.0;
    REQUIRE(insulair_dispersion(disk.ptr, 1.0, 1.0, 128, 32, &I) == INSULAIR_OK);
    CHECK(I == doctest::Approx(5.266060557785402).epsilon(1e-2));

    char* rec_text = nullptr;
    REQUIRE(insulair_compute_record(disk.ptr, 1.0, 1.0, 128, 32, &rec_text) == INSULAIR_OK);
    const json rec = json::parse(consume(rec_text));
    CHECK(rec["I"] == doctest::Approx(I));
    CHECK(rec["bounds"]["pass"] == true);

    // An analytic-only box cannot be meshed.
    ShapeHandle box;
    REQUIRE(insulair_shape_from_json(R"({"type":"box","sides":[1,1,1]})", &box.ptr) ==
            INSULAIR_OK);
    CHECK(insulair_dispersion(box.ptr, 1.0, 1.0, 64, 16, &I) == INSULAIR_ERR_INVALID);
}

TEST_CASE("verification suites through the C boundary") {
    char* report_text = nullptr;
    REQUIRE(insulair_verify("steiner", R"({"samples": 25})", &report_text) == INSULAIR_OK);
    const json report = json::parse(consume(report_text));
    CHECK(report["pass"] == true);

    CHECK(insulair_verify("no_such_suite", "{}", &report_text) == INSULAIR_ERR_INVALID);
    CHECK(insulair_verify(nullptr, "{}", &report_text) == INSULAIR_ERR_INVALID);
}

TEST_CASE("shape search through the C boundary") {
    char* result_text = nullptr;
    const char* cfg = R"({
        "constraint": "perimeter", "value": 6.283185307179586,
        "m": 6, "beta": 1.0, "delta": 0.5,
        "restarts": 2, "max_iters": 10, "seed": 4,
        "resolution": "48x12"
    })";
    REQUIRE(insulair_optimize(cfg, &result_text) == INSULAIR_OK);
    const json result = json::parse(consume(result_text));
    CHECK(result["best_value"].get<double>() > 0.0);
    REQUIRE(result.contains("best_shape"));

    // Round trip: the emitted shape is a valid input spec.
    ShapeHandle shape;
    REQUIRE(insulair_shape_from_json(result["best_shape"].dump().c_str(), &shape.ptr) ==
            INSULAIR_OK);
    double I = 0.0;
    CHECK(insulair_dispersion(shape.ptr, 1.0, 0.5, 64, 16, &I) == INSULAIR_OK);
    CHECK(I > 0.0);

    CHECK(insulair_optimize(R"({"constraint":"bogus","value":1})", &result_text) ==
          INSULAIR_ERR_INVALID);
}
