#include <doctest.h>

#include <cmath>
#include <limits>

#include "sobtrace/report.hpp"

using namespace sobtrace;

TEST_CASE("JSON floats keep 17 significant digits") {
    Json j = Json::object();
    j["third"] = 1.0 / 3;
    j["int"] = 5;
    j["bad"] = std::numeric_limits<double>::quiet_NaN();
    j["inf"] = std::numeric_limits<double>::infinity();
    CHECK(dump_json(j, -1) == R"({"third":0.33333333333333331,"int":5,"bad":null,"inf":null})");
}

TEST_CASE("report serialization is deterministic") {
    InequalityReport r = trace_report(2, 5, extremal_power(5, 1.0, 0.2), true);
    std::string a = dump_json(to_json(r));
    std::string b = dump_json(to_json(trace_report(2, 5, extremal_power(5, 1.0, 0.2), true)));
    CHECK(a == b);
    Json j = to_json(r);
    CHECK(j["kind"] == "inequality");
    CHECK(j["order"] == 4);
    CHECK(j["pass"] == true);
    CHECK(j.begin().key() == "kind");
    CHECK(Json::parse(a)["lhs"].get<double>() == r.lhs);
}

TEST_CASE("identity and scan reports") {
    Json i = to_json(coefficient_identity(3));
    CHECK(i["kind"] == "identity");
    CHECK(i["pass"] == true);
    ScanResult s;
    s.curve = {{-0.1, 0.2, 0.01}, {0.0, 0.0, 0.0}};
    Json j = to_json(s);
    CHECK(j["kind"] == "scan");
    CHECK(j["curve"].size() == 2);
}

TEST_CASE("CSV uses the union of columns") {
    Json a = Json::object();
    a["x"] = 1;
    a["y"] = "two";
    Json b = Json::object();
    b["y"] = "three, four";
    b["z"] = Json::array({1, 2});
    std::string csv = to_csv({a, b});
    CHECK(csv == "x,y,z\n1,two,\n,\"three, four\",\"[1,2]\"\n");
}
