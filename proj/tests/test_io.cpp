#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "torslat/io.hpp"

using namespace torslat;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    return std::string(TORSLAT_FIXTURES) + "/" + name;
}

json run_json(RunConfig cfg, int expect_code = 0) {
    std::ostringstream os;
    int rc = run(cfg, os);
    REQUIRE(rc == expect_code);
    return json::parse(os.str());
}

}  // namespace

TEST_CASE("lattice command on the A2 preset") {
    RunConfig cfg;
    cfg.command = "lattice";
    cfg.algebra_path = fixture("a2.json");
    json j = run_json(cfg);
    CHECK(j["count"] == 5);
    CHECK(j["classes"].size() == 5);
    CHECK(j["prime"] == 5);

    // the prime override replaces the document's choice
    cfg.prime_override = 7;
    json j7 = run_json(cfg);
    CHECK(j7["prime"] == 7);
    CHECK(j7["count"] == 5);
}

TEST_CASE("hasse command emits arrows and DOT") {
    RunConfig cfg;
    cfg.command = "hasse";
    cfg.algebra_path = fixture("a2.json");
    json j = run_json(cfg);
    REQUIRE(j["arrows"].size() == 5);
    std::multiset<std::string> labels;
    for (const auto& a : j["arrows"]) labels.insert(a["label"].get<std::string>());
    CHECK(labels == std::multiset<std::string>{"P1", "S1", "S1", "S2", "S2"});
}

TEST_CASE("DOT output is deterministic") {
    Algebra A1 = make_type_a(1, {}, Caps{});
    Lattice L1(A1);
    std::string dot = emit_dot(L1);
    CHECK(dot ==
          "digraph tors {\n"
          "  rankdir=TB;\n"
          "  n0 [label=\"0: {}\"];\n"
          "  n1 [label=\"1: {S1}\"];\n"
          "  n1 -> n0 [label=\"S1\"];\n"
          "}\n");
}

TEST_CASE("semistable command") {
    RunConfig cfg;
    cfg.command = "semistable";
    cfg.algebra_path = fixture("a2.json");
    cfg.theta = {-1, 1};
    json j = run_json(cfg);
    CHECK(j["t_strict"] == json::array({"S1"}));
    CHECK(j["semistable"] == json::array({"P1"}));
}

TEST_CASE("kronecker mutate command") {
    RunConfig cfg;
    cfg.command = "kronecker";
    cfg.kron_action = "mutate";
    json j = run_json(cfg);
    CHECK(j["exchanges"].size() == 3);
    CHECK(j["fixed"] == json::array({"G"}));
    CHECK(j["irreducible"] == false);
}

TEST_CASE("error reporting and exit codes") {
    RunConfig bad;
    bad.command = "lattice";
    bad.algebra_path = fixture("bad_decomposable.json");
    std::ostringstream os;
    CHECK(run(bad, os) == 1);
    json j = json::parse(os.str());
    CHECK(j["error"] == "input");
    CHECK(j["detail"].get<std::string>().find("BAD") != std::string::npos);

    RunConfig theta;
    theta.command = "kronecker";
    theta.kron_action = "theta";
    theta.theta = {2, 2};
    std::ostringstream os2;
    CHECK(run(theta, os2) == 1);

    // a tiny dimension cap turns label computation into a resource error
    RunConfig capped;
    capped.command = "hasse";
    capped.algebra_path = fixture("a2.json");
    capped.caps.dim_cap = 1;
    std::ostringstream os3;
    CHECK(run(capped, os3) == 2);
    CHECK(json::parse(os3.str())["error"] == "resource-cap");
}

TEST_CASE("class filters restrict cosilt and mutate output") {
    RunConfig cfg;
    cfg.command = "mutate";
    cfg.algebra_path = fixture("a2.json");
    cfg.class_id = 0;  // the bottom class touches exactly two arrows
    json j = run_json(cfg);
    CHECK(j["mutations"].size() == 2);

    cfg.command = "cosilt";
    json c = run_json(cfg);
    REQUIRE(c["cosilting"].size() == 1);
    CHECK(c["cosilting"][0]["class_id"] == 0);
}

TEST_CASE("byte-stable output across runs") {
    RunConfig cfg;
    cfg.command = "cosilt";
    cfg.algebra_path = fixture("a3.json");
    std::ostringstream a, b;
    REQUIRE(run(cfg, a) == 0);
    REQUIRE(run(cfg, b) == 0);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("wide and bricks and mutate commands run clean on A2") {
    for (const char* cmd : {"wide", "bricks", "mutate", "labels", "cosilt"}) {
        RunConfig cfg;
        cfg.command = cmd;
        cfg.algebra_path = fixture("a2.json");
        std::ostringstream os;
        CHECK(run(cfg, os) == 0);
    }
}
