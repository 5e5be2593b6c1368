#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "serialhom/commands.hpp"
#include "serialhom/io.hpp"
#include "serialhom/qpd.hpp"

using namespace serialhom;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("serialhom_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("algebra json round trip") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    json j = algebra_to_json(a);
    CHECK(j["kind"] == "cyclic");
    SerialAlgebra back = algebra_from_json(j);
    CHECK(back == a);
    CHECK(back.cyclic_presentation());

    SerialAlgebra e = SerialAlgebra::kupisch({2, 2}, {2, 2});
    CHECK(algebra_from_json(algebra_to_json(e)) == e);

    SECTION("strict parsing") {
        CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"kind":"cyclic","n":4})")), ParseError);
        CHECK_THROWS_AS(
            algebra_from_json(json::parse(R"({"kind":"cyclic","n":4,"delta":[1],"x":0})")),
            ParseError);
        CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"kind":"other"})")), ParseError);
        CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"kind":"cyclic","n":1,"delta":[1]})")),
                        ParseError);
        try {
            algebra_from_json(json::parse(R"({"kind":"kupisch","successor":[2,2],"loewy":[2,"x"]})"));
            FAIL("expected a parse error");
        } catch (const ParseError& ex) {
            CHECK(ex.field() == "algebra.loewy[1]");
        }
    }
}

TEST_CASE("certificate json round trip") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    ProjComplex c = periodic_certificate(a, {1, 2}, 2);
    CertificateFile file{a, ModuleSum{{Uniserial{1, 2}}}, 0, c};
    json j = certificate_to_json(file);
    CertificateFile back = certificate_from_json(j);
    CHECK(back.algebra == a);
    CHECK(back.module == file.module);
    CHECK(back.claimed_score == 0);
    QuasiResolutionCheck chk = check_quasi_resolution(back.complex, back.module);
    CHECK(chk.ok);
    CHECK(chk.score == 0);

    SECTION("rational coefficients survive") {
        CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
        CHECK(rational_from_string("-3/4") == Rational(-3, 4));
        CHECK(rational_from_string("7") == Rational(7));
        CHECK_THROWS_AS(rational_from_string("x"), ParseError);
    }
}

TEST_CASE("cli qpd golden run") {
    RunResult r = run({"qpd", "--cyclic", "4", "--delta", "1,3", "--top", "2", "--len", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("qpd: [1, 1] exact") != std::string::npos);

    RunResult g = run({"qgldim", "--cyclic", "6", "--delta", "1,2,3,4,5,6"});
    CHECK(g.code == 0);
    CHECK(g.out.find("qgldim: [0, 0] exact") != std::string::npos);
}

TEST_CASE("cli emits checkable certificates") {
    fs::path dir = fresh_dir("emit");
    RunResult r = run({"qpd", "--cyclic", "4", "--delta", "1,3", "--top", "1", "--len", "1",
                       "--emit-certificates", dir.string()});
    REQUIRE(r.code == 0);
    bool any = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        any = true;
        RunResult chk = run({"check", entry.path().string()});
        INFO(entry.path().string() << ": " << chk.out << chk.err);
        CHECK(chk.code == 0);
    }
    CHECK(any);

    SECTION("tampering a path length is rejected") {
        for (const auto& entry : fs::directory_iterator(dir)) {
            std::ifstream in(entry.path());
            json j = json::parse(in);
            if (j["diffs"].empty() || j["diffs"][0].empty()) continue;
            j["diffs"][0][0]["len"] = j["diffs"][0][0]["len"].get<int>() + 1;
            fs::path bad = dir / "tampered.json";
            std::ofstream(bad) << j.dump(2);
            RunResult chk = run({"check", bad.string()});
            CHECK(chk.code == 1);
            break;
        }
    }
}

TEST_CASE("cli exit codes") {
    CHECK(run({"qpd", "--top", "1", "--len", "1"}).code == 2);  // no algebra source
    CHECK(run({"info"}).code == 2);
    CHECK(run({"info", "--cyclic", "4", "--delta", "1,3", "--spec", "x.json"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"qpd", "--cyclic", "4", "--delta", "1,3", "--top", "1"}).code == 2);
    CHECK(run({"check", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"qpd", "--cyclic", "4", "--delta", "9", "--top", "1", "--len", "1"}).code == 2);
}

TEST_CASE("cli spec files") {
    fs::path dir = fresh_dir("spec");
    fs::path good = dir / "algebra.json";
    std::ofstream(good) << R"({"kind":"kupisch","successor":[2,2],"loewy":[2,2]})";
    RunResult r = run({"info", "--spec", good.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("self_injective: no") != std::string::npos);

    fs::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"kind":"kupisch","successor":[2,2],"loewy":[2,2],"extra":1})";
    RunResult rb = run({"info", "--spec", bad.string()});
    CHECK(rb.code == 2);
    CHECK(rb.err.find("extra") != std::string::npos);
}

TEST_CASE("byte stable json output") {
    RunResult first = run({"table", "--cyclic", "4", "--delta", "1,3", "--format", "json"});
    RunResult second = run({"table", "--cyclic", "4", "--delta", "1,3", "--format", "json"});
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    RunResult grid1 = run({"grid", "--min-n", "2", "--max-n", "3", "--format", "json"});
    RunResult grid2 = run({"grid", "--min-n", "2", "--max-n", "3", "--format", "json", "--parallel"});
    REQUIRE(grid1.code == 0);
    CHECK(grid1.out == grid2.out);
}

TEST_CASE("env var certificate directory") {
    fs::path dir = fresh_dir("envdir");
    setenv("SERIALHOM_CERT_DIR", dir.string().c_str(), 1);
    RunResult r = run({"qpd", "--cyclic", "4", "--delta", "1,3", "--top", "1", "--len", "2"});
    unsetenv("SERIALHOM_CERT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "L1-2.periodic_truncation.json"));
}

TEST_CASE("ext table json schema") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    ExtTable t = ext_table(a, {{{1, 1}, {1, 1}}}, 3);
    json j = ext_table_to_json(t);
    REQUIRE(j.contains("pairs"));
    CHECK(j["pairs"][0]["M"] == "L(1,1)");
    CHECK(j["pairs"][0]["ext"].is_array());
    CHECK(j["pairs"][0]["tail"] == "periodic(2)@4");
}

TEST_CASE("search cli") {
    RunResult r = run({"search", "--cyclic", "4", "--delta", "1,3", "--top", "1", "--len", "2",
                       "--target", "0", "--max-length", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("found") != std::string::npos);

    RunResult none = run({"search", "--spec", "/dev/null"});
    CHECK(none.code == 2);
}
