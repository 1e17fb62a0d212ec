#include "support.hpp"

#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using cpat::io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "cpat");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cpat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string tri(const std::string& n) { return testing::data_path("triangulations/" + n + ".json"); }
std::string theta(const std::string& n) { return testing::data_path("theta/" + n + ".json"); }

fs::path work_dir()
{
    const fs::path p = fs::temp_directory_path() / "cpat_cli_test";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

using cpat::cli::Exit;

TEST_CASE("usage errors")
{
    CHECK(run({}).code == Exit::kUsage);
    CHECK(run({"bogus"}).code == Exit::kUsage);
    CHECK(run({"validate", tri("tetrahedron")}).code == Exit::kUsage);
    CHECK(run({"validate", tri("tetrahedron"), theta("tetrahedron_pi4"), "--class", "x"}).code ==
          Exit::kUsage);
    CHECK(run({"probe-triple", "--r", "1,1", "--theta", "0,0,0"}).code == Exit::kUsage);
    CHECK(run({"--help"}).code == Exit::kOk);
}

TEST_CASE("validate")
{
    auto r = run({"validate", tri("tetrahedron"), theta("tetrahedron_pi4")});
    CHECK(r.code == Exit::kOk);
    CHECK(json::parse(r.out)["passed"] == true);

    // angles written for another triangulation
    r = run({"validate", tri("tetrahedron"), theta("octahedron_pi3")});
    CHECK(r.code == Exit::kValidation);
    CHECK(r.err.find("InvalidInput") != std::string::npos);

    r = run({"validate", tri("octahedron"), theta("octahedron_pi3"), "--class", "g5"});
    CHECK(r.code == Exit::kValidation);
    CHECK(json::parse(r.out)["flags"]["g5"] == false);

    r = run({"validate", tri("octahedron"), theta("octahedron_pi3"), "--audit", "6"});
    CHECK(r.code == Exit::kOk);
    CHECK(json::parse(r.out).contains("lemma21_audit"));

    r = run({"validate", testing::data_path("polyhedra/cube.json"), theta("cube_2pi3"), "--class",
             "andreev"});
    CHECK(r.code == Exit::kValidation);
    const json j = json::parse(r.out);
    CHECK(j["flags"]["s2"] == false);
    CHECK(j["violations"][0]["witness"].size() == 3);
    bool s4 = false;
    for (const auto& v : j["violations"]) s4 = s4 || (v["condition"] == "s4" && v["witness"].size() == 4);
    CHECK(s4);

    r = run({"validate", testing::data_path("polyhedra/cube.json"), theta("cube_2pi5"), "--class",
             "andreev"});
    CHECK(r.code == Exit::kOk);

    CHECK(run({"validate", "/nonexistent.json", theta("tetrahedron_pi4")}).code == Exit::kValidation);
}

TEST_CASE("solve, verify and render")
{
    const fs::path w = work_dir();
    const std::string pat = (w / "pi4.json").string();
    auto r = run({"solve", tri("tetrahedron"), theta("tetrahedron_pi4"), "--out", pat});
    REQUIRE(r.code == Exit::kOk);
    CHECK(json::parse(slurp(pat))["mode"] == "euclidean");

    r = run({"verify", pat});
    CHECK(r.code == Exit::kOk);
    CHECK(json::parse(r.out)["passed"] == true);
    r = run({"verify", "--pattern", pat, "--tol", "1e-8", "--resolution", "1024"});
    CHECK(r.code == Exit::kOk);
    CHECK(json::parse(r.out)["resolution"]["boundary_samples"] == 1024);

    const auto a = run({"render", pat});
    const auto b = run({"render", pat, "--contacts", "--star"});
    CHECK(a.code == Exit::kOk);
    CHECK(a.out.find("<svg") != std::string::npos);
    CHECK(a.out == run({"render", pat}).out);
    CHECK(b.out != a.out);

    const std::string lifted = (w / "lifted.json").string();
    CHECK(run({"lift", pat, "--balance", "--out", lifted}).code == Exit::kOk);
    CHECK(run({"verify", lifted}).code == Exit::kOk);
    CHECK(run({"render", lifted}).code == Exit::kUsage);

    // the solver output is reproducible byte for byte
    CHECK(run({"solve", tri("tetrahedron"), theta("tetrahedron_pi4")}).out == slurp(pat));
}

TEST_CASE("solve failures")
{
    // auto mode falls back to the sphere
    auto r = run({"solve", tri("octahedron"), "--mode", "auto", theta("octahedron_pi3")});
    CHECK(r.code == Exit::kOk);
    CHECK(json::parse(r.out)["mode"] == "spherical");

    // right angles break the four-cycle condition: neither mode applies
    const std::string right = (work_dir() / "right.json").string();
    cpat::io::write_text(right, cpat::io::dump(json{{"constant", cpat::kPi / 2}}));
    r = run({"solve", tri("octahedron"), right});
    CHECK(r.code == Exit::kValidation);
    CHECK(json::parse(r.out)["passed"] == false);

    r = run({"solve", tri("octahedron"), theta("octahedron_pi3"), "--mode", "euclidean"});
    CHECK(r.code == Exit::kValidation);
    CHECK(json::parse(r.err)["error"] == "ConditionsViolated");
    CHECK(run({"solve", tri("octahedron"), theta("octahedron_pi3"), "--mode", "x"}).code == Exit::kUsage);
}

TEST_CASE("polyhedron")
{
    const fs::path w = work_dir();
    const std::string round = (w / "oct2pi5.json").string();
    REQUIRE(run({"solve", tri("octahedron"), theta("octahedron_2pi5"), "--balance", "--out", round})
                .code == Exit::kOk);
    const std::string dump = (w / "cube.json").string();
    auto r = run({"polyhedron", round, "--json", dump});
    CHECK(r.code == Exit::kOk);
    CHECK(r.out.rfind("# klein model", 0) == 0);
    CHECK(json::parse(slurp(dump))["check"]["ok"] == true);

    const std::string ideal = (w / "octpi3.json").string();
    REQUIRE(run({"solve", tri("octahedron"), theta("octahedron_pi3"), "--out", ideal}).code == Exit::kOk);
    r = run({"polyhedron", ideal});
    CHECK(r.code == Exit::kPolyhedron);
    CHECK(json::parse(r.err)["error"] == "VertexOutsideBall");
    r = run({"polyhedron", ideal, "--allow-ideal"});
    CHECK(r.code == Exit::kPolyhedron);
    CHECK(json::parse(r.err)["compact"] == false);

    const std::string flat = (w / "flat.json").string();
    REQUIRE(run({"solve", tri("tetrahedron"), theta("tetrahedron_pi4"), "--out", flat}).code == Exit::kOk);
    CHECK(run({"polyhedron", flat}).code == Exit::kUsage);
    CHECK(run({"polyhedron"}).code == Exit::kUsage);
}

TEST_CASE("diagnose and probe-triple")
{
    auto r = run({"diagnose", tri("octahedron"), theta("octahedron_2pi5"), "--max-size", "3", "--top", "5"});
    CHECK(r.code == Exit::kOk);
    const json j = json::parse(r.out);
    CHECK(j["entries"].size() <= 5);
    CHECK(j["max_size"] == 3);

    r = run({"probe-triple", "--r", "1,1,1", "--theta", "0,0,0"});
    CHECK(r.code == Exit::kOk);
    const json p = json::parse(r.out);
    CHECK(p["l"][0] == 2.0);
    CHECK(p["alpha"][0].get<double>() == doctest::Approx(cpat::kPi / 3));

    r = run({"probe-triple", "--r", "1,1,0.01", "--theta", "3,3,0"});
    CHECK(r.code == Exit::kValidation);
    CHECK(json::parse(r.out)["feasible"] == false);
    CHECK(run({"probe-triple", "--r", "1,1,1", "--theta", "0,0,0", "--mode", "h"}).code == Exit::kUsage);
    CHECK(run({"probe-triple", "--r", "1,1,1", "--theta", "4,0,0"}).code == Exit::kValidation);
}
