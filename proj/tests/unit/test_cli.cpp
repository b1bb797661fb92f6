#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using cavetic::cli::run;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinRel;

namespace {

struct Result
{
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / "cavetic-cli-test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("exit codes", "[cli]")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"design", "--index", "1"}).code == 2);
    CHECK(invoke({"design", "--family", "spherical"}).code == 2);
    CHECK(invoke({"design", "--family", "plano-concave"}).code == 2);
    CHECK(invoke({"linewidth", "--u-range", "0.5:0.1:0.1"}).code == 2);
    CHECK(invoke({"linewidth", "--u-range", "0.1:0.5"}).code == 2);
    CHECK(invoke({"cooperativity", "--u", "0.3", "--format", "xml"}).code == 2);
    CHECK(invoke({"design", "--config", "/nonexistent/cavetic.cfg"}).code == 2);

    const auto bad = invoke({"design", "--index", "0.9"});
    CHECK_THAT(bad.err, ContainsSubstring("n > 1"));
    CHECK(bad.out.empty());
}

TEST_CASE("range parsing", "[cli]")
{
    const auto r = cavetic::cli::parse_range("0.1:0.5:0.1");
    REQUIRE(r.size() == 5);
    CHECK(r.front() == 0.1);
    CHECK_THAT(r.back(), WithinRel(0.5, 1e-12));
    CHECK(cavetic::cli::parse_range("0.3:0.3:0.1").size() == 1);
    CHECK(cavetic::cli::parse_range("0.3:0.1:0.1").empty());
    CHECK_THROWS(cavetic::cli::parse_range("0.1:0.3:0"));
    CHECK_THROWS(cavetic::cli::parse_range("a:b:c"));
}

TEST_CASE("design", "[cli]")
{
    const auto r = invoke({"design"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("half_axis_a,6.38444879114,mm"));
    CHECK_THAT(r.out, ContainsSubstring("half_axis_b,5.26203153001,mm"));
    CHECK_THAT(r.out, ContainsSubstring("fsr,13.6269"));

    const auto other = invoke({"design", "--focal-mm", "20", "--index", "1.5"});
    CHECK_THAT(other.out, ContainsSubstring("half_axis_a,12,mm"));

    SECTION("units on numeric options")
    {
        CHECK(invoke({"design", "--focal-mm", "0.02m", "--index", "1.5"}).out == other.out);
        CHECK(invoke({"design", "--focal-mm", "20000um", "--index", "1.5"}).out == other.out);
        CHECK(invoke({"design", "--focal-mm", "20000µm", "--index", "1.5"}).out == other.out);
    }
    SECTION("JSON")
    {
        const auto j = nlohmann::json::parse(invoke({"design", "--format", "json"}).out);
        CHECK_THAT(j.at("half_axis_a_m").get<double>(), WithinRel(6.38444879e-3, 1e-8));
    }
}

TEST_CASE("linewidth table", "[cli]")
{
    const auto plain = invoke({"linewidth", "--u", "0.1,0.2"});
    REQUIRE(plain.code == 0);
    CHECK_THAT(plain.out, StartsWith("# u [1], fwhm_model [Hz], error\n"));

    const auto aberrated = invoke({"linewidth", "--u", "0.1", "--aberrations", "--p-max", "10"});
    REQUIRE(aberrated.code == 0);
    CHECK_THAT(aberrated.out, StartsWith("# u [1], fwhm_model [Hz], fwhm_aberrated [Hz], error\n"));
    CHECK_THAT(aberrated.out, ContainsSubstring("\n0.1,2785"));

    SECTION("a failed point becomes a warning")
    {
        const auto r = invoke({"linewidth", "--family", "plano-concave", "--u", "0.02,1e-4"});
        CHECK(r.code == 0);
        CHECK_THAT(r.err, ContainsSubstring("warning: u = 0.0001"));
        CHECK(invoke({"linewidth", "--family", "plano-concave", "--u", "1e-4"}).code == 1);
    }
}

TEST_CASE("configuration round trip", "[cli]")
{
    const std::vector<std::string> base{"cooperativity", "--u-range", "0.2:0.5:0.05", "--aperture-mm", "3.9",
                                        "--atom-gamma", "5"};
    const auto direct = invoke(base);
    REQUIRE(direct.code == 0);

    auto dump_args = base;
    dump_args.emplace_back("--dump-config");
    const auto dumped = invoke(dump_args);
    REQUIRE(dumped.code == 0);
    const fs::path cfg = scratch("roundtrip.cfg");
    std::ofstream(cfg) << dumped.out;

    const auto replay = invoke({"cooperativity", "--config", cfg.string()});
    CHECK(replay.code == 0);
    CHECK(replay.out == direct.out);

    SECTION("the dump itself round-trips")
    {
        CHECK(invoke({"cooperativity", "--config", cfg.string(), "--dump-config"}).out == dumped.out);
    }
    SECTION("environment fallback")
    {
        ::setenv("CAVETIC_CONFIG", cfg.c_str(), 1);
        const auto env = invoke({"cooperativity"});
        ::unsetenv("CAVETIC_CONFIG");
        CHECK(env.out == direct.out);
    }
    SECTION("command line overrides the file")
    {
        const auto r = invoke({"cooperativity", "--config", cfg.string(), "--u-range", "0.3:0.4:0.05"});
        CHECK(r.out != direct.out);
        CHECK_THAT(r.out, ContainsSubstring("\n0.35,"));
    }
}

TEST_CASE("reruns are byte-identical", "[cli]")
{
    const std::vector<std::string> coop{"cooperativity", "--u-range", "0.1:0.7:0.02"};
    const auto a = invoke(coop);
    auto threaded = coop;
    threaded.insert(threaded.end(), {"--jobs", "8"});
    CHECK(invoke(coop).out == a.out);
    CHECK(invoke(threaded).out == a.out);

    const std::vector<std::string> pops{"populations", "--family", "plano-concave", "--u", "0.047", "--p-max", "20"};
    const auto p1 = invoke(pops);
    auto p8 = pops;
    p8.insert(p8.end(), {"--jobs", "8"});
    REQUIRE(p1.code == 0);
    CHECK(invoke(p8).out == p1.out);
}

TEST_CASE("cooperativity output", "[cli]")
{
    const auto r = invoke({"cooperativity", "--u-range", "0.1:0.7:0.01"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    const auto pos = r.out.find("# optimum u = ");
    REQUIRE(pos != std::string::npos);
    const double u = std::stod(r.out.substr(pos + 14));
    CHECK(u > 0.3);
    CHECK(u < 0.45);

    SECTION("maximum on the sweep boundary is warned about")
    {
        const auto edge = invoke({"cooperativity", "--u-range", "0.1:0.2:0.05"});
        CHECK(edge.code == 0);
        CHECK_THAT(edge.err, ContainsSubstring("sweep boundary"));
        CHECK_THAT(edge.out, ContainsSubstring("(sweep boundary)"));
    }
    SECTION("atom linewidth leaves C unchanged")
    {
        const auto a = invoke({"cooperativity", "--u", "0.365", "--format", "json"});
        const auto b = invoke({"cooperativity", "--u", "0.365", "--format", "json", "--atom-gamma", "3"});
        const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
        CHECK_THAT(jb.at("points")[0].at("C").get<double>(), WithinRel(ja.at("points")[0].at("C").get<double>(), 1e-12));
        CHECK(jb.at("points")[0].at("g0_rad_s").get<double>() < ja.at("points")[0].at("g0_rad_s").get<double>());
    }
}

TEST_CASE("spectrum files and plots", "[cli]")
{
    const fs::path csv = scratch("spectrum.csv");
    fs::remove(csv);
    fs::remove(fs::path(csv.string() + ".gp"));
    const auto r = invoke({"spectrum", "--u", "0.365", "--out", csv.string(), "--gnuplot", "--p-max", "10",
                           "--grid-span-fsr", "1", "--grid-per-fsr", "2048"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("fwhm_ideal_hz,"));
    const std::string data = slurp(csv);
    CHECK_THAT(data, StartsWith("# u = 0.365\n"));
    CHECK_THAT(data, ContainsSubstring("# detuning [Hz], transmission_ideal [1], transmission_aberrated [1]\n"));
    const std::string plot = slurp(fs::path(csv.string() + ".gp"));
    CHECK_THAT(plot, ContainsSubstring(csv.filename().string()));
    CHECK_THAT(plot, ContainsSubstring("plot"));

    SECTION("coarse grid warning")
    {
        const auto coarse = invoke({"spectrum", "--u", "0.365", "--p-max", "5", "--grid-per-fsr", "64"});
        CHECK(coarse.code == 0);
        CHECK_THAT(coarse.err, ContainsSubstring("raise --grid-per-fsr"));
    }
}

TEST_CASE("wavefront and populations", "[cli]")
{
    const auto w = invoke({"wavefront", "--ray-samples", "32"});
    REQUIRE(w.code == 0);
    CHECK_THAT(w.out, StartsWith("# radius [m], phase [rad]\n0,0\n"));

    const auto p = invoke({"populations", "--family", "plano-concave", "--u", "0.047", "--p-max", "5"});
    REQUIRE(p.code == 0);
    CHECK_THAT(p.out, ContainsSubstring("\n0,0,0.85"));
    CHECK_THAT(p.out, ContainsSubstring("# residual = "));
}

TEST_CASE("shipped configurations load", "[cli]")
{
    const fs::path dir = CAVETIC_CONFIG_DIR;
    const auto ana = invoke({"cooperativity", "--config", (dir / "anaclastic.cfg").string()});
    REQUIRE(ana.code == 0);
    CHECK_THAT(ana.out, ContainsSubstring("# optimum u = 0.385"));

    const auto pc = invoke({"linewidth", "--config", (dir / "plano-concave.cfg").string(), "--p-max", "10"});
    REQUIRE(pc.code == 0);
    CHECK_THAT(pc.out, ContainsSubstring("fwhm_aberrated"));
    CHECK_THAT(pc.out, ContainsSubstring("\n0.047,"));
}
