#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modlab/grid.hpp"
#include "modlab/schema.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = MODLAB_CLI_PATH;
const char* kSchemaDir = MODLAB_SCHEMA_DIR;

struct RunResult {
    int code;
    std::string out;
};

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "modlab_cli_test";
    fs::create_directories(dir);
    return dir;
}

RunResult run(const std::string& args, const std::string& tag) {
    fs::path out = scratch_dir() / (tag + ".out");
    std::string cmd = std::string(kCli) + " " + args + " > " + out.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {code, buffer.str()};
}

json load_schema(const std::string& name) {
    std::ifstream in(fs::path(kSchemaDir) / name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("verdict command") {
    SUBCASE("embedding verdicts with matched clauses") {
        RunResult r = run("verdict --p 2 --q 1 --s 0 --dir M-to-L", "v1");
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.at("verdict") == "Embeds");
        CHECK(j.at("matched_condition") == "Thm1.4(1)");
        CHECK(schema_valid(load_schema("verdict.schema.json"), j));

        r = run("verdict --p 1 --q infty --s 0 --dir L-to-M", "v2");
        CHECK(r.code == 0);
        j = json::parse(r.out);
        CHECK(j.at("verdict") == "Embeds");
        CHECK(j.at("matched_condition") == "Thm1.3(3)");
    }

    SUBCASE("multiplier verdicts need alpha") {
        RunResult r = run("verdict --p 2 --q 4 --s 1/4 --alpha 3 --dir mult-M-to-L", "v3");
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.at("verdict") == "UnknownGap");
        CHECK(j.at("alpha") == "3");
        CHECK(schema_valid(load_schema("verdict.schema.json"), j));

        CHECK(run("verdict --p 2 --q 2 --s 0 --dir mult-M-to-L", "v4").code == 2);
    }

    SUBCASE("exit codes for bad input") {
        CHECK(run("verdict --p 0.5 --q 2 --s 0 --dir M-to-L", "v5").code == 2);
        CHECK(run("verdict --p 2 --q 2 --s 0 --dir sideways", "v6").code == 2);
        CHECK(run("verdict --q 2 --s 0 --dir M-to-L", "v7").code == 2);  // missing --p
    }

    SUBCASE("decimals require --approx") {
        CHECK(run("verdict --p 2 --q 2 --s 0.25 --dir M-to-L", "v8").code == 2);
        RunResult r = run("verdict --p 2 --q 2 --s 0.25 --approx --dir M-to-L", "v9");
        CHECK(r.code == 0);
        CHECK(json::parse(r.out).at("s") == "1/4");
    }
}

TEST_CASE("region diagram command") {
    fs::path out = scratch_dir() / "region";
    RunResult r = run("region-diagram --resolution 12 --out " + out.string(), "rd1");
    CHECK(r.code == 0);

    std::string csv = slurp(out / "region_samples.csv");
    CHECK(csv.find("u,v,nu1,nu2,mu1,mu2\n") == 0);
    // center row: all indices 0, mu = -1/2
    CHECK(csv.find("1/2,1/2,0,0,-1/2,-1/2\n") != std::string::npos);
    // (1,0): nu1 = 0 via I1*, nu2 = -1 and mu2 = -2 via I3, mu1 = -1
    CHECK(csv.find("1,0,0,-1,-1,-2\n") != std::string::npos);

    std::string svg = slurp(out / "region_diagram.svg");
    std::size_t groups = 0;
    for (std::size_t pos = svg.find("<g "); pos != std::string::npos;
         pos = svg.find("<g ", pos + 1)) {
        ++groups;
    }
    CHECK(groups == 2);
    CHECK(svg.find("region-boundaries") != std::string::npos);

    CHECK(run("region-diagram --resolution 4", "rd2").code == 2);
}

TEST_CASE("norm command") {
    using namespace modlab;
    fs::path dir = scratch_dir();

    GridSpec spec = GridSpec::make(1, 2048, 40.0);
    {
        std::ofstream out(dir / "gaussian.csv");
        write_csv(sample(descriptors::gaussian(1.0), spec), out);
    }
    {
        std::ofstream out(dir / "zero.csv");
        write_csv(sample(descriptors::zero(), spec), out);
    }

    SUBCASE("gaussian L^2 norm") {
        RunResult r = run("norm --input " + (dir / "gaussian.csv").string() + " --space Lp --p 2",
                          "n1");
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(std::abs(j.at("value").get<double>() - std::pow(3.14159265358979323846, 0.25)) <
              1e-6);
        CHECK(schema_valid(load_schema("norm_report.schema.json"), j));
    }

    SUBCASE("zero function in any space") {
        RunResult r = run("norm --input " + (dir / "zero.csv").string() +
                              " --space M --p 2 --q 2 --s 0",
                          "n2");
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.at("value").get<double>() == 0.0);
        CHECK(j.at("bands").empty());
        CHECK(schema_valid(load_schema("norm_report.schema.json"), j));
    }

    SUBCASE("modulation report validates against the schema") {
        RunResult r = run("norm --input " + (dir / "gaussian.csv").string() +
                              " --space M --p 2 --q 1 --s 1/2 --window smoothed-hat",
                          "n3");
        CHECK(r.code == 0);
        CHECK(schema_valid(load_schema("norm_report.schema.json"), json::parse(r.out)));
    }

    SUBCASE("over-tight truncation radius exits 5") {
        RunResult r = run("norm --input " + (dir / "gaussian.csv").string() +
                              " --space M --p 2 --q 2 --s 0 --truncation-radius 1",
                          "n4");
        CHECK(r.code == 5);
    }

    SUBCASE("malformed csv exits 2") {
        std::ofstream bad(dir / "bad.csv");
        bad << "whatever\n";
        bad.close();
        CHECK(run("norm --input " + (dir / "bad.csv").string() + " --space Lp --p 2", "n5").code ==
              2);
    }
}

TEST_CASE("experiment command") {
    fs::path dir = scratch_dir();
    fs::path cfg_path = dir / "dilation.json";
    {
        json cfg{{"command", "dilation"},
                 {"p", {"2"}},
                 {"q", {"2"}},
                 {"family", "gaussian"},
                 {"lambdas", {1, 2, 4, 8, 16}},
                 {"grid", {{"N", 4096}, {"M", 4}}},
                 {"seed", 7},
                 {"timestamp", false}};
        std::ofstream out(cfg_path);
        out << cfg.dump(2);
    }

    SUBCASE("runs, validates and reproduces byte-identical summaries") {
        fs::path out1 = dir / "run1";
        fs::path out2 = dir / "run2";
        RunResult r1 = run("experiment --config " + cfg_path.string() + " --out " + out1.string(),
                           "e1");
        CHECK(r1.code == 0);
        RunResult r2 = run("experiment --config " + cfg_path.string() + " --out " + out2.string(),
                           "e2");
        CHECK(r2.code == 0);
        std::string s1 = slurp(out1 / "summary.csv");
        std::string s2 = slurp(out2 / "summary.csv");
        CHECK(!s1.empty());
        CHECK(s1 == s2);

        json probe = json::parse(slurp(out1 / "probe_0000.json"));
        CHECK(schema_valid(load_schema("probe_report.schema.json"), probe));
        CHECK(probe.at("consistent") == true);
    }

    SUBCASE("unknown config keys are rejected") {
        fs::path bad_path = dir / "bad_cfg.json";
        {
            json cfg{{"command", "dilation"}, {"p", {"2"}}, {"q", {"2"}}, {"bogus", 1}};
            std::ofstream out(bad_path);
            out << cfg.dump();
        }
        CHECK(run("experiment --config " + bad_path.string(), "e3").code == 2);
    }

    SUBCASE("empty parameter grids are rejected") {
        fs::path empty_path = dir / "empty_cfg.json";
        {
            json cfg{{"command", "dilation"}, {"p", json::array()}, {"q", {"2"}}};
            std::ofstream out(empty_path);
            out << cfg.dump();
        }
        CHECK(run("experiment --config " + empty_path.string(), "e4").code == 2);
    }

    SUBCASE("dual-norm probes run from config") {
        fs::path dn_path = dir / "dual_cfg.json";
        {
            json cfg{{"command", "dual-norm"}, {"p", {"2"}},          {"q", {"4"}},
                     {"s", {"1/4", "11/40"}},  {"radii", {64, 128, 256, 512}},
                     {"timestamp", false},     {"seed", 7}};
            std::ofstream out(dn_path);
            out << cfg.dump();
        }
        fs::path out_dir = dir / "dual_out";
        RunResult r = run("experiment --config " + dn_path.string() + " --out " + out_dir.string(),
                          "e5");
        CHECK(r.code == 0);
        std::string summary = slurp(out_dir / "summary.csv");
        CHECK(summary.find("dual-norm") != std::string::npos);
        CHECK(summary.find("false") == std::string::npos);
    }
}
