#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = spines::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "spines_cli_tests";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("constants report") {
    auto r = run({"constants", "--m", "16", "--d", "2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["results"]["mu"].get<double>() == doctest::Approx(1.91454).epsilon(1e-4));
    CHECK(j["results"]["fraction"].get<double>() == doctest::Approx(0.47864).epsilon(1e-4));
    CHECK(j["config"]["seed"] == 1);
    CHECK(j["meta"]["tool"] == "spines");
    CHECK(j["meta"].contains("timestamp"));
    for (auto& b : j["bounds"]) CHECK(b.contains("tag"));
}

TEST_CASE("brute-min and verify examples") {
    auto r = run({"brute-min", "--m", "3", "--d", "2", "--power", "one", "--kind", "edge"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["results"]["result"] == 6);

    auto v = run({"verify", "--m", "3", "--d", "2", "--power", "inf", "--vertex-spine", "trivial"});
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["results"]["is_spine"] == true);

    auto e = run({"verify", "--m", "3", "--d", "2", "--power", "one", "--edge-spine", "empty"});
    CHECK(e.code == 1);
    auto ej = json::parse(e.out);
    CHECK(ej["results"]["is_spine"] == false);
    CHECK(ej["results"]["witness"]["cycle"].size() >= 3);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"constants", "--m", "2"}).code == 2);
    CHECK(run({"sweep", "--power", "two"}).code == 2);
    CHECK(run({"constants", "--format", "csv"}).code == 2);
    CHECK(run({"verify", "--m", "3", "--d", "2"}).code == 2);
    CHECK(run({"sweep", "--m", "1000", "--d", "3"}).code == 2);
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("spine-edge") != std::string::npos);
}

TEST_CASE("reports are reproducible without timestamps") {
    const std::vector<std::vector<std::string>> commands = {
        {"constants", "--m", "8", "--d", "3"},
        {"sweep", "--m", "6", "--d", "2", "--power", "inf"},
        {"spine-edge", "--m", "6", "--d", "2", "--runs", "20"},
        {"spine-vertex", "--m", "6", "--d", "2", "--runs", "20"},
        {"verify", "--m", "4", "--d", "2", "--power", "one", "--edge-spine", "trivial"},
        {"brute-min", "--m", "3", "--d", "2", "--power", "inf", "--kind", "vertex"},
        {"flow-cert", "--m", "4", "--d", "1", "--vectors", "10"},
        {"continuous", "--d", "2", "--samples", "20000", "--spine-area", "--coverage-samples", "5000"},
    };
    for (auto args : commands) {
        CAPTURE(args[0]);
        args.insert(args.end(), {"--seed", "5", "--no-timestamp", "--jobs", "1"});
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("timestamp") == std::string::npos);
    }
}

TEST_CASE("csv output") {
    auto r = run({"sweep", "--m", "4", "--d", "1", "--power", "one", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("threshold,size,boundary", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("output locations") {
    const auto dir = scratch_dir();
    const auto file = dir / "explicit.json";
    fs::remove(file);
    auto r = run({"constants", "--m", "5", "--d", "1", "--output", file.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(file));

    ::setenv(spines::cli::kOutputDirEnv, dir.c_str(), 1);
    fs::remove(dir / "constants.json");
    auto e = run({"constants", "--m", "5", "--d", "1"});
    ::unsetenv(spines::cli::kOutputDirEnv);
    CHECK(e.code == 0);
    CHECK(e.out.empty());
    CHECK(fs::exists(dir / "constants.json"));
}

TEST_CASE("config files sit under command-line flags") {
    const auto path = scratch_dir() / "run.conf";
    {
        std::ofstream f(path);
        f << "# sweep settings\nm = 5\nd = 2\npower = inf\nno-timestamp = true\n";
    }
    auto r = run({"sweep", "--config", path.string(), "--m", "6"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["config"]["m"] == 6);
    CHECK(j["config"]["d"] == 2);
    CHECK(j["config"]["power"] == "inf");
    CHECK_FALSE(j["meta"].contains("timestamp"));

    auto pairs = spines::cli::read_config_file(path.string());
    CHECK(pairs.size() == 4);
    CHECK(run({"sweep", "--config", (scratch_dir() / "missing.conf").string()}).code == 2);
}
