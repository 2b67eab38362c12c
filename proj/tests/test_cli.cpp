#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* cli_path() { return QAMNET_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qamnet-cli-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path write(const std::string& name, const json& content) const {
        const fs::path p = path / name;
        std::ofstream(p) << content.dump(2);
        return p;
    }
};

json load_only_record(const fs::path& dir) {
    std::vector<fs::path> records;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") records.push_back(entry.path());
    REQUIRE(records.size() == 1);
    std::ifstream f(records.front());
    return json::parse(f);
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("") != 0);                    // subcommand required
    CHECK(run_cli("anneal") != 0);              // --config required
    CHECK(run_cli("reproduce") != 0);           // suite required
}

TEST_CASE("config validation failures exit with code 2") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    SUBCASE("missing file") {
        CHECK(run_cli("anneal --config " + (tmp.path / "nope.json").string()) == 2);
    }
    SUBCASE("malformed json") {
        const fs::path p = tmp.path / "bad.json";
        std::ofstream(p) << "{ not json";
        CHECK(run_cli("anneal --config " + p.string()) == 2);
    }
    SUBCASE("missing required field") {
        const fs::path p = tmp.write("cfg.json", json{{"w", -1}, {"gamma", 0.5}});
        CHECK(run_cli("anneal --config " + p.string() + " --out " + out.string()) == 2);
    }
    SUBCASE("invalid enum value") {
        const fs::path p = tmp.write(
            "cfg.json", json{{"w", -1},
                             {"input", {-1, 0}},
                             {"gamma", 0.5},
                             {"driver", "bogus"},
                             {"schedule", {{"total_time", 1.0}, {"steps", 10}, {"lambda_max", 5.0}}}});
        CHECK(run_cli("anneal --config " + p.string() + " --out " + out.string()) == 2);
    }
    SUBCASE("invalid pattern entry") {
        const fs::path p = tmp.write("cfg.json", json{{"memory", {{-1, 3}}},
                                                      {"input", {-1, 1}},
                                                      {"update", "async"}});
        CHECK(run_cli("classical --config " + p.string() + " --out " + out.string()) == 2);
    }
}

TEST_CASE("capacity overflow exits with code 3") {
    TempDir tmp;
    json big_pattern = json::array();
    for (int i = 0; i < 13; ++i) big_pattern.push_back(-1);
    json blank = json::array();
    for (int i = 0; i < 13; ++i) blank.push_back(0);
    const fs::path p = tmp.write(
        "cfg.json", json{{"memory", {big_pattern}}, {"input", blank}, {"gamma", 0.0}});
    CHECK(run_cli("ground_state --config " + p.string() + " --out " + (tmp.path / "out").string()) == 3);
}

TEST_CASE("classical mode writes a versioned run record") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    const fs::path p = tmp.write("cfg.json", json{{"memory", {{-1, 1, -1}}},
                                                  {"input", {-1, -1, -1}},
                                                  {"seed", 7}});
    REQUIRE(run_cli("classical --config " + p.string() + " --out " + out.string()) == 0);
    const json record = load_only_record(out);
    CHECK(record.at("schema_version") == 1);
    CHECK(record.at("tool") == "qamnet");
    CHECK(record.at("mode") == "classical");
    CHECK(record.contains("timestamp"));
    CHECK(record.at("wall_time_s").is_number());
    CHECK(record.at("config").at("seed") == 7);
    CHECK(record.at("results").at("kind") == "fixed_point");
    CHECK(record.at("results").at("final") == json({-1, 1, -1}));
}

TEST_CASE("anneal mode recognizes the expected two-qubit pattern") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    const fs::path p = tmp.write(
        "cfg.json", json{{"w", -1},
                         {"input", {-1, 0}},
                         {"gamma", 0.5},
                         {"schedule", {{"total_time", 50.0}, {"steps", 500}, {"lambda_max", 5.0}}}});
    REQUIRE(run_cli("anneal --config " + p.string() + " --out " + out.string()) == 0);
    const json record = load_only_record(out);
    const json& recognized = record.at("results").at("recognized");
    REQUIRE(recognized.size() == 1);
    CHECK(recognized[0].at("pattern") == json({-1, 1}));
    CHECK(recognized[0].at("probability").get<double>() > 0.9);
}

TEST_CASE("identical configs give identical results payloads") {
    TempDir tmp;
    const fs::path p = tmp.write("cfg.json", json{{"memory", {{-1, -1, -1}, {-1, 1, 1}}},
                                                  {"input", {-1, 0, 0}},
                                                  {"gamma", 0.2},
                                                  {"method", "both"}});
    const fs::path out_a = tmp.path / "a", out_b = tmp.path / "b";
    REQUIRE(run_cli("similarity --config " + p.string() + " --out " + out_a.string()) == 0);
    REQUIRE(run_cli("similarity --config " + p.string() + " --out " + out_b.string()) == 0);
    CHECK(load_only_record(out_a).at("results") == load_only_record(out_b).at("results"));
}

TEST_CASE("run subcommand takes the mode from the file") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    const fs::path p = tmp.write("cfg.json", json{{"mode", "bounds"}, {"N", 2}, {"n", 1}});
    REQUIRE(run_cli("run --config " + p.string() + " --out " + out.string()) == 0);
    const json record = load_only_record(out);
    CHECK(record.at("results").at("gamma_bound_coupling").get<double>() == 0.75);
    CHECK(record.at("results").at("gamma_bound_projector").get<double>() == 0.5);
}

TEST_CASE("QAMNET_OUT sets the default output directory") {
    TempDir tmp;
    const fs::path out = tmp.path / "env-out";
    const fs::path p = tmp.write("cfg.json", json{{"N", 4}, {"n", 2}});
    const std::string cmd = "QAMNET_OUT=" + out.string() + " " + cli_path() +
                            " bounds --config " + p.string() + " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(load_only_record(out).at("results").at("gamma_bound_coupling").get<double>() == 0.75);
}

TEST_CASE("reproduce fig3 self-grades and writes a csv") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    REQUIRE(run_cli("reproduce fig3 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "fig3.csv"));
    std::ifstream f(out / "fig3.json");
    const json record = json::parse(f);
    CHECK(record.at("results").at("all_pass") == true);
    CHECK(record.at("results").at("patterns").size() == 3);
}

TEST_CASE("reproduce table1 self-grades all ten rows") {
    TempDir tmp;
    const fs::path out = tmp.path / "out";
    REQUIRE(run_cli("reproduce table1 --jobs 4 --out " + out.string()) == 0);
    std::ifstream f(out / "table1.json");
    const json record = json::parse(f);
    CHECK(record.at("results").at("all_pass") == true);
    CHECK(record.at("results").at("rows").size() == 10);
}
