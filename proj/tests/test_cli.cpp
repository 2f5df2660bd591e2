#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("hk_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& out = "/dev/null") {
    const std::string cmd = std::string("\"") + HKRIGID_PATH + "\" " + args + " > \"" + out + "\" 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("rigidity exit codes") {
    const auto out = (scratch() / "n3.json").string();
    CHECK(run("rigidity --n 3", out) == 1);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("rigid") == false);
    REQUIRE(j.at("nonvanishing").size() == 1);
    CHECK(j.at("nonvanishing")[0].at("orbit_size") == 10);
    CHECK(j.at("nonvanishing")[0].at("chi") == -1);

    CHECK(run("rigidity --n 5 --orbits") == 0);
    const auto p9 = scratch() / "n9.json";
    CHECK(run("rigidity --n 9 --json " + p9.string()) == 0);
    const auto j9 = nlohmann::json::parse(slurp(p9));
    CHECK(j9.at("unresolved_keys").empty());
    CHECK(j9.at("rigid") == true);
}

TEST_CASE("usage errors") {
    CHECK(run("") == 3);
    CHECK(run("bogus") == 3);
    CHECK(run("rigidity --n 2") == 3);
    CHECK(run("rigidity --n 4 --n-range 4..5") == 3);
    CHECK(run("rigidity --n-range 5..4") == 3);
    CHECK(run("rigidity --n abc") == 3);
    CHECK(run("rigidity --n 4 --registry /nonexistent.jsonl") == 3);
}

TEST_CASE("reports are byte-identical across worker counts and modes") {
    const auto a = scratch() / "a.json", b = scratch() / "b.json", c = scratch() / "c.json";
    CHECK(run("rigidity --n 6 --jobs 1 --json " + a.string()) == 0);
    CHECK(run("rigidity --n 6 --jobs 5 --json " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(run("rigidity --n 6 --full --json " + c.string()) == 0);
    auto ja = nlohmann::json::parse(slurp(a)), jc = nlohmann::json::parse(slurp(c));
    CHECK(jc.at("mode") == "full");
    ja.erase("mode");
    jc.erase("mode");
    CHECK(ja == jc);
}

TEST_CASE("csv summary") {
    const auto p = scratch() / "r.csv";
    CHECK(run("rigidity --n-range 4..5 --csv " + p.string()) == 0);
    const auto text = slurp(p);
    CHECK(text.rfind("n,mode,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("invariants") {
    const auto p = scratch() / "inv.json";
    CHECK(run("invariants --n 5", p.string()) == 0);
    auto j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("K2") == 5625);
    CHECK(j.at("euler") == 1875);
    CHECK(run("invariants --n 2", p.string()) == 0);
    j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("K2") == 0);
    CHECK(run("invariants --n 3", p.string()) == 0);
    j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("chiTheta") == 90);
    CHECK(j.at("crosscheck_ok") == true);
}

TEST_CASE("checks and fault injection") {
    const auto p = scratch() / "checks.txt";
    CHECK(run("checks", p.string()) == 0);
    CHECK(slurp(p).find("FAIL") == std::string::npos);
    CHECK(run("checks --n-range 4..9") == 0);
    CHECK(run("checks --inject-fault 0,1", p.string()) != 0);
    CHECK(slurp(p).find("FAIL") != std::string::npos);
    CHECK(run("checks --inject-fault 9,9") != 0);
}

TEST_CASE("cb") {
    const auto p = scratch() / "cb.json";
    CHECK(run("cb --n 0", p.string()) == 0);
    auto j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("lines").size() == 6);
    CHECK(j.at("tally") == nlohmann::json{{"2", 3}, {"3", 4}});
    CHECK(run("cb --n 4", p.string()) == 0);
    j = nlohmann::json::parse(slurp(p));
    CHECK(j.at("tally") == nlohmann::json{{"2", 39}, {"3", 4}, {"4", 12}, {"5", 3}});
    const auto svg = scratch() / "out.svg";
    CHECK(run("cb --n 2 --emit-svg " + svg.string()) == 0);
    CHECK(fs::exists(svg));
    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("registry") {
    CHECK(run("registry verify") == 0);
    const auto p = scratch() / "regen.jsonl";
    CHECK(run("registry regen --out " + p.string()) == 0);
    CHECK(slurp(p) == slurp(fs::path(HK_SOURCE_DIR) / "data" / "registry.jsonl"));
    const auto bad = scratch() / "bad.jsonl";
    std::ofstream(bad) << R"({"id":"X","justification":"","logset":[[1,2]],"twist":[0,0,0,0,0]})" << "\n";
    CHECK(run("registry verify --registry " + bad.string()) != 0);
    CHECK(run("rigidity --n 4 --registry " + bad.string()) == 0);
    fs::remove_all(scratch());
}
