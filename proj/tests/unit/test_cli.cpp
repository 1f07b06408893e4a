#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + HYPERBOOT_CLI_PATH + "\" " + args + " 2>/dev/null";
    Result res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string fixture(const char* name) { return std::string("\"") + HYPERBOOT_FIXTURE_DIR + "/" + name + "\""; }

}  // namespace

TEST_CASE("cli: eval lists words in numeric order")
{
    const Result r = cli("eval \"[0]~([0]^2[1,0])[*]\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("010000") != std::string::npos);
    CHECK(cli("eval \"[0,2]\"").code == 2);
}

TEST_CASE("cli: run and stable")
{
    const Result r = cli("run --r 2 --input " + fixture("diag2.txt"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["percolated"] == true);
    CHECK(j["total_time"] == 1);

    CHECK(cli("stable --r 2 --input " + fixture("diag2.txt")).code == 1);
    CHECK(cli("stable --r 3 --input " + fixture("diag2.txt")).code == 0);
    CHECK(cli("run --r 2 --input " + fixture("malformed.txt")).code == 2);
    CHECK(cli("run --r 2 --input " + fixture("does-not-exist.txt")).code == 2);
    CHECK(cli("run --input " + fixture("diag2.txt")).code == 2);
}

TEST_CASE("cli: snakes")
{
    CHECK(cli("snake-verify --input " + fixture("snake_ok.txt")).code == 0);
    CHECK(cli("snake-verify --input " + fixture("snake_bad.txt")).code == 1);
    const Result s = cli("snake-search --d 5");
    REQUIRE(s.code == 0);
    CHECK(nlohmann::json::parse(s.out)["snake"]["length"] == 7);
    CHECK(cli("snake-search --d 8").code == 2);
}

TEST_CASE("cli: bounds and extremal")
{
    CHECK(cli("check-bound --d 15 --r 3 --t 30583").code == 0);
    CHECK(cli("check-bound --d 15 --r 3 --t 30584").code == 1);
    CHECK(cli("check-bound --d 15 --r 2 --t 1").code == 2);
    const Result b = cli("brute-max-time --d 3 --r 2");
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["max_time"] == 3);
    CHECK(cli("brute-max-time --d 5 --r 2").code == 2);
}

TEST_CASE("cli: construct")
{
    const Result c = cli("construct --d 15");
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["T"] == 8);
    CHECK(j["time_bound_holds"] == true);
    CHECK(cli("construct --d 13").code == 2);
}

TEST_CASE("cli: reports are byte-identical across reruns")
{
    for (const std::string args : {"mc-time --d 8 --r 3 --p 0.4 --samples 50 --seed 9",
                                   "mc-time --d 8 --r 3 --p 0.4 --samples 50 --seed 9 --threads 3",
                                   "snake-search --d 6"}) {
        const Result a = cli(args);
        const Result b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    const auto one = nlohmann::json::parse(cli("mc-time --d 8 --r 3 --p 0.4 --samples 50 --seed 9").out);
    const auto three = nlohmann::json::parse(cli("mc-time --d 8 --r 3 --p 0.4 --samples 50 --seed 9 --threads 3").out);
    CHECK(one["histogram"] == three["histogram"]);
}

TEST_CASE("cli: reductions")
{
    CHECK(cli("double --input " + fixture("face3.txt") + " --check-r 2").code == 0);
    CHECK(cli("pad-r --input " + fixture("face3.txt") + " --r 4 --check").code == 0);
    CHECK(cli("pad-r --input " + fixture("face3.txt") + " --r 2").code == 2);
}

TEST_CASE("cli: usage errors")
{
    CHECK(cli("").code == 2);
    CHECK(cli("no-such-command").code == 2);
    CHECK(cli("--help").code == 0);
}
