#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "wildmckay/cli.hpp"
#include "wildmckay/json_io.hpp"

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

// Runs the installed binary; stderr is discarded.
Outcome run_binary(const std::string& args) {
    const std::string cmd = std::string(WMK_CLI_PATH) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

Outcome run_lib(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    Outcome o;
    o.code = wmk::cli::run(args, out, err);
    o.out = out.str();
    if (err_text) *err_text = err.str();
    return o;
}

std::string data(const char* name) {
    return std::string(WMK_TEST_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("mass expcheck passes") {
    Outcome o = run_binary("mass expcheck --nmax 8");
    CHECK(o.code == 0);
    CHECK(o.out.find("matched: 8/8") != std::string::npos);
}

TEST_CASE("stringy eval with evaluation") {
    Outcome o = run_binary("stringy eval --input " + data("stringy_pair.json") + " --at-q 5");
    CHECK(o.code == 0);
    CHECK(o.out.find("q^(1/2) + 6") != std::string::npos);
    CHECK(o.out.find("8.2360679") != std::string::npos);

    Outcome j = run_binary("stringy eval --input " + data("stringy_divergent.json") + " --format json");
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["value"]["finite"] == false);
}

TEST_CASE("mckay verify exit codes") {
    CHECK(run_binary("mckay verify --p 5 --n 4").code == 0);
    std::string err;
    CHECK(run_lib({"mckay", "verify", "--p", "3", "--n", "4"}, &err).code == 2);
    CHECK(err.find("p > n") != std::string::npos);
    CHECK(run_lib({"mckay", "verify", "--p", "6", "--n", "2"}).code == 2);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run_binary("frobnicate").code == 2);
    CHECK(run_binary("").code == 2);
    CHECK(run_binary("mass").code == 2);
    CHECK(run_binary("mass serre --nmax zero").code == 2);
    CHECK(run_binary("stringy eval --input /nonexistent.json").code == 2);
    CHECK(run_binary("padic count --input " + data("stringy_pair.json") + " --m 1").code == 2);
    CHECK(run_binary("padic count --input " + data("circle_p5.json") + " --m 6 --budget 1000").code == 2);
    CHECK(run_binary("padic count --input " + data("circle_p5.json") + " --m 1 --kernel sse9").code == 2);
    CHECK(run_binary("mass serre --format yaml").code == 2);
    CHECK(run_binary("etale mass --p 3 --n 3").code == 2);
    CHECK(run_binary("--help").code == 0);
}

TEST_CASE("verification failures exit with 1") {
    // A singular point makes the Hensel relation fail only through the
    // smoothness check, which is an input error; a fixture with wrong
    // invariants is a verification failure.
    const std::string path = "wmk_bad_fixture.json";
    {
        std::ofstream f(path);
        f << R"([{"label": "bogus", "p": 5, "n": 2, "e": 2, "f": 1, "c": 1, "aut": 1}])";
    }
    CHECK(run_binary("etale crossvalidate --fixtures " + path).code == 1);
    CHECK(run_binary("etale crossvalidate --fixtures " + data("local_fields_fixtures.json")).code == 0);
    CHECK(run_binary("padic measure --input " + data("cusp_p5.json") + " --mmax 2").code == 2);
    std::remove(path.c_str());
}

TEST_CASE("padic commands") {
    Outcome o = run_binary("padic count --input " + data("circle_p5.json") + " --m 3 --format json");
    REQUIRE(o.code == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["count"] == 100);
    CHECK(j["normalized"] == nlohmann::json::array({4, 5}));

    Outcome m = run_binary("padic measure --input " + data("circle_p5.json") + " --mmax 3 --format csv");
    CHECK(m.code == 0);
    CHECK(m.out == "m,count,count/p^(md)\n1,4,4/5\n2,20,4/5\n3,100,4/5\n");

    Outcome n = run_binary("padic nullset --input " + data("cusp_p5.json") + " --m 2 --format json");
    CHECK(n.code == 0);
    CHECK(nlohmann::json::parse(n.out)["levels"][0]["fraction"] == nlohmann::json::array({9, 125}));

    Outcome i = run_binary("padic integral --c 1 --p 5");
    CHECK(i.code == 0);
    CHECK(i.out.find("Infinite") != std::string::npos);
}

TEST_CASE("mckay table file") {
    const std::string path = "wmk_mckay_table.json";
    REQUIRE(run_binary("mckay verify --p 5 --n 2 --table " + path).code == 0);
    auto rows = wmk::json_io::read_json_file(path);
    CHECK(rows.size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("etale enumerate") {
    Outcome o = run_binary("etale enumerate --p 5 --n 3 --format json");
    REQUIRE(o.code == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["field_classes"].size() == 2);
    CHECK(j["algebras"].size() == 6);
    CHECK(j["complete"] == true);

    Outcome partial = run_binary("etale enumerate --p 2 --n 2 --format json");
    CHECK(partial.code == 0);
    CHECK(nlohmann::json::parse(partial.out)["complete"] == false);
}

TEST_CASE("json and csv output is byte-identical across runs") {
    const std::vector<std::string> configs = {
        "mass invert --nmax 7 --format json",
        "mass serre --nmax 5 --f 2 --format csv",
        "etale mass --p 7 --n 4 --format json",
        "mckay verify --p 7 --n 3 --format csv",
        "padic count --input " + data("circle_p5.json") + " --m 2 --format json --workers 3",
        "padic count --input " + data("circle_p5.json") + " --m 2 --format json --kernel scalar",
    };
    for (const std::string& args : configs) {
        CAPTURE(args);
        Outcome a = run_binary(args), b = run_binary(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    // Worker count and kernel do not change the report.
    CHECK(run_binary(configs[4]).out == run_binary(configs[5]).out);
    // The library entry point and the binary agree.
    CHECK(run_lib({"mass", "invert", "--nmax", "7", "--format", "json"}).out == run_binary(configs[0]).out);
}

TEST_CASE("selftest runs a single criterion") {
    Outcome o = run_binary("selftest --criterion 1");
    CHECK(o.code == 0);
    CHECK(o.out.find("PASS") != std::string::npos);
}
