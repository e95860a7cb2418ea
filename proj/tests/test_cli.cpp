#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "radmach/json_out.hpp"
#include "radmach/radseries.hpp"

using namespace radmach;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RADMACH_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

} // namespace

TEST_CASE("coeff subcommand: J coefficient") {
    auto r = run_cli("coeff --group gamma0:1 --multiplier trivial --weight 0 --mu -1 --nu 1 "
                     "--cmax 800 --threads 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["group"] == "gamma0:1");
    CHECK(j["weight"] == "0");
    double v = j["value_re"].get<double>();
    CHECK(std::abs(v - 196884.0) / 196884.0 < 1e-3);
    CHECK(j["partial_sums"].size() == 800);
}

TEST_CASE("coeff subcommand: constant term and csv") {
    auto r = run_cli("coeff --group gamma0:1 --multiplier trivial --weight 0 --mu -1 --nu 0 "
                     "--cmax 3000 --threads 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value_re"].get<double>() - 24.0) < 0.05);

    auto c = run_cli("coeff --weight 0 --mu -1 --nu 1 --cmax 10 --format csv");
    REQUIRE(c.exit_code == 0);
    CHECK(c.out.find("c,partial_re,partial_im") != std::string::npos);
    CHECK(c.out.find("value,") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_cli("coeff --weight zero --mu -1 --nu 1").exit_code == 2);
    CHECK(run_cli("coeff --weight 0 --mu -1").exit_code == 2); // no nu
    CHECK(run_cli("coeff --weight 1/2 --multiplier eta:-3 --mu -1/4 --nu 7/8 --cmax 10")
              .exit_code == 2); // off-grid
    CHECK(run_cli("coeff --weight 0 --mu 1 --nu 1 --cmax 10").exit_code == 2); // branch
    CHECK(run_cli("verify nosuchsuite").exit_code == 2);
    CHECK(run_cli("eval --weight 0 --mu -1 --tau 1+0i --K 10").exit_code == 2); // Im <= 0
}

TEST_CASE("qexp subcommand matches the eta^3 comparison payload") {
    auto r = run_cli("qexp --multiplier eta:3 --weight 3/2 --mu 1/8 --terms 2 --cmax 1500 "
                     "--window 16 --threads 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["offset"] == "1/8");
    auto c0 = j["coefficients"][0];
    CHECK(c0[0] == "1/8");
    CHECK(std::abs(c0[1].get<double>() - 12.0) < 0.5);
    auto c1 = j["coefficients"][1];
    CHECK(std::abs(c1[1].get<double>() + 36.0) < 1.5);
}

TEST_CASE("eval subcommand") {
    auto r = run_cli("eval --weight 0 --mu -1 --tau 0+1i --K 300 --threads 2 --cmax-const 1500");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value_re"].get<double>() - 1008.0) / 1008.0 < 1e-2);
    CHECK(j["trace"].size() == 8);
}

TEST_CASE("duality and zeta subcommands") {
    auto r = run_cli("duality --kind zagier --weight 0 --mu -1 --nu 1 --cmax 150");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["residual"].get<double>() < 1e-8);
    auto e = run_cli("duality --kind eichler --multiplier eta:3 --weight 3/2 --mu 1/8 --nu 9/8 "
                     "--cmax 150");
    REQUIRE(e.exit_code == 0);
    CHECK(nlohmann::json::parse(e.out)["residual"].get<double>() < 1e-8);
    auto z = run_cli("zeta --mu 0 --nu 1 --s 1 --cmax 500");
    REQUIRE(z.exit_code == 0);
    auto jz = nlohmann::json::parse(z.out);
    CHECK(std::abs(jz["value_re"].get<double>() - 6.0 / (M_PI * M_PI)) < 0.05);
}

TEST_CASE("class file resolution") {
    std::string path = "/tmp/radmach-classes-test.cfg";
    {
        std::ofstream f(path);
        f << "# test rows\n[2A]\nn = 2\nh = 2\nchi = 8\n";
    }
    auto r = run_cli("coeff --class 2A --class-file " + path +
                     " --weight 1/2 --mu -1/8 --nu 7/8 --cmax 40");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["multiplier"].get<std::string>().find("rho:2|2") != std::string::npos);
    // bundled identity class needs no file
    auto id = run_cli("coeff --class 1A --weight 1/2 --mu -1/8 --nu 7/8 --cmax 40");
    CHECK(id.exit_code == 0);
    CHECK(run_cli("coeff --class 9Z --weight 1/2 --mu -1/8 --nu 7/8 --cmax 10").exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("oracle dump") {
    auto r = run_cli("oracle --series eta:3 --order 26/8");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    // [num, den, exp_num, exp_den] rows: 1 q^{1/8}, -3 q^{9/8}, 5 q^{25/8}
    REQUIRE(j["coefficients"].size() == 3);
    CHECK(j["coefficients"][0][0] == 1);
    CHECK(j["coefficients"][0][2] == 1);
    CHECK(j["coefficients"][0][3] == 8);
    CHECK(j["coefficients"][1][0] == -3);
    CHECK(j["coefficients"][2][0] == 5);
}

TEST_CASE("canonical JSON round-trips byte-identically") {
    SeriesResult res;
    res.c_max = 3;
    res.window = 0;
    res.value = {196884.000000123, -3.25e-17};
    res.tail_estimate = 1.25e-5;
    res.partial_sums = {{1, {196883.2, 0.0}}, {2, {196884.4, 1e-30}}, {3, res.value}};
    std::string first = series_result_json("gamma0:1", "trivial", Rational(0), Rational(-1),
                                           Rational(1), res);
    auto parsed = nlohmann::json::parse(first);
    SeriesResult back;
    back.c_max = parsed["c_max"].get<std::int64_t>();
    back.window = parsed["window"].get<int>();
    back.value = {parsed["value_re"].get<double>(), parsed["value_im"].get<double>()};
    back.tail_estimate = parsed["tail_estimate"].get<double>();
    for (const auto& row : parsed["partial_sums"])
        back.partial_sums.emplace_back(row[0].get<std::int64_t>(),
                                       Complex(row[1].get<double>(), row[2].get<double>()));
    std::string second = series_result_json(
        parsed["group"].get<std::string>(), parsed["multiplier"].get<std::string>(),
        Rational::parse(parsed["weight"].get<std::string>()),
        Rational::parse(parsed["mu"].get<std::string>()),
        Rational::parse(parsed["nu"].get<std::string>()), back);
    CHECK(first == second);
}
