#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "modp/cli.hpp"
#include "modp/errors.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = modp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) fields.push_back(f);
    return fields;
}

}  // namespace

TEST_CASE("identity suite through the command line") {
    const auto r = invoke({"verify", "--suite", "identities", "--order", "12"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 21);
    CHECK(lines[0] == "# modp-1.0.0, verify, seed=0, timestamp-omitted");
    CHECK(lines[1] == "identity,params,pass,witness");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto f = fields_of(lines[i]);
        REQUIRE(f.size() == 4);
        CHECK(f[2] == "true");
        CHECK(f[3] == "-1");
    }
}

TEST_CASE("distribution and splitting suites") {
    CHECK(invoke({"verify", "--suite", "distributions"}).code == 0);
    CHECK(invoke({"verify", "--suite", "splitting"}).code == 0);
    CHECK(invoke({"verify", "--suite", "nonsense"}).code == 2);
}

TEST_CASE("perm_C experiment reproduces (n + 1) / n") {
    const auto r = invoke({"experiment", "--name", "perm_C", "--x", "2", "--grid", "10,100,1000", "--speed",
                           "logn", "--seed", "5"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "# modp-1.0.0, experiment, seed=5, timestamp-omitted");
    CHECK(lines[1] == "grid,ratio_re,ratio_im,ref_re,ref_im,abs_gap");
    for (std::size_t i = 2; i < 5; ++i) {
        const auto f = fields_of(lines[i]);
        REQUIRE(f.size() == 6);
        const double n = std::stod(f[0]);
        CHECK(std::stod(f[1]) == doctest::Approx((n + 1) / n).epsilon(1e-14));
        CHECK(std::stod(f[2]) == 0.0);
    }
}

TEST_CASE("complex evaluation points") {
    const auto r = invoke({"experiment", "--name", "perm_C", "--x", "1+0.5i", "--grid", "50"});
    CHECK(r.code == 0);
    const auto f = fields_of(lines_of(r.out).at(2));
    CHECK(std::stod(f[2]) != 0.0);
    CHECK(modp::cli::parse_complex("1+0.5i") == modp::Complex(1.0, 0.5));
    CHECK(modp::cli::parse_complex("-2.5") == modp::Complex(-2.5, 0.0));
    CHECK(modp::cli::parse_complex("3i") == modp::Complex(0.0, 3.0));
    CHECK(modp::cli::parse_complex("1-2i") == modp::Complex(1.0, -2.0));
    CHECK(modp::cli::parse_complex("1e-3+2e-1i") == modp::Complex(1e-3, 0.2));
    CHECK_THROWS_AS(modp::cli::parse_complex("abc"), modp::UsageError);
    CHECK(modp::cli::parse_grid("1,2.5,1e3") == std::vector<double>{1.0, 2.5, 1000.0});
    CHECK_THROWS_AS(modp::cli::parse_grid("1,,2"), modp::UsageError);
}

TEST_CASE("sampling with goodness of fit") {
    const auto r = invoke({"sample", "--dist", "zeta", "--alpha", "2", "-n", "1000", "--seed", "7", "--gof"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "# modp-1.0.0, sample, seed=7, timestamp-omitted");
    CHECK(lines[1] == "dist,params,n,statistic,threshold,pass");
    const auto f = fields_of(lines[2]);
    CHECK(f[0] == "zeta");
    CHECK(f[2] == "1000");
    CHECK(f.back() == "true");

    const auto draws = invoke({"sample", "--dist", "geometric", "--t", "0.5", "-n", "20", "--seed", "3"});
    CHECK(draws.code == 0);
    const auto dl = lines_of(draws.out);
    CHECK(dl[1] == "index,value");
    CHECK(dl.size() == 22);
}

TEST_CASE("identical arguments give identical bytes") {
    const std::vector<std::string> args{"sample", "--dist", "deltaZeta", "--alpha", "1.5", "-n", "200", "--seed", "11"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.out == b.out);
    auto other = args;
    other.back() = "12";
    CHECK(invoke(other).out != a.out);

    const std::vector<std::string> fluct{"experiment", "--name", "fluct_zeta", "--grid", "1.1,1.01", "--n", "2000",
                                         "--seed", "4"};
    CHECK(invoke(fluct).out == invoke(fluct).out);
}

TEST_CASE("usage errors exit with 2") {
    auto r = invoke({"sample", "--dist", "zeta", "--alpha", "2", "--bogus"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    r = invoke({"sample", "--dist", "zeta", "--alpha", "0.5"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(invoke({"experiment", "--name", "int_omega", "--grid", "1e9"}).code == 2);
    CHECK(invoke({"experiment", "--name", "nope", "--grid", "1"}).code == 2);
    CHECK(invoke({"constants", "--name", "pi_prime"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("constants and output files") {
    const auto r = invoke({"constants", "--name", "c0"});
    CHECK(r.code == 0);
    const auto f = fields_of(lines_of(r.out).at(2));
    CHECK(f[0] == "c0");
    CHECK(std::stod(f[1]) == doctest::Approx(0.315718).epsilon(3e-5));

    const auto path = std::filesystem::temp_directory_path() / "modp_cli_test.csv";
    std::filesystem::remove(path);
    const auto w = invoke({"constants", "--name", "euler_gamma", "--out", path.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("euler_gamma,0.5772156649015") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("installed binary exit codes") {
    const char* exe = std::getenv("MODP_CLI");
    if (exe == nullptr) {
        MESSAGE("MODP_CLI not set; skipping the binary check");
        return;
    }
    const auto status_of = [&](const std::string& args, std::string& out) {
        const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 256> buf{};
        out.clear();
        while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
        const int status = pclose(pipe);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    std::string out;
    CHECK(status_of("experiment --name perm_C --x 2 --grid 10", out) == 0);
    CHECK(out.find("10,1.0999999999999999,0,") != std::string::npos);
    CHECK(status_of("sample --dist zeta --alpha 2 --unknown-flag", out) == 2);
}
