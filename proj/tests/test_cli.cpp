#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "fsw/cli.hpp"

using namespace fsw;
using fsw::cli::Format;
using fsw::cli::RunConfig;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FSW_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("spectrum table") {
    RunConfig config;

    SUBCASE("default well has three rows with the reference ground beta") {
        const auto rows = parse_csv(cli::cmd_spectrum(config));
        REQUIRE(rows.size() == 4);  // header + 3 states
        CHECK(rows[0] == std::vector<std::string>{"n", "parity", "beta", "energy", "alpha", "d",
                                                  "norm"});
        CHECK(std::abs(std::stod(rows[1][2]) - 1.1862) < 5e-4);
        CHECK(std::abs(std::stod(rows[2][2]) - 2.3185) < 5e-4);
    }

    SUBCASE("deep well pushes the ground state to the box value") {
        config.v0 = 1e6;
        const auto rows = parse_csv(cli::cmd_spectrum(config));
        const double beta0 = std::stod(rows[1][2]);
        const double box = std::numbers::pi / config.a;
        CHECK(std::abs(beta0 - box) / box < 1e-2);
    }

    SUBCASE("invalid geometry is a usage error") {
        config.a = -1.0;
        CHECK_THROWS_AS(cli::cmd_spectrum(config), std::invalid_argument);
    }
}

TEST_CASE("figure datasets") {
    RunConfig config;
    config.samples = 41;
    config.pmax = 20.0;

    SUBCASE("fig1: analytic and oracle distributions merge") {
        const auto rows = parse_csv(cli::cmd_figure(config, "fig1"));
        REQUIRE(rows.size() == 42u);
        CHECK(rows[0] == std::vector<std::string>{"p", "I_analytic", "I_oracle"});
        double worst = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            worst = std::max(worst, std::abs(std::stod(rows[i][1]) - std::stod(rows[i][2])));
        CHECK(worst < 1e-8);
    }

    SUBCASE("fig2 covers the first excited state") {
        const auto rows = parse_csv(cli::cmd_figure(config, "fig2"));
        REQUIRE(rows.size() == 42u);
        double worst = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            worst = std::max(worst, std::abs(std::stod(rows[i][1]) - std::stod(rows[i][2])));
        CHECK(worst < 1e-8);
        // two-lobe structure: the distribution vanishes at p = 0
        const auto mid = rows[1 + (rows.size() - 2) / 2];
        CHECK(std::stod(mid[1]) < 1e-20);
    }

    SUBCASE("fig3 is the quartic-weighted distribution") {
        const auto rows = parse_csv(cli::cmd_figure(config, "fig3"));
        CHECK(rows[0] == std::vector<std::string>{"p", "p4I"});
        CHECK(rows.size() == 42u);
    }

    SUBCASE("json figures carry the stable field set") {
        config.format = Format::Json;
        const auto j = nlohmann::json::parse(cli::cmd_figure(config, "fig3"));
        CHECK(j["kind"] == "fig3");
        CHECK(j["well"]["v0"] == 10.0);
        REQUIRE(j["columns"].is_array());
        CHECK(j["columns"].size() == 2);
        CHECK(j["rows"].size() == 41);
    }

    SUBCASE("fig5 sweep: the moment columns agree to 1e-3") {
        config.pmax = 100.0;
        const auto rows = parse_csv(cli::cmd_figure(config, "fig5", 5));
        REQUIRE(rows.size() > 1);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double closed = std::stod(rows[i][3]);
            const double total = std::stod(rows[i][6]);
            CHECK(std::abs(total - closed) / closed < 1e-3);
        }
    }

    SUBCASE("fig6 sweep: agreement to 2 percent at pmax = 100") {
        config.pmax = 100.0;
        const auto rows = parse_csv(cli::cmd_figure(config, "fig6", 5));
        REQUIRE(rows.size() > 1);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double closed = std::stod(rows[i][3]);
            const double total = std::stod(rows[i][6]);
            CHECK(std::abs(total - closed) / closed < 2e-2);
        }
    }

    SUBCASE("unknown figure ids are usage errors") {
        CHECK_THROWS_AS(cli::cmd_figure(config, "fig7"), std::invalid_argument);
    }
}

TEST_CASE("moments table") {
    RunConfig config;
    const auto rows = parse_csv(cli::cmd_moments(config, 2));
    REQUIRE(rows.size() == 4);  // header + 3 states
    CHECK(rows[0][0] == "n");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs(std::stod(rows[i].back())) < 1e-3);

    config.state_index = 1;
    const auto one = parse_csv(cli::cmd_moments(config, 4));
    REQUIRE(one.size() == 2);
    CHECK(one[1][0] == "1");
}

TEST_CASE("verification command") {
    RunConfig config;

    SUBCASE("defaults pass and serialize to json with one object per check") {
        config.format = Format::Json;
        const auto outcome = cli::cmd_verify(config);
        CHECK(outcome.all_passed);
        CHECK(outcome.failing.empty());
        const auto j = nlohmann::json::parse(outcome.text);
        CHECK(j["all_passed"].get<bool>());
        REQUIRE(j["checks"].is_array());
        CHECK(j["checks"].size() >= 12);
        for (const auto& c : j["checks"]) {
            CHECK(c.contains("name"));
            CHECK(c.contains("value"));
            CHECK(c.contains("tolerance"));
            CHECK(c.contains("passed"));
        }
    }

    SUBCASE("a starved truncation fails parseval") {
        config.pmax = 5.0;
        const auto outcome = cli::cmd_verify(config);
        CHECK_FALSE(outcome.all_passed);
        CHECK(!outcome.failing.empty());
    }
}

TEST_CASE("output is byte-identical across repeated runs") {
    RunConfig config;
    CHECK(cli::cmd_spectrum(config) == cli::cmd_spectrum(config));

    RunConfig fig = config;
    fig.samples = 101;
    fig.pmax = 30.0;
    CHECK(cli::cmd_figure(fig, "fig3") == cli::cmd_figure(fig, "fig3"));
    CHECK(cli::cmd_moments(config, 2) == cli::cmd_moments(config, 2));

    fig.format = Format::Json;
    CHECK(cli::cmd_figure(fig, "fig4") == cli::cmd_figure(fig, "fig4"));
}

TEST_CASE("binary exit codes") {
    CHECK(run_cli("spectrum") == 0);
    CHECK(run_cli("spectrum --a -3") == 1);       // usage error
    CHECK(run_cli("figure --which fig9") == 1);   // unknown figure id
    CHECK(run_cli("moments --s 3") == 1);         // invalid moment order
    CHECK(run_cli("verify --pmax 5 --format json") == 2);  // verification failure
    CHECK(run_cli("moments --s 2 --tol 1e-30") == 3);      // unattainable tolerance
}

TEST_CASE("repeated binary invocations produce identical files") {
    REQUIRE(run_cli("spectrum --output /tmp/fsw_det_a.csv") == 0);
    REQUIRE(run_cli("spectrum --output /tmp/fsw_det_b.csv") == 0);
    std::ifstream a("/tmp/fsw_det_a.csv"), b("/tmp/fsw_det_b.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}

TEST_CASE("environment variables override defaults") {
    REQUIRE(setenv("FSW_V0", "1000000", 1) == 0);
    const int rc = run_cli("spectrum --output /tmp/fsw_env_test.csv");
    unsetenv("FSW_V0");
    REQUIRE(rc == 0);
    std::ifstream in("/tmp/fsw_env_test.csv");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const auto rows = parse_csv(buf.str());
    REQUIRE(rows.size() > 2);
    const double beta0 = std::stod(rows[1][2]);
    CHECK(std::abs(beta0 - std::numbers::pi / 2.0) < 0.02);  // deep-well ground state
}
