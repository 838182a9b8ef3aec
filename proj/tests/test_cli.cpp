// End-to-end checks of the command-line tool: exit codes, byte stability,
// JSON round-trips, config-file/flag equivalence, suite filtering, and the
// fault-injection diagnostic.

#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"
#include "slcm/slcm_matrix.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + SLCM_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun r;
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("gamma output parses back to the in-process values") {
    CliRun r = run_cli("gamma --p 7 --n 3 --unit-exp 1 --varpi-num 1 --varpi-den 8 --oracle --json");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.out);

    slcm::TameField T(7, 1, 3);
    const slcm::CycField& F = T.cyc();
    slcm::MultChar chi = slcm::mchar_from_varpi_fraction(T, 1, 1, 8);
    slcm::RatFun g = slcm::tate_gamma(T, chi, slcm::FStarClass{});

    CHECK(out["context"]["q"] == 7);
    CHECK(out["context"]["N"] == 168);
    CHECK(slcm::RatFun::parse(F, out["gamma"].get<std::string>()) == g);
    CHECK(slcm::RatFun::parse(F, out["epsilon"].get<std::string>()) ==
          slcm::epsilon_factor(T, chi, slcm::FStarClass{}));
    // the shell oracle agrees with the formula: empty difference
    CHECK(slcm::RatFun::parse(F, out["oracle"]["shell"].get<std::string>()) == g);
    CHECK(slcm::RatFun::parse(F, out["oracle"]["difference"].get<std::string>()) ==
          slcm::RatFun(F));
    REQUIRE(out["partial"].size() == 3);
    slcm::RatFun resum(F);
    for (const auto& s : out["partial"])
        resum = resum + slcm::RatFun::parse(F, s.get<std::string>());
    CHECK(resum == slcm::to_one_minus_s(T, g));
}

TEST_CASE("matrix JSON is byte-stable and round-trips exactly") {
    const std::string args = "slcm --p 7 --n 6 --unit-exp 2 --varpi-num 1 --varpi-den 7 --json";
    CliRun r1 = run_cli(args);
    CliRun r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);

    slcm::TameField T(7, 1, 6);
    const slcm::CycField& F = T.cyc();
    slcm::WeilIndex W(T);
    slcm::MultChar chi = slcm::mchar_from_varpi_fraction(T, 2, 1, 7);
    slcm::GenuineCharData D{&T, &W, chi, slcm::FStarClass{0, 0}, false};
    slcm::SlcmMatrix M = slcm::assemble_slcm(D);

    json out = json::parse(r1.out);
    REQUIRE(out["matrix"].size() == static_cast<size_t>(T.d()));
    for (long i = 0; i < T.d(); ++i)
        for (long j = 0; j < T.d(); ++j) {
            const auto& cell = out["matrix"][static_cast<size_t>(i)][static_cast<size_t>(j)];
            CHECK(slcm::RatFun::parse(F, cell.get<std::string>()) ==
                  M.entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
    CHECK(slcm::RatFun::parse(F, out["trace"].get<std::string>()) == slcm::trace_T(D));
    CHECK(slcm::RatFun::parse(F, out["det"].get<std::string>()) == slcm::det_D(D));
}

TEST_CASE("plancherel JSON carries the measure report") {
    CliRun r = run_cli("plancherel --p 7 --n 3 --unit-exp 1 --varpi-num 0 --varpi-den 1 --json");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.out);
    REQUIRE(out.contains("plancherel"));
    CHECK(out["plancherel"]["paths_agree"] == true);
    CHECK(out["plancherel"]["reducible"] == true);
    CHECK(out["plancherel"]["pole_order_at_s0"] == 0);
    const auto& paths = out["plancherel"]["paths"];
    slcm::TameField T(7, 1, 3);
    const slcm::CycField& F = T.cyc();
    slcm::RatFun mu = slcm::RatFun::parse(F, paths["closed"].get<std::string>());
    CHECK(slcm::RatFun::parse(F, paths["plan_and_sum"].get<std::string>()) == mu);
    CHECK(slcm::RatFun::parse(F, paths["average"].get<std::string>()) == mu);
    CHECK(slcm::RatFun::parse(F, paths["trace_sum"].get<std::string>()) == mu);
}

TEST_CASE("config file and flags produce identical bytes") {
    std::string path = "test_cli_tmp.cfg";
    {
        std::ofstream f(path);
        f << "# sample job\n";
        f << "p = 11\nn = 5\nunit_exp = 3\nvarpi_num = 2\nvarpi_den = 5\n";
        f << "psi_val = 1\npsi_unit_exp = 0\ndecomposition = swapped\n";
    }
    CliRun from_file = run_cli("gamma --config " + path + " --json");
    CliRun from_flags = run_cli("gamma --p 11 --n 5 --unit-exp 3 --varpi-num 2 --varpi-den 5 "
                                "--psi-val 1 --psi-unit-exp 0 --decomposition swapped --json");
    std::remove(path.c_str());
    REQUIRE(from_file.exit_code == 0);
    REQUIRE(from_flags.exit_code == 0);
    CHECK(from_file.out == from_flags.out);
    json out = json::parse(from_file.out);
    CHECK(out["context"]["decomposition"] == "swapped");
    CHECK(out["context"]["psi"]["val"] == 1);
}

TEST_CASE("exit codes separate success, verification failure and config errors") {
    CHECK(run_cli("verify --only scalars").exit_code == 0);
    CHECK(run_cli("verify --only epsilon --inject epsilon-sign").exit_code == 1);
    CHECK(run_cli("gamma --p 4 --n 2").exit_code == 2);          // p not prime
    CHECK(run_cli("gamma --p 7 --n 4").exit_code == 2);          // 4 | n
    CHECK(run_cli("slcm --n 3").exit_code == 2);                 // no context
    CHECK(run_cli("verify --only bogus").exit_code == 2);        // unknown suite
    CHECK(run_cli("verify --inject bogus --only scalars").exit_code == 2);
    CHECK(run_cli("gamma --config does_not_exist.cfg").exit_code == 2);
    CHECK(run_cli("gamma --p 7 --n 3 --decomposition diagonal").exit_code == 2);
}

TEST_CASE("the only flag restricts suites and names failures") {
    CliRun r = run_cli("verify --only hilbert --json");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.out);
    REQUIRE(out["failures"] == 0);
    REQUIRE(out["results"].size() > 0);
    for (const auto& res : out["results"]) CHECK(res["suite"] == "hilbert");

    CliRun bad = run_cli("verify --only epsilon --inject epsilon-sign --json");
    REQUIRE(bad.exit_code == 1);
    json badj = json::parse(bad.out);
    CHECK(badj["failures"].get<long>() > 0);
    bool named = false;
    for (const auto& res : badj["results"])
        if (res["pass"] == false &&
            res["detail"].get<std::string>().find("sign corruption") != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("the twist table covers the full dual family") {
    CliRun r = run_cli("table --p 7 --n 3 --unit-exp 1 --varpi-num 0 --varpi-den 1 --json");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.out);
    REQUIRE(out["rows"].size() == 9); // d^2 = 9 twist classes
    for (const auto& row : out["rows"]) {
        CHECK(row["reducible"] == true); // the verdict is twist-invariant
        CHECK(row["pole_order_at_s0"] == 0);
    }
}
