#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const char* cli_path() { return SODEHELM_CLI_PATH; }

std::string temp_dir() {
    static std::string dir = [] {
        std::string d = "/tmp/sodehelm_cli_test_" + std::to_string(::getpid());
        int rc = std::system(("mkdir -p " + d).c_str());
        (void)rc;
        return d;
    }();
    return dir;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string out_path = temp_dir() + "/stdout.txt";
    std::string cmd = std::string(cli_path()) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.stdout_text = read_file(out_path);
    return r;
}

}  // namespace

TEST_CASE("cli analyze: worked example with triangular Phi") {
    std::string file = temp_dir() + "/ex3.json";
    std::string report = temp_dir() + "/ex3_report.json";
    write_file(file, R"json({"n": 2, "G": ["y2", "-1/2*y2^2"]})json");
    RunResult r = run("analyze --file " + file + " --json-out " + report);
    CHECK(r.exit_code == 0);
    std::string rep = read_file(report);
    CHECK(rep.find("\"jacobi_endomorphism\"") != std::string::npos);
    CHECK(rep.find("\"y2\"") != std::string::npos);
    CHECK(rep.find("\"is_flat\": false") != std::string::npos);
    CHECK(rep.find("\"is_isotropic\": false") != std::string::npos);
    CHECK(rep.find("nilpotent") != std::string::npos);
}

TEST_CASE("cli analyze: trivial semispray is flat") {
    std::string file = temp_dir() + "/flat.json";
    std::string report = temp_dir() + "/flat_report.json";
    write_file(file, R"json({"n": 2, "G": ["0", "0"]})json");
    RunResult r = run("analyze --file " + file + " --json-out " + report);
    CHECK(r.exit_code == 0);
    CHECK(read_file(report).find("\"is_flat\": true") != std::string::npos);
}

TEST_CASE("cli: malformed problem files exit 1") {
    std::string file = temp_dir() + "/bad.json";
    SUBCASE("missing G") {
        write_file(file, R"json({"n": 2})json");
        CHECK(run("analyze --file " + file).exit_code == 1);
    }
    SUBCASE("unknown key") {
        write_file(file, R"json({"n": 1, "G": ["0"], "mystery": 1})json");
        CHECK(run("analyze --file " + file).exit_code == 1);
    }
    SUBCASE("bad expression") {
        write_file(file, R"json({"n": 1, "G": ["y2"]})json");
        CHECK(run("analyze --file " + file).exit_code == 1);
    }
    SUBCASE("not JSON at all") {
        write_file(file, "n = 1");
        CHECK(run("analyze --file " + file).exit_code == 1);
    }
    SUBCASE("missing file") {
        CHECK(run("analyze --file " + temp_dir() + "/does_not_exist.json").exit_code == 1);
    }
}

TEST_CASE("cli check-theta") {
    SUBCASE("free-particle Poincare-Cartan form is confirmed") {
        std::string file = temp_dir() + "/theta_ok.json";
        write_file(file, R"json({
            "n": 2, "G": ["0", "0"],
            "theta": {"theta0": "1/2*(y1^2 + y2^2)", "theta": ["y1", "y2"]}
        })json");
        RunResult r = run("check-theta --file " + file);
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("LagrangianConfirmed") != std::string::npos);
        CHECK(r.stdout_text.find("reconstructed L") != std::string::npos);
    }
    SUBCASE("n = 1: obstruction auto-passes") {
        std::string file = temp_dir() + "/theta_n1.json";
        std::string report = temp_dir() + "/theta_n1_report.json";
        write_file(file, R"json({
            "n": 1, "G": ["x1"],
            "theta": {"theta0": "1/2*y1^2 - x1^2", "theta": ["y1"]}
        })json");
        RunResult r = run("check-theta --file " + file + " --json-out " + report);
        CHECK(read_file(report).find("\"dR_zero\": true") != std::string::npos);
    }
    SUBCASE("mismatched fixture exits 2") {
        std::string file = temp_dir() + "/theta_bad.json";
        write_file(file, R"json({
            "n": 2, "G": ["x1", "0"],
            "theta": {"theta0": "1/2*(y1^2 + y2^2)", "theta": ["y1", "y2"]}
        })json");
        RunResult r = run("check-theta --file " + file);
        CHECK(r.exit_code == 2);
    }
    SUBCASE("missing theta exits 1") {
        std::string file = temp_dir() + "/theta_missing.json";
        write_file(file, R"json({"n": 1, "G": ["0"]})json");
        CHECK(run("check-theta --file " + file).exit_code == 1);
    }
}

TEST_CASE("cli check-lagrangian") {
    SUBCASE("G omitted: derived and confirmed") {
        std::string file = temp_dir() + "/lag.json";
        std::string report = temp_dir() + "/lag_report.json";
        write_file(file, R"json({"n": 2, "L": "1/2*(y1^2 + y2^2)"})json");
        RunResult r = run("check-lagrangian --file " + file + " --json-out " + report);
        CHECK(r.exit_code == 0);
        std::string rep = read_file(report);
        CHECK(rep.find("\"semispray_derived_from_L\": true") != std::string::npos);
        CHECK(rep.find("LagrangianConfirmed") != std::string::npos);
    }
    SUBCASE("harmonic oscillator pair confirms with a small residual") {
        std::string file = temp_dir() + "/lag_ho.json";
        write_file(file, R"json({"n": 1, "G": ["1/2*x1"], "L": "1/2*y1^2 - 1/2*x1^2"})json");
        RunResult r = run("check-lagrangian --file " + file);
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("LagrangianConfirmed") != std::string::npos);
    }
    SUBCASE("degenerate Lagrangian exits 3") {
        std::string file = temp_dir() + "/lag_bad.json";
        write_file(file, R"json({"n": 1, "L": "y1"})json");
        RunResult r = run("check-lagrangian --file " + file);
        CHECK(r.exit_code == 3);
    }
}

TEST_CASE("cli symbol-dims") {
    std::string report = temp_dir() + "/dims.json";
    RunResult r = run("symbol-dims --n-max 3 --json-out " + report);
    CHECK(r.exit_code == 0);
    std::string rep = read_file(report);
    CHECK(rep.find("\"all_checks_pass\": true") != std::string::npos);
    CHECK(r.stdout_text.find("pass") != std::string::npos);
    CHECK(r.stdout_text.find("(6,3,0)") != std::string::npos);
}

TEST_CASE("cli geodesic") {
    std::string file = temp_dir() + "/geo.json";
    write_file(file, R"json({"n": 1, "G": ["1/2*x1"]})json");
    RunResult r = run("geodesic --file " + file + " --start 0,1,0 --step 0.001 --steps 1000");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("# method: rk4") == 0);
    CHECK(r.stdout_text.find("# status: ok") != std::string::npos);
    // last line approaches cos(1) ~ 0.5403
    CHECK(r.stdout_text.find("0.5403") != std::string::npos);

    CHECK(run("geodesic --file " + file + " --start 0,1 --step 0.001 --steps 10").exit_code == 1);
}

TEST_CASE("cli: identical inputs and seed give byte-identical machine reports") {
    std::string file = temp_dir() + "/repeat.json";
    write_file(file, R"json({
        "n": 2, "G": ["1/2*x1", "1/2*x2"],
        "L": "1/2*(y1^2 + y2^2) - 1/2*(x1^2 + x2^2)",
        "config": {"seed": 7, "samples": 25}
    })json");
    std::string r1 = temp_dir() + "/rep1.json";
    std::string r2 = temp_dir() + "/rep2.json";
    CHECK(run("check-lagrangian --file " + file + " --json-out " + r1).exit_code == 0);
    CHECK(run("check-lagrangian --file " + file + " --json-out " + r2).exit_code == 0);
    std::string a = read_file(r1), b = read_file(r2);
    CHECK_FALSE(a.empty());
    CHECK(a == b);

    // analyze reports too
    std::string file2 = temp_dir() + "/repeat2.json";
    write_file(file2, R"json({"n": 2, "G": ["y2", "-1/2*y2^2"], "config": {"seed": 3}})json");
    CHECK(run("analyze --file " + file2 + " --json-out " + r1).exit_code == 0);
    CHECK(run("analyze --file " + file2 + " --json-out " + r2).exit_code == 0);
    CHECK(read_file(r1) == read_file(r2));
}

TEST_CASE("cli: seed override changes the resolved config") {
    std::string file = temp_dir() + "/seeded.json";
    std::string report = temp_dir() + "/seeded_report.json";
    write_file(file, R"json({"n": 1, "G": ["0"]})json");
    RunResult r = run("analyze --file " + file + " --seed 42 --json-out " + report);
    CHECK(r.exit_code == 0);
    CHECK(read_file(report).find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("cli: machine reports round-trip losslessly through a JSON parser") {
    std::string file = temp_dir() + "/roundtrip.json";
    std::string report = temp_dir() + "/roundtrip_report.json";
    write_file(file, R"json({"n": 2, "G": ["y2", "-1/2*y2^2"]})json");
    REQUIRE(run("analyze --file " + file + " --json-out " + report).exit_code == 0);
    std::string text = read_file(report);
    auto doc = nlohmann::ordered_json::parse(text);
    CHECK(doc.dump(2) + "\n" == text);
    CHECK(doc["classification"]["is_flat"].get<bool>() == false);
    CHECK(doc["connection"]["N_spatial"][1][1].get<std::string>() == "-y2");
}

TEST_CASE("cli check-theta: degenerate candidate exits 3") {
    std::string file = temp_dir() + "/theta_degenerate.json";
    write_file(file, R"json({
        "n": 2, "G": ["0", "0"],
        "theta": {"theta0": "1", "theta": ["0", "0"]}
    })json");
    CHECK(run("check-theta --file " + file).exit_code == 3);
}

TEST_CASE("cli check-lagrangian: numeric mode for n > 3 without G") {
    std::string file = temp_dir() + "/lag4.json";
    std::string report = temp_dir() + "/lag4_report.json";
    write_file(file, R"json({
        "n": 4,
        "L": "1/2*(y1^2 + y2^2 + y3^2 + y4^2) - 1/2*(x1^2 + x2^2 + x3^2 + x4^2)"
    })json");
    RunResult r = run("check-lagrangian --file " + file + " --json-out " + report);
    CHECK(r.exit_code == 3);
    std::string rep = read_file(report);
    CHECK(rep.find("\"euler_lagrange\"") != std::string::npos);
    CHECK(rep.find("\"passed\": true") != std::string::npos);
}
