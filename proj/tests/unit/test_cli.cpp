#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SUBSYM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// scratch directory shared by all CLI cases, removed at process exit
const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "subsym-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        std::atexit([] { fs::remove_all(fs::temp_directory_path() / "subsym-cli-tests"); });
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << body;
    return p.string();
}

const std::string kCgmy = R"({"type":"cgmy","c":1.0,"g":2.0,"m":3.0,"y":0.5})";
const std::string kTempered =
    R"({"type":"tcbm","bm":{"mu":-0.5,"sigma":1.0},)"
    R"("subordinator":{"type":"tempered","c":1.0,"lambda":2.0,"alpha":0.5},"gamma":0.0})";
const std::string kSymStable =
    R"({"type":"tcbm","bm":{"mu":-0.5,"sigma":1.0},)"
    R"("subordinator":{"type":"stable","a":1.0,"alpha":0.5},"gamma":0.0})";
const std::string kMarket = R"({"r":0.05,"delta":0.02,"spot":100.0})";

}  // namespace

TEST_CASE("cli: cf-eval emits a pinned deterministic report") {
    const auto model = write_file("cgmy.json", kCgmy);
    const auto r = run_cli("cf-eval --model " + model + " --z 1");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"points\":[{\"z\":1,\"re\":-0.22829071640369816,"
          "\"im\":-0.20812849737556935}]}\n");
    CHECK(run_cli("cf-eval --model " + model + " --z 1").out == r.out);
}

TEST_CASE("cli: density prints CSV, even factor is tcbm-only") {
    const auto model = write_file("cgmy.json", kCgmy);
    const auto r = run_cli("density --model " + model + " --x 1 --x=-1");
    CHECK(r.code == 0);
    CHECK(r.out == "x,nu\n1,0.049787068367863944\n-1,0.1353352832366127\n");
    CHECK(run_cli("density --model " + model + " --x 1 --even").code == 1);

    const auto tcbm = write_file("tempered.json", kTempered);
    const auto re = run_cli("density --model " + tcbm + " --x 0.7 --even");
    CHECK(re.code == 0);
    CHECK(re.out.substr(0, re.out.find('\n')) == "x,nu,even_factor");
}

TEST_CASE("cli: exit codes separate validation, numerical and io failures") {
    const auto bad_alpha = write_file(
        "bad_alpha.json",
        R"({"type":"tcbm","bm":{"mu":0.0,"sigma":1.0},)"
        R"("subordinator":{"type":"stable","a":1.0,"alpha":1.5},"gamma":0.0})");
    const auto v = run_cli("cf-eval --model " + bad_alpha + " --z 1");
    CHECK(v.code == 1);
    CHECK(v.out.find("alpha") != std::string::npos);

    CHECK(run_cli("cf-eval --model " + write_file("broken.json", "{") + " --z 1").code == 1);
    CHECK(run_cli("cf-eval --model " +
                  write_file("extra.json", R"({"type":"cgmy","c":1,"g":2,"m":3,"y":0.5,"e":1})") +
                  " --z 1")
              .code == 1);
    CHECK(run_cli("cf-eval --model " + (scratch() / "absent.json").string() + " --z 1").code ==
          3);

    // symmetric stable clock: no exponential moment anywhere on the call strip
    const auto stable = write_file("sym_stable.json", kSymStable);
    const auto market = write_file("market.json", kMarket);
    const auto n = run_cli("price --model " + stable + " --market " + market +
                           " --kind call --strike 110 --maturity 1");
    CHECK(n.code == 2);

    CHECK(run_cli("").code == 1);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("frobnicate").code == 1);
}

TEST_CASE("cli: calibrate reports the gap and can write the model back") {
    const auto model = write_file("tempered.json", kTempered);
    const auto market = write_file("market.json", kMarket);
    const auto out = (scratch() / "calibrated.json").string();
    const auto r = run_cli("calibrate --model " + model + " --market " + market + " --out " + out);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"gamma\":0.030000000000000002") != std::string::npos);
    CHECK(r.out.find("\"gap_after\":0") != std::string::npos);

    std::ifstream f(out);
    std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(written.find("\"gamma\":0.030000000000000002") != std::string::npos);

    // the written model is itself valid CLI input
    CHECK(run_cli("symmetry-check --model " + out).code == 0);
}

TEST_CASE("cli: symmetry-check names the criterion") {
    const auto mx = write_file("meixner.json", R"({"type":"meixner","a":2.0,"b":-1.0,"d":0.8})");
    const auto r = run_cli("symmetry-check --model " + mx);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"symmetric\":true") != std::string::npos);
    CHECK(r.out.find("\"criterion\":\"meixner_2ba\"") != std::string::npos);

    const auto asym = write_file("meixner_asym.json",
                                 R"({"type":"meixner","a":2.0,"b":-0.75,"d":0.8})");
    CHECK(run_cli("symmetry-check --model " + asym).out.find("\"symmetric\":false") !=
          std::string::npos);
}

TEST_CASE("cli: simulate and ecf round-trip through CSV") {
    const auto model = write_file("tempered.json", kTempered);
    const auto csv = (scratch() / "paths.csv").string();
    const auto r = run_cli("simulate --model " + model +
                           " --horizon 1 --steps 2 --paths 3 --seed 9 --out " + csv);
    CHECK(r.code == 0);

    std::ifstream f(csv);
    std::string line;
    int lines = 0;
    std::getline(f, line);
    CHECK(line == "path,time,clock,y");
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 9);  // 3 paths, 3 grid points each

    const auto stdout_run = run_cli("simulate --model " + model +
                                    " --horizon 1 --steps 2 --paths 3 --seed 9");
    const auto again = run_cli("simulate --model " + model +
                               " --horizon 1 --steps 2 --paths 3 --seed 9");
    CHECK(stdout_run.out == again.out);

    const auto e = run_cli("ecf --in " + csv + " --z 1 --t 1");
    CHECK(e.code == 0);
    CHECK(e.out.find("\"samples\":3") != std::string::npos);
    const auto off_grid = run_cli("ecf --in " + csv + " --z 1 --t 0.37");
    CHECK(off_grid.code == 1);

    CHECK(run_cli("simulate --model " + write_file("cgmy.json", kCgmy) +
                  " --horizon 1 --steps 2 --paths 3")
              .code == 1);
}

TEST_CASE("cli: cm-check rejects named models") {
    CHECK(run_cli("cm-check --model " + write_file("cgmy.json", kCgmy)).code == 1);
}
