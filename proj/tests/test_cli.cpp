#include <doctest.h>

#include <crnf/cli.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace crnf;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// Writes a temp germ file and returns its path.
std::string write_germ(const std::string& name, const std::string& contents) {
    const std::string path = std::string("cli_test_") + name + ".germ";
    std::ofstream f(path);
    f << contents;
    return path;
}

const char* kSphere =
    "weights u 2\n"
    "truncation 8\n"
    "term 1 1 0 1 0\n";

const char* kTube =
    "weights u 2\n"
    "truncation 8\n"
    "term 1 3 0 1/4 0\n"
    "term 2 2 0 3/8 0\n"
    "term 3 1 0 1/4 0\n";

}  // namespace

TEST_CASE("count command reproduces the table and the threshold") {
    const auto r = run_cli({"count", "--max-n", "9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("9 219 216 false\n") != std::string::npos);
    CHECK(r.out.find("8 164 176 true\n") != std::string::npos);
    CHECK(r.out.find("1 3 8 true\n") != std::string::npos);
    CHECK(r.out.find("threshold 9\n") != std::string::npos);
}

TEST_CASE("levi command") {
    const std::string path = write_germ("sphere", kSphere);
    const auto r = run_cli({"levi", path});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 3) == "+1\n");
    CHECK(r.out.find("value 1\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("type command and infinite type verdict") {
    const std::string flat = write_germ("flat", "weights u 2\ntruncation 8\nterm 2 2 0 1 0\n");
    auto r = run_cli({"type", flat});
    CHECK(r.code == 0);
    CHECK(r.out == "k 4\n");
    std::remove(flat.c_str());

    const std::string inf = write_germ("inf", "weights u 2\ntruncation 8\nterm 1 1 1 1 0\n");
    r = run_cli({"type", inf, "--max-order", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "InfiniteTypeWithinTruncation checked-to 6\n");
    std::remove(inf.c_str());
}

TEST_CASE("model command") {
    const std::string flat = write_germ("model", "weights u 2\ntruncation 8\nterm 2 2 0 -1 0\n");
    const auto r = run_cli({"model", flat});
    CHECK(r.code == 0);
    CHECK(r.out.find("k 4\n") != std::string::npos);
    CHECK(r.out.find("l 2\n") != std::string::npos);
    CHECK(r.out.find("class Circular\n") != std::string::npos);
    CHECK(r.out.find("P term 2 2 0 -1 0\n") != std::string::npos);
    CHECK(r.out.find("H dimension 2") != std::string::npos);
    std::remove(flat.c_str());
}

TEST_CASE("normalize command on the sphere") {
    const std::string path = write_germ("sphere2", kSphere);
    const auto r = run_cli({"normalize", path, "--order", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("case ChernMoser\n") != std::string::npos);
    CHECK(r.out.find("condition F_{j,0} all-zero true\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("normalize refuses tubular germs with exit 1") {
    const std::string path = write_germ("tube", kTube);
    const auto r = run_cli({"normalize", path, "--order", "6"});
    CHECK(r.code == 1);
    CHECK(r.err.find("TubularUnsupported") != std::string::npos);
    CHECK(r.err.find("Kolar") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("classify command") {
    const std::string flat = write_germ("circmodel", "weights u 2\ntruncation 8\nterm 2 2 0 1 0\n");
    const auto r = run_cli({"classify", flat, "--order", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("case 1\n") != std::string::npos);
    CHECK(r.out.find("dimension 3\n") != std::string::npos);
    CHECK(r.out.find("jet-order 2\n") != std::string::npos);
    std::remove(flat.c_str());
}

TEST_CASE("equiv command") {
    const std::string s1 = write_germ("eqa", kSphere);
    const std::string s2 = write_germ("eqb", "weights u 2\ntruncation 8\nterm 2 2 0 1 0\n");
    const auto r = run_cli({"equiv", s1, s2, "--order", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict DistinctToOrder\n") != std::string::npos);
    const auto same = run_cli({"equiv", s1, s1, "--order", "8"});
    CHECK(same.code == 0);
    CHECK(same.out.find("verdict EquivalentToOrder\n") != std::string::npos);
    std::remove(s1.c_str());
    std::remove(s2.c_str());
}

TEST_CASE("malformed input exits 2 with diagnostics") {
    const std::string bad = write_germ("bad", "weights u 2\ntruncation 4\nterm 2 0 0 1 0\n");
    const auto r = run_cli({"levi", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("hermitian") != std::string::npos);
    std::remove(bad.c_str());

    const auto missing = run_cli({"levi", "no_such_file.germ"});
    CHECK(missing.code == 2);

    const auto usage = run_cli({"bogus-command"});
    CHECK(usage.code == 2);
}

TEST_CASE("reports are deterministic") {
    const std::string path = write_germ("det",
                                        "weights u 2\n"
                                        "truncation 6\n"
                                        "term 1 1 0 1 0\n"
                                        "term 2 2 0 1/2 0\n");
    const auto r1 = run_cli({"normalize", path, "--order", "6"});
    const auto r2 = run_cli({"normalize", path, "--order", "6"});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    std::remove(path.c_str());
}
