#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chordlab/chord.hpp"
#include "chordlab/cli.hpp"
#include "doctest.h"

using namespace chordlab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_bfile(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST_CASE("series output") {
    Run r = run({"series", "C", "--order", "5", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,coefficient\n0,0\n1,1\n2,1\n3,4\n4,27\n5,248\n");

    r = run({"series", "C2", "--order", "6", "--format", "bfile"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2 1\n3 1\n4 7\n5 63\n6 729\n") != std::string::npos);

    r = run({"--format", "bfile", "series", "D", "--order", "4"});
    CHECK(r.out.find("0 1\n1 1\n2 3\n3 15\n4 105\n") != std::string::npos);

    r = run({"series", "D", "--order", "3"});
    CHECK(r.out.find("# order: 3") != std::string::npos);
}

TEST_CASE("json round trip") {
    Run r = run({"series", "C", "--order", "6", "--format", "json"});
    REQUIRE(r.code == 0);
    OutputRecord rec = parse_json_record(r.out);
    CHECK(rec.command == "series");
    CHECK(rec.rows.size() == 7);
    CHECK(rec.rows[6][1] == "2830");
    CHECK(render(rec, "json") == r.out);

    OutputRecord quoted{"x", {{"k", "a,b"}}, {"c"}, {{"say \"hi\", ok"}}};
    CHECK(render(quoted, "csv") == "c\n\"say \"\"hi\"\", ok\"\n");
    CHECK(parse_json_record(render(quoted, "json")).rows == quoted.rows);
    CHECK_THROWS_AS(render(quoted, "bfile"), std::invalid_argument);
}

TEST_CASE("verify exit codes") {
    for (const auto& suite : suite_names()) {
        Run r = run({"verify", suite, "--order", "8"});
        CHECK_MESSAGE(r.code == 0, suite);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
    CHECK(run({"verify", "nonsense"}).code != 0);
    CHECK(run({"verify", "all", "--order", "0"}).code != 0);
}

TEST_CASE("oeis compare") {
    std::string good = temp_bfile("chordlab_a088221.txt",
                                  "# A088221\n0 1\n1 2\n2 3\n3 10\n4 63\n5 558\n6 6226\n7 82836\n");
    Run r = run({"oeis-compare", "A", "--bfile", good});
    CHECK(r.code == 0);
    CHECK(r.out.find("MISMATCH") == std::string::npos);

    std::string bad = temp_bfile("chordlab_a088221_bad.txt", "0 1\n1 2\n2 4\n");
    r = run({"oeis-compare", "A", "--bfile", bad});
    CHECK(r.code == 1);
    CHECK(r.out.find("MISMATCH") != std::string::npos);

    std::string c = temp_bfile("chordlab_a000699.txt", "0 1\n1 1\n2 1\n3 4\n4 27\n");
    r = run({"oeis-compare", "C", "--bfile", c});
    CHECK(r.code == 0);
    CHECK(r.out.find("skipped") != std::string::npos);

    std::string c2 = temp_bfile("chordlab_a049464.txt", "1 1\n2 1\n3 7\n4 63\n");
    CHECK(run({"oeis-compare", "C2", "--bfile", c2}).code == 0);

    std::string malformed = temp_bfile("chordlab_bad_syntax.txt", "0 1\n1 x\n");
    CHECK_THROWS_AS(read_bfile(malformed), std::invalid_argument);
    CHECK(run({"oeis-compare", "A", "--bfile", malformed}).code == 2);
    CHECK_THROWS_AS(read_bfile("/nonexistent/chordlab.txt"), std::runtime_error);
    CHECK(run({"oeis-compare", "Q", "--bfile", good}).code == 2);
}

TEST_CASE("bad inputs") {
    CHECK(run({}).code != 0);
    CHECK(run({"series", "C", "--order", "65"}).code == 2);
    CHECK(run({"series", "nope"}).code == 2);
    CHECK(run({"--format", "xml", "series", "C"}).code != 0);
    CHECK(run({"bijection", "phi", "--input", "2: 1 2 3 4"}).code == 2);
    CHECK(run({"bijection", "phi"}).code == 2);
    CHECK(run({"diffeo", "--a", "2,1"}).code == 2);
    CHECK(run({"bell", "--n", "3", "--k", "1", "--x", "1,a"}).code == 2);
}

TEST_CASE("commands") {
    Run r = run({"bijection", "phi", "--input", "2: 3 4 1 2", "--format", "csv"});
    CHECK(r.code == 0);
    r = run({"bijection", "nabla", "--input", "3: 4 5 6 1 2 3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k,") != std::string::npos);
    r = run({"bijection", "lambda", "--input", "loops: (1 2 3) ; bosons: 2-3 ; leg: 1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("lambda,2: 3 4 1 2") != std::string::npos);
    r = run({"bell", "--n", "4", "--k", "2", "--x", "1,1,1,1", "--format", "csv"});
    CHECK(r.out.find("bell,7") != std::string::npos);
    r = run({"diffeo", "--a", "1,1/2", "--n", "4", "--kinematics", "seed=3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4,-15,-15,-15") != std::string::npos);
    r = run({"enumerate", "qqed", "--n", "3", "--format", "csv"});
    CHECK(r.out.find("3,4,105,50,7") != std::string::npos);
    r = run({"asym", "C", "--n", "20", "--probability", "--format", "csv"});
    CHECK(r.code == 0);
}

TEST_CASE("enumeration guard") {
    setenv("CHORDLAB_MAX_N", "4", 1);
    CHECK(enumeration_limit() == 4);
    CHECK(run({"enumerate", "diagrams", "--n", "5"}).code == 2);
    CHECK(run({"enumerate", "diagrams", "--n", "4"}).code == 0);
    setenv("CHORDLAB_MAX_N", "zero", 1);
    CHECK_THROWS_AS(enumeration_limit(), std::invalid_argument);
    unsetenv("CHORDLAB_MAX_N");
    CHECK(enumeration_limit() == kDefaultMaxEnumerationN);
    Run r = run({"enumerate", "diagrams", "--n", "4", "--format", "csv"});
    CHECK(r.out.find("4,105,27,") != std::string::npos);
}
