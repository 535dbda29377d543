#include "torusmc/document.hpp"

#include <doctest.h>

#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace torusmc;

namespace {

const std::string kCli = TORUSMC_CLI_PATH;
const std::string kFixtures = TORUSMC_FIXTURE_DIR;

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

Run run(const std::string& args) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string out = (dir / "torusmc_cli_out.txt").string();
    const std::string err = (dir / "torusmc_cli_err.txt").string();
    const std::string command = "'" + kCli + "' " + args + " >'" + out + "' 2>'" + err + "'";
    const int raw = std::system(command.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

// "key v1 v2 ..." lines of analyze output.
std::map<std::string, std::vector<double>> numbers(const std::string& text) {
    std::map<std::string, std::vector<double>> out;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        std::istringstream words(line);
        std::string key, word;
        words >> key;
        while (words >> word)
            if (word != "true" && word != "false") out[key].push_back(std::stod(word));
    }
    return out;
}

bool values_near(const std::vector<double>& got, const std::vector<double>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - want[i]) > 1e-9) return false;
    return true;
}

std::string fixture(const char* name) { return "'" + kFixtures + "/" + name + "'"; }

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    write_file(path, text);
    return path;
}

} // namespace

TEST_CASE("cli validate") {
    const Run r = run("validate " + fixture("k7.tg"));
    CHECK(r.status == 0);
    CHECK(r.out.find("vertices 7\nedges 21\nfaces 14\n") == 0);
    CHECK(r.out.find("essentially_3_connected true") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("cli analyze") {
    Run r = run("analyze " + fixture("k7.tg"));
    CHECK(r.status == 0);
    auto values = numbers(r.out);
    CHECK(values_near(values["alpha"], {2}));
    CHECK(values_near(values["beta"], {2}));
    CHECK(values_near(values["gamma"], {1}));
    CHECK(values_near(values["discriminant"], {3}));
    CHECK(values_near(values["force_diagram_torus"], {2, -1, -1, 2}));
    CHECK(r.out.find("reciprocal_here false") != std::string::npos);

    r = run("analyze --stress uniform:2 " + fixture("g1.tg"));
    CHECK(r.status == 0);
    values = numbers(r.out);
    CHECK(values_near(values["alpha"], {12}));
    CHECK(values_near(values["force_diagram_torus"], {4, -6, -6, 12}));
}

TEST_CASE("cli reciprocal and weights with a stress file") {
    const std::string stress = temp_file(
        "torusmc_k7_stress.txt",
        [] {
            std::string s;
            const char* values[3] = {"0.5714285714285714", "0.14285714285714285", "1.2857142857142858"};
            for (int i = 0; i < 7; ++i) {
                const int targets[3] = {(i + 1) % 7, (i + 3) % 7, (i + 2) % 7};
                for (int c = 0; c < 3; ++c)
                    s += "stress e" + std::to_string(i) + "_" + std::to_string(targets[c]) + " " +
                         values[c] + "\n";
            }
            return s;
        }());
    Run r = run("reciprocal --stress '" + stress + "' " + fixture("k7.tg"));
    CHECK(r.status == 0);
    const GraphDocument dual = parse_document(r.out);
    CHECK(dual.graph.num_vertices() == 14);

    r = run("weights --stress '" + stress + "' " + fixture("k7.tg"));
    CHECK(r.status == 0);
    const GraphDocument lifted = parse_document(r.out);
    REQUIRE(lifted.weights);
    for (double w : *lifted.weights) CHECK(std::abs(w) <= 1e-9);

    const std::string out = (std::filesystem::temp_directory_path() / "torusmc_weights.tg").string();
    r = run("weights --canonical --output '" + out + "' " + fixture("k7.tg"));
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(parse_document(read_file(out)).weights);

    r = run("check-delaunay " + fixture("g1.tg"));
    CHECK(r.status == 0);
    CHECK(r.out.find("weighted_delaunay false") != std::string::npos);
}

TEST_CASE("cli embed, oracle and render") {
    Run r = run("embed --pin p3 " + fixture("k7.tg"));
    CHECK(r.status == 0);
    CHECK(parse_document(r.out).stress);

    r = run("oracle " + fixture("sites9.txt"));
    CHECK(r.status == 0);
    CHECK(r.out == read_file(kFixtures + "/sites9_delaunay.tg"));

    r = run("render --patch 3x3 " + fixture("g1.tg"));
    CHECK(r.status == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    const Run again = run("render --patch 3x3 " + fixture("g1.tg"));
    CHECK(again.out == r.out);

    r = run("render --dual --weights " + fixture("sites9_delaunay.tg"));
    CHECK(r.status == 0);
    CHECK(r.out.find("dual-edge") != std::string::npos);
}

TEST_CASE("cli failures") {
    Run r = run("reciprocal " + fixture("k7.tg"));
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: NotReciprocalHere: ", 0) == 0);

    r = run("validate /nonexistent/file.tg");
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: IoError: ", 0) == 0);

    const std::string broken = temp_file("torusmc_broken.tg", "torus 1 0 0 1\nvertex p 0 0\n");
    r = run("validate '" + broken + "'");
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: ParseError: ", 0) == 0);

    r = run("render --patch 3x2 " + fixture("g1.tg"));
    CHECK(r.status == 2);
    CHECK(r.err.rfind("error: usage: ", 0) == 0);

    r = run("embed --pin nowhere " + fixture("k7.tg"));
    CHECK(r.status == 2);

    r = run("frobnicate");
    CHECK(r.status == 2);

    r = run("");
    CHECK(r.status == 2);

    r = run("analyze --stress uniform:abc " + fixture("k7.tg"));
    CHECK(r.status == 2);
}
