#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "attractor/attractor.hpp"
#include "corpus.hpp"

using nlohmann::json;

namespace {

const std::string kBin = SATTR_PATH;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    out << data;
}

std::string tmpdir() {
    static std::string dir = [] {
        std::string d = "/tmp/sattr_cli_scratch";
        if (std::system(("rm -rf " + d + " && mkdir -p " + d).c_str()) != 0)
            throw std::runtime_error("cannot prepare the scratch directory");
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    std::string out_path = tmpdir() + "/out.bin";
    std::string err_path = tmpdir() + "/err.txt";
    int rc = std::system((kBin + " " + args + " >" + out_path + " 2>" + err_path).c_str());
    return {WEXITSTATUS(rc), slurp(out_path), slurp(err_path)};
}

RunResult run_shell(const std::string& cmd) {
    std::string out_path = tmpdir() + "/out.bin";
    std::string err_path = tmpdir() + "/err.txt";
    int rc = std::system((cmd + " >" + out_path + " 2>" + err_path).c_str());
    return {WEXITSTATUS(rc), slurp(out_path), slurp(err_path)};
}

std::string text_file(const std::string& name, const std::string& content) {
    std::string path = tmpdir() + "/" + name;
    spit(path, content);
    return path;
}

}  // namespace

TEST_CASE("pipeline closure: every induced attractor verifies through the CLI") {
    std::vector<std::string> strings{"CDABCCDABCCA", "banana", corpus::fib_word(12),
                                     corpus::thue_morse(64), std::string(40, 'a')};
    int idx = 0;
    for (const auto& s : strings) {
        std::string tf = text_file("t" + std::to_string(idx++) + ".txt", s);
        for (const std::string kind : {"lz77", "bwt", "grammar", "macro", "stree", "greedy"}) {
            RunResult res = run_shell(kBin + " attractor " + kind + " " + tf + " | " + kBin +
                                      " verify " + tf + " -");
            INFO(kind << " on " << s.substr(0, 16));
            REQUIRE(res.exit_code == 0);
            REQUIRE(json::parse(res.out)["valid"] == true);
        }
    }
}

TEST_CASE("verify reports the witness and a nonzero exit on failure") {
    std::string tf = text_file("ab.txt", "ab");
    std::string af = text_file("bad.json", R"({"n":2,"positions":[1],"provenance":"user"})");
    RunResult res = run("verify " + tf + " " + af);
    REQUIRE(res.exit_code == 1);
    json j = json::parse(res.out);
    REQUIRE(j["valid"] == false);
    REQUIRE(j["witness"]["substring"] == "b");
}

TEST_CASE("verify surfaces range errors as machine-readable records") {
    std::string tf = text_file("ab.txt", "ab");
    std::string af = text_file("oob.json", R"({"n":2,"positions":[7],"provenance":"user"})");
    RunResult res = run("verify " + tf + " " + af);
    REQUIRE(res.exit_code == 1);
    json j = json::parse(res.err);
    REQUIRE(j["error"] == "position-out-of-range");
    REQUIRE(j["command"] == "verify");
}

TEST_CASE("brute emits the smallest set") {
    std::string tf = text_file("ex.txt", "CDABCCDABCCA");
    RunResult res = run("brute " + tf);
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["positions"].size() == 4);
    REQUIRE(j["provenance"] == "brute");
}

TEST_CASE("decode closure through parse and slp") {
    for (const auto& s : {std::string("CDABCCDABCCA"), corpus::fib_word(13)}) {
        std::string tf = text_file("d.txt", s);
        RunResult attr = run("attractor lz77 " + tf);
        REQUIRE(attr.exit_code == 0);
        std::string af = text_file("d_attr.json", attr.out);

        RunResult parse = run("to-parse " + tf + " " + af);
        REQUIRE(parse.exit_code == 0);
        std::string pf = text_file("d_parse.json", parse.out);
        RunResult decoded = run("decode parse " + pf);
        REQUIRE(decoded.exit_code == 0);
        REQUIRE(decoded.out == s);

        RunResult slp = run("to-slp " + tf + " " + af);
        REQUIRE(slp.exit_code == 0);
        std::string sf = text_file("d_slp.json", slp.out);
        RunResult expanded = run("decode slp " + sf);
        REQUIRE(expanded.exit_code == 0);
        REQUIRE(expanded.out == s);
    }
}

TEST_CASE("decode lz77 consumes the documented serialization") {
    attractor::Text t = attractor::Text::from_bytes("CDABCCDABCCA");
    attractor::SuffixIndex idx(t);
    auto j = attractor::lz77_to_json(attractor::lz77_parse(t, idx), t);
    std::string lf = text_file("lz.json", j.dump());
    RunResult res = run("decode lz77 " + lf);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.out == "CDABCCDABCCA");
}

TEST_CASE("adag build and extract round-trip through a file") {
    std::string tf = text_file("adag.txt", "CDABCCDABCCA");
    std::string af =
        text_file("adag_attr.json", R"({"n":12,"positions":[4,7,11,12],"provenance":"user"})");
    std::string df = tmpdir() + "/out.adag";
    RunResult built = run("adag build " + tf + " " + af + " --tau 2 -o " + df);
    REQUIRE(built.exit_code == 0);
    RunResult ex = run("adag extract " + df + " --pos 6 --len 5");
    REQUIRE(ex.exit_code == 0);
    REQUIRE(ex.out == "CDABC");
    SECTION("past-the-end extraction fails with the module's code") {
        RunResult bad = run("adag extract " + df + " --pos 12 --len 3");
        REQUIRE(bad.exit_code != 0);
        json j = json::parse(bad.err);
        REQUIRE(j["error"] == "range-out-of-bounds");
    }
}

TEST_CASE("bounds reports the running example's numbers") {
    std::string tf = text_file("b.txt", "CDABCCDABCCA");
    RunResult res = run("bounds " + tf + " --gamma 4");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["lc_bound"].get<double>() == Catch::Approx(67.0 / 70.0).epsilon(1e-6));
    REQUIRE(j["lc"].get<double>() == Catch::Approx(55.0 / 70.0).epsilon(1e-6));
    RunResult full = run("bounds " + tf);
    REQUIRE(full.exit_code == 0);
    json fj = json::parse(full.out);
    REQUIRE(fj["gamma"] == 4);
    REQUIRE(fj["gamma_exact"] == true);
}

TEST_CASE("report emits the measures record") {
    std::string tf = text_file("r.txt", "CDABCCDABCCA");
    RunResult res = run("report " + tf);
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["z"] == 8);
    REQUIRE(j["brute_gamma"] == 4);
    RunResult table = run("report " + tf + " --table");
    REQUIRE(table.exit_code == 0);
    REQUIRE(table.out.find("gamma* (brute)") != std::string::npos);
}

TEST_CASE("reduce-setcover emits the reduction tree") {
    std::string scf = text_file("sc.json", R"({"universe":2,"sets":[[0],[1]]})");
    RunResult res = run("reduce-setcover " + scf);
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["edges"].size() == 10);
    REQUIRE(j["t"] == 2);
    std::string treef = text_file("tree.json", res.out);
    RunResult brute = run("tree-brute " + treef + " --limit 64");
    REQUIRE(brute.exit_code == 0);
    REQUIRE(json::parse(brute.out)["k"] == 6);
    RunResult greedy = run("tree-greedy " + treef);
    REQUIRE(greedy.exit_code == 0);
    REQUIRE(json::parse(greedy.out)["k"].get<int>() >= 6);
}

TEST_CASE("outputs are deterministic") {
    std::string tf = text_file("det.txt", corpus::thue_morse(128));
    RunResult a = run("attractor lz77 " + tf);
    RunResult b = run("attractor lz77 " + tf);
    REQUIRE(a.out == b.out);
    RunResult p1 = run("report " + tf);
    RunResult p2 = run("report " + tf);
    REQUIRE(p1.out == p2.out);
}

TEST_CASE("stdin and stdout markers work") {
    RunResult res = run_shell("printf CDABCCDABCCA | " + kBin + " brute -");
    REQUIRE(res.exit_code == 0);
    REQUIRE(json::parse(res.out)["positions"].size() == 4);
}

TEST_CASE("raw byte files with high bytes round-trip through the JSON forms") {
    std::string s;
    for (int k = 0; k < 64; ++k) s.push_back(static_cast<char>("\x01\x7f\x80\xfe"[k % 4]));
    s += "\xff\xfe\xff";
    std::string tf = text_file("bin.dat", s);
    RunResult attr = run("attractor lz77 " + tf);
    REQUIRE(attr.exit_code == 0);
    std::string af = text_file("bin_attr.json", attr.out);
    RunResult parse = run("to-parse " + tf + " " + af);
    REQUIRE(parse.exit_code == 0);
    std::string pf = text_file("bin_parse.json", parse.out);
    RunResult decoded = run("decode parse " + pf);
    REQUIRE(decoded.exit_code == 0);
    REQUIRE(decoded.out == s);
    RunResult slp = run("to-slp " + tf + " " + af);
    REQUIRE(slp.exit_code == 0);
    std::string sf = text_file("bin_slp.json", slp.out);
    RunResult expanded = run("decode slp " + sf);
    REQUIRE(expanded.exit_code == 0);
    REQUIRE(expanded.out == s);
}
