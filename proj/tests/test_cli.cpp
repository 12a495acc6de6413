// Copyright 2026 The transvect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>

#include "transvect/transvect.hpp"

using namespace transvect;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded; stdout is captured.
CliRun run(const std::string &args) {
    std::string cmd = std::string(TRANSVECT_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, got);
    }
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("transvect_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    std::string read(const std::string &name) const {
        std::ifstream in(path(name));
        return std::string(std::istreambuf_iterator<char>(in), {});
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, CodeInfoBuiltin) {
    CliRun r = run("code info --builtin 833");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n: 8"), std::string::npos);
    EXPECT_NE(r.out.find("k: 3"), std::string::npos);
    EXPECT_NE(r.out.find("d: 3"), std::string::npos);
    EXPECT_NE(r.out.find("S1  XXXXXXXX"), std::string::npos);
    EXPECT_NE(r.out.find("S5  IXIZZXYY"), std::string::npos);
    EXPECT_NE(r.out.find("Z1  IZXIZIIX"), std::string::npos);
    EXPECT_NE(r.out.find("validation: ok"), std::string::npos);
}

TEST_F(Cli, CodeSaveThenValidate) {
    std::string f = path("833.code");
    ASSERT_EQ(run("code save --builtin 833 --out " + f).code, 0);
    EXPECT_EQ(parse_code(read("833.code")), builtin_833());
    EXPECT_EQ(run("code validate --code " + f).code, 0);
}

TEST_F(Cli, InvalidCodeFiles) {
    // S1 and S2 anticommute: exit 3 with a report.
    std::string bad = write("bad.code", "code n=2 k=0\nS XI\nS ZI\n");
    CliRun r = run("code validate --code " + bad);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("anticommute"), std::string::npos);
    EXPECT_EQ(run("code info --code " + bad).code, 3);
    // Malformed text: exit 2.
    std::string garbage = write("garbage.code", "code n=2 k=0\nS XQ\n");
    EXPECT_EQ(run("code info --code " + garbage).code, 2);
    EXPECT_EQ(run("code info --code " + path("missing.code")).code, 2);
    EXPECT_EQ(run("code info --builtin 999").code, 2);
    EXPECT_EQ(run("code info --builtin 833 --code " + bad).code, 2);
}

TEST_F(Cli, SynthReducedSupport) {
    CliRun r = run("synth --builtin 833 --logical \"X1 Z2 X3\" --theta pi/2 --reduce exhaustive");
    ASSERT_EQ(r.code, 0);
    Circuit c = parse_circuit(r.out);
    EXPECT_EQ(c.n, 8U);
    std::set<std::size_t> touched;
    for (const auto &g : c.gates) {
        for (auto q : g.qubits()) {
            touched.insert(q);
        }
    }
    // 1-based support {3, 4, 5, 8}.
    EXPECT_EQ(touched, (std::set<std::size_t>{2, 3, 4, 7}));
    // The signed lift carries a minus sign onto the reduced axis.
    EXPECT_EQ(c, synthesize_trotter(parse_pauli("-X3 X4 Z5 Z8", 8), std::numbers::pi / 2));

    // JSON output parses back to the same circuit.
    CliRun j = run("synth --builtin 833 --logical XZX --theta pi/2 --reduce exhaustive --json");
    ASSERT_EQ(j.code, 0);
    EXPECT_EQ(circuit_from_json(nlohmann::json::parse(j.out)), c);

    // Unreduced circuit is longer.
    CliRun full = run("synth --builtin 833 --logical XZX --theta pi/2");
    ASSERT_EQ(full.code, 0);
    EXPECT_GT(parse_circuit(full.out).gates.size(), c.gates.size());
}

TEST_F(Cli, SynthPhysicalAndFiles) {
    std::string txt = path("c.txt"), js = path("c.json");
    ASSERT_EQ(run("synth --physical XZY --theta 0.7 --out " + txt + " --json-out " + js).code, 0);
    Circuit c = parse_circuit(read("c.txt"));
    EXPECT_EQ(c, synthesize_trotter(parse_pauli("XZY", 3), 0.7));
    EXPECT_EQ(circuit_from_json(nlohmann::json::parse(read("c.json"))), c);
    EXPECT_EQ(run("synth --physical \"X1 Z3\" --qubits 4 --theta 0.1").code, 0);
    EXPECT_EQ(run("synth --physical XQZ").code, 2);
    EXPECT_EQ(run("synth --builtin 833 --logical XZX --theta banana").code, 2);
    EXPECT_EQ(run("synth --builtin 833 --logical XZX --physical XXXXXXXX").code, 2);
    EXPECT_EQ(run("synth --builtin 833 --logical XZX --reduce sideways").code, 2);
}

TEST_F(Cli, Reduce) {
    CliRun r = run("reduce --builtin 833 --logical XZX --json");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"], "-IIXXZIIZ");
    EXPECT_EQ(j["input"], "-IZIXYYZX");
    EXPECT_EQ(j["result_weight"], 4);
    EXPECT_EQ(j["input_weight"], 6);
    EXPECT_EQ(j["generators"], nlohmann::json::array({4}));
}

TEST_F(Cli, VerifyExitCodes) {
    EXPECT_EQ(run("verify --builtin 833 --logical \"X1 Z2 X3\" --theta 0.7").code, 0);
    EXPECT_EQ(run("verify --builtin 833 --logical XZX --theta pi/2 --reduce exhaustive").code, 0);
    EXPECT_EQ(run("verify --builtin 833 --logical XZX --theta 0.7 --reduce greedy").code, 0);
    // A physical axis that leaves the codespace breaks centralization.
    CliRun bad = run("verify --builtin 833 --physical X1 --theta 0.7");
    EXPECT_EQ(bad.code, 3);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
    // A logical with the wrong arity is a configuration error.
    EXPECT_EQ(run("verify --builtin 833 --logical XZ --theta 0.7").code, 2);
    CliRun j = run("verify --builtin 833 --logical XZX --theta 0.3 --json");
    ASSERT_EQ(j.code, 0);
    auto arr = nlohmann::json::parse(j.out);
    ASSERT_EQ(arr.size(), 2U);
    EXPECT_EQ(arr[0]["report"], "logical_action");
    EXPECT_EQ(arr[1]["report"], "stabilizer_centralization");
}

TEST_F(Cli, Oracle) {
    CliRun r = run("oracle --builtin 833 --logical XZX --theta 0.7 --samples 20");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("double-angle identity on 20"), std::string::npos);
    EXPECT_EQ(run("oracle --physical XZIY --theta pi/2").code, 0);
    // 11 qubits exceed the dense limit.
    EXPECT_EQ(run("oracle --physical XXXXXXXXXXX --theta 0.2").code, 4);
}

TEST_F(Cli, SimulateDeterministicCsv) {
    const std::string args =
        "simulate --builtin 833 --logical \"X1 Z2 X3\" --reduce exhaustive --p 1e-3:1e-2:log3 --shots 3000 "
        "--decoder lookup --seed 7";
    CliRun a = run(args + " --threads 1");
    CliRun b = run(args + " --threads 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("p,shots,failures,rate,ci_lo,ci_hi,seed\n", 0), 0U);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
    EXPECT_NE(a.out.find(",3000,"), std::string::npos);

    std::string csv = path("out.csv");
    ASSERT_EQ(run(args + " --out " + csv).code, 0);
    EXPECT_EQ(read("out.csv"), a.out);

    CliRun list = run("simulate --builtin 833 --logical XZX --p 0.01,0.02 --shots 500 --failure target:2");
    ASSERT_EQ(list.code, 0);
    EXPECT_EQ(std::count(list.out.begin(), list.out.end(), '\n'), 3);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 0.01 --shots 500 --decoder bp_osd").code, 0);
}

TEST_F(Cli, SimulateErrors) {
    // Generic angle is not Clifford.
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --theta 0.7 --p 0.01 --shots 10").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 1e-3:1e-2 --shots 10").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p abc --shots 10").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 2 --shots 10").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 0.01 --shots 0").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 0.01 --decoder mwpm").code, 2);
    EXPECT_EQ(run("simulate --builtin 833 --logical XZX --p 0.01 --failure target:4").code, 2);
}

TEST_F(Cli, SimulateFromCircuitFile) {
    std::string f = write("c.txt", format_circuit(synthesize_trotter(parse_pauli("X3 X4 Z5 Z8", 8), std::numbers::pi / 2)));
    CliRun a = run("simulate --builtin 833 --circuit " + f + " --p 0.01 --shots 2000 --seed 3");
    CliRun b = run("simulate --builtin 833 --logical XZX --reduce exhaustive --p 0.01 --shots 2000 --seed 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, LiftedProductAndChecksImport) {
    std::string a = write("a.txt", "lift 5 2 3\n1 x x^2\n1 x^3 x\n");
    std::string b = write("b.txt", "lift 5 1 2\n1+x x^4\n");
    CliRun r = run("code info --lp " + a + " " + b);
    EXPECT_EQ(r.code, 0);
    StabilizerCode lp = lifted_product(parse_circulant(read("a.txt")), parse_circulant(read("b.txt")), "LP");
    EXPECT_NE(r.out.find("n: " + std::to_string(lp.n)), std::string::npos);
    EXPECT_NE(r.out.find("k: " + std::to_string(lp.k)), std::string::npos);

    // Steane code from sparse checks.
    std::string h = "3 7\n3 4 5 6\n1 2 5 6\n0 2 4 6\n";
    std::string hx = write("hx.txt", h), hz = write("hz.txt", h);
    CliRun s = run("code info --checks " + hx + " " + hz);
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("k: 1"), std::string::npos);
    EXPECT_EQ(run("code info --checks " + hx).code, 2);
}

TEST_F(Cli, HelpAndUsage) {
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("simulate --help").code, 0);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("synth --nonsense").code, 2);
}
