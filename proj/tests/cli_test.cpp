#include "monocirc/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "monocirc/fixtures.hpp"
#include "monocirc/json_io.hpp"
#include "oracles.hpp"

namespace monocirc {
namespace {

namespace fs = std::filesystem;

const fs::path kData = MONOCIRC_DATA_DIR;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "monocirc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("monocirc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name) << text;
        return path(name);
    }

    fs::path dir_;
};

TEST_F(Cli, EvalOrWithConst0) {
    const Result r = run({"eval", "--circuit", (kData / "circuits/or_input0_const0.json").string(), "--word", "1"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "1\n");
}

TEST_F(Cli, EvalWithTallyOracle) {
    const std::string c = (kData / "circuits/tally_gate_3.json").string();
    const std::string t = (kData / "circuits/tally_even_oracle.json").string();
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "011", "--tally-oracle", t}).out, "1\n");
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "111", "--tally-oracle", t}).out, "0\n");
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "101", "--tally-oracle", t}).code, cli::kExitUsage);
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "011"}).code, cli::kExitUsage);
}

TEST_F(Cli, UsageErrors) {
    const std::string c = (kData / "circuits/or_input0_const0.json").string();
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "10"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"eval", "--circuit", c, "--word", "1", "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"verify", "--max-n", "11"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"witness", "--kind", "or_vs_and", "--n", "7"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"eval", "--circuit", path("missing.json"), "--word", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(Cli, MalformedFilesNameTheField) {
    const std::string bad_kind =
        write("kind.json", R"({"n_inputs":1,"output":0,"gates":[{"id":0,"kind":"xor","inputs":[]}]})");
    Result r = run({"eval", "--circuit", bad_kind, "--word", "1"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("gates[0].kind"), std::string::npos) << r.err;

    const std::string bad_wire =
        write("wire.json", R"({"n_inputs":1,"output":0,"gates":[{"id":0,"kind":"or","inputs":["a"]}]})");
    r = run({"eval", "--circuit", bad_wire, "--word", "1"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("gates[0].inputs[0]"), std::string::npos) << r.err;

    const std::string extra = write("extra.json", R"({"n_inputs":0,"output":0,"gates":[{"id":0,"kind":"const1"}],"x":1})");
    r = run({"eval", "--circuit", extra, "--word", ""});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("x"), std::string::npos) << r.err;

    const std::string not_json = write("broken.json", "{");
    EXPECT_EQ(run({"eval", "--circuit", not_json, "--word", "1"}).code, cli::kExitUsage);

    const std::string spec = write("spec.json", R"({"kind":"zz","tau":{"builtin":"identity"},"oracle":{"tally_set":[]}})");
    r = run({"reduce", "--spec", spec, "--word", "1"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("kind"), std::string::npos) << r.err;
}

TEST_F(Cli, CompileThenEvalAndSupport) {
    const std::string out = path("mod3_n3.json");
    ASSERT_EQ(run({"compile", "--machine", (kData / "machines/mod3_length.json").string(), "--construction",
                   "nl_to_or", "--n", "3", "-o", out})
                  .code,
              cli::kExitOk);
    for (const auto& w : oracles::all_words(3)) EXPECT_EQ(run({"eval", "--circuit", out, "--word", w}).out, "1\n");
    const Result s = run({"support", "--circuit", out, "--polarity", "or"});
    EXPECT_EQ(s.code, cli::kExitOk);
    const Json doc = Json::parse(s.out);
    EXPECT_TRUE(doc.at("forcing_constant").get<bool>());
    EXPECT_EQ(run({"support", "--circuit", out, "--polarity", "and"}).code, cli::kExitUsage);
}

TEST_F(Cli, CompileRejectsWrongParameters) {
    const std::string m = (kData / "machines/parity.json").string();
    EXPECT_EQ(run({"compile", "--machine", m, "--construction", "semiuniform_or", "--n", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"compile", "--machine", m, "--construction", "nl_to_and", "--n", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"compile", "--machine", m, "--construction", "nl_to_or"}).code, cli::kExitUsage);
    const Result r = run({"compile", "--machine", m, "--construction", "semiuniform_or", "--word", "101"});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(evaluate(circuit_from_json(Json::parse(r.out)), ""), false);
}

TEST_F(Cli, CompileFromDescriptor) {
    const std::string d = write("d.json", R"({"construction":"tally_to_or","machine_file":")" +
                                              (kData / "machines/tally_even.json").string() + R"("})");
    const std::string out = path("c.json");
    ASSERT_EQ(run({"compile", "--descriptor", d, "--n", "4", "-o", out}).code, cli::kExitOk);
    EXPECT_EQ(run({"eval", "--circuit", out, "--word", "0101"}).out, "1\n");
    EXPECT_EQ(run({"eval", "--circuit", out, "--word", "1010"}).out, "0\n");
}

TEST_F(Cli, GadgetAndDualRail) {
    const std::string e = path("expanded.json");
    ASSERT_EQ(run({"gadget", "--circuit", (kData / "circuits/tally_gate_3.json").string(), "--tally",
                   (kData / "circuits/tally_set_1.json").string(), "-o", e})
                  .code,
              cli::kExitOk);
    EXPECT_EQ(run({"eval", "--circuit", e, "--word", "001"}).out, "1\n");
    EXPECT_EQ(run({"eval", "--circuit", e, "--word", "011"}).out, "0\n");

    const std::string d = path("dr.json");
    ASSERT_EQ(
        run({"dualrail", "--circuit", (kData / "circuits/or_input0_not_input1.json").string(), "--word", "01", "-o", d})
            .code,
        cli::kExitOk);
    EXPECT_EQ(run({"eval", "--circuit", d, "--word", ""}).out, "0\n");
}

TEST_F(Cli, CircuitJsonRoundTrip) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 50; ++i) {
        const Circuit c = random_general_circuit(rng);
        const Json doc = circuit_to_json(c);
        EXPECT_EQ(circuit_from_json(doc), c);
        EXPECT_EQ(circuit_from_json(Json::parse(dump_json(doc))), c);
    }
}

TEST_F(Cli, MachineJsonRoundTripAndDataFiles) {
    for (const auto& m : fixtures::all_machines()) {
        EXPECT_EQ(machine_from_json(machine_to_json(m)), m);
        EXPECT_EQ(load_machine(kData / "machines" / (m.name + ".json")), m);
    }
}

// The files under data/ are exactly what the exporter writes today.
TEST_F(Cli, DataTreeMatchesExporter) {
    const std::string cmd = std::string("\"") + MONOCIRC_EXPORTER + "\" \"" + dir_.string() + "\" > /dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir_)) {
        if (!e.is_regular_file()) continue;
        ++files;
        const fs::path rel = fs::relative(e.path(), dir_);
        EXPECT_EQ(slurp(e.path()), slurp(kData / rel)) << rel;
    }
    std::size_t shipped = 0;
    for (const auto& e : fs::recursive_directory_iterator(kData)) shipped += e.is_regular_file();
    EXPECT_EQ(files, shipped);
}

// Pairs of shipped reduction descriptors that decide the same language.
TEST_F(Cli, ReductionDescriptorPairsAgree) {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"prefixes_dtt_tally_to_or_even", "tau_prime_dtt_mf_tally_to_or_even"},
        {"one_positions_dtt_tally_even", "r_map_m_tally_to_or_even"},
        {"zero_positions_ctt_tally_prime_universal", "r_map_m_tally_to_and_prime_universal"},
    };
    for (const auto& [a, b] : pairs) {
        const std::string fa = (kData / "reductions" / (a + ".json")).string();
        const std::string fb = (kData / "reductions" / (b + ".json")).string();
        for (std::size_t n = 0; n <= 4; ++n) {
            for (const auto& w : oracles::all_words(n)) {
                const Result ra = run({"reduce", "--spec", fa, "--word", w});
                const Result rb = run({"reduce", "--spec", fb, "--word", w});
                ASSERT_EQ(ra.code, cli::kExitOk) << ra.err;
                ASSERT_EQ(ra.out, rb.out) << a << " vs " << b << " on '" << w << "'";
            }
        }
    }
}

TEST_F(Cli, ReduceExamples) {
    const std::string xor_spec = (kData / "reductions/halves_xor_tt_tally_set.json").string();
    // Oracle {1, 2}: exactly one half in the set.
    EXPECT_EQ(run({"reduce", "--spec", xor_spec, "--word", "1"}).out, "1\n");
    EXPECT_EQ(run({"reduce", "--spec", xor_spec, "--word", "11"}).out, "0\n");
    EXPECT_EQ(run({"reduce", "--spec", xor_spec, "--word", "1110"}).out, "1\n");
    EXPECT_EQ(run({"reduce", "--spec", xor_spec, "--word", "0110"}).out, "0\n");
    const std::string t = (kData / "reductions/first_member_parity_T_tally_prime.json").string();
    // one_positions of "011" queries 1^2 (prime) first, at index 0.
    EXPECT_EQ(run({"reduce", "--spec", t, "--word", "011"}).out, "1\n");
    EXPECT_EQ(run({"reduce", "--spec", t, "--word", "1"}).out, "0\n");
}

TEST_F(Cli, WitnessPrintsTheAndTable) {
    const Result r = run({"witness", "--kind", "or_vs_and", "--n", "2", "-o", path("w.json")});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("AND(x0,x1)"), std::string::npos);
    EXPECT_NE(r.out.find("0001"), std::string::npos);
    const Json doc = read_json_file(path("w.json"));
    EXPECT_EQ(doc.at("function"), "AND(x0,x1)");
}

TEST_F(Cli, VerifyWritesDeterministicReports) {
    const std::string a = path("a.json"), b = path("b.json");
    const Result ra = run({"verify", "--suite", "families", "--max-n", "4", "--report", a});
    const Result rb = run({"verify", "--suite", "families", "--max-n", "4", "--report", b, "--jobs", "3"});
    EXPECT_EQ(ra.code, cli::kExitOk);
    EXPECT_EQ(ra.out, rb.out);
    EXPECT_EQ(slurp(a), slurp(b));
    const Json doc = read_json_file(a);
    EXPECT_EQ(doc.at("failures"), 0);
    EXPECT_TRUE(doc.at("passed").get<bool>());
    EXPECT_FALSE(doc.at("reports").at(0).contains("elapsed_ms"));
    EXPECT_NE(ra.out.find("PASS nl_to_or"), std::string::npos);
}

TEST_F(Cli, TimingIsOptIn) {
    const std::string a = path("t.json");
    ASSERT_EQ(run({"verify", "--suite", "codecs", "--report", a, "--timing"}).code, cli::kExitOk);
    EXPECT_TRUE(read_json_file(a).at("reports").at(0).contains("elapsed_ms"));
}

}  // namespace
}  // namespace monocirc
