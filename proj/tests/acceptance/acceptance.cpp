// One line per acceptance criterion: PASS/FAIL, the figures behind the verdict
// and the elapsed time against its limit. Exit status is non-zero if any line
// fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "monocirc/compile.hpp"
#include "monocirc/fixtures.hpp"
#include "monocirc/reduce.hpp"
#include "monocirc/verify.hpp"
#include "oracles.hpp"

using namespace monocirc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> check;
};

std::string count(const char* what, std::size_t n) { return std::string(what) + "=" + std::to_string(n); }

Outcome support_law() {
    std::mt19937_64 rng(kSeed);
    std::size_t words = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Polarity p = i % 2 ? Polarity::And : Polarity::Or;
        const Circuit c = random_monotone_circuit(rng, p, 10, 20);
        const Support s = support(c, p);
        for (const auto& w : oracles::all_words(c.n_inputs())) {
            ++words;
            bad += evaluate(c, w) != semantic_eval(s, w);
        }
    }
    return {bad == 0, count("circuits", 1000) + " " + count("words", words) + " " + count("mismatches", bad)};
}

Outcome family_compilation() {
    const auto u = [](const TuringMachine& m) { return with_polarity(m, Acceptance::Universal); };
    const TuringMachine mod3 = fixtures::mod3_length(), even = fixtures::tally_even(), prime = fixtures::tally_prime(),
                        prime_u = fixtures::tally_prime_universal();
    const std::vector<std::pair<CircuitFamily, TuringMachine>> cases{
        {compile_nl_to_monotone_family(mod3, Polarity::Or), mod3},
        {compile_nl_to_monotone_family(u(mod3), Polarity::And), u(mod3)},
        {compile_tally_to_monotone_family(even, Polarity::Or), even},
        {compile_tally_to_monotone_family(u(even), Polarity::And), u(even)},
        {compile_tally_to_monotone_family(prime, Polarity::Or), prime},
        {compile_tally_to_monotone_family(prime_u, Polarity::And), prime_u},
    };
    Outcome out;
    std::size_t cases_total = 0, failures = 0;
    for (const auto& [f, m] : cases) {
        const auto r = verify_family_against_machine(f, m, 6);
        cases_total += r.cases;
        failures += r.failure_count;
        out.ok = out.ok && r.passed() && r.cases <= 126;
        if (!r.passed()) out.detail += " failed:" + r.construction;
    }
    out.detail = count("families", cases.size()) + " " + count("cases", cases_total) + " " +
                 count("failures", failures) + out.detail;
    return out;
}

Outcome reduction_cycle() {
    Outcome out;
    std::size_t links = 0, cases = 0, failures = 0;
    bool or_cycle = false, and_cycle = false;
    for (const auto& f : chain_fixtures()) {
        const auto r = verify_reduction_chain(f.original, f.derived, 6);
        ++links;
        cases += r.cases;
        failures += r.failure_count;
        if (!r.passed()) {
            out.ok = false;
            out.detail += " failed:" + f.name;
        }
        or_cycle = or_cycle || f.name.rfind("or_", 0) == 0;
        and_cycle = and_cycle || f.name.rfind("and_", 0) == 0;
    }
    out.ok = out.ok && or_cycle && and_cycle && links > 0;
    out.detail = count("links", links) + " " + count("cases", cases) + " " + count("failures", failures) + out.detail;
    return out;
}

Outcome gadget_equivalence() {
    SuiteOptions o;
    o.max_n = 6;
    const auto reports = run_suite("gadget", o);
    Outcome out;
    std::size_t cases = 0, failures = 0;
    for (const auto& r : reports) {
        cases += r.cases;
        failures += r.failure_count;
        out.ok = out.ok && r.passed();
        for (const auto& [k, v] : r.metrics) out.detail += " " + k + "=" + v;
    }
    out.detail = count("cases", cases) + " " + count("failures", failures) + out.detail;
    return out;
}

Outcome dual_rail() {
    std::mt19937_64 rng(kSeed);
    std::size_t words = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Circuit c = random_general_circuit(rng, 8, 20);
        for (const auto& w : oracles::all_words(c.n_inputs())) {
            ++words;
            const Circuit d = dual_rail_compile(c, w);
            bool clean = d.n_inputs() == 0;
            for (const auto& g : d.gates()) clean = clean && g.kind != GateKind::Not && g.kind != GateKind::Input;
            bad += !clean || evaluate(d, "") != evaluate(c, w);
        }
    }
    return {bad == 0, count("circuits", 1000) + " " + count("words", words) + " " + count("mismatches", bad)};
}

Outcome inductive_counting() {
    std::mt19937_64 rng(kSeed);
    std::size_t queries = 0, bad = 0;
    for (int i = 0; i < 500; ++i) {
        const Digraph g = random_digraph(rng, 50);
        const auto r = oracles::closure(g);
        const VertexId from = static_cast<VertexId>(rng() % g.vertex_count());
        for (VertexId to = 0; to < g.vertex_count(); ++to) {
            ++queries;
            bad += unreachable_inductive_counting(g, from, to) != !r[from][to];
        }
    }
    return {bad == 0, count("graphs", 500) + " " + count("queries", queries) + " " + count("mismatches", bad)};
}

Outcome separation_witnesses() {
    Outcome out;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (Polarity p : {Polarity::Or, Polarity::And}) {
            const auto set = enumerate_monotone_functions(n, p);
            if (set.size() != (std::size_t{1} << n) + 1) {
                out.ok = false;
                out.detail += " size(" + std::to_string(n) + ")=" + std::to_string(set.size());
            }
            if (n >= 2 && p == Polarity::Or) {
                out.ok = out.ok && !std::binary_search(set.begin(), set.end(), and_table(n, {0, 1}));
            }
            if (n >= 2) out.ok = out.ok && !std::binary_search(set.begin(), set.end(), parity_table(n));
        }
    }
    std::size_t witnesses = 0;
    for (auto kind : {WitnessKind::OrVsAnd, WitnessKind::ParityVsMonotone, WitnessKind::UniformVsSemiuniform}) {
        for (std::size_t n = 2; n <= 5; ++n) {
            const SeparationWitness w = separation_witness(kind, n);
            ++witnesses;
            out.ok = out.ok && w.verified() && replay_witness(w);
        }
    }
    const auto r = verify_semiuniform_family(semiuniform_family(fixtures::parity(), Polarity::Or), fixtures::parity(), 6);
    out.ok = out.ok && r.passed();
    for (std::size_t n = 0; n <= 6; ++n) {
        for (const auto& w : oracles::all_words(n)) {
            const bool odd = std::count(w.begin(), w.end(), '1') % 2 == 1;
            out.ok = out.ok && evaluate(compile_semiuniform(fixtures::parity(), w, Polarity::Or), "") == odd;
        }
    }
    out.detail = "sizes=2^n+1(n=1..5) " + count("witnesses", witnesses) + " " +
                 count("parity_semiuniform_cases", r.cases) + " " + count("failures", r.failure_count) + out.detail;
    return out;
}

Outcome codecs() {
    std::size_t checks = 0, bad = 0;
    for (std::size_t len = 1; len <= 8; ++len) {
        for (std::uint64_t a = 0; a < (1u << len); ++a) {
            for (std::uint64_t b = 0; b < (1u << len); ++b) {
                std::string sa(len, '0'), sb(len, '0');
                for (std::size_t j = 0; j < len; ++j) {
                    sa[len - 1 - j] = (a >> j) & 1u ? '1' : '0';
                    sb[len - 1 - j] = (b >> j) & 1u ? '1' : '0';
                }
                ++checks;
                bad += unpair(pair(sa, sb)) != std::make_pair(sa, sb);
            }
        }
    }
    for (std::uint64_t x = 0; x < 256; ++x) {
        const std::string bin = to_binary(x);
        ++checks;
        bad += bin_to_unary(bin) != x || unary_to_bin(unary_wire(x, 256)) != bin;
    }
    return {bad == 0, count("checks", checks) + " " + count("mismatches", bad)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / "monocirc_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string reports[2];
    int codes[2];
    for (int i = 0; i < 2; ++i) {
        const fs::path report = dir / ("report" + std::to_string(i) + ".json");
        const std::string cmd = std::string("\"") + MONOCIRC_CLI + "\" verify --suite all --max-n 6 --seed 42 --report \"" +
                                report.string() + "\" > /dev/null";
        codes[i] = std::system(cmd.c_str());
        reports[i] = slurp(report);
    }
    fs::remove_all(dir);
    const bool same = !reports[0].empty() && reports[0] == reports[1];
    return {same && codes[0] == 0 && codes[1] == 0,
            count("report_bytes", reports[0].size()) + " identical=" + (same ? "yes" : "no") +
                " exit=" + std::to_string(codes[0]) + "," + std::to_string(codes[1])};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "support_semantics_law", 30, support_law},
        {2, "family_compilation", 60, family_compilation},
        {3, "reduction_cycle", 120, reduction_cycle},
        {4, "gadget_equivalence", 10, gadget_equivalence},
        {5, "dual_rail", 30, dual_rail},
        {6, "inductive_counting", 60, inductive_counting},
        {7, "separation_witnesses", 10, separation_witnesses},
        {8, "codec_roundtrips", 5, codecs},
        {9, "determinism", 120, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = o.ok && s <= c.limit_s;
        failed += !ok;
        char timing[64];
        std::snprintf(timing, sizeof timing, "time=%.2fs limit=%.0fs", s, c.limit_s);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << ": " << o.detail << " "
                  << timing << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
