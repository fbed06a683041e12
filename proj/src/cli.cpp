#include "monocirc/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "monocirc/bitsliced.hpp"
#include "monocirc/compile.hpp"
#include "monocirc/error.hpp"
#include "monocirc/json_io.hpp"
#include "monocirc/reduce.hpp"
#include "monocirc/verify.hpp"

namespace monocirc::cli {

namespace {

namespace fs = std::filesystem;

// Writes to -o when given, else to stdout.
void emit(const Json& doc, const std::string& output, std::ostream& out) {
    if (output.empty()) {
        out << dump_json(doc);
    } else {
        write_json_file(output, doc);
    }
}

fs::path parent_of(const std::string& file) {
    const fs::path p = fs::path(file).parent_path();
    return p.empty() ? fs::path(".") : p;
}

Circuit load_circuit(const std::string& file) {
    try {
        return circuit_from_json(read_json_file(file));
    } catch (const FormatError& e) {
        const std::string what = e.what();
        if (what.rfind(file, 0) == 0) throw;
        throw FormatError(file + ": " + what);
    }
}

TallyOracle load_tally_oracle(const std::string& file) {
    return tally_oracle_from_json(read_json_file(file), parent_of(file));
}

bitsliced::Isa parse_isa(const std::string& name) {
    if (name == "auto") return bitsliced::best_isa();
    const bitsliced::Isa isa = name == "avx2" ? bitsliced::Isa::Avx2 : bitsliced::Isa::Scalar;
    if (!bitsliced::isa_supported(isa)) throw Error("--isa " + name + " is not supported on this machine");
    return isa;
}

struct Options {
    // compile
    std::string machine_file, construction, descriptor_file, word, output;
    std::optional<std::size_t> n;
    // eval / support / gadget / dualrail
    std::string circuit_file, tally_file, polarity;
    // reduce
    std::string spec_file;
    // verify
    std::string suite = "all", report_file, isa = "auto";
    std::size_t max_n = 6, jobs = 1;
    std::uint64_t seed = kDefaultSeed;
    bool timing = false;
    // witness
    std::string kind;
    std::size_t witness_n = 2;
};

int do_compile(const Options& o, std::ostream& out) {
    CircuitFamily family = [&] {
        if (!o.descriptor_file.empty()) {
            return family_from_descriptor(read_json_file(o.descriptor_file), parent_of(o.descriptor_file));
        }
        if (o.machine_file.empty() || o.construction.empty()) {
            throw FormatError("compile needs --descriptor or both --machine and --construction");
        }
        return family_for_construction(o.construction, load_machine(o.machine_file));
    }();
    Circuit circuit;
    if (family.mode() == FamilyMode::Uniform) {
        if (!o.n) throw FormatError(family.construction() + " is uniform and needs --n");
        circuit = family.for_length(*o.n);
    } else {
        if (o.n) throw FormatError(family.construction() + " is semi-uniform and takes --word, not --n");
        require_binary_word(o.word);
        circuit = family.for_word(o.word);
    }
    emit(circuit_to_json(circuit), o.output, out);
    return kExitOk;
}

int do_eval(const Options& o, std::ostream& out) {
    const Circuit circuit = load_circuit(o.circuit_file);
    TallyPredicate oracle;
    if (!o.tally_file.empty()) oracle = load_tally_oracle(o.tally_file).predicate();
    out << (evaluate(circuit, o.word, oracle) ? "1" : "0") << "\n";
    return kExitOk;
}

int do_support(const Options& o, std::ostream& out) {
    const auto p = polarity_from_string(o.polarity);
    if (!p) throw FormatError("--polarity must be or/and");
    out << dump_json(support_to_json(support(load_circuit(o.circuit_file), *p)));
    return kExitOk;
}

int do_reduce(const Options& o, std::ostream& out) {
    const BoundReduction r = reduction_from_json(read_json_file(o.spec_file), parent_of(o.spec_file));
    require_binary_word(o.word);
    out << (apply_reduction(r.spec, o.word, r.oracle) ? "1" : "0") << "\n";
    return kExitOk;
}

int do_gadget(const Options& o, std::ostream& out) {
    const Circuit circuit = load_circuit(o.circuit_file);
    const TallyOracle oracle = load_tally_oracle(o.tally_file);
    emit(circuit_to_json(expand_tally_gadget(circuit, oracle.predicate())), o.output, out);
    return kExitOk;
}

int do_dualrail(const Options& o, std::ostream& out) {
    emit(circuit_to_json(dual_rail_compile(load_circuit(o.circuit_file), o.word)), o.output, out);
    return kExitOk;
}

int do_verify(const Options& o, std::ostream& out) {
    SuiteOptions so;
    so.max_n = o.max_n;
    so.seed = o.seed;
    so.verify.jobs = o.jobs;
    so.verify.isa = parse_isa(o.isa);
    const auto reports = run_suite(o.suite, so);

    std::size_t failures = 0;
    Json list = Json::array();
    for (const auto& r : reports) {
        failures += r.failure_count;
        list.push_back(report_to_json(r, o.timing));
        out << (r.passed() ? "PASS " : "FAIL ") << r.construction << " cases=" << r.cases
            << " failures=" << r.failure_count;
        for (const auto& [key, value] : r.metrics) out << " " << key << "=" << value;
        if (o.timing) out << " ms=" << r.elapsed_ms;
        out << "\n";
        for (const auto& f : r.failures) {
            out << "  counterexample " << f.input << ": expected " << f.expected << ", got " << f.actual;
            if (!f.detail.empty()) out << " (" << f.detail << ")";
            out << "\n";
        }
    }
    out << "suite=" << o.suite << " max_n=" << o.max_n << " seed=" << o.seed << " reports=" << reports.size()
        << " failures=" << failures << "\n";
    if (!o.report_file.empty()) {
        Json doc;
        doc["suite"] = o.suite;
        doc["max_n"] = o.max_n;
        doc["seed"] = o.seed;
        doc["failures"] = failures;
        doc["passed"] = failures == 0;
        doc["reports"] = std::move(list);
        write_json_file(o.report_file, doc);
    }
    return failures == 0 ? kExitOk : kExitVerificationFailed;
}

int do_witness(const Options& o, std::ostream& out) {
    const auto kind = witness_kind_from_string(o.kind);
    if (!kind) throw FormatError("--kind must be or_vs_and, parity_vs_monotone or uniform_vs_semiuniform");
    const SeparationWitness w = separation_witness(*kind, o.witness_n);
    if (!o.output.empty()) write_json_file(o.output, witness_to_json(w));
    out << "witness " << to_string(w.kind) << " n=" << w.n << ": " << w.function << "\n";
    out << "table (row r = word with x_j = bit j of r): " << w.table.to_string() << "\n";
    for (std::size_t r = 0; r < (std::size_t{1} << w.n); ++r) {
        out << "  " << word_of_row(r, w.n) << " -> " << w.table.at(r) << "\n";
    }
    for (const auto& c : w.checks) out << (c.holds ? "  [ok] " : "  [FAILED] ") << c.claim << "\n";
    const bool replayed = replay_witness(w);
    out << "replay: " << (replayed ? "reproduced" : "differs") << "\n";
    return w.verified() && replayed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"monocirc: logspace machines, monotone circuit families, reductions and their exhaustive checks"};
    app.require_subcommand(1, 1);
    Options o;

    auto* compile = app.add_subcommand("compile", "compile a machine into a circuit");
    compile->add_option("--machine", o.machine_file, "machine JSON file")->check(CLI::ExistingFile);
    compile->add_option("--construction", o.construction,
                        "nl_to_or, nl_to_and, tally_to_or, tally_to_and, semiuniform_or, semiuniform_and");
    compile->add_option("--descriptor", o.descriptor_file, "construction descriptor JSON")->check(CLI::ExistingFile);
    compile->add_option("--n", o.n, "input length (uniform constructions)");
    compile->add_option("--word", o.word, "input word (semi-uniform constructions)");
    compile->add_option("-o,--output", o.output, "output circuit file (default stdout)");

    auto* eval = app.add_subcommand("eval", "evaluate a circuit on a word");
    eval->add_option("--circuit", o.circuit_file)->required()->check(CLI::ExistingFile);
    eval->add_option("--word", o.word, "0/1 word, leftmost character is input 0")->required();
    eval->add_option("--tally-oracle", o.tally_file, "tally oracle JSON")->check(CLI::ExistingFile);

    auto* sup = app.add_subcommand("support", "reachable inputs and forcing constant of an Or/And circuit");
    sup->add_option("--circuit", o.circuit_file)->required()->check(CLI::ExistingFile);
    sup->add_option("--polarity", o.polarity)->required()->check(CLI::IsMember({"or", "and"}));

    auto* reduce = app.add_subcommand("reduce", "apply a reduction descriptor to a word");
    reduce->add_option("--spec", o.spec_file)->required()->check(CLI::ExistingFile);
    reduce->add_option("--word", o.word)->required();

    auto* gadget = app.add_subcommand("gadget", "replace tally oracle gates by And/Or/Not gadgets");
    gadget->add_option("--circuit", o.circuit_file)->required()->check(CLI::ExistingFile);
    gadget->add_option("--tally", o.tally_file, "tally oracle JSON")->required()->check(CLI::ExistingFile);
    gadget->add_option("-o,--output", o.output);

    auto* dualrail = app.add_subcommand("dualrail", "Not-free input-free simulation of a circuit on a word");
    dualrail->add_option("--circuit", o.circuit_file)->required()->check(CLI::ExistingFile);
    dualrail->add_option("--word", o.word)->required();
    dualrail->add_option("-o,--output", o.output);

    auto* verify = app.add_subcommand("verify", "run exhaustive verification suites");
    verify->add_option("--suite", o.suite)->check(CLI::IsMember(suite_names()))->capture_default_str();
    verify->add_option("--max-n", o.max_n, "largest word length checked")->check(CLI::Range(0, 10))->capture_default_str();
    verify->add_option("--report", o.report_file, "JSON report file");
    verify->add_option("--seed", o.seed, "seed of the random suites")->capture_default_str();
    verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
    verify->add_option("--isa", o.isa, "evaluation kernel")->check(CLI::IsMember({"auto", "scalar", "avx2"}))
        ->capture_default_str();
    verify->add_flag("--timing", o.timing, "include elapsed times (makes output run-dependent)");

    auto* witness = app.add_subcommand("witness", "separation witness with its checks");
    witness->add_option("--kind", o.kind)
        ->required()
        ->check(CLI::IsMember({"or_vs_and", "parity_vs_monotone", "uniform_vs_semiuniform"}));
    witness->add_option("--n", o.witness_n)->required()->check(CLI::Range(2, 5));
    witness->add_option("-o,--output", o.output, "witness JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compile) return do_compile(o, out);
        if (*eval) return do_eval(o, out);
        if (*sup) return do_support(o, out);
        if (*reduce) return do_reduce(o, out);
        if (*gadget) return do_gadget(o, out);
        if (*dualrail) return do_dualrail(o, out);
        if (*verify) return do_verify(o, out);
        if (*witness) return do_witness(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace monocirc::cli
