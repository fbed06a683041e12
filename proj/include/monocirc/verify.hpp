#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monocirc/bitsliced.hpp"
#include "monocirc/circuit.hpp"
#include "monocirc/compile.hpp"
#include "monocirc/machine.hpp"
#include "monocirc/reduce.hpp"

namespace monocirc {

struct CaseFailure {
    std::string input;
    std::string expected;
    std::string actual;
    std::string detail;
    bool operator==(const CaseFailure&) const = default;
};

struct VerificationReport {
    /// Only the first failures in case order are kept; failure_count has all.
    static constexpr std::size_t kMaxRecordedFailures = 8;

    std::string construction;
    std::size_t max_n = 0;
    std::size_t cases = 0;
    std::size_t failure_count = 0;
    std::vector<CaseFailure> failures;
    /// Suite-specific figures, e.g. the depth constant of the gadget suite.
    std::vector<std::pair<std::string, std::string>> metrics;
    double elapsed_ms = 0;

    bool passed() const { return failure_count == 0; }
};

struct VerifyOptions {
    std::size_t jobs = 1;
    bitsliced::Isa isa = bitsliced::best_isa();
};

/// Words of length 0..max_n in shortlex order.
std::vector<std::string> words_up_to(std::size_t max_n);

/// Checks generator(n) on every word of every length 1..max_n (only the empty
/// word when max_n = 0) against the machine, using the family's semantics to
/// pick the reference input. Structural problems (invalid circuit, wrong input
/// count, impure polarity) count as failures too.
VerificationReport verify_family_against_machine(const CircuitFamily& family, const TuringMachine& machine,
                                                 std::size_t max_n, const VerifyOptions& options = {});

/// Checks a semi-uniform family on every word of length 0..max_n against
/// accepts(machine, w).
VerificationReport verify_semiuniform_family(const CircuitFamily& family, const TuringMachine& machine,
                                             std::size_t max_n, const VerifyOptions& options = {});

struct BoundReduction {
    ReductionSpec spec;
    Membership oracle;
    std::string oracle_name;
};

/// apply_reduction agreement on every word of length 0..max_n.
VerificationReport verify_reduction_chain(const BoundReduction& original, const BoundReduction& derived,
                                          std::size_t max_n, const VerifyOptions& options = {});

struct ChainFixture {
    std::string name;
    BoundReduction original;
    BoundReduction derived;
};

/// The links of the Or and And reduction cycles over the fixture machines.
std::vector<ChainFixture> chain_fixtures();

enum class WitnessKind { OrVsAnd, ParityVsMonotone, UniformVsSemiuniform };
std::string_view to_string(WitnessKind kind);
std::optional<WitnessKind> witness_kind_from_string(std::string_view name);

struct WitnessCheck {
    std::string claim;
    bool holds = false;
    bool operator==(const WitnessCheck&) const = default;
};

struct SeparationWitness {
    WitnessKind kind = WitnessKind::OrVsAnd;
    std::size_t n = 0;
    std::string function;  // e.g. "AND(x0,x1)"
    TruthTable table;
    std::vector<WitnessCheck> checks;
    bool verified() const;
};

/// Throws Error unless 2 <= n <= 5.
SeparationWitness separation_witness(WitnessKind kind, std::size_t n);
/// Recomputes every check from scratch; true iff they reproduce the recorded ones.
bool replay_witness(const SeparationWitness& witness);

/// Random circuit with at most max_gates gates over at most max_inputs
/// inputs whose computation gates all have the given polarity.
Circuit random_monotone_circuit(std::mt19937_64& rng, Polarity polarity, std::size_t max_inputs = 10,
                                std::size_t max_gates = 20);
/// Random And/Or/Not circuit.
Circuit random_general_circuit(std::mt19937_64& rng, std::size_t max_inputs = 8, std::size_t max_gates = 20);
/// Random digraph on 1..max_vertices vertices with a random edge density.
Digraph random_digraph(std::mt19937_64& rng, std::size_t max_vertices = 50);

inline constexpr std::uint64_t kDefaultSeed = 42;

struct SuiteOptions {
    std::size_t max_n = 6;
    std::uint64_t seed = kDefaultSeed;
    std::size_t random_circuits = 1000;
    std::size_t random_graphs = 500;
    VerifyOptions verify;
};

/// all, support, families, chains, gadget, dualrail, counting, witness, codecs.
std::vector<std::string> suite_names();
/// Runs a suite; "all" runs every other suite in the order of suite_names().
/// Throws Error for an unknown suite.
std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace monocirc
