#pragma once

// JSON forms of the artifacts exchanged by the CLI. Readers throw FormatError
// naming the offending field, e.g. "gates[3].kind: unknown gate kind 'xor'".
// Relative file references inside a document resolve against `base_dir`.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "monocirc/circuit.hpp"
#include "monocirc/compile.hpp"
#include "monocirc/machine.hpp"
#include "monocirc/reduce.hpp"
#include "monocirc/verify.hpp"

namespace monocirc {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);
std::string dump_json(const Json& doc);

/// {n_inputs, output, gates: [{id, kind, index?, inputs}]}
Json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& doc);

/// {name, states, start, accept, reject, polarity, input_alphabet,
///  work_alphabet, space_bound: {c, d}, transitions: [{from, in, read, to,
///  write, din, dwork}]}
Json machine_to_json(const TuringMachine& machine);
TuringMachine machine_from_json(const Json& doc);
TuringMachine load_machine(const std::filesystem::path& path);

Json support_to_json(const Support& support);

/// {construction, machine_file, polarity}; the construction is one of
/// nl_to_or, nl_to_and, tally_to_or, tally_to_and, semiuniform_or,
/// semiuniform_and.
CircuitFamily family_from_descriptor(const Json& doc, const std::filesystem::path& base_dir);
CircuitFamily family_for_construction(std::string_view construction, const TuringMachine& machine);

/// Either {"tally_set": [k, ...]}, {"tally_machine_file": path}, or a tally
/// machine document itself.
TallyOracle tally_oracle_from_json(const Json& doc, const std::filesystem::path& base_dir);

/// {kind, tau, sigma?, procedure?, oracle}. `tau` is
///   {"builtin": name, "params": {...}}                 named transform
///   {"lookup": {word: [query, ...], ...}}              table over bounded |w|
///   {"builtin": "tau_prime", "polarity", "inner": tau}
///   {"builtin": "r_map", "polarity", "inner": tau, "q": {"scale", "offset"}}
/// `oracle` is a tally oracle form or {"family": descriptor} or
/// {"mf": descriptor} (the oracle machine M_f of that family).
BoundReduction reduction_from_json(const Json& doc, const std::filesystem::path& base_dir);

Json report_to_json(const VerificationReport& report, bool timing);
Json witness_to_json(const SeparationWitness& witness);

}  // namespace monocirc
