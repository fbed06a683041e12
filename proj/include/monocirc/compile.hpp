#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "monocirc/circuit.hpp"
#include "monocirc/machine.hpp"

namespace monocirc {

enum class FamilyMode { Uniform, SemiUniform };

/// What a family's circuits are supposed to decide, used by the verifier to
/// pick its reference.
enum class FamilySemantics {
    LengthLanguage,    // generator(n) decides whether the machine accepts 1^n
    TallyDisjunction,  // word r accepted iff some set bit r_{k-1} marks 1^k in T
    TallyConjunction,  // word r accepted iff every clear bit r_{k-1} marks 1^k in T
    Word,              // generator(w) decides whether the machine accepts w
    Unspecified,
};

/// A named construction and its deterministic generator.
class CircuitFamily {
  public:
    using LengthGenerator = std::function<Circuit(std::size_t)>;
    using WordGenerator = std::function<Circuit(std::string_view)>;

    static CircuitFamily uniform(std::string construction, std::string source, std::optional<Polarity> polarity,
                                 FamilySemantics semantics, LengthGenerator generator);
    static CircuitFamily semi_uniform(std::string construction, std::string source,
                                      std::optional<Polarity> polarity, WordGenerator generator);

    const std::string& construction() const { return construction_; }
    const std::string& source() const { return source_; }
    FamilyMode mode() const { return mode_; }
    /// nullopt for families mixing gate types.
    std::optional<Polarity> polarity() const { return polarity_; }
    FamilySemantics semantics() const { return semantics_; }

    /// Uniform families only: the circuit for input length n, with n inputs.
    Circuit for_length(std::size_t n) const;
    /// Semi-uniform families only: an input-free circuit for w.
    Circuit for_word(std::string_view word) const;

  private:
    std::string construction_;
    std::string source_;
    FamilyMode mode_ = FamilyMode::Uniform;
    std::optional<Polarity> polarity_;
    FamilySemantics semantics_ = FamilySemantics::Unspecified;
    LengthGenerator length_generator_;
    WordGenerator word_generator_;
};

/// Length-language machine -> uniform Or (existential machine) or And
/// (universal machine) family over configuration graphs of input 1^n.
CircuitFamily compile_nl_to_monotone_family(const TuringMachine& machine, Polarity polarity);

/// Tally machine -> uniform family whose circuit for m holds the configuration
/// graphs of 1^1..1^m, with the start configuration of 1^k as input k-1.
CircuitFamily compile_tally_to_monotone_family(const TuringMachine& machine, Polarity polarity);

/// Input-free Or/And circuit over the configuration graph of `word`.
Circuit compile_semiuniform(const TuringMachine& machine, std::string_view word, Polarity polarity);
CircuitFamily semiuniform_family(const TuringMachine& machine, Polarity polarity);

/// Not-free input-free circuit computing evaluate(circuit, word) on paired
/// rails (value, complement).
Circuit dual_rail_compile(const Circuit& circuit, std::string_view word);

/// Replaces every TallyOracle gate by an And/Or/Not gadget with the oracle's
/// answers baked in as constants.
Circuit expand_tally_gadget(const Circuit& circuit, const TallyPredicate& oracle);

}  // namespace monocirc
