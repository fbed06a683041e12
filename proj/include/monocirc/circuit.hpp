#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monocirc/graph.hpp"

// Words meet circuits under one convention everywhere in this library:
// character 0 of a word (the leftmost) is the value of Input(0).

namespace monocirc {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Input, Const0, Const1, Or, And, Not, TallyOracle };

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);

struct Gate {
    GateKind kind = GateKind::Const0;
    /// Input variable index; meaningful only for GateKind::Input.
    std::size_t index = 0;
    /// Ordered wires. For TallyOracle gates, position p carries bit p of the
    /// promise string 0^{m-i}1^i.
    std::vector<GateId> inputs;

    bool operator==(const Gate&) const = default;
};

enum class Polarity : std::uint8_t { Or, And };

std::string_view to_string(Polarity p);
std::optional<Polarity> polarity_from_string(std::string_view name);

/// Immutable gate DAG with a single designated output. Construction does not
/// validate; call validate() or rely on the operations, which reject invalid
/// circuits.
class Circuit {
  public:
    Circuit() = default;
    Circuit(std::size_t n_inputs, std::vector<Gate> gates, GateId output)
        : n_inputs_(n_inputs), gates_(std::move(gates)), output_(output) {}

    std::size_t n_inputs() const { return n_inputs_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId id) const { return gates_.at(id); }
    GateId output() const { return output_; }

    /// Number of wires (sum of fan-ins, counting multiplicity).
    std::size_t size() const;
    /// Longest path, in wires, from any source gate to the output.
    std::size_t depth() const;

    bool operator==(const Circuit&) const = default;

  private:
    std::size_t n_inputs_ = 0;
    std::vector<Gate> gates_;
    GateId output_ = 0;
};

/// Incremental construction. Wires may be appended to a gate after creation,
/// which the configuration-graph compilers need.
class CircuitBuilder {
  public:
    GateId add_input(std::size_t index);
    GateId add_const(bool value);
    GateId add_gate(GateKind kind, std::vector<GateId> inputs = {});
    void add_wire(GateId from, GateId to);

    std::size_t gate_count() const { return gates_.size(); }
    const Gate& gate(GateId id) const { return gates_.at(id); }

    Circuit build(std::size_t n_inputs, GateId output) &&;

  private:
    std::vector<Gate> gates_;
};

struct Violation {
    GateId gate = 0;
    std::string reason;

    bool operator==(const Violation&) const = default;
};

/// Every structural violation, each tied to a gate id. Empty means valid.
std::vector<Violation> validate(const Circuit& circuit);

/// Throws CircuitError carrying the first violation when the circuit is invalid.
void require_valid(const Circuit& circuit);

/// Gates in an order where every gate follows all of its inputs.
std::vector<GateId> topological_gate_order(const Circuit& circuit);

/// Wire graph: an edge g -> h for every wire from g into h.
Digraph wire_graph(const Circuit& circuit);

/// Predicate answering membership of 1^i in a tally language.
using TallyPredicate = std::function<bool(std::size_t)>;

/// Checks that a word is a 0/1 string; throws CircuitError otherwise.
void require_binary_word(std::string_view word);

/// Inductive evaluation of the output gate. `oracle` is required iff the
/// circuit contains TallyOracle gates.
bool evaluate(const Circuit& circuit, std::string_view word, const TallyPredicate& oracle = {});

/// True when every computation gate is an Or (resp. And) gate.
bool has_single_polarity(const Circuit& circuit, Polarity polarity);

struct Support {
    Polarity polarity = Polarity::Or;
    /// Sorted input indices with a directed path to the output.
    std::vector<std::size_t> reachable_inputs;
    /// Or: a Const1 reaches the output. And: a Const0 reaches the output.
    bool forcing_constant = false;

    bool operator==(const Support&) const = default;
};

Support support(const Circuit& circuit, Polarity polarity);

bool semantic_eval(const Support& support, std::string_view word);

/// Truth table on at most 5 variables. Bit r of `bits` is the value on the word
/// whose character j is bit j of r.
struct TruthTable {
    std::size_t arity = 0;
    std::uint32_t bits = 0;

    static constexpr std::size_t kMaxArity = 5;

    bool at(std::size_t row) const { return (bits >> row) & 1u; }
    /// Row-ordered 0/1 string, row 0 first.
    std::string to_string() const;

    auto operator<=>(const TruthTable&) const = default;
};

TruthTable truth_table_of(std::size_t arity, const std::function<bool(std::string_view)>& fn);
TruthTable constant_table(std::size_t arity, bool value);
TruthTable or_table(std::size_t arity, const std::vector<std::size_t>& vars);
TruthTable and_table(std::size_t arity, const std::vector<std::size_t>& vars);
TruthTable parity_table(std::size_t arity);

/// Every truth table realizable by an Or (resp. And) circuit on n inputs:
/// both constants plus OR_S (resp. AND_S) for every non-empty S. Sorted.
std::vector<TruthTable> enumerate_monotone_functions(std::size_t n, Polarity polarity);

/// Word of length n whose character j is bit j of row.
std::string word_of_row(std::size_t row, std::size_t n);

}  // namespace monocirc
