#include "monocirc/compile.hpp"

#include <map>
#include <string>

#include "monocirc/error.hpp"

namespace monocirc {

namespace {

void require_matching_acceptance(const TuringMachine& m, Polarity polarity) {
    const Acceptance needed = polarity == Polarity::Or ? Acceptance::Existential : Acceptance::Universal;
    if (m.polarity != needed) {
        throw CompileError(std::string(to_string(polarity)) + " circuits need a " + std::string(to_string(needed)) +
                           " machine, " + m.name + " is " + std::string(to_string(m.polarity)));
    }
}

GateKind compute_kind(Polarity p) { return p == Polarity::Or ? GateKind::Or : GateKind::And; }

// The constant that is the identity of the computation gate: 0 for Or, 1 for And.
bool neutral_value(Polarity p) { return p == Polarity::And; }

// Turns a configuration graph into gates: the start vertex becomes
// `start_gate`, every other vertex a computation gate fed by `neutral`, every
// edge a wire. Returns the gates of the accept (Or) or reject (And) vertices.
std::vector<GateId> append_graph(CircuitBuilder& b, const ConfigGraph& g, Polarity polarity, GateId start_gate,
                                 GateId neutral) {
    if (!topological_order(g.edges)) {
        throw CompileError("configuration graph on input '" + g.input + "' has a cycle");
    }
    std::vector<GateId> gate_of(g.vertices.size());
    for (VertexId v = 0; v < g.vertices.size(); ++v) {
        gate_of[v] = v == g.start ? start_gate : b.add_gate(compute_kind(polarity), {neutral});
    }
    for (VertexId v = 0; v < g.vertices.size(); ++v) {
        for (VertexId s : g.edges.successors(v)) b.add_wire(gate_of[v], gate_of[s]);
    }
    const auto& targets = polarity == Polarity::Or ? g.accept_set : g.reject_set;
    std::vector<GateId> out;
    out.reserve(targets.size());
    for (VertexId t : targets) out.push_back(gate_of[t]);
    return out;
}

Circuit graph_circuit(const ConfigGraph& g, Polarity polarity, std::size_t dummy_inputs) {
    CircuitBuilder b;
    for (std::size_t j = 0; j < dummy_inputs; ++j) b.add_input(j);
    const GateId neutral = b.add_const(neutral_value(polarity));
    const GateId start = b.add_const(!neutral_value(polarity));
    const auto targets = append_graph(b, g, polarity, start, neutral);
    const GateId output = b.add_gate(compute_kind(polarity), {neutral});
    for (GateId t : targets) b.add_wire(t, output);
    return std::move(b).build(dummy_inputs, output);
}

std::string construction_name(std::string_view stem, Polarity p) {
    return std::string(stem) + "_" + std::string(to_string(p));
}

}  // namespace

CircuitFamily CircuitFamily::uniform(std::string construction, std::string source, std::optional<Polarity> polarity,
                                     FamilySemantics semantics, LengthGenerator generator) {
    CircuitFamily f;
    f.construction_ = std::move(construction);
    f.source_ = std::move(source);
    f.mode_ = FamilyMode::Uniform;
    f.polarity_ = polarity;
    f.semantics_ = semantics;
    f.length_generator_ = std::move(generator);
    return f;
}

CircuitFamily CircuitFamily::semi_uniform(std::string construction, std::string source,
                                          std::optional<Polarity> polarity, WordGenerator generator) {
    CircuitFamily f;
    f.construction_ = std::move(construction);
    f.source_ = std::move(source);
    f.mode_ = FamilyMode::SemiUniform;
    f.polarity_ = polarity;
    f.semantics_ = FamilySemantics::Word;
    f.word_generator_ = std::move(generator);
    return f;
}

Circuit CircuitFamily::for_length(std::size_t n) const {
    if (mode_ != FamilyMode::Uniform) throw CompileError(construction_ + " is semi-uniform; it takes a word");
    return length_generator_(n);
}

Circuit CircuitFamily::for_word(std::string_view word) const {
    if (mode_ != FamilyMode::SemiUniform) throw CompileError(construction_ + " is uniform; it takes a length");
    return word_generator_(word);
}

CircuitFamily compile_nl_to_monotone_family(const TuringMachine& machine, Polarity polarity) {
    validate_machine(machine);
    require_matching_acceptance(machine, polarity);
    return CircuitFamily::uniform(construction_name("nl_to", polarity), machine.name, polarity,
                                  FamilySemantics::LengthLanguage, [machine, polarity](std::size_t n) {
                                      return graph_circuit(build_config_graph_for_length(machine, n), polarity, n);
                                  });
}

CircuitFamily compile_tally_to_monotone_family(const TuringMachine& machine, Polarity polarity) {
    validate_machine(machine);
    require_matching_acceptance(machine, polarity);
    if (machine.input_alphabet != "1") throw CompileError(machine.name + " is not a tally machine");
    const FamilySemantics semantics =
        polarity == Polarity::Or ? FamilySemantics::TallyDisjunction : FamilySemantics::TallyConjunction;
    return CircuitFamily::uniform(
        construction_name("tally_to", polarity), machine.name, polarity, semantics, [machine, polarity](std::size_t m) {
            CircuitBuilder b;
            if (m == 0) {
                // Empty disjunction is 0, empty conjunction is 1.
                const GateId only = b.add_const(neutral_value(polarity));
                return std::move(b).build(0, only);
            }
            for (std::size_t k = 1; k <= m; ++k) b.add_input(k - 1);
            const GateId neutral = b.add_const(neutral_value(polarity));
            std::vector<GateId> per_length;
            for (std::size_t k = 1; k <= m; ++k) {
                const auto graph = build_config_graph_for_length(machine, k);
                const auto targets = append_graph(b, graph, polarity, static_cast<GateId>(k - 1), neutral);
                const GateId collector = b.add_gate(compute_kind(polarity), {neutral});
                for (GateId t : targets) b.add_wire(t, collector);
                per_length.push_back(collector);
            }
            const GateId output = b.add_gate(compute_kind(polarity), {neutral});
            for (GateId o : per_length) b.add_wire(o, output);
            return std::move(b).build(m, output);
        });
}

Circuit compile_semiuniform(const TuringMachine& machine, std::string_view word, Polarity polarity) {
    validate_machine(machine);
    require_matching_acceptance(machine, polarity);
    return graph_circuit(build_config_graph(machine, word), polarity, 0);
}

CircuitFamily semiuniform_family(const TuringMachine& machine, Polarity polarity) {
    validate_machine(machine);
    require_matching_acceptance(machine, polarity);
    return CircuitFamily::semi_uniform(construction_name("semiuniform", polarity), machine.name, polarity,
                                       [machine, polarity](std::string_view w) {
                                           return compile_semiuniform(machine, w, polarity);
                                       });
}

Circuit dual_rail_compile(const Circuit& circuit, std::string_view word) {
    require_valid(circuit);
    require_binary_word(word);
    if (word.size() != circuit.n_inputs()) {
        throw CompileError("dual rail: word length " + std::to_string(word.size()) + " does not match n_inputs=" +
                           std::to_string(circuit.n_inputs()));
    }
    CircuitBuilder b;
    const GateId zero = b.add_const(false);
    const GateId one = b.add_const(true);
    const std::size_t n = circuit.gates().size();
    std::vector<GateId> pos(n), neg(n);
    for (GateId id : topological_gate_order(circuit)) {
        const Gate& g = circuit.gate(id);
        switch (g.kind) {
            case GateKind::Input: {
                const bool bit = word[g.index] == '1';
                pos[id] = bit ? one : zero;
                neg[id] = bit ? zero : one;
                break;
            }
            case GateKind::Const0: pos[id] = zero; neg[id] = one; break;
            case GateKind::Const1: pos[id] = one; neg[id] = zero; break;
            case GateKind::Not:
                pos[id] = neg[g.inputs.front()];
                neg[id] = pos[g.inputs.front()];
                break;
            case GateKind::And:
            case GateKind::Or: {
                std::vector<GateId> pos_in, neg_in;
                for (GateId in : g.inputs) {
                    pos_in.push_back(pos[in]);
                    neg_in.push_back(neg[in]);
                }
                const bool is_and = g.kind == GateKind::And;
                pos[id] = b.add_gate(is_and ? GateKind::And : GateKind::Or, std::move(pos_in));
                neg[id] = b.add_gate(is_and ? GateKind::Or : GateKind::And, std::move(neg_in));
                break;
            }
            case GateKind::TallyOracle:
                throw CompileError("dual rail: gate " + std::to_string(id) + " is a tally oracle gate");
        }
    }
    return std::move(b).build(0, pos[circuit.output()]);
}

Circuit expand_tally_gadget(const Circuit& circuit, const TallyPredicate& oracle) {
    require_valid(circuit);
    CircuitBuilder b;
    std::optional<GateId> consts[2];
    auto constant = [&](bool v) {
        if (!consts[v]) consts[v] = b.add_const(v);
        return *consts[v];
    };
    std::vector<GateId> mapped(circuit.gates().size());
    for (GateId id : topological_gate_order(circuit)) {
        const Gate& g = circuit.gate(id);
        std::vector<GateId> wires;
        for (GateId in : g.inputs) wires.push_back(mapped[in]);
        switch (g.kind) {
            case GateKind::Input: mapped[id] = b.add_input(g.index); break;
            case GateKind::Const0:
            case GateKind::Const1: mapped[id] = b.add_gate(g.kind); break;
            case GateKind::Not:
            case GateKind::Or:
            case GateKind::And: mapped[id] = b.add_gate(g.kind, std::move(wires)); break;
            case GateKind::TallyOracle: {
                if (!oracle) throw CompileError("expand_tally_gadget: circuit has oracle gates but no oracle");
                // Under the promise, "exactly i ones" is wire m-i set and wire
                // m-i-1 clear; the first does not exist for i = 0, the second
                // not for i = m.
                const std::size_t m = wires.size();
                std::map<std::size_t, GateId> negated;
                auto negation = [&](std::size_t p) {
                    auto it = negated.find(p);
                    if (it == negated.end()) it = negated.emplace(p, b.add_gate(GateKind::Not, {wires[p]})).first;
                    return it->second;
                };
                std::vector<GateId> terms;
                for (std::size_t i = 0; i <= m; ++i) {
                    std::vector<GateId> term;
                    if (i > 0) term.push_back(wires[m - i]);
                    if (i < m) term.push_back(negation(m - i - 1));
                    term.push_back(constant(oracle(i)));
                    terms.push_back(b.add_gate(GateKind::And, std::move(term)));
                }
                mapped[id] = b.add_gate(GateKind::Or, std::move(terms));
                break;
            }
        }
    }
    return std::move(b).build(circuit.n_inputs(), mapped[circuit.output()]);
}

}  // namespace monocirc
