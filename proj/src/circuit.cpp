#include "monocirc/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <utility>

#include "monocirc/error.hpp"

namespace monocirc {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 7> kGateKindNames{{
    {GateKind::Input, "input"},
    {GateKind::Const0, "const0"},
    {GateKind::Const1, "const1"},
    {GateKind::Or, "or"},
    {GateKind::And, "and"},
    {GateKind::Not, "not"},
    {GateKind::TallyOracle, "tally_oracle"},
}};

bool is_source(GateKind kind) {
    return kind == GateKind::Input || kind == GateKind::Const0 || kind == GateKind::Const1;
}

// Iterative Tarjan over the wire graph restricted to in-range wires. Returns
// the strongly connected components that contain a cycle.
std::vector<std::vector<GateId>> cyclic_components(const Circuit& c) {
    const std::size_t n = c.gates().size();
    // Successor lists in wire direction (producer -> consumer).
    std::vector<std::vector<GateId>> succ(n);
    std::vector<bool> self_loop(n, false);
    for (GateId g = 0; g < n; ++g) {
        for (GateId in : c.gate(g).inputs) {
            if (in >= n) continue;
            succ[in].push_back(g);
            if (in == g) self_loop[g] = true;
        }
    }

    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<GateId> stack;
    std::vector<std::vector<GateId>> result;
    std::size_t next_index = 0;

    struct Frame {
        GateId v;
        std::size_t child;
    };
    for (GateId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < succ[f.v].size()) {
                GateId w = succ[f.v][f.child++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            GateId v = f.v;
            frames.pop_back();
            if (!frames.empty()) {
                GateId parent = frames.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
            if (low[v] != index[v]) continue;
            std::vector<GateId> component;
            GateId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
            } while (w != v);
            if (component.size() > 1 || self_loop[v]) {
                std::sort(component.begin(), component.end());
                result.push_back(std::move(component));
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::string bits_of(const std::vector<bool>& values) {
    std::string s;
    for (bool b : values) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

std::string_view to_string(GateKind kind) {
    for (const auto& [k, name] : kGateKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kGateKindNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Polarity p) { return p == Polarity::Or ? "or" : "and"; }

std::optional<Polarity> polarity_from_string(std::string_view name) {
    if (name == "or") return Polarity::Or;
    if (name == "and") return Polarity::And;
    return std::nullopt;
}

std::size_t Circuit::size() const {
    std::size_t wires = 0;
    for (const Gate& g : gates_) wires += g.inputs.size();
    return wires;
}

std::size_t Circuit::depth() const {
    const auto order = topological_gate_order(*this);
    std::vector<std::size_t> level(gates_.size(), 0);
    for (GateId g : order) {
        for (GateId in : gates_[g].inputs) level[g] = std::max(level[g], level[in] + 1);
    }
    return level.at(output_);
}

GateId CircuitBuilder::add_input(std::size_t index) {
    gates_.push_back(Gate{GateKind::Input, index, {}});
    return static_cast<GateId>(gates_.size() - 1);
}

GateId CircuitBuilder::add_const(bool value) {
    gates_.push_back(Gate{value ? GateKind::Const1 : GateKind::Const0, 0, {}});
    return static_cast<GateId>(gates_.size() - 1);
}

GateId CircuitBuilder::add_gate(GateKind kind, std::vector<GateId> inputs) {
    gates_.push_back(Gate{kind, 0, std::move(inputs)});
    return static_cast<GateId>(gates_.size() - 1);
}

void CircuitBuilder::add_wire(GateId from, GateId to) { gates_.at(to).inputs.push_back(from); }

Circuit CircuitBuilder::build(std::size_t n_inputs, GateId output) && {
    return Circuit(n_inputs, std::move(gates_), output);
}

std::vector<Violation> validate(const Circuit& circuit) {
    std::vector<Violation> out;
    const std::size_t n = circuit.gates().size();
    if (circuit.output() >= n) {
        out.push_back({circuit.output(), "output gate does not exist"});
    }
    for (GateId id = 0; id < n; ++id) {
        const Gate& g = circuit.gate(id);
        const std::size_t fan_in = g.inputs.size();
        switch (g.kind) {
            case GateKind::Input:
                if (g.index >= circuit.n_inputs()) {
                    out.push_back({id, "input index " + std::to_string(g.index) + " is not below n_inputs=" +
                                           std::to_string(circuit.n_inputs())});
                }
                [[fallthrough]];
            case GateKind::Const0:
            case GateKind::Const1:
                if (fan_in != 0) {
                    out.push_back({id, std::string(to_string(g.kind)) + " gate must have no inputs, has " +
                                           std::to_string(fan_in)});
                }
                break;
            case GateKind::Not:
                if (fan_in != 1) {
                    out.push_back({id, "not gate must have exactly one input, has " + std::to_string(fan_in)});
                }
                break;
            case GateKind::Or:
            case GateKind::And:
            case GateKind::TallyOracle:
                if (fan_in == 0) {
                    out.push_back({id, std::string(to_string(g.kind)) + " gate must have at least one input"});
                }
                break;
        }
        for (GateId in : g.inputs) {
            if (in >= n) out.push_back({id, "wire from unknown gate " + std::to_string(in)});
        }
    }
    for (const auto& component : cyclic_components(circuit)) {
        std::ostringstream reason;
        reason << "gate lies on a cycle through gates {";
        for (std::size_t i = 0; i < component.size(); ++i) reason << (i ? "," : "") << component[i];
        reason << "}";
        out.push_back({component.front(), reason.str()});
    }
    std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) { return a.gate < b.gate; });
    return out;
}

void require_valid(const Circuit& circuit) {
    const auto violations = validate(circuit);
    if (!violations.empty()) {
        throw CircuitError("invalid circuit: gate " + std::to_string(violations.front().gate) + ": " +
                           violations.front().reason);
    }
}

std::vector<GateId> topological_gate_order(const Circuit& circuit) {
    auto order = topological_order(wire_graph(circuit));
    if (!order) throw CircuitError("circuit has a cycle");
    return std::move(*order);
}

Digraph wire_graph(const Circuit& circuit) {
    const std::size_t n = circuit.gates().size();
    Digraph g(n);
    for (GateId id = 0; id < n; ++id) {
        for (GateId in : circuit.gate(id).inputs) {
            if (in >= n) throw CircuitError("wire from unknown gate " + std::to_string(in));
            g.add_edge(in, id);
        }
    }
    return g;
}

void require_binary_word(std::string_view word) {
    for (char ch : word) {
        if (ch != '0' && ch != '1') {
            throw CircuitError("word '" + std::string(word) + "' is not a 0/1 string");
        }
    }
}

bool evaluate(const Circuit& circuit, std::string_view word, const TallyPredicate& oracle) {
    require_valid(circuit);
    require_binary_word(word);
    if (word.size() != circuit.n_inputs()) {
        throw CircuitError("word length " + std::to_string(word.size()) + " does not match n_inputs=" +
                           std::to_string(circuit.n_inputs()));
    }
    const auto& gates = circuit.gates();
    const bool needs_oracle =
        std::any_of(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::TallyOracle; });
    if (needs_oracle && !oracle) throw CircuitError("circuit has tally oracle gates but no oracle was supplied");

    std::vector<bool> value(gates.size(), false);
    for (GateId id : topological_gate_order(circuit)) {
        const Gate& g = gates[id];
        switch (g.kind) {
            case GateKind::Input: value[id] = word[g.index] == '1'; break;
            case GateKind::Const0: value[id] = false; break;
            case GateKind::Const1: value[id] = true; break;
            case GateKind::Not: value[id] = !value[g.inputs.front()]; break;
            case GateKind::Or:
                value[id] = std::any_of(g.inputs.begin(), g.inputs.end(), [&](GateId in) { return value[in]; });
                break;
            case GateKind::And:
                value[id] = std::all_of(g.inputs.begin(), g.inputs.end(), [&](GateId in) { return value[in]; });
                break;
            case GateKind::TallyOracle: {
                std::vector<bool> wires;
                wires.reserve(g.inputs.size());
                for (GateId in : g.inputs) wires.push_back(value[in]);
                if (!std::is_sorted(wires.begin(), wires.end())) {
                    throw CircuitError("tally oracle gate " + std::to_string(id) + ": inputs " + bits_of(wires) +
                                       " violate the 0*1* promise");
                }
                const auto ones = static_cast<std::size_t>(std::count(wires.begin(), wires.end(), true));
                value[id] = oracle(ones);
                break;
            }
        }
    }
    return value[circuit.output()];
}

bool has_single_polarity(const Circuit& circuit, Polarity polarity) {
    const GateKind allowed = polarity == Polarity::Or ? GateKind::Or : GateKind::And;
    return std::all_of(circuit.gates().begin(), circuit.gates().end(),
                       [&](const Gate& g) { return is_source(g.kind) || g.kind == allowed; });
}

Support support(const Circuit& circuit, Polarity polarity) {
    require_valid(circuit);
    if (!has_single_polarity(circuit, polarity)) {
        throw CircuitError("support: circuit is not a pure " + std::string(to_string(polarity)) + " circuit");
    }
    const GateKind forcing = polarity == Polarity::Or ? GateKind::Const1 : GateKind::Const0;
    Support result;
    result.polarity = polarity;

    std::vector<bool> seen(circuit.gates().size(), false);
    std::vector<GateId> frontier{circuit.output()};
    seen[circuit.output()] = true;
    std::set<std::size_t> inputs;
    while (!frontier.empty()) {
        GateId id = frontier.back();
        frontier.pop_back();
        const Gate& g = circuit.gate(id);
        if (g.kind == GateKind::Input) inputs.insert(g.index);
        if (g.kind == forcing) result.forcing_constant = true;
        for (GateId in : g.inputs) {
            if (!seen[in]) {
                seen[in] = true;
                frontier.push_back(in);
            }
        }
    }
    result.reachable_inputs.assign(inputs.begin(), inputs.end());
    return result;
}

bool semantic_eval(const Support& support, std::string_view word) {
    require_binary_word(word);
    for (std::size_t j : support.reachable_inputs) {
        if (j >= word.size()) {
            throw CircuitError("support index " + std::to_string(j) + " out of range for word of length " +
                               std::to_string(word.size()));
        }
    }
    auto is_set = [&](std::size_t j) { return word[j] == '1'; };
    const auto& s = support.reachable_inputs;
    if (support.polarity == Polarity::Or) {
        return support.forcing_constant || std::any_of(s.begin(), s.end(), is_set);
    }
    return !support.forcing_constant && std::all_of(s.begin(), s.end(), is_set);
}

std::string TruthTable::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < (std::size_t{1} << arity); ++r) s.push_back(at(r) ? '1' : '0');
    return s;
}

std::string word_of_row(std::size_t row, std::size_t n) {
    std::string w(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
        if ((row >> j) & 1u) w[j] = '1';
    }
    return w;
}

TruthTable truth_table_of(std::size_t arity, const std::function<bool(std::string_view)>& fn) {
    if (arity > TruthTable::kMaxArity) throw CircuitError("truth tables support at most 5 variables");
    TruthTable t{arity, 0};
    for (std::size_t r = 0; r < (std::size_t{1} << arity); ++r) {
        if (fn(word_of_row(r, arity))) t.bits |= std::uint32_t{1} << r;
    }
    return t;
}

TruthTable constant_table(std::size_t arity, bool value) {
    return truth_table_of(arity, [value](std::string_view) { return value; });
}

TruthTable or_table(std::size_t arity, const std::vector<std::size_t>& vars) {
    return truth_table_of(arity, [&](std::string_view w) {
        return std::any_of(vars.begin(), vars.end(), [&](std::size_t j) { return w.at(j) == '1'; });
    });
}

TruthTable and_table(std::size_t arity, const std::vector<std::size_t>& vars) {
    return truth_table_of(arity, [&](std::string_view w) {
        return std::all_of(vars.begin(), vars.end(), [&](std::size_t j) { return w.at(j) == '1'; });
    });
}

TruthTable parity_table(std::size_t arity) {
    return truth_table_of(arity, [](std::string_view w) { return std::count(w.begin(), w.end(), '1') % 2 == 1; });
}

std::vector<TruthTable> enumerate_monotone_functions(std::size_t n, Polarity polarity) {
    if (n > TruthTable::kMaxArity) {
        throw CircuitError("enumerate_monotone_functions: n=" + std::to_string(n) + " exceeds 5");
    }
    std::set<TruthTable> tables{constant_table(n, false), constant_table(n, true)};
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> vars;
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1u) vars.push_back(j);
        }
        tables.insert(polarity == Polarity::Or ? or_table(n, vars) : and_table(n, vars));
    }
    return {tables.begin(), tables.end()};
}

}  // namespace monocirc
