#include "monocirc/machine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "monocirc/error.hpp"

namespace monocirc {

namespace {

struct Move {
    std::uint32_t to;
    std::uint16_t write;
    int din;
    int dwork;
};

// Transition relation indexed by (state, input symbol, work symbol).
class MoveTable {
  public:
    explicit MoveTable(const TuringMachine& m) : symbols_(m.work_alphabet.size()) {
        auto index_of = [](const std::vector<std::string>& names, const std::string& name) {
            return static_cast<std::uint32_t>(std::find(names.begin(), names.end(), name) - names.begin());
        };
        moves_.resize(m.states.size() * 3 * symbols_);
        for (const Transition& t : m.transitions) {
            const std::size_t key = slot(index_of(m.states, t.from), input_code(t.in),
                                         static_cast<std::uint16_t>(index_of(m.work_alphabet, t.read)));
            moves_[key].push_back(Move{index_of(m.states, t.to),
                                       static_cast<std::uint16_t>(index_of(m.work_alphabet, t.write)), t.din,
                                       t.dwork});
        }
    }

    const std::vector<Move>& at(std::uint32_t state, char in, std::uint16_t work) const {
        return moves_[slot(state, input_code(in), work)];
    }

  private:
    static std::size_t input_code(char in) { return in == '0' ? 0 : in == '1' ? 1 : 2; }
    std::size_t slot(std::uint32_t state, std::size_t in, std::uint16_t work) const {
        return (state * 3 + in) * symbols_ + work;
    }

    std::size_t symbols_;
    std::vector<std::vector<Move>> moves_;
};

std::uint32_t state_index(const TuringMachine& m, const std::string& name) {
    auto it = std::find(m.states.begin(), m.states.end(), name);
    if (it == m.states.end()) throw MachineError("unknown state '" + name + "'");
    return static_cast<std::uint32_t>(it - m.states.begin());
}

ConfigGraph build(const TuringMachine& m, std::string word, bool assumed_unary) {
    validate_machine(m);
    for (char ch : word) {
        if (m.input_alphabet.find(ch) == std::string::npos) {
            throw MachineError("input symbol '" + std::string(1, ch) + "' is not in the input alphabet of " + m.name);
        }
    }
    const std::size_t n = word.size();
    const std::size_t space = m.space_bound.cells(n);
    if (space == 0) throw MachineError("space bound of " + m.name + " evaluates to 0 at n=" + std::to_string(n));

    const MoveTable table(m);
    const auto blank = static_cast<std::uint16_t>(
        std::find(m.work_alphabet.begin(), m.work_alphabet.end(), kBlank) - m.work_alphabet.begin());
    const std::uint32_t accept = state_index(m, m.accept);
    const std::uint32_t reject = state_index(m, m.reject);

    Configuration initial{state_index(m, m.start), 0, 0, std::vector<std::uint16_t>(space, blank)};
    std::map<Configuration, std::uint32_t> discovered{{initial, 0}};
    std::vector<const Configuration*> by_order{&discovered.begin()->first};
    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges;

    for (std::size_t head = 0; head < by_order.size(); ++head) {
        const Configuration& c = *by_order[head];
        const char in = c.input_pos < n ? word[c.input_pos] : '_';
        for (const Move& mv : table.at(c.state, in, c.tape[c.work_pos])) {
            const long long next_in = static_cast<long long>(c.input_pos) + mv.din;
            const long long next_work = static_cast<long long>(c.work_pos) + mv.dwork;
            // Moves off either tape have no successor.
            if (next_in < 0 || next_in > static_cast<long long>(n)) continue;
            if (next_work < 0 || next_work >= static_cast<long long>(space)) continue;
            Configuration next = c;
            next.state = mv.to;
            next.tape[c.work_pos] = mv.write;
            next.input_pos = static_cast<std::uint32_t>(next_in);
            next.work_pos = static_cast<std::uint32_t>(next_work);
            auto [it, inserted] = discovered.emplace(std::move(next), static_cast<std::uint32_t>(by_order.size()));
            if (inserted) {
                if (discovered.size() > kMaxConfigVertices) {
                    throw MachineError("configuration graph of " + m.name + " exceeds " +
                                       std::to_string(kMaxConfigVertices) + " vertices");
                }
                by_order.push_back(&it->first);
            }
            raw_edges.emplace_back(static_cast<std::uint32_t>(head), it->second);
        }
    }

    // Renumber in canonical (lexicographic) order.
    ConfigGraph g;
    std::vector<VertexId> rank(discovered.size());
    g.vertices.reserve(discovered.size());
    for (const auto& [config, discovery] : discovered) {
        rank[discovery] = static_cast<VertexId>(g.vertices.size());
        g.vertices.push_back(config);
    }
    g.edges = Digraph(g.vertices.size());
    for (auto [from, to] : raw_edges) g.edges.add_edge(rank[from], rank[to]);
    g.edges.normalize();
    g.start = rank[0];
    for (VertexId v = 0; v < g.vertices.size(); ++v) {
        if (g.vertices[v].state == accept) g.accept_set.push_back(v);
        if (g.vertices[v].state == reject) g.reject_set.push_back(v);
    }
    g.input = std::move(word);
    g.assumed_unary = assumed_unary;
    g.space = space;
    return g;
}

void require_vertex(const Digraph& g, VertexId v) {
    if (!g.contains(v)) throw MachineError("unknown vertex id " + std::to_string(v));
}

}  // namespace

std::string_view to_string(Acceptance a) { return a == Acceptance::Existential ? "existential" : "universal"; }

std::size_t SpaceBound::cells(std::size_t n) const {
    std::size_t log = 0;
    while ((std::size_t{1} << log) < n + 2) ++log;
    return c * log + d;
}

void validate_machine(const TuringMachine& m) {
    const std::string who = m.name.empty() ? std::string("machine") : m.name;
    auto has_state = [&](const std::string& s) { return std::find(m.states.begin(), m.states.end(), s) != m.states.end(); };
    auto has_symbol = [&](const std::string& s) {
        return std::find(m.work_alphabet.begin(), m.work_alphabet.end(), s) != m.work_alphabet.end();
    };
    for (std::size_t i = 0; i < m.states.size(); ++i) {
        if (std::find(m.states.begin(), m.states.begin() + static_cast<long>(i), m.states[i]) !=
            m.states.begin() + static_cast<long>(i)) {
            throw MachineError(who + ": duplicate state '" + m.states[i] + "'");
        }
    }
    for (const auto* role : {&m.start, &m.accept, &m.reject}) {
        if (!has_state(*role)) throw MachineError(who + ": state '" + *role + "' is not declared");
    }
    if (m.accept == m.reject) throw MachineError(who + ": accept and reject states coincide");
    if (m.input_alphabet != "01" && m.input_alphabet != "1") {
        throw MachineError(who + ": input alphabet must be \"01\" or \"1\"");
    }
    if (!has_symbol(std::string(kBlank))) throw MachineError(who + ": work alphabet lacks the blank '_'");
    if (m.work_alphabet.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw MachineError(who + ": work alphabet too large");
    }
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const Transition& t = m.transitions[i];
        const std::string where = who + ": transition " + std::to_string(i) + ": ";
        if (!has_state(t.from) || !has_state(t.to)) throw MachineError(where + "unknown state");
        if (t.from == m.accept || t.from == m.reject) throw MachineError(where + "halting states have no transitions");
        if (t.in != '_' && m.input_alphabet.find(t.in) == std::string::npos) {
            throw MachineError(where + "input symbol '" + std::string(1, t.in) + "' outside the input alphabet");
        }
        if (!has_symbol(t.read)) throw MachineError(where + "reads symbol '" + t.read + "' outside work_alphabet");
        if (!has_symbol(t.write)) throw MachineError(where + "writes symbol '" + t.write + "' outside work_alphabet");
        if (t.din < -1 || t.din > 1 || t.dwork < -1 || t.dwork > 1) throw MachineError(where + "head move not in {-1,0,1}");
    }
}

TuringMachine complement(const TuringMachine& machine) {
    TuringMachine c = machine;
    std::swap(c.accept, c.reject);
    c.polarity = machine.polarity == Acceptance::Existential ? Acceptance::Universal : Acceptance::Existential;
    c.name = machine.name + "_complement";
    return c;
}

TuringMachine with_polarity(TuringMachine machine, Acceptance polarity) {
    machine.polarity = polarity;
    return machine;
}

std::string encode(const TuringMachine& m, const Configuration& c) {
    std::ostringstream out;
    out << m.states.at(c.state) << "|in=" << c.input_pos << "|work=" << c.work_pos << "|";
    for (std::size_t i = 0; i < c.tape.size(); ++i) out << (i ? "," : "") << m.work_alphabet.at(c.tape[i]);
    return out.str();
}

ConfigGraph build_config_graph(const TuringMachine& machine, std::string_view word) {
    return build(machine, std::string(word), false);
}

ConfigGraph build_config_graph_for_length(const TuringMachine& machine, std::size_t n) {
    return build(machine, std::string(n, '1'), true);
}

std::size_t config_vertex_bound(const TuringMachine& m, std::size_t n) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    auto mul = [](std::size_t a, std::size_t b) { return (a != 0 && b > kMax / a) ? kMax : a * b; };
    const std::size_t s = m.space_bound.cells(n);
    std::size_t bound = mul(mul(m.states.size(), n + 1), s);
    for (std::size_t i = 0; i < s; ++i) bound = mul(bound, m.work_alphabet.size());
    return bound;
}

std::vector<VertexId> dead_ends(const TuringMachine& m, const ConfigGraph& g) {
    const std::uint32_t accept = state_index(m, m.accept);
    const std::uint32_t reject = state_index(m, m.reject);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertices.size(); ++v) {
        const auto state = g.vertices[v].state;
        if (state != accept && state != reject && g.edges.successors(v).empty()) out.push_back(v);
    }
    return out;
}

bool reachable(const Digraph& graph, VertexId from, std::span<const VertexId> to_set) {
    require_vertex(graph, from);
    std::vector<bool> target(graph.vertex_count(), false);
    for (VertexId t : to_set) {
        require_vertex(graph, t);
        target[t] = true;
    }
    std::vector<bool> seen(graph.vertex_count(), false);
    std::deque<VertexId> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        if (target[v]) return true;
        for (VertexId s : graph.successors(v)) {
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    return false;
}

bool unreachable_inductive_counting(const Digraph& graph, VertexId from, VertexId to) {
    require_vertex(graph, from);
    require_vertex(graph, to);
    const std::size_t n = graph.vertex_count();

    // Each nondeterministic "guess a walk of at most d steps from `from` to u"
    // is resolved by exhaustive search of the choice tree. The leaves of that
    // tree at depth <= d are kept per level, so walk_within[u] answers the
    // guess for the current level.
    std::vector<bool> walk_within(n, false);
    walk_within[from] = true;
    auto extend_walks = [&] {
        std::vector<bool> next = walk_within;
        for (VertexId u = 0; u < n; ++u) {
            if (!walk_within[u]) continue;
            for (VertexId s : graph.successors(u)) next[s] = true;
        }
        walk_within = std::move(next);
    };

    std::vector<std::vector<VertexId>> predecessors(n);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId s : graph.successors(u)) predecessors[s].push_back(u);
    }

    // count = |R_d|, R_0 = {from}.
    std::size_t count = 1;
    for (std::size_t d = 0; d + 1 < n; ++d) {
        // Enumerate R_d by guessing membership of every u; a branch survives
        // only if exactly `count` members were verified. The surviving branch
        // is the same for every v, so it is enumerated once per level.
        std::size_t verified = 0;
        for (VertexId u = 0; u < n; ++u) verified += walk_within[u];
        if (verified != count) throw std::logic_error("inductive counting: level count mismatch");
        std::size_t next_count = 0;
        for (VertexId v = 0; v < n; ++v) {
            const bool member = walk_within[v] || std::any_of(predecessors[v].begin(), predecessors[v].end(),
                                                              [&](VertexId u) { return walk_within[u]; });
            if (member) ++next_count;
        }
        extend_walks();
        const bool stable = next_count == count;
        count = next_count;
        // R_{d+1} = R_d implies every later level equals it too.
        if (stable) break;
    }

    std::size_t verified = 0;
    for (VertexId u = 0; u < n; ++u) {
        if (!walk_within[u]) continue;
        if (u == to) return false;
        ++verified;
    }
    return verified == count;
}

bool accepts(const TuringMachine& machine, std::string_view word) {
    const ConfigGraph g = build_config_graph(machine, word);
    if (machine.polarity == Acceptance::Existential) return reachable(g.edges, g.start, g.accept_set);
    return !reachable(g.edges, g.start, g.reject_set);
}

}  // namespace monocirc
