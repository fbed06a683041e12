#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monocirc/graph.hpp"

namespace monocirc {

enum class Acceptance : std::uint8_t {
    Existential,  // accept iff some accept configuration is reachable
    Universal,    // accept iff no reject configuration is reachable
};

std::string_view to_string(Acceptance a);

/// Blank symbol of both tapes. The input tape reads it at the sentinel cell n.
inline constexpr std::string_view kBlank = "_";

/// s(n) = c * ceil(log2(n + 2)) + d work cells.
struct SpaceBound {
    std::size_t c = 1;
    std::size_t d = 0;

    std::size_t cells(std::size_t n) const;
    bool operator==(const SpaceBound&) const = default;
};

struct Transition {
    std::string from;
    char in = '_';  // '0', '1' or '_' (the sentinel past the end of the input)
    std::string read;
    std::string to;
    std::string write;
    int din = 0;    // input head move, -1/0/+1
    int dwork = 0;  // work head move, -1/0/+1

    bool operator==(const Transition&) const = default;
};

/// One-tape-plus-input nondeterministic machine with a logarithmic work tape.
/// The work tape starts all blank; both heads start on cell 0.
struct TuringMachine {
    std::string name;
    std::vector<std::string> states;
    std::string start;
    std::string accept;
    std::string reject;
    Acceptance polarity = Acceptance::Existential;
    /// "01" for binary machines, "1" for tally machines.
    std::string input_alphabet = "01";
    /// Must contain kBlank.
    std::vector<std::string> work_alphabet;
    SpaceBound space_bound;
    std::vector<Transition> transitions;

    bool operator==(const TuringMachine&) const = default;
};

/// Throws MachineError describing the first problem found.
void validate_machine(const TuringMachine& machine);

/// Same transitions, accept and reject swapped, polarity flipped.
TuringMachine complement(const TuringMachine& machine);
TuringMachine with_polarity(TuringMachine machine, Acceptance polarity);

struct Configuration {
    std::uint32_t state = 0;      // index into TuringMachine::states
    std::uint32_t input_pos = 0;  // 0..n, n is the blank sentinel
    std::uint32_t work_pos = 0;   // 0..s(n)-1
    std::vector<std::uint16_t> tape;  // indices into work_alphabet

    // Member order is the canonical encoding order.
    auto operator<=>(const Configuration&) const = default;
};

/// Human-readable canonical encoding, e.g. "q0|in=2|work=0|_01".
std::string encode(const TuringMachine& machine, const Configuration& config);

struct ConfigGraph {
    std::vector<Configuration> vertices;  // sorted by canonical encoding
    Digraph edges;
    VertexId start = 0;
    std::vector<VertexId> accept_set;
    std::vector<VertexId> reject_set;
    std::string input;          // the word the graph was built for
    bool assumed_unary = false;  // built from a length n with input 1^n
    std::size_t space = 0;       // s(|input|)

    bool operator==(const ConfigGraph&) const = default;
};

/// Hard cap on configuration-graph size.
inline constexpr std::size_t kMaxConfigVertices = 100000;

/// Configuration graph of `machine` on `word`, over the configurations
/// reachable from the start configuration.
ConfigGraph build_config_graph(const TuringMachine& machine, std::string_view word);
/// Graph for input length n under the assumption that the input is 1^n.
ConfigGraph build_config_graph_for_length(const TuringMachine& machine, std::size_t n);

/// |Q| * (n+1) * s(n) * |work_alphabet|^s(n), saturating at SIZE_MAX.
std::size_t config_vertex_bound(const TuringMachine& machine, std::size_t n);

/// Non-halting vertices without successors.
std::vector<VertexId> dead_ends(const TuringMachine& machine, const ConfigGraph& graph);

/// Breadth-first: is some vertex of `to_set` reachable from `from`?
bool reachable(const Digraph& graph, VertexId from, std::span<const VertexId> to_set);

/// 1 iff `to` is not reachable from `from`, decided by inductive counting:
/// the exact sizes |R_d| of the d-step reachable sets are computed level by
/// level, then non-membership of `to` is certified by exhibiting |R_final|
/// reachable vertices, none equal to `to`.
bool unreachable_inductive_counting(const Digraph& graph, VertexId from, VertexId to);

bool accepts(const TuringMachine& machine, std::string_view word);

}  // namespace monocirc
