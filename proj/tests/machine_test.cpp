#include "monocirc/machine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "monocirc/error.hpp"
#include "monocirc/fixtures.hpp"
#include "monocirc/reduce.hpp"
#include "monocirc/verify.hpp"
#include "oracles.hpp"

namespace monocirc {
namespace {

Digraph path3() {
    Digraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

std::vector<std::string> words_for(const TuringMachine& m, std::size_t max_n) {
    std::vector<std::string> out;
    for (std::size_t n = 0; n <= max_n; ++n) {
        if (m.input_alphabet == "1") {
            out.push_back(unary_word(n));
        } else {
            for (const auto& w : oracles::all_words(n)) out.push_back(w);
        }
    }
    return out;
}

TEST(ConfigGraph, ImmediateAcceptIsOneVertex) {
    const ConfigGraph g = build_config_graph(fixtures::accept_immediately(), "");
    EXPECT_EQ(g.vertices.size(), 1u);
    EXPECT_EQ(g.accept_set, std::vector<VertexId>{g.start});
}

TEST(ConfigGraph, Mod3OnLengthThreeIsAPathToAccept) {
    const TuringMachine m = fixtures::mod3_length();
    const ConfigGraph g = build_config_graph_for_length(m, 3);
    EXPECT_TRUE(g.assumed_unary);
    EXPECT_EQ(g.input, "111");
    // Deterministic: every vertex has at most one successor.
    for (VertexId v = 0; v < g.edges.vertex_count(); ++v) EXPECT_LE(g.edges.successors(v).size(), 1u);
    EXPECT_TRUE(reachable(g.edges, g.start, g.accept_set));
    EXPECT_TRUE(g.reject_set.empty() || !reachable(g.edges, g.start, g.reject_set));
}

TEST(ConfigGraph, RespectsVertexBoundAndHasNoDeadEnds) {
    for (const auto& m : fixtures::all_machines()) {
        for (const auto& w : words_for(m, 5)) {
            const ConfigGraph g = build_config_graph(m, w);
            EXPECT_LE(g.vertices.size(), config_vertex_bound(m, w.size())) << m.name;
            EXPECT_TRUE(dead_ends(m, g).empty()) << m.name << " " << w;
            EXPECT_TRUE(std::is_sorted(g.vertices.begin(), g.vertices.end()));
            EXPECT_EQ(g, build_config_graph(m, w));
        }
    }
}

TEST(ConfigGraph, RejectsWordsOutsideTheAlphabet) {
    EXPECT_THROW(build_config_graph(fixtures::tally_even(), "10"), Error);
    EXPECT_THROW(build_config_graph(fixtures::parity(), "12"), Error);
}

TEST(Accepts, Examples) {
    EXPECT_TRUE(accepts(fixtures::mod3_length(), "111"));
    EXPECT_FALSE(accepts(fixtures::mod3_length(), "1111"));
    EXPECT_FALSE(accepts(fixtures::reject_immediately(), ""));
    EXPECT_TRUE(accepts(fixtures::tally_even(), "11"));
    EXPECT_FALSE(accepts(fixtures::tally_even(), "1"));
}

TEST(Accepts, MatchesIndependentRunExplorer) {
    for (const auto& m : fixtures::all_machines()) {
        for (const auto& w : words_for(m, m.input_alphabet == "1" ? 12 : 6)) {
            ASSERT_EQ(accepts(m, w), oracles::brute_force_accepts(m, w)) << m.name << " on '" << w << "'";
        }
    }
}

TEST(Accepts, FixtureLanguages) {
    for (std::size_t k = 0; k <= 12; ++k) {
        const std::string w = unary_word(k);
        EXPECT_EQ(accepts(fixtures::tally_even(), w), k % 2 == 0) << k;
        EXPECT_EQ(accepts(fixtures::tally_prime(), w), oracles::is_prime(k)) << k;
        EXPECT_EQ(accepts(fixtures::tally_prime_universal(), w), oracles::is_prime(k)) << k;
    }
    for (std::size_t n = 0; n <= 6; ++n) {
        for (const auto& w : oracles::all_words(n)) {
            EXPECT_EQ(accepts(fixtures::mod3_length(), w), n % 3 == 0);
            EXPECT_EQ(accepts(fixtures::parity(), w), std::count(w.begin(), w.end(), '1') % 2 == 1) << w;
        }
    }
}

// Swapping accept and reject while flipping the polarity complements the
// language, and the tally fixtures keep their language under either polarity.
TEST(Accepts, ComplementAndPolarity) {
    for (const auto& m : fixtures::all_machines()) {
        for (const auto& w : words_for(m, m.input_alphabet == "1" ? 10 : 4)) {
            EXPECT_NE(accepts(complement(m), w), accepts(m, w)) << m.name << " " << w;
        }
    }
    for (const auto& m : {fixtures::tally_even(), fixtures::tally_prime()}) {
        const TuringMachine u = with_polarity(m, Acceptance::Universal);
        for (std::size_t k = 0; k <= 10; ++k) EXPECT_EQ(accepts(u, unary_word(k)), accepts(m, unary_word(k)));
    }
}

TEST(Machine, ValidationCatchesBrokenMachines) {
    for (const auto& m : fixtures::all_machines()) EXPECT_NO_THROW(validate_machine(m)) << m.name;
    TuringMachine m = fixtures::tally_even();
    m.start = "nowhere";
    EXPECT_THROW(validate_machine(m), MachineError);
    m = fixtures::tally_even();
    m.work_alphabet.erase(m.work_alphabet.begin());
    EXPECT_THROW(validate_machine(m), MachineError);
    m = fixtures::tally_even();
    m.transitions.front().din = 2;
    EXPECT_THROW(validate_machine(m), MachineError);
}

TEST(Machine, SpaceBoundCells) {
    const SpaceBound b{2, 1};
    for (std::size_t n = 0; n <= 40; ++n) EXPECT_EQ(b.cells(n), oracles::space_cells(b, n)) << n;
}

TEST(Machine, LookupByName) {
    for (const auto& m : fixtures::all_machines()) EXPECT_EQ(fixtures::machine_by_name(m.name), m);
    EXPECT_THROW(fixtures::machine_by_name("no_such_machine"), MachineError);
}

TEST(Reachability, PathExamples) {
    const Digraph g = path3();
    const std::vector<VertexId> two{2}, zero{0};
    EXPECT_TRUE(reachable(g, 0, two));
    EXPECT_FALSE(reachable(g, 2, zero));
    EXPECT_FALSE(unreachable_inductive_counting(g, 0, 2));
    EXPECT_TRUE(unreachable_inductive_counting(g, 2, 0));
    EXPECT_FALSE(unreachable_inductive_counting(g, 1, 1));
    EXPECT_TRUE(unreachable_inductive_counting(Digraph(2), 0, 1));
}

TEST(Reachability, MatchesTransitiveClosureOnRandomGraphs) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 150; ++i) {
        const Digraph g = random_digraph(rng, 50);
        const auto r = oracles::closure(g);
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                const std::vector<VertexId> to{v};
                ASSERT_EQ(reachable(g, u, to), r[u][v]);
                ASSERT_EQ(unreachable_inductive_counting(g, u, v), !r[u][v]) << "graph " << i;
            }
        }
    }
}

TEST(Reachability, BadVertexThrows) {
    const std::vector<VertexId> to{7};
    EXPECT_THROW(reachable(path3(), 0, to), Error);
    EXPECT_THROW(unreachable_inductive_counting(path3(), 5, 0), Error);
}

}  // namespace
}  // namespace monocirc
