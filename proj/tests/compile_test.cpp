#include "monocirc/compile.hpp"

#include <gtest/gtest.h>

#include <random>

#include "monocirc/error.hpp"
#include "monocirc/fixtures.hpp"
#include "monocirc/reduce.hpp"
#include "monocirc/verify.hpp"
#include "oracles.hpp"

namespace monocirc {
namespace {

TuringMachine universal(const TuringMachine& m) { return with_polarity(m, Acceptance::Universal); }

bool evaluates_everywhere_to(const Circuit& c, bool value) {
    for (const auto& w : oracles::all_words(c.n_inputs())) {
        if (evaluate(c, w) != value) return false;
    }
    return true;
}

std::string promise_word(std::size_t m, std::size_t i) { return std::string(m - i, '0') + std::string(i, '1'); }

bool has_kind(const Circuit& c, GateKind k) {
    for (const auto& g : c.gates()) {
        if (g.kind == k) return true;
    }
    return false;
}

TEST(NlToMonotone, Mod3Examples) {
    const CircuitFamily f = compile_nl_to_monotone_family(fixtures::mod3_length(), Polarity::Or);
    EXPECT_EQ(f.construction(), "nl_to_or");
    EXPECT_EQ(f.mode(), FamilyMode::Uniform);
    const Circuit c3 = f.for_length(3);
    EXPECT_EQ(c3.n_inputs(), 3u);
    EXPECT_TRUE(evaluates_everywhere_to(c3, true));
    EXPECT_TRUE(evaluates_everywhere_to(f.for_length(4), false));
    EXPECT_TRUE(has_single_polarity(c3, Polarity::Or));
    EXPECT_TRUE(validate(c3).empty());
}

TEST(NlToMonotone, LengthZeroMatchesEmptyWord) {
    for (const auto& m : fixtures::all_machines()) {
        const Polarity p = m.polarity == Acceptance::Existential ? Polarity::Or : Polarity::And;
        const Circuit c = compile_nl_to_monotone_family(m, p).for_length(0);
        EXPECT_EQ(c.n_inputs(), 0u);
        EXPECT_EQ(evaluate(c, ""), accepts(m, "")) << m.name;
    }
}

TEST(NlToMonotone, BothPolaritiesFollowTheMachine) {
    const TuringMachine m = fixtures::mod3_length();
    const CircuitFamily ors = compile_nl_to_monotone_family(m, Polarity::Or);
    const CircuitFamily ands = compile_nl_to_monotone_family(universal(m), Polarity::And);
    for (std::size_t n = 0; n <= 7; ++n) {
        const Circuit c = ands.for_length(n);
        EXPECT_TRUE(has_single_polarity(c, Polarity::And));
        EXPECT_TRUE(evaluates_everywhere_to(c, n % 3 == 0)) << n;
        EXPECT_TRUE(evaluates_everywhere_to(ors.for_length(n), n % 3 == 0)) << n;
    }
}

TEST(NlToMonotone, PolarityMismatchThrows) {
    EXPECT_THROW(compile_nl_to_monotone_family(fixtures::mod3_length(), Polarity::And), CompileError);
    EXPECT_THROW(compile_nl_to_monotone_family(universal(fixtures::mod3_length()), Polarity::Or), CompileError);
    EXPECT_THROW(compile_tally_to_monotone_family(fixtures::tally_even(), Polarity::And), CompileError);
    EXPECT_THROW(compile_semiuniform(fixtures::parity(), "1", Polarity::And), CompileError);
    EXPECT_THROW(compile_tally_to_monotone_family(fixtures::parity(), Polarity::Or), CompileError);
}

TEST(TallyToMonotone, Examples) {
    const CircuitFamily f = compile_tally_to_monotone_family(fixtures::tally_even(), Polarity::Or);
    EXPECT_TRUE(evaluate(f.for_length(4), "0101"));
    EXPECT_FALSE(evaluate(f.for_length(3), "100"));
    EXPECT_EQ(f.semantics(), FamilySemantics::TallyDisjunction);
}

// Reference semantics spelled out directly from machine runs on 1^k.
bool tally_reference(const TuringMachine& m, Polarity p, const std::string& r) {
    for (std::size_t k = 1; k <= r.size(); ++k) {
        const bool in_t = oracles::brute_force_accepts(m, unary_word(k));
        if (p == Polarity::Or && r[k - 1] == '1' && in_t) return true;
        if (p == Polarity::And && r[k - 1] == '0' && !in_t) return false;
    }
    return p == Polarity::And;
}

TEST(TallyToMonotone, ExhaustiveAgainstMachineRuns) {
    struct Case {
        TuringMachine m;
        Polarity p;
    };
    const std::vector<Case> cases{{fixtures::tally_even(), Polarity::Or},
                                  {universal(fixtures::tally_even()), Polarity::And},
                                  {fixtures::tally_prime(), Polarity::Or},
                                  {fixtures::tally_prime_universal(), Polarity::And}};
    for (const auto& [m, p] : cases) {
        const CircuitFamily f = compile_tally_to_monotone_family(m, p);
        for (std::size_t q = 0; q <= 6; ++q) {
            const Circuit c = f.for_length(q);
            EXPECT_TRUE(has_single_polarity(c, p));
            for (const auto& r : oracles::all_words(q)) {
                ASSERT_EQ(evaluate(c, r), tally_reference(m, p, r)) << m.name << " " << r;
            }
        }
    }
}

TEST(TallyToMonotone, EmptyLengthIsTheNeutralConstant) {
    const Circuit ors = compile_tally_to_monotone_family(fixtures::tally_even(), Polarity::Or).for_length(0);
    const Circuit ands =
        compile_tally_to_monotone_family(fixtures::tally_prime_universal(), Polarity::And).for_length(0);
    ASSERT_EQ(ors.gates().size(), 1u);
    EXPECT_EQ(ors.gate(0).kind, GateKind::Const0);
    ASSERT_EQ(ands.gates().size(), 1u);
    EXPECT_EQ(ands.gate(0).kind, GateKind::Const1);
}

TEST(Semiuniform, ParityExamples) {
    const TuringMachine m = fixtures::parity();
    EXPECT_FALSE(evaluate(compile_semiuniform(m, "101", Polarity::Or), ""));
    EXPECT_TRUE(evaluate(compile_semiuniform(m, "1", Polarity::Or), ""));
    const CircuitFamily f = semiuniform_family(m, Polarity::Or);
    EXPECT_EQ(f.mode(), FamilyMode::SemiUniform);
    EXPECT_THROW(f.for_length(3), CompileError);
    EXPECT_THROW(compile_nl_to_monotone_family(m, Polarity::Or).for_word("1"), CompileError);
}

TEST(Semiuniform, ExhaustiveAgainstMachineRuns) {
    for (const auto& m : {fixtures::parity(), fixtures::mod3_length()}) {
        for (Polarity p : {Polarity::Or, Polarity::And}) {
            const TuringMachine src = p == Polarity::Or ? m : universal(m);
            for (std::size_t n = 0; n <= 6; ++n) {
                for (const auto& w : oracles::all_words(n)) {
                    const Circuit c = compile_semiuniform(src, w, p);
                    ASSERT_EQ(c.n_inputs(), 0u);
                    ASSERT_TRUE(has_single_polarity(c, p));
                    ASSERT_EQ(evaluate(c, ""), oracles::brute_force_accepts(src, w)) << m.name << " " << w;
                }
            }
        }
    }
}

TEST(DualRail, Examples) {
    {
        CircuitBuilder b;
        const GateId x = b.add_input(0);
        const Circuit c = std::move(b).build(1, b.add_gate(GateKind::Not, {x}));
        EXPECT_FALSE(evaluate(dual_rail_compile(c, "1"), ""));
    }
    CircuitBuilder b;
    const GateId x0 = b.add_input(0), x1 = b.add_input(1);
    const GateId n1 = b.add_gate(GateKind::Not, {x1});
    const Circuit c = std::move(b).build(2, b.add_gate(GateKind::Or, {x0, n1}));
    EXPECT_FALSE(evaluate(dual_rail_compile(c, "01"), ""));
    EXPECT_THROW(dual_rail_compile(c, "0"), CompileError);
}

TEST(DualRail, RandomCircuitsMatchEvaluate) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const Circuit c = random_general_circuit(rng, 8, 20);
        for (const auto& w : oracles::all_words(c.n_inputs())) {
            const Circuit d = dual_rail_compile(c, w);
            ASSERT_EQ(d.n_inputs(), 0u);
            ASSERT_FALSE(has_kind(d, GateKind::Not));
            ASSERT_FALSE(has_kind(d, GateKind::Input));
            ASSERT_LE(d.size(), 2 * c.size());
            ASSERT_EQ(evaluate(d, ""), evaluate(c, w)) << "circuit " << i << " word " << w;
        }
    }
}

TEST(DualRail, TallyGatesAreRejected) {
    CircuitBuilder b;
    const GateId x = b.add_input(0);
    const Circuit c = std::move(b).build(1, b.add_gate(GateKind::TallyOracle, {x}));
    EXPECT_THROW(dual_rail_compile(c, "1"), CompileError);
}

Circuit lone_tally_gate(std::size_t m) {
    CircuitBuilder b;
    std::vector<GateId> x;
    for (std::size_t j = 0; j < m; ++j) x.push_back(b.add_input(j));
    return std::move(b).build(m, b.add_gate(GateKind::TallyOracle, x));
}

TEST(Gadget, Examples) {
    const TallyPredicate just_one = [](std::size_t i) { return i == 1; };
    const Circuit e = expand_tally_gadget(lone_tally_gate(3), just_one);
    EXPECT_TRUE(evaluate(e, "001"));
    EXPECT_FALSE(evaluate(e, "011"));
    EXPECT_FALSE(evaluate(e, "111"));
    EXPECT_FALSE(evaluate(e, "000"));
    const Circuit all = expand_tally_gadget(lone_tally_gate(1), [](std::size_t) { return true; });
    EXPECT_TRUE(evaluate(all, "0"));
    EXPECT_TRUE(evaluate(all, "1"));
}

// Two oracle gates: one over every input, one over the suffix x1..x_{m-1}
// (all of x when m = 1). Suffixes of a promise word keep the promise.
Circuit two_gate_circuit(std::size_t m) {
    CircuitBuilder b;
    std::vector<GateId> x;
    for (std::size_t j = 0; j < m; ++j) x.push_back(b.add_input(j));
    const GateId whole = b.add_gate(GateKind::TallyOracle, x);
    const GateId tail = b.add_gate(GateKind::TallyOracle, std::vector<GateId>(x.begin() + (m > 1), x.end()));
    const GateId nt = b.add_gate(GateKind::Not, {tail});
    const GateId a = b.add_gate(GateKind::And, {whole, nt});
    const GateId nw = b.add_gate(GateKind::Not, {whole});
    return std::move(b).build(m, b.add_gate(GateKind::Or, {a, b.add_gate(GateKind::And, {nw, tail})}));
}

TEST(Gadget, AgreesWithOracleEvaluationOnEveryPromiseInput) {
    for (std::size_t m = 1; m <= 6; ++m) {
        for (std::uint32_t set = 0; set < (1u << (m + 1)); ++set) {
            const TallyPredicate t = [set](std::size_t i) { return (set >> i) & 1u; };
            const Circuit lone = lone_tally_gate(m);
            const Circuit two = two_gate_circuit(m);
            const Circuit lone_e = expand_tally_gadget(lone, t);
            const Circuit two_e = expand_tally_gadget(two, t);
            for (const Circuit* e : {&lone_e, &two_e}) {
                EXPECT_FALSE(has_kind(*e, GateKind::TallyOracle));
                EXPECT_TRUE(validate(*e).empty());
            }
            EXPECT_LE(lone_e.depth(), 5 * lone.depth() + 2);
            EXPECT_LE(two_e.depth(), 5 * two.depth() + 2);
            for (std::size_t i = 0; i <= m; ++i) {
                const std::string w = promise_word(m, i);
                ASSERT_EQ(evaluate(lone_e, w), t(i)) << "m=" << m << " i=" << i;
                ASSERT_EQ(evaluate(two_e, w), evaluate(two, w, t)) << "m=" << m << " i=" << i;
            }
        }
    }
}

TEST(Gadget, NeedsAnOracle) { EXPECT_THROW(expand_tally_gadget(lone_tally_gate(2), {}), CompileError); }

TEST(Compile, FamiliesAreDeterministic) {
    const CircuitFamily f = compile_tally_to_monotone_family(fixtures::tally_prime(), Polarity::Or);
    EXPECT_EQ(f.for_length(5), f.for_length(5));
    EXPECT_EQ(compile_semiuniform(fixtures::parity(), "0110", Polarity::Or),
              compile_semiuniform(fixtures::parity(), "0110", Polarity::Or));
}

}  // namespace
}  // namespace monocirc
