#include "monocirc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <optional>
#include <thread>

#include "monocirc/error.hpp"
#include "monocirc/fixtures.hpp"

namespace monocirc {

namespace {

using Outcome = std::optional<CaseFailure>;

// Runs fn(0..count-1) on up to `jobs` threads. fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

class Stopwatch {
  public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Appends failures in the given order, keeping only the first few.
void record(VerificationReport& report, const Outcome& outcome) {
    if (!outcome) return;
    ++report.failure_count;
    if (report.failures.size() < VerificationReport::kMaxRecordedFailures) report.failures.push_back(*outcome);
}

CaseFailure error_failure(std::string input, const std::exception& e) {
    return CaseFailure{std::move(input), "", "", std::string("error: ") + e.what()};
}

std::string bit(bool b) { return b ? "1" : "0"; }

// Lexicographic position t -> word whose character 0 is the most significant bit.
std::string word_at(std::size_t t, std::size_t n) {
    std::string w(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
        if ((t >> (n - 1 - j)) & 1u) w[j] = '1';
    }
    return w;
}

std::size_t row_of(std::string_view w) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < w.size(); ++j) r |= static_cast<std::size_t>(w[j] == '1') << j;
    return r;
}

std::vector<bool> tally_answers(const TuringMachine& machine, std::size_t max_n) {
    std::vector<bool> acc(max_n + 1);
    for (std::size_t k = 0; k <= max_n; ++k) acc[k] = accepts(machine, unary_word(k));
    return acc;
}

std::vector<std::uint64_t> unary_counts(const std::vector<std::string>& queries) {
    std::vector<std::uint64_t> counts;
    for (const auto& q : queries) {
        const auto k = unary_length(q);
        if (!k) throw ReductionError("query '" + q + "' is not unary");
        counts.push_back(*k);
    }
    return counts;
}

}  // namespace

std::vector<std::string> words_up_to(std::size_t max_n) {
    std::vector<std::string> out;
    for (std::size_t n = 0; n <= max_n; ++n) {
        for (std::size_t t = 0; t < (std::size_t{1} << n); ++t) out.push_back(word_at(t, n));
    }
    return out;
}

VerificationReport verify_family_against_machine(const CircuitFamily& family, const TuringMachine& machine,
                                                 std::size_t max_n, const VerifyOptions& options) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = family.construction() + ":" + family.source();
    report.max_n = max_n;

    std::vector<std::size_t> lengths;
    if (max_n == 0) lengths.push_back(0);
    for (std::size_t n = 1; n <= max_n; ++n) lengths.push_back(n);
    for (std::size_t n : lengths) report.cases += std::size_t{1} << n;

    std::vector<bool> acc;
    try {
        if (family.mode() != FamilyMode::Uniform) throw CompileError(family.construction() + " is not uniform");
        if (family.semantics() != FamilySemantics::Word && family.semantics() != FamilySemantics::Unspecified) {
            acc = tally_answers(machine, max_n);
        }
    } catch (const std::exception& e) {
        record(report, error_failure("setup", e));
        report.elapsed_ms = clock.elapsed_ms();
        return report;
    }

    auto expected = [&](std::string_view w) {
        const std::size_t n = w.size();
        switch (family.semantics()) {
            case FamilySemantics::LengthLanguage: return static_cast<bool>(acc[n]);
            case FamilySemantics::TallyDisjunction:
                for (std::size_t k = 1; k <= n; ++k) {
                    if (w[k - 1] == '1' && acc[k]) return true;
                }
                return false;
            case FamilySemantics::TallyConjunction:
                for (std::size_t k = 1; k <= n; ++k) {
                    if (w[k - 1] == '0' && !acc[k]) return false;
                }
                return true;
            case FamilySemantics::Word:
            case FamilySemantics::Unspecified: break;
        }
        return accepts(machine, w);
    };

    std::vector<std::vector<CaseFailure>> per_length(lengths.size());
    parallel_for(lengths.size(), options.jobs, [&](std::size_t idx) {
        const std::size_t n = lengths[idx];
        auto& out = per_length[idx];
        const std::string label = "n=" + std::to_string(n);
        try {
            const Circuit c = family.for_length(n);
            const auto violations = validate(c);
            if (!violations.empty()) {
                out.push_back({label, "valid circuit", "invalid", violations.front().reason});
                return;
            }
            if (c.n_inputs() != n) {
                out.push_back({label, std::to_string(n) + " inputs", std::to_string(c.n_inputs()) + " inputs", ""});
            }
            if (family.polarity() && !has_single_polarity(c, *family.polarity())) {
                out.push_back({label, std::string(to_string(*family.polarity())) + " gates only", "mixed", ""});
            }
            const auto table = bitsliced::exhaustive_table(c, {}, options.isa);
            for (std::size_t t = 0; t < (std::size_t{1} << n); ++t) {
                const std::string w = word_at(t, n);
                try {
                    const bool want = expected(w);
                    const bool got = bitsliced::table_bit(table, row_of(w));
                    if (want != got) out.push_back({w, bit(want), bit(got), ""});
                } catch (const std::exception& e) {
                    out.push_back(error_failure(w, e));
                }
            }
        } catch (const std::exception& e) {
            out.push_back(error_failure(label, e));
        }
    });
    for (const auto& failures : per_length) {
        for (const auto& f : failures) record(report, f);
    }
    report.elapsed_ms = clock.elapsed_ms();
    return report;
}

VerificationReport verify_semiuniform_family(const CircuitFamily& family, const TuringMachine& machine,
                                             std::size_t max_n, const VerifyOptions& options) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = family.construction() + ":" + family.source();
    report.max_n = max_n;
    const auto words = words_up_to(max_n);
    report.cases = words.size();
    std::vector<Outcome> outcomes(words.size());
    parallel_for(words.size(), options.jobs, [&](std::size_t i) {
        const std::string& w = words[i];
        try {
            const Circuit c = family.for_word(w);
            const bool has_inputs = std::any_of(c.gates().begin(), c.gates().end(),
                                                [](const Gate& g) { return g.kind == GateKind::Input; });
            if (c.n_inputs() != 0 || has_inputs) {
                outcomes[i] = CaseFailure{w, "input-free circuit", "circuit with inputs", ""};
                return;
            }
            if (family.polarity() && !has_single_polarity(c, *family.polarity())) {
                outcomes[i] = CaseFailure{w, "single polarity", "mixed", ""};
                return;
            }
            const bool want = accepts(machine, w);
            const bool got = evaluate(c, "");
            if (want != got) outcomes[i] = CaseFailure{w, bit(want), bit(got), ""};
        } catch (const std::exception& e) {
            outcomes[i] = error_failure(w, e);
        }
    });
    for (const auto& o : outcomes) record(report, o);
    report.elapsed_ms = clock.elapsed_ms();
    return report;
}

VerificationReport verify_reduction_chain(const BoundReduction& original, const BoundReduction& derived,
                                          std::size_t max_n, const VerifyOptions& options) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = original.spec.name + "@" + original.oracle_name + " vs " + derived.spec.name + "@" +
                          derived.oracle_name;
    report.max_n = max_n;
    const auto words = words_up_to(max_n);
    report.cases = words.size();
    std::vector<Outcome> outcomes(words.size());
    parallel_for(words.size(), options.jobs, [&](std::size_t i) {
        const std::string& w = words[i];
        try {
            const bool want = apply_reduction(original.spec, w, original.oracle);
            const bool got = apply_reduction(derived.spec, w, derived.oracle);
            if (want != got) outcomes[i] = CaseFailure{w, bit(want), bit(got), ""};
        } catch (const std::exception& e) {
            outcomes[i] = error_failure(w, e);
        }
    });
    for (const auto& o : outcomes) record(report, o);
    report.elapsed_ms = clock.elapsed_ms();
    return report;
}

namespace {

ReductionSpec make_spec(ReductionKind kind, std::string name, QueryTransform tau) {
    ReductionSpec s;
    s.kind = kind;
    s.name = std::move(name);
    s.tau = std::move(tau);
    return s;
}

// Dtt (Or) or ctt (And) spec querying 1^k for every tau_prime count.
ReductionSpec tau_prime_spec(const ReductionSpec& inner, Polarity polarity) {
    const ReductionKind kind = polarity == Polarity::Or ? ReductionKind::Dtt : ReductionKind::Ctt;
    return make_spec(kind, "tau_prime(" + inner.name + ")", [tau = inner.tau, polarity](std::string_view w) {
        std::vector<std::string> out;
        for (std::uint64_t k : tau_prime(tau, w, polarity)) out.push_back(unary_word(k));
        return out;
    });
}

// Many-one spec sending w to r(w) of length |w|.
ReductionSpec r_map_spec(const ReductionSpec& inner, Polarity polarity) {
    return make_spec(ReductionKind::Many, "r(" + inner.name + ")", [tau = inner.tau, polarity](std::string_view w) {
        return std::vector<std::string>{r_map(unary_counts(tau(w)), polarity, w.size())};
    });
}

void add_cycle(std::vector<ChainFixture>& out, Polarity polarity, const TuringMachine& tally,
               std::string_view binary_tau, std::string_view unary_tau) {
    const std::string side(to_string(polarity));
    const ReductionKind tt_kind = polarity == Polarity::Or ? ReductionKind::Dtt : ReductionKind::Ctt;
    const CircuitFamily family = compile_tally_to_monotone_family(tally, polarity);
    const std::string family_name = family.construction() + ":" + family.source();
    const Membership in_family = family_membership(family);

    const ReductionSpec identity = make_spec(ReductionKind::Many, "identity", builtin_transform("identity"));
    out.push_back({side + "_lift_" + tally.name, {identity, in_family, family_name},
                   {lift_reduction(identity, tt_kind), in_family, family_name}});

    const ReductionSpec to_family =
        make_spec(tt_kind, std::string(binary_tau), builtin_transform(binary_tau));
    const TallyOracle mf = mf_oracle(family);
    out.push_back({side + "_tau_prime_" + tally.name, {to_family, in_family, family_name},
                   {tau_prime_spec(to_family, polarity), mf.membership(), mf.name()}});

    const ReductionSpec to_tally = make_spec(tt_kind, std::string(unary_tau), builtin_transform(unary_tau));
    const TallyOracle t = TallyOracle::from_machine(tally);
    out.push_back({side + "_r_map_" + tally.name, {to_tally, t.membership(), t.name()},
                   {r_map_spec(to_tally, polarity), in_family, family_name}});
}

}  // namespace

std::vector<ChainFixture> chain_fixtures() {
    std::vector<ChainFixture> out;
    const TuringMachine even = fixtures::tally_even();
    add_cycle(out, Polarity::Or, even, "prefixes", "one_positions");
    add_cycle(out, Polarity::Or, fixtures::tally_prime(), "halves", "run_lengths");
    add_cycle(out, Polarity::And, with_polarity(even, Acceptance::Universal), "prefixes", "zero_positions");
    add_cycle(out, Polarity::And, fixtures::tally_prime_universal(), "halves", "run_lengths");
    return out;
}

std::string_view to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::OrVsAnd: return "or_vs_and";
        case WitnessKind::ParityVsMonotone: return "parity_vs_monotone";
        case WitnessKind::UniformVsSemiuniform: return "uniform_vs_semiuniform";
    }
    return "?";
}

std::optional<WitnessKind> witness_kind_from_string(std::string_view name) {
    for (WitnessKind k : {WitnessKind::OrVsAnd, WitnessKind::ParityVsMonotone, WitnessKind::UniformVsSemiuniform}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

bool SeparationWitness::verified() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const WitnessCheck& c) { return c.holds; });
}

namespace {

bool table_in(const TruthTable& t, const std::vector<TruthTable>& set) {
    return std::binary_search(set.begin(), set.end(), t);
}

std::string polarity_set_name(Polarity p, std::size_t n) {
    return std::string(to_string(p)) + "-realizable tables on " + std::to_string(n) + " inputs";
}

void add_outside_checks(SeparationWitness& w, const std::vector<TruthTable>& set, Polarity p) {
    const std::string name = polarity_set_name(p, w.n);
    w.checks.push_back({name + " number 2^n+1 = " + std::to_string((std::size_t{1} << w.n) + 1),
                        set.size() == (std::size_t{1} << w.n) + 1});
    std::size_t differing = 0;
    for (const TruthTable& t : set) differing += t != w.table;
    w.checks.push_back({w.function + " differs from all " + std::to_string(set.size()) + " " + name,
                        differing == set.size()});
}

}  // namespace

SeparationWitness separation_witness(WitnessKind kind, std::size_t n) {
    if (n < 2 || n > 5) throw Error("separation_witness: n must be in 2..5, got " + std::to_string(n));
    SeparationWitness w;
    w.kind = kind;
    w.n = n;
    const auto or_set = enumerate_monotone_functions(n, Polarity::Or);
    const auto and_set = enumerate_monotone_functions(n, Polarity::And);
    if (kind == WitnessKind::OrVsAnd) {
        w.function = "AND(x0,x1)";
        w.table = and_table(n, {0, 1});
        CircuitBuilder b;
        const GateId x0 = b.add_input(0), x1 = b.add_input(1);
        const Circuit c = std::move(b).build(n, b.add_gate(GateKind::And, {x0, x1}));
        const TruthTable realized = truth_table_of(n, [&](std::string_view word) { return evaluate(c, word); });
        w.checks.push_back({"And(Input0, Input1) realizes " + w.function, realized == w.table});
        w.checks.push_back({w.function + " is among the " + polarity_set_name(Polarity::And, n),
                            table_in(w.table, and_set)});
        add_outside_checks(w, or_set, Polarity::Or);
        return w;
    }
    w.function = "PARITY_" + std::to_string(n);
    w.table = parity_table(n);
    add_outside_checks(w, or_set, Polarity::Or);
    add_outside_checks(w, and_set, Polarity::And);
    if (kind == WitnessKind::UniformVsSemiuniform) {
        const TuringMachine parity = fixtures::parity();
        std::size_t agree = 0, pure = 0;
        const std::size_t rows = std::size_t{1} << n;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string word = word_of_row(r, n);
            const Circuit c = compile_semiuniform(parity, word, Polarity::Or);
            agree += evaluate(c, "") == w.table.at(r);
            pure += c.n_inputs() == 0 && has_single_polarity(c, Polarity::Or) &&
                    std::none_of(c.gates().begin(), c.gates().end(),
                                 [](const Gate& g) { return g.kind == GateKind::Input; });
        }
        w.checks.push_back({"semi-uniform Or circuits of " + parity.name + " decide " + w.function + " on all " +
                                std::to_string(rows) + " words",
                            agree == rows});
        w.checks.push_back({"those circuits are input-free and contain only Or gates", pure == rows});
    }
    return w;
}

bool replay_witness(const SeparationWitness& witness) {
    const SeparationWitness again = separation_witness(witness.kind, witness.n);
    return again.table == witness.table && again.function == witness.function && again.checks == witness.checks;
}

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace

Circuit random_monotone_circuit(std::mt19937_64& rng, Polarity polarity, std::size_t max_inputs,
                                std::size_t max_gates) {
    const std::size_t n = 1 + below(rng, max_inputs);
    CircuitBuilder b;
    std::vector<GateId> pool;
    const std::size_t input_gates = 1 + below(rng, std::min<std::size_t>(n, max_gates / 2));
    for (std::size_t k = 0; k < input_gates; ++k) pool.push_back(b.add_input(below(rng, n)));
    const std::size_t consts = below(rng, 3);
    for (std::size_t k = 0; k < consts && pool.size() + 1 < max_gates; ++k) pool.push_back(b.add_const(below(rng, 2)));
    const std::size_t compute = 1 + below(rng, max_gates - pool.size());
    const GateKind kind = polarity == Polarity::Or ? GateKind::Or : GateKind::And;
    GateId last = 0;
    for (std::size_t k = 0; k < compute; ++k) {
        std::vector<GateId> in(1 + below(rng, 3));
        for (auto& g : in) g = pool[below(rng, pool.size())];
        last = b.add_gate(kind, std::move(in));
        pool.push_back(last);
    }
    // Usually the last gate; sometimes an earlier one, leaving extra sinks.
    const GateId output = below(rng, 4) == 0 ? pool[input_gates + consts + below(rng, compute)] : last;
    return std::move(b).build(n, output);
}

Circuit random_general_circuit(std::mt19937_64& rng, std::size_t max_inputs, std::size_t max_gates) {
    const std::size_t n = 1 + below(rng, max_inputs);
    CircuitBuilder b;
    std::vector<GateId> pool;
    const std::size_t input_gates = 1 + below(rng, std::min<std::size_t>(n, max_gates / 2));
    for (std::size_t k = 0; k < input_gates; ++k) pool.push_back(b.add_input(below(rng, n)));
    if (below(rng, 2) == 0) pool.push_back(b.add_const(below(rng, 2)));
    const std::size_t compute = 1 + below(rng, max_gates - pool.size());
    GateId last = 0;
    for (std::size_t k = 0; k < compute; ++k) {
        const std::size_t pick = below(rng, 3);
        if (pick == 2) {
            last = b.add_gate(GateKind::Not, {pool[below(rng, pool.size())]});
        } else {
            std::vector<GateId> in(1 + below(rng, 3));
            for (auto& g : in) g = pool[below(rng, pool.size())];
            last = b.add_gate(pick == 0 ? GateKind::And : GateKind::Or, std::move(in));
        }
        pool.push_back(last);
    }
    return std::move(b).build(n, last);
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t max_vertices) {
    static constexpr std::size_t kPerMille[] = {5, 20, 40, 80, 150};
    const std::size_t v = 1 + below(rng, max_vertices);
    const std::size_t density = kPerMille[below(rng, std::size(kPerMille))];
    Digraph g(v);
    for (VertexId a = 0; a < v; ++a) {
        for (VertexId b = 0; b < v; ++b) {
            if (below(rng, 1000) < density) g.add_edge(a, b);
        }
    }
    g.normalize();
    return g;
}

namespace {

// Distinct streams per suite, all derived from the one user seed.
std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

std::vector<VerificationReport> support_suite(const SuiteOptions& o) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = "support_semantics";
    report.max_n = 10;
    auto rng = suite_rng(o.seed, 1);
    std::vector<std::pair<Circuit, Polarity>> circuits;
    for (std::size_t i = 0; i < o.random_circuits; ++i) {
        const Polarity p = i % 2 == 0 ? Polarity::Or : Polarity::And;
        circuits.emplace_back(random_monotone_circuit(rng, p, 10, 20), p);
    }
    for (const auto& [c, p] : circuits) report.cases += std::size_t{1} << c.n_inputs();
    std::vector<Outcome> outcomes(circuits.size());
    parallel_for(circuits.size(), o.verify.jobs, [&](std::size_t i) {
        const auto& [c, p] = circuits[i];
        const std::string label = "circuit#" + std::to_string(i);
        try {
            const Support s = support(c, p);
            const auto table = bitsliced::exhaustive_table(c, {}, o.verify.isa);
            for (std::size_t r = 0; r < (std::size_t{1} << c.n_inputs()); ++r) {
                const std::string w = word_of_row(r, c.n_inputs());
                const bool want = semantic_eval(s, w);
                const bool got = bitsliced::table_bit(table, r);
                if (want != got) {
                    outcomes[i] = CaseFailure{label + " word " + w, bit(want), bit(got), ""};
                    return;
                }
            }
        } catch (const std::exception& e) {
            outcomes[i] = error_failure(label, e);
        }
    });
    for (const auto& out : outcomes) record(report, out);
    report.elapsed_ms = clock.elapsed_ms();
    return {report};
}

std::vector<VerificationReport> families_suite(const SuiteOptions& o) {
    const TuringMachine mod3 = fixtures::mod3_length();
    const TuringMachine even = fixtures::tally_even();
    const TuringMachine prime = fixtures::tally_prime();
    const TuringMachine prime_u = fixtures::tally_prime_universal();
    const TuringMachine parity = fixtures::parity();
    const auto universal = [](const TuringMachine& m) { return with_polarity(m, Acceptance::Universal); };

    std::vector<VerificationReport> out;
    auto uniform = [&](const CircuitFamily& f, const TuringMachine& m) {
        out.push_back(verify_family_against_machine(f, m, o.max_n, o.verify));
    };
    uniform(compile_nl_to_monotone_family(mod3, Polarity::Or), mod3);
    uniform(compile_nl_to_monotone_family(universal(mod3), Polarity::And), universal(mod3));
    uniform(compile_nl_to_monotone_family(prime, Polarity::Or), prime);
    uniform(compile_nl_to_monotone_family(prime_u, Polarity::And), prime_u);
    uniform(compile_tally_to_monotone_family(even, Polarity::Or), even);
    uniform(compile_tally_to_monotone_family(universal(even), Polarity::And), universal(even));
    uniform(compile_tally_to_monotone_family(prime, Polarity::Or), prime);
    uniform(compile_tally_to_monotone_family(universal(prime), Polarity::And), universal(prime));
    uniform(compile_tally_to_monotone_family(prime_u, Polarity::And), prime_u);
    auto semi = [&](const TuringMachine& m, Polarity p) {
        out.push_back(verify_semiuniform_family(semiuniform_family(m, p), m, o.max_n, o.verify));
    };
    semi(parity, Polarity::Or);
    semi(universal(parity), Polarity::And);
    semi(mod3, Polarity::Or);
    return out;
}

std::vector<VerificationReport> chains_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    for (const ChainFixture& f : chain_fixtures()) {
        VerificationReport r = verify_reduction_chain(f.original, f.derived, o.max_n, o.verify);
        r.construction = f.name + ": " + r.construction;
        out.push_back(std::move(r));
    }
    return out;
}

// Depth slack allowed on top of the factor 5.
constexpr std::size_t kGadgetDepthConstant = 2;

std::vector<Circuit> gadget_circuits(std::size_t m) {
    std::vector<Circuit> out;
    {
        CircuitBuilder b;
        std::vector<GateId> x;
        for (std::size_t j = 0; j < m; ++j) x.push_back(b.add_input(j));
        out.push_back(std::move(b).build(m, b.add_gate(GateKind::TallyOracle, x)));
    }
    if (m >= 2) {
        // Two gates on promise strings (the full input and a suffix of it), a
        // third stacked on the first, mixed with ordinary logic.
        CircuitBuilder b;
        std::vector<GateId> x;
        for (std::size_t j = 0; j < m; ++j) x.push_back(b.add_input(j));
        const GateId g1 = b.add_gate(GateKind::TallyOracle, x);
        const GateId g2 = b.add_gate(GateKind::TallyOracle, std::vector<GateId>(x.begin() + 1, x.end()));
        const GateId g3 = b.add_gate(GateKind::TallyOracle, {g1});
        const GateId n0 = b.add_gate(GateKind::Not, {x[0]});
        const GateId a = b.add_gate(GateKind::And, {g1, n0});
        const GateId c = b.add_gate(GateKind::And, {g2, g3});
        out.push_back(std::move(b).build(m, b.add_gate(GateKind::Or, {a, c, x[m - 1]})));
    }
    return out;
}

std::vector<VerificationReport> gadget_suite(const SuiteOptions& o) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = "tally_gadget";
    const std::size_t max_m = std::min<std::size_t>(o.max_n, 10);
    report.max_n = max_m;
    std::vector<std::vector<CaseFailure>> per_m(max_m);
    std::vector<std::size_t> cases(max_m, 0);
    std::vector<long> excess(max_m, std::numeric_limits<long>::min());
    parallel_for(max_m, o.verify.jobs, [&](std::size_t idx) {
        const std::size_t m = idx + 1;
        for (const Circuit& c : gadget_circuits(m)) {
            // Every oracle restricted to 0..m.
            for (std::uint32_t mask = 0; mask < (1u << (m + 1)); ++mask) {
                const TallyPredicate oracle = [mask](std::size_t i) { return i < 32 && ((mask >> i) & 1u); };
                const std::string label = "m=" + std::to_string(m) + " oracle=" + std::to_string(mask);
                try {
                    const Circuit expanded = expand_tally_gadget(c, oracle);
                    const long slack = static_cast<long>(expanded.depth()) - 5 * static_cast<long>(c.depth());
                    excess[idx] = std::max(excess[idx], slack);
                    if (slack > static_cast<long>(kGadgetDepthConstant)) {
                        per_m[idx].push_back({label, "depth <= 5*" + std::to_string(c.depth()) + "+" +
                                                         std::to_string(kGadgetDepthConstant),
                                              "depth " + std::to_string(expanded.depth()), ""});
                    }
                    for (std::size_t i = 0; i <= m; ++i) {
                        const std::string w = std::string(m - i, '0') + std::string(i, '1');
                        ++cases[idx];
                        const bool want = evaluate(c, w, oracle);
                        const bool got = evaluate(expanded, w);
                        if (want != got) per_m[idx].push_back({label + " word " + w, bit(want), bit(got), ""});
                    }
                } catch (const std::exception& e) {
                    per_m[idx].push_back(error_failure(label, e));
                }
            }
        }
    });
    long worst = std::numeric_limits<long>::min();
    for (std::size_t idx = 0; idx < max_m; ++idx) {
        report.cases += cases[idx];
        worst = std::max(worst, excess[idx]);
        for (const auto& f : per_m[idx]) record(report, f);
    }
    report.metrics.emplace_back("depth_bound", "5*depth+" + std::to_string(kGadgetDepthConstant));
    report.metrics.emplace_back("max_depth_minus_5x", max_m == 0 ? "n/a" : std::to_string(worst));
    report.elapsed_ms = clock.elapsed_ms();
    return {report};
}

std::vector<VerificationReport> dualrail_suite(const SuiteOptions& o) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = "dual_rail";
    report.max_n = 8;
    auto rng = suite_rng(o.seed, 2);
    std::vector<Circuit> circuits;
    for (std::size_t i = 0; i < o.random_circuits; ++i) circuits.push_back(random_general_circuit(rng, 8, 20));
    for (const auto& c : circuits) report.cases += std::size_t{1} << c.n_inputs();
    std::vector<Outcome> outcomes(circuits.size());
    parallel_for(circuits.size(), o.verify.jobs, [&](std::size_t i) {
        const Circuit& c = circuits[i];
        const std::string label = "circuit#" + std::to_string(i);
        try {
            const auto table = bitsliced::exhaustive_table(c, {}, o.verify.isa);
            for (std::size_t r = 0; r < (std::size_t{1} << c.n_inputs()); ++r) {
                const std::string w = word_of_row(r, c.n_inputs());
                const Circuit rail = dual_rail_compile(c, w);
                const bool not_free = std::none_of(rail.gates().begin(), rail.gates().end(), [](const Gate& g) {
                    return g.kind == GateKind::Not || g.kind == GateKind::Input;
                });
                if (!not_free) {
                    outcomes[i] = CaseFailure{label + " word " + w, "no Not/Input gates", "found", ""};
                    return;
                }
                const bool want = bitsliced::table_bit(table, r);
                const bool got = evaluate(rail, "");
                if (want != got) {
                    outcomes[i] = CaseFailure{label + " word " + w, bit(want), bit(got), ""};
                    return;
                }
            }
        } catch (const std::exception& e) {
            outcomes[i] = error_failure(label, e);
        }
    });
    for (const auto& out : outcomes) record(report, out);
    report.elapsed_ms = clock.elapsed_ms();
    return {report};
}

std::vector<VerificationReport> counting_suite(const SuiteOptions& o) {
    Stopwatch clock;
    VerificationReport report;
    report.construction = "inductive_counting";
    report.max_n = 50;
    auto rng = suite_rng(o.seed, 3);
    std::vector<std::pair<Digraph, VertexId>> graphs;
    for (std::size_t i = 0; i < o.random_graphs; ++i) {
        Digraph g = random_digraph(rng, 50);
        const VertexId from = static_cast<VertexId>(below(rng, g.vertex_count()));
        graphs.emplace_back(std::move(g), from);
    }
    for (const auto& [g, from] : graphs) report.cases += g.vertex_count();
    std::vector<Outcome> outcomes(graphs.size());
    parallel_for(graphs.size(), o.verify.jobs, [&](std::size_t i) {
        const auto& [g, from] = graphs[i];
        const std::string label = "graph#" + std::to_string(i);
        try {
            for (VertexId to = 0; to < g.vertex_count(); ++to) {
                const bool want = !reachable(g, from, std::span<const VertexId>(&to, 1));
                const bool got = unreachable_inductive_counting(g, from, to);
                if (want != got) {
                    outcomes[i] = CaseFailure{label + " " + std::to_string(from) + "->" + std::to_string(to),
                                              bit(want), bit(got), ""};
                    return;
                }
            }
        } catch (const std::exception& e) {
            outcomes[i] = error_failure(label, e);
        }
    });
    for (const auto& out : outcomes) record(report, out);
    report.elapsed_ms = clock.elapsed_ms();
    return {report};
}

std::vector<VerificationReport> witness_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    {
        Stopwatch clock;
        VerificationReport r;
        r.construction = "monotone_enumeration";
        r.max_n = 5;
        for (std::size_t n = 1; n <= 5; ++n) {
            for (Polarity p : {Polarity::Or, Polarity::And}) {
                ++r.cases;
                const auto set = enumerate_monotone_functions(n, p);
                const std::size_t want = (std::size_t{1} << n) + 1;
                if (set.size() != want) {
                    record(r, CaseFailure{"n=" + std::to_string(n) + " " + std::string(to_string(p)),
                                          std::to_string(want), std::to_string(set.size()), ""});
                }
            }
        }
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(std::move(r));
    }
    for (WitnessKind kind : {WitnessKind::OrVsAnd, WitnessKind::ParityVsMonotone, WitnessKind::UniformVsSemiuniform}) {
        Stopwatch clock;
        VerificationReport r;
        r.construction = "witness:" + std::string(to_string(kind));
        r.max_n = 5;
        for (std::size_t n = 2; n <= 5; ++n) {
            const SeparationWitness w = separation_witness(kind, n);
            for (const WitnessCheck& c : w.checks) {
                ++r.cases;
                if (!c.holds) record(r, CaseFailure{"n=" + std::to_string(n), c.claim, "does not hold", ""});
            }
            ++r.cases;
            if (!replay_witness(w)) record(r, CaseFailure{"n=" + std::to_string(n), "replayable", "differs", ""});
        }
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(std::move(r));
    }
    const TuringMachine parity = fixtures::parity();
    out.push_back(verify_semiuniform_family(semiuniform_family(parity, Polarity::Or), parity, o.max_n, o.verify));
    out.back().construction = "witness:semiuniform_parity";
    return out;
}

std::vector<VerificationReport> codecs_suite(const SuiteOptions&) {
    std::vector<VerificationReport> out;
    {
        Stopwatch clock;
        VerificationReport r;
        r.construction = "pair_roundtrip";
        r.max_n = 8;
        std::vector<std::string> words;
        for (const auto& w : words_up_to(8)) {
            if (!w.empty()) words.push_back(w);
        }
        for (const auto& a : words) {
            for (const auto& b : words) {
                ++r.cases;
                const std::size_t k = std::max(a.size(), b.size());
                const std::string pa = std::string(k - a.size(), '0') + a;
                const std::string pb = std::string(k - b.size(), '0') + b;
                const std::string p = pair(a, b);
                const auto [ua, ub] = unpair(p);
                if (p.size() != 2 * k || ua != pa || ub != pb) {
                    record(r, CaseFailure{a + "," + b, pa + "," + pb, ua + "," + ub, "pair=" + p});
                }
            }
        }
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(std::move(r));
    }
    {
        Stopwatch clock;
        VerificationReport r;
        r.construction = "binary_unary_roundtrip";
        r.max_n = 8;
        for (std::uint64_t x = 0; x < 256; ++x) {
            ++r.cases;
            const std::string bin = to_binary(x);
            const std::string wire = unary_wire(bin_to_unary(bin), 256);
            if (bin_to_unary(bin) != x || unary_to_bin(wire) != bin) {
                record(r, CaseFailure{std::to_string(x), bin, unary_to_bin(wire), ""});
            }
            for (std::uint64_t y = 0; y < 256; ++y) {
                ++r.cases;
                const auto back = unpair_number(pair_numbers(x, y));
                if (back != std::pair{x, y}) {
                    record(r, CaseFailure{"<" + std::to_string(x) + "," + std::to_string(y) + ">",
                                          std::to_string(x) + "," + std::to_string(y),
                                          std::to_string(back.first) + "," + std::to_string(back.second), ""});
                }
            }
        }
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(std::move(r));
    }
    return out;
}

using SuiteFn = std::vector<VerificationReport> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"support", support_suite}, {"families", families_suite}, {"chains", chains_suite},
        {"gadget", gadget_suite},   {"dualrail", dualrail_suite}, {"counting", counting_suite},
        {"witness", witness_suite}, {"codecs", codecs_suite},
    };
    return table;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names{"all"};
    for (const auto& [name, fn] : suites()) names.push_back(name);
    return names;
}

std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& options) {
    std::vector<VerificationReport> out;
    for (const auto& [suite, fn] : suites()) {
        if (name != "all" && name != suite) continue;
        auto reports = fn(options);
        for (auto& r : reports) out.push_back(std::move(r));
    }
    if (out.empty() && name != "all") throw Error("unknown suite '" + std::string(name) + "'");
    return out;
}

}  // namespace monocirc
