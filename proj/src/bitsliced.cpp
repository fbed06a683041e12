#include "monocirc/bitsliced.hpp"

#include <algorithm>
#include <string>

#include "bitsliced_program.hpp"
#include "monocirc/error.hpp"

namespace monocirc::bitsliced {

namespace detail {

Program compile_program(const Circuit& circuit, const TallyPredicate& oracle) {
    require_valid(circuit);
    Program p;
    p.n_inputs = circuit.n_inputs();
    p.gate_count = circuit.gates().size();
    p.output = circuit.output();
    for (GateId id : topological_gate_order(circuit)) {
        const Gate& g = circuit.gate(id);
        Step s{g.kind, id, static_cast<std::uint32_t>(g.index), static_cast<std::uint32_t>(p.wires.size()),
               static_cast<std::uint32_t>(g.inputs.size()), static_cast<std::uint32_t>(p.answers.size())};
        p.wires.insert(p.wires.end(), g.inputs.begin(), g.inputs.end());
        if (g.kind == GateKind::TallyOracle) {
            if (!oracle) throw CircuitError("circuit has tally oracle gates but no oracle was supplied");
            for (std::size_t i = 0; i <= g.inputs.size(); ++i) p.answers.push_back(oracle(i) ? 1 : 0);
        }
        p.steps.push_back(s);
    }
    return p;
}

void throw_promise_violation(GateId gate) {
    throw CircuitError("tally oracle gate " + std::to_string(gate) + ": inputs violate the 0*1* promise");
}

namespace {

// Rows valid in block `block` of 64 lanes when the table has `rows` rows.
std::uint64_t valid_lanes(std::size_t rows, std::size_t block) {
    const std::size_t first = block * 64;
    if (rows >= first + 64) return ~0ull;
    return (std::uint64_t{1} << (rows - first)) - 1;
}

}  // namespace

void run_scalar(const Program& p, std::uint64_t* out, std::size_t out_words) {
    const std::size_t rows = std::size_t{1} << p.n_inputs;
    std::vector<std::uint64_t> value(p.gate_count, 0);
    for (std::size_t block = 0; block < out_words; ++block) {
        const std::uint64_t valid = valid_lanes(rows, block);
        for (const Step& s : p.steps) {
            const GateId* in = p.wires.data() + s.first_input;
            std::uint64_t v = 0;
            switch (s.kind) {
                case GateKind::Input:
                    v = s.index < 6 ? kLanePattern[s.index] : (((block >> (s.index - 6)) & 1u) ? ~0ull : 0ull);
                    break;
                case GateKind::Const0: v = 0; break;
                case GateKind::Const1: v = ~0ull; break;
                case GateKind::Not: v = ~value[in[0]]; break;
                case GateKind::Or:
                    for (std::uint32_t k = 0; k < s.fan_in; ++k) v |= value[in[k]];
                    break;
                case GateKind::And:
                    v = ~0ull;
                    for (std::uint32_t k = 0; k < s.fan_in; ++k) v &= value[in[k]];
                    break;
                case GateKind::TallyOracle: {
                    const std::uint32_t m = s.fan_in;
                    std::uint64_t broken = 0;
                    for (std::uint32_t q = 0; q + 1 < m; ++q) broken |= value[in[q]] & ~value[in[q + 1]];
                    if (broken & valid) throw_promise_violation(s.gate);
                    const std::uint8_t* answer = p.answers.data() + s.first_answer;
                    // Exactly i ones: wire m-i is set and wire m-i-1 is clear.
                    for (std::uint32_t i = 0; i <= m; ++i) {
                        if (!answer[i]) continue;
                        const std::uint64_t at_least = i == 0 ? ~0ull : value[in[m - i]];
                        const std::uint64_t beyond = i == m ? 0ull : value[in[m - i - 1]];
                        v |= at_least & ~beyond;
                    }
                    break;
                }
            }
            value[s.gate] = v;
        }
        out[block] = value[p.output] & valid;
    }
}

}  // namespace detail

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(MONOCIRC_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa best_isa() {
    static const Isa best = isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    return best;
}

std::vector<std::uint64_t> exhaustive_table(const Circuit& circuit, const TallyPredicate& oracle, Isa isa) {
    if (circuit.n_inputs() > kMaxInputs) {
        throw CircuitError("exhaustive_table: n_inputs=" + std::to_string(circuit.n_inputs()) + " exceeds " +
                           std::to_string(kMaxInputs));
    }
    if (!isa_supported(isa)) throw CircuitError("instruction set " + std::string(to_string(isa)) + " unavailable");
    const auto program = detail::compile_program(circuit, oracle);
    const std::size_t rows = std::size_t{1} << circuit.n_inputs();
    std::vector<std::uint64_t> table((rows + 63) / 64, 0);
#if defined(MONOCIRC_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        detail::run_avx2(program, table.data(), table.size());
        return table;
    }
#endif
    detail::run_scalar(program, table.data(), table.size());
    return table;
}

}  // namespace monocirc::bitsliced
