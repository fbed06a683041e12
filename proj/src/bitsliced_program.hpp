#pragma once

// Flattened, topologically ordered form of a circuit shared by the
// bit-sliced kernels. Internal to the library.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monocirc/circuit.hpp"

namespace monocirc::bitsliced::detail {

struct Step {
    GateKind kind;
    GateId gate;
    std::uint32_t index;        // Input: variable index
    std::uint32_t first_input;  // offset into Program::wires
    std::uint32_t fan_in;
    std::uint32_t first_answer;  // TallyOracle: offset into Program::answers
};

struct Program {
    std::size_t n_inputs = 0;
    std::size_t gate_count = 0;
    GateId output = 0;
    std::vector<Step> steps;
    std::vector<GateId> wires;
    // TallyOracle answers oracle(0..m), precomputed per gate.
    std::vector<std::uint8_t> answers;
};

Program compile_program(const Circuit& circuit, const TallyPredicate& oracle);

/// Mask of the rows of a 64-lane word that are set in variable j's column,
/// for j < 6.
inline constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

[[noreturn]] void throw_promise_violation(GateId gate);

void run_scalar(const Program& program, std::uint64_t* out, std::size_t out_words);
#if defined(MONOCIRC_HAVE_AVX2)
void run_avx2(const Program& program, std::uint64_t* out, std::size_t out_words);
#endif

}  // namespace monocirc::bitsliced::detail
