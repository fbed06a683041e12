#pragma once

// Bit-sliced exhaustive evaluation: one machine word carries the value of a
// gate on 64 input words at once (256 with AVX2). The scalar reference for
// these kernels is monocirc::evaluate.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "monocirc/circuit.hpp"

namespace monocirc::bitsliced {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_supported(Isa isa);
/// Widest kernel the running CPU supports.
Isa best_isa();

/// Largest n_inputs accepted by exhaustive_table.
inline constexpr std::size_t kMaxInputs = 24;

/// Packed truth table of the circuit over all 2^n words, n = n_inputs. Row r
/// (bit r % 64 of element r / 64) is the value on word_of_row(r, n).
/// Throws CircuitError on the same conditions as evaluate.
std::vector<std::uint64_t> exhaustive_table(const Circuit& circuit, const TallyPredicate& oracle = {},
                                            Isa isa = best_isa());

inline bool table_bit(const std::vector<std::uint64_t>& table, std::size_t row) {
    return (table[row / 64] >> (row % 64)) & 1u;
}

}  // namespace monocirc::bitsliced
