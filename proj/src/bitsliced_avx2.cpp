// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <vector>

#include "bitsliced_program.hpp"

namespace monocirc::bitsliced::detail {

namespace {

// 256 lanes per block: element e of the vector holds rows 64e..64e+63 of the
// block, so row bits 6 and 7 select the element.
__m256i input_lanes(std::uint32_t var, std::size_t block) {
    if (var < 6) return _mm256_set1_epi64x(static_cast<long long>(kLanePattern[var]));
    if (var == 6) return _mm256_setr_epi64x(0, -1, 0, -1);
    if (var == 7) return _mm256_setr_epi64x(0, 0, -1, -1);
    return ((block >> (var - 8)) & 1u) ? _mm256_set1_epi64x(-1) : _mm256_setzero_si256();
}

__m256i valid_lanes(std::size_t rows, std::size_t block) {
    alignas(32) std::uint64_t lanes[4];
    for (std::size_t e = 0; e < 4; ++e) {
        const std::size_t first = block * 256 + e * 64;
        if (rows >= first + 64) {
            lanes[e] = ~0ull;
        } else if (rows <= first) {
            lanes[e] = 0;
        } else {
            lanes[e] = (std::uint64_t{1} << (rows - first)) - 1;
        }
    }
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes));
}

// Wrapper so std::vector keeps the vector attributes.
struct Lane {
    __m256i v = _mm256_setzero_si256();
};

}  // namespace

void run_avx2(const Program& p, std::uint64_t* out, std::size_t out_words) {
    const std::size_t rows = std::size_t{1} << p.n_inputs;
    const std::size_t blocks = (out_words + 3) / 4;
    const __m256i ones = _mm256_set1_epi64x(-1);
    std::vector<Lane> value(p.gate_count);
    alignas(32) std::uint64_t lanes[4];
    for (std::size_t block = 0; block < blocks; ++block) {
        const __m256i valid = valid_lanes(rows, block);
        for (const Step& s : p.steps) {
            const GateId* in = p.wires.data() + s.first_input;
            __m256i v = _mm256_setzero_si256();
            switch (s.kind) {
                case GateKind::Input: v = input_lanes(s.index, block); break;
                case GateKind::Const0: break;
                case GateKind::Const1: v = ones; break;
                case GateKind::Not: v = _mm256_xor_si256(value[in[0]].v, ones); break;
                case GateKind::Or:
                    for (std::uint32_t k = 0; k < s.fan_in; ++k) v = _mm256_or_si256(v, value[in[k]].v);
                    break;
                case GateKind::And:
                    v = ones;
                    for (std::uint32_t k = 0; k < s.fan_in; ++k) v = _mm256_and_si256(v, value[in[k]].v);
                    break;
                case GateKind::TallyOracle: {
                    const std::uint32_t m = s.fan_in;
                    __m256i broken = _mm256_setzero_si256();
                    for (std::uint32_t q = 0; q + 1 < m; ++q) {
                        broken = _mm256_or_si256(broken, _mm256_andnot_si256(value[in[q + 1]].v, value[in[q]].v));
                    }
                    if (!_mm256_testz_si256(broken, valid)) throw_promise_violation(s.gate);
                    const std::uint8_t* answer = p.answers.data() + s.first_answer;
                    for (std::uint32_t i = 0; i <= m; ++i) {
                        if (!answer[i]) continue;
                        const __m256i at_least = i == 0 ? ones : value[in[m - i]].v;
                        const __m256i beyond = i == m ? _mm256_setzero_si256() : value[in[m - i - 1]].v;
                        v = _mm256_or_si256(v, _mm256_andnot_si256(beyond, at_least));
                    }
                    break;
                }
            }
            value[s.gate].v = v;
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_and_si256(value[p.output].v, valid));
        for (std::size_t e = 0; e < 4 && block * 4 + e < out_words; ++e) out[block * 4 + e] = lanes[e];
    }
}

}  // namespace monocirc::bitsliced::detail
