#pragma once

// Encodings and reductions. Words are 0/1 strings; a binary number is written
// most significant bit first, while "bit i" of a query word is its character i.
// Unary queries to tally oracles are counts k standing for the word 1^k.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monocirc/circuit.hpp"
#include "monocirc/compile.hpp"
#include "monocirc/machine.hpp"

namespace monocirc {

/// <a,b> = b_{k-1} a_{k-1} ... b_0 a_0, the shorter argument left-padded with
/// zeros to the common width k. Both arguments must be non-empty.
std::string pair(std::string_view a, std::string_view b);
/// Inverse of pair on even-length strings.
std::pair<std::string, std::string> unpair(std::string_view p);

/// Binary encoding without leading zeros ("0" for zero).
std::string to_binary(std::uint64_t x);
/// Accepts leading zeros; throws ReductionError on non-binary input or overflow.
std::uint64_t from_binary(std::string_view bits);

std::uint64_t bin_to_unary(std::string_view x);
/// 0^{z-k}1^k -> binary(k). Throws ReductionError if the string is not of
/// that form.
std::string unary_to_bin(std::string_view wire);
/// 0^{z-k}1^k; throws ReductionError when k > z.
std::string unary_wire(std::uint64_t k, std::uint64_t z);
/// The word 1^k.
std::string unary_word(std::uint64_t k);
/// k for a word 1^k, nullopt for any other word.
std::optional<std::uint64_t> unary_length(std::string_view word);

/// Numeric shorthands: pair_numbers(a, b) = from_binary(pair(bin a, bin b)),
/// and unpair_number(k) splits binary(k), left-padded to even length.
std::uint64_t pair_numbers(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> unpair_number(std::uint64_t k);

using QueryTransform = std::function<std::vector<std::string>(std::string_view)>;
using Membership = std::function<bool(std::string_view)>;

/// For every query x of tau(w) and every i in 0..|x|: <|x|,|x|> when i = |x|,
/// <i,|x|> when bit i of x is 1 (Or) or 0 (And), and 1 otherwise.
std::vector<std::uint64_t> tau_prime(const QueryTransform& tau, std::string_view w, Polarity polarity);
/// z = 2^(2 * (ceil(log2 max(|w|, 1)) + 1)), the wire width for serializing
/// tau_prime counts.
std::uint64_t tau_prime_padding_width(std::size_t word_length);
/// 0^{z-k}1^k for every count; throws ReductionError when a count exceeds z.
std::vector<std::string> serialize_unary_tuple(std::span<const std::uint64_t> counts, std::uint64_t z);

/// The oracle machine M_f for a uniform single-polarity family, queried on
/// 1^k. Throws ReductionError when k decodes to <i,n> with i > n.
bool oracle_machine_mf(const CircuitFamily& family, std::uint64_t k);

/// Query counts -> word of length q whose character k-1 stands for 1^k. Or: set
/// exactly the queried positions. And: clear exactly the queried positions.
/// Throws ReductionError when a count is outside [1, q].
std::string r_map(std::span<const std::uint64_t> counts, Polarity polarity, std::size_t q);

enum class ReductionKind { Many, Dtt, Ctt, Tt, Turing };
std::string_view to_string(ReductionKind kind);
std::optional<ReductionKind> reduction_kind_from_string(std::string_view name);

struct ReductionSpec {
    ReductionKind kind = ReductionKind::Many;
    std::string name;
    QueryTransform tau;
    /// Tt only: truth table over the query answers, as 2^l characters '0'/'1';
    /// row r assigns bit i of r to query i.
    std::function<std::string(std::string_view)> sigma;
    /// Turing only: decides w with adaptive access to the oracle.
    std::function<bool(std::string_view, const Membership&)> turing;
};

/// Throws ReductionError on a malformed spec or an arity mismatch.
bool apply_reduction(const ReductionSpec& spec, std::string_view w, const Membership& oracle);

/// A many-one spec seen as a one-query dtt or ctt spec.
ReductionSpec lift_reduction(const ReductionSpec& spec, ReductionKind target);

/// Membership in a tally language, answered by a finite set, a machine over
/// {1} or an arbitrary procedure. Answers are memoized; copies share the memo
/// and are safe to query from several threads.
class TallyOracle {
  public:
    static TallyOracle from_set(std::set<std::uint64_t> lengths);
    static TallyOracle from_machine(TuringMachine machine);
    static TallyOracle from_procedure(std::string name, std::function<bool(std::uint64_t)> contains);

    const std::string& name() const;
    bool contains(std::uint64_t k) const;
    /// False for words outside 1*.
    bool member(std::string_view word) const;
    TallyPredicate predicate() const;
    Membership membership() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

/// M_f of a family, packaged as a tally oracle.
TallyOracle mf_oracle(const CircuitFamily& family);

/// Membership in the language of a uniform family: x is a member iff
/// generator(|x|) evaluates to 1 on x. Circuits are cached per length; the
/// result is safe to call from several threads.
Membership family_membership(const CircuitFamily& family);

/// Named query transforms.
///   identity                w -> (w)
///   prefixes                w -> (w[0..0), w[0..1), ..., w)
///   halves                  w -> (left half, right half), left gets the middle
///   blocks{size}            consecutive blocks of `size` characters
///   one_positions{offset}   1^{i+offset} for every i with w_i = 1
///   zero_positions{offset}  1^{i+offset} for every i with w_i = 0
///   run_lengths             1^r for every maximal run of 1s of length r
/// `params` holds the integer parameters; missing ones take defaults
/// (size 2, offset 1).
QueryTransform builtin_transform(std::string_view name, const std::map<std::string, std::int64_t>& params = {});
std::vector<std::string> builtin_transform_names();

/// Named adaptive procedures for Turing reductions, built over a transform.
///   first_member_parity  query tau(w) in order up to the first member;
///                        accept iff one is found at an even position
std::function<bool(std::string_view, const Membership&)> builtin_turing_procedure(std::string_view name,
                                                                                   QueryTransform tau);

}  // namespace monocirc
