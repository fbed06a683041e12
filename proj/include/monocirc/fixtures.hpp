#pragma once

// Fixture machines used by the verification suites, the CLI and the tests.

#include <vector>

#include "monocirc/machine.hpp"

namespace monocirc::fixtures {

/// Starts in its accept state.
TuringMachine accept_immediately();
/// Universal machine that starts in its reject state.
TuringMachine reject_immediately();
/// Length language {w : |w| = 0 mod 3}; deterministic, existential.
TuringMachine mod3_length();
/// Words with an odd number of 1s; deterministic, existential.
TuringMachine parity();
/// Tally language {1^k : k even}; deterministic, existential.
TuringMachine tally_even();
/// Tally primes by trial division over d = 2, 3, ..., rewinding the input
/// head with a position counter; deterministic, existential.
TuringMachine tally_prime();
/// Tally primes, universal: every branch guesses a divisor d in [2, k-1] and
/// rejects iff d divides k.
TuringMachine tally_prime_universal();

std::vector<TuringMachine> all_machines();

/// Looks a fixture up by its name; throws MachineError if unknown.
TuringMachine machine_by_name(std::string_view name);

}  // namespace monocirc::fixtures
