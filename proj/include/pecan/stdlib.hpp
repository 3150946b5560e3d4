#pragma once

// Built-in automata for binary naturals (one AP track per number, least
// significant bit first, eventually all zeros) and the Thue-Morse word.

#include "pecan/buchi.hpp"

#include <string>

namespace pecan::stdlib {

/// Tracks that are eventually false forever.
BuchiAutomaton build_nat_type(const std::string& x = "x");

/// Carry automaton for x + y = z.
BuchiAutomaton build_bin_add(const std::string& x = "x", const std::string& y = "y", const std::string& z = "z");

/// x < y, by guessing the most significant differing position.
BuchiAutomaton build_bin_less(const std::string& x = "x", const std::string& y = "y");

/// Trackwise equality.
BuchiAutomaton build_equal(const std::string& x = "x", const std::string& y = "y");

/// The single word 0^ω on track z.
BuchiAutomaton build_zero(const std::string& z = "z");

/// T(i) iff i has an odd number of one bits.
BuchiAutomaton build_thue_morse(const std::string& i = "i");

/// Builder for a `#builtin` name with the given AP per argument, or throws
/// pecan::Error if the name is unknown or the arity is wrong.
BuchiAutomaton build_builtin(const std::string& name, const std::vector<std::string>& aps);

/// Source of the prelude loaded before user files.
const std::string& prelude_source();

}  // namespace pecan::stdlib
