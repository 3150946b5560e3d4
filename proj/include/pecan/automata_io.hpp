#pragma once

// Text format for automata with variable maps (`.aut` files):
//
//   aps <n> <name>...
//   states <m> initial <q>
//   accepting <q>...
//   <src> -> <dst> [<guard>]        one line per edge
//   var <name>: <ap>...             one line per variable
//
// Guards refer to APs by index and use t, f, !, &, | and parentheses.
// Blank lines and lines starting with `//` are ignored.

#include "pecan/var_automaton.hpp"

#include <string>

namespace pecan::io {

/// Canonical form: reachable states numbered in breadth-first order from the
/// initial state, APs in order of first use by the guards and then the rest.
std::string serialize(const PecanAutomaton& a);

/// Throws SyntaxError (with the line number) on malformed input.
PecanAutomaton parse_document(const std::string& text);

PecanAutomaton load_file(const std::string& path);
void save_file(const std::string& path, const PecanAutomaton& a);

}  // namespace pecan::io
