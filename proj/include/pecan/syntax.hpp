#pragma once

#include "pecan/ast.hpp"

#include <map>
#include <string>

namespace pecan::syntax {

/// Parses a whole source file. Throws SyntaxError.
ast::Program parse(const std::string& text);
/// Parses a single predicate (for tests and tools).
ast::PredPtr parse_pred(const std::string& text);

std::string print(const ast::Program& p);
std::string print(const ast::Item& item);
std::string print(const ast::PredPtr& p);
std::string print(const ast::ExprPtr& e);

/// Variable restrictions in force at a point of a file.
using Restrictions = std::map<std::string, ast::TypeTag>;

/// Rewrites sugar into the core language: no implication, iff, universal
/// quantifier, word indexing, multiplication, `is`, or relation other than
/// `<` and `=`. Quantifiers bind one variable each, and restricted variables
/// receive their type. Throws SyntaxError.
ast::PredPtr desugar(const ast::PredPtr& p, const Restrictions& restrictions);

/// Desugars one item. Restrict updates `restrictions`; definitions get their
/// unannotated parameters typed by the restrictions.
ast::Item desugar(const ast::Item& item, Restrictions& restrictions);
ast::Program desugar(const ast::Program& p);

/// True when `p` uses only core constructs.
bool is_core(const ast::PredPtr& p);

}  // namespace pecan::syntax
