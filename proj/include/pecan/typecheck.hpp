#pragma once

// Typing and call resolution. A Registry holds the well-formed predicates and
// the structures seen so far; the Checker adds to it in program order and
// annotates every checked tree with types and resolved calls.

#include "pecan/ast.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pecan {

struct PredicateInfo {
    std::string name;
    std::vector<ast::Param> params;
    ast::PredPtr body;  // checked core predicate, or an Aut literal keyed by parameter names
    SourceLoc loc;
};

struct StructureInfo {
    ast::TypeTag head;  // t(x̄)
    std::map<std::string, ast::Template> defs;
    bool numeric = false;
};

struct Registry {
    std::map<std::string, PredicateInfo> predicates;
    std::map<std::string, StructureInfo> structures;

    const PredicateInfo& predicate(const std::string& name) const;
};

namespace typecheck {

/// Γ: variables in scope with their types; untyped variables map to nullopt.
using TypeEnv = std::map<std::string, std::optional<ast::TypeTag>>;

/// 1-based positions of the `any` slots of a template.
std::vector<int> template_params(const ast::Template& t);
/// 1-based positions of the identifier slots of a template.
std::vector<int> template_implicits(const ast::Template& t);

/// Name of the predicate synthesized for a numeric structure without "one".
std::string default_one_name(const std::string& structure);

class Checker {
public:
    explicit Checker(Registry& registry) : reg_(registry) {}

    /// Registers (or replaces) a structure. Numeric structures without "one"
    /// get a synthesized least-nonzero-element predicate.
    void add_structure(const ast::StructureDecl& s);
    /// Checks a desugared definition and registers it.
    void add_predicate(const ast::PredicateDef& d);
    /// Registers a predicate whose body is an automaton literal.
    void add_literal(const std::string& name, const std::vector<ast::Param>& params,
                     std::shared_ptr<const PecanAutomaton> literal, SourceLoc loc);
    /// Checks a desugared theorem body, which must be closed.
    void check_theorem(const ast::PredPtr& body);

    /// Resolves P(ē) given the argument types. Without a structure defining
    /// `name` for some argument type, the call resolves to P itself.
    ast::CallPlan resolve_call(const std::string& name, const std::vector<std::optional<ast::TypeTag>>& arg_types,
                               SourceLoc loc) const;

    std::optional<ast::TypeTag> type_expr(const TypeEnv& gamma, const ast::ExprPtr& e,
                                          const std::optional<ast::TypeTag>& expected = std::nullopt) const;
    void check_prop(const TypeEnv& gamma, const ast::PredPtr& p) const;

    bool is_numeric(const std::optional<ast::TypeTag>& t) const;

private:
    Registry& reg_;
    std::string defining_;  // name of the definition being checked

    std::optional<ast::TypeTag> infer(const TypeEnv& gamma, const ast::ExprPtr& e) const;
    const ast::Template* structure_def(const ast::TypeTag& t, const std::string& op) const;
    ast::CallPlan resolve_operator(const std::string& op, const ast::TypeTag& t, std::size_t nargs,
                                   SourceLoc loc) const;
    void check_type_tag(const TypeEnv& gamma, const ast::TypeTag& t, SourceLoc loc) const;
    void check_params(const std::vector<ast::Param>& params, SourceLoc loc) const;
};

}  // namespace typecheck
}  // namespace pecan
