#pragma once

// Abstract syntax of Pecan programs. Nodes are shared: desugaring builds new
// trees that reuse unchanged subtrees, and the type checker fills in the
// annotation fields of the tree it is given.

#include "pecan/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pecan {
struct PecanAutomaton;
}

namespace pecan::ast {

/// τ = P or P(x̄): the type of y is the set of y with (x̄, y) ∈ L(P).
struct TypeTag {
    std::string name;
    std::vector<std::string> args;

    friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

std::string to_string(const TypeTag& t);

/// One argument position of a resolved call: either the index of an actual
/// argument or a variable supplied implicitly by a structure.
struct Slot {
    int arg = -1;
    std::string var;
};

/// Outcome of call resolution. `prim` marks operations with no predicate
/// behind them (raw track equality and the all-zero track).
struct CallPlan {
    enum class Prim { None, RawEqual, RawZero };
    Prim prim = Prim::None;
    std::string target;
    std::vector<Slot> slots;

    bool resolved() const { return prim != Prim::None || !target.empty(); }
};

enum class ExprKind { Var, Int, Add, Sub, Mul, Func, WordAt, WordRange };

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    ExprKind kind = ExprKind::Var;
    SourceLoc loc;
    std::string name;                // Var, Func, and the word of WordAt/WordRange
    unsigned long long value = 0;    // Int, and the factor of Mul
    std::vector<ExprPtr> args;       // operands, call arguments, or indices

    // Filled by the type checker.
    std::optional<TypeTag> type;
    CallPlan call;   // Add/Sub: adder; Func: the predicate
    CallPlan zero;   // Int
    CallPlan one;    // Int
    CallPlan adder;  // Int above one
};

enum class PredKind { True, False, And, Or, Not, Implies, Iff, Exists, Forall, Rel, Call, Is, Aut };
enum class RelOp { Lt, Le, Gt, Ge, Eq, Ne };

struct Pred;
using PredPtr = std::shared_ptr<Pred>;

struct Pred {
    PredKind kind = PredKind::True;
    SourceLoc loc;
    std::vector<PredPtr> kids;
    std::vector<std::string> vars;    // quantifier binders
    std::optional<TypeTag> type;      // quantifier type, or the type of Is
    RelOp op = RelOp::Eq;
    std::vector<ExprPtr> args;        // Rel sides, Call arguments, Is subject
    std::string name;                 // Call target as written
    std::shared_ptr<const PecanAutomaton> literal;  // Aut

    // Filled by the type checker: Rel's less/equal, Call's target.
    CallPlan call;
};

struct Param {
    std::string name;
    std::optional<TypeTag> type;
};

struct PredicateDef {
    std::string name;
    std::vector<Param> params;
    PredPtr body;
    SourceLoc loc;
};

struct RestrictDecl {
    std::vector<std::string> vars;
    TypeTag type;
    SourceLoc loc;
};

/// A call template f(ȳ); a slot without a name is a parameter (`any`).
struct Template {
    std::string target;
    std::vector<std::optional<std::string>> slots;
};

struct StructureDecl {
    TypeTag head;  // t(x̄)
    std::vector<std::pair<std::string, Template>> defs;
    SourceLoc loc;
};

struct TheoremDecl {
    std::string name;
    PredPtr body;
    SourceLoc loc;
};

/// `#load "file" as P(x̄).`
struct LoadDecl {
    std::string path;
    std::string name;
    std::vector<Param> params;
    SourceLoc loc;
};

/// `#save_aut "file" P.`
struct SaveDecl {
    std::string path;
    std::string name;
    SourceLoc loc;
};

/// `#builtin "automaton" as P(x̄).`
struct BuiltinDecl {
    std::string builtin;
    std::string name;
    std::vector<Param> params;
    SourceLoc loc;
};

using Item = std::variant<PredicateDef, RestrictDecl, StructureDecl, TheoremDecl, LoadDecl, SaveDecl, BuiltinDecl>;

struct Program {
    std::vector<Item> items;
};

// Node constructors.
ExprPtr make_var(std::string name, SourceLoc loc = {});
ExprPtr make_int(unsigned long long value, SourceLoc loc = {});
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
ExprPtr make_func(std::string name, std::vector<ExprPtr> args, SourceLoc loc = {});

PredPtr make_const(bool value, SourceLoc loc = {});
PredPtr make_not(PredPtr p, SourceLoc loc = {});
PredPtr make_junction(PredKind kind, PredPtr lhs, PredPtr rhs, SourceLoc loc = {});
PredPtr make_quantifier(PredKind kind, std::vector<std::string> vars, std::optional<TypeTag> type, PredPtr body,
                        SourceLoc loc = {});
PredPtr make_rel(RelOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
PredPtr make_call(std::string name, std::vector<ExprPtr> args, SourceLoc loc = {});

/// Free variables in first-occurrence order.
std::vector<std::string> free_vars(const PredPtr& p);
std::vector<std::string> free_vars(const ExprPtr& e);

}  // namespace pecan::ast
