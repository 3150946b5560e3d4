#include "pecan/ast.hpp"

#include <algorithm>
#include <set>

namespace pecan::ast {

std::string to_string(const TypeTag& t) {
    std::string out = t.name;
    if (t.args.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + t.args[i];
    return out + ")";
}

ExprPtr make_var(std::string name, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->name = std::move(name);
    e->loc = loc;
    return e;
}

ExprPtr make_int(unsigned long long value, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Int;
    e->value = value;
    e->loc = loc;
    return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(lhs), std::move(rhs)};
    e->loc = loc;
    return e;
}

ExprPtr make_func(std::string name, std::vector<ExprPtr> args, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Func;
    e->name = std::move(name);
    e->args = std::move(args);
    e->loc = loc;
    return e;
}

PredPtr make_const(bool value, SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = value ? PredKind::True : PredKind::False;
    p->loc = loc;
    return p;
}

PredPtr make_not(PredPtr q, SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = PredKind::Not;
    p->kids = {std::move(q)};
    p->loc = loc;
    return p;
}

PredPtr make_junction(PredKind kind, PredPtr lhs, PredPtr rhs, SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = kind;
    p->kids = {std::move(lhs), std::move(rhs)};
    p->loc = loc;
    return p;
}

PredPtr make_quantifier(PredKind kind, std::vector<std::string> vars, std::optional<TypeTag> type, PredPtr body,
                        SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = kind;
    p->vars = std::move(vars);
    p->type = std::move(type);
    p->kids = {std::move(body)};
    p->loc = loc;
    return p;
}

PredPtr make_rel(RelOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = PredKind::Rel;
    p->op = op;
    p->args = {std::move(lhs), std::move(rhs)};
    p->loc = loc;
    return p;
}

PredPtr make_call(std::string name, std::vector<ExprPtr> args, SourceLoc loc) {
    auto p = std::make_shared<Pred>();
    p->kind = PredKind::Call;
    p->name = std::move(name);
    p->args = std::move(args);
    p->loc = loc;
    return p;
}

namespace {

struct FreeVars {
    std::vector<std::string> out;
    std::multiset<std::string> bound;

    void note(const std::string& v) {
        if (!bound.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    void visit(const ExprPtr& e) {
        if (e->kind == ExprKind::Var) note(e->name);
        for (const auto& a : e->args) visit(a);
    }
    void visit(const PredPtr& p) {
        for (const auto& a : p->args) visit(a);
        if (p->type)
            for (const auto& v : p->type->args) note(v);
        const bool binds = p->kind == PredKind::Exists || p->kind == PredKind::Forall;
        if (binds)
            for (const auto& v : p->vars) bound.insert(v);
        for (const auto& k : p->kids) visit(k);
        if (binds)
            for (const auto& v : p->vars) bound.erase(bound.find(v));
    }
};

}  // namespace

std::vector<std::string> free_vars(const PredPtr& p) {
    FreeVars f;
    f.visit(p);
    return f.out;
}

std::vector<std::string> free_vars(const ExprPtr& e) {
    FreeVars f;
    f.visit(e);
    return f.out;
}

}  // namespace pecan::ast
