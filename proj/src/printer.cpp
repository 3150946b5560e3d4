#include "pecan/syntax.hpp"

#include <sstream>

namespace pecan::syntax {

using namespace ast;

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string print_args(const std::vector<ExprPtr>& args) {
    std::vector<std::string> parts;
    for (const auto& a : args) parts.push_back(print(a));
    return "(" + join(parts) + ")";
}

std::string print_params(const std::vector<Param>& ps) {
    std::vector<std::string> parts;
    for (const auto& p : ps) parts.push_back(p.type ? p.name + " is " + to_string(*p.type) : p.name);
    return "(" + join(parts) + ")";
}

const char* rel_symbol(RelOp op) {
    switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    }
    return "?";
}

}  // namespace

std::string print(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::Var: return e->name;
    case ExprKind::Int: return std::to_string(e->value);
    case ExprKind::Add: return "(" + print(e->args[0]) + " + " + print(e->args[1]) + ")";
    case ExprKind::Sub: return "(" + print(e->args[0]) + " - " + print(e->args[1]) + ")";
    case ExprKind::Mul: return std::to_string(e->value) + "*" + print(e->args[0]);
    case ExprKind::Func: return e->name + print_args(e->args);
    case ExprKind::WordAt: return e->name + "[" + print(e->args[0]) + "]";
    case ExprKind::WordRange: return e->name + "[" + print(e->args[0]) + ".." + print(e->args[1]) + "]";
    }
    return "?";
}

std::string print(const PredPtr& p) {
    switch (p->kind) {
    case PredKind::True: return "true";
    case PredKind::False: return "false";
    case PredKind::Not: return "!" + print(p->kids[0]);
    case PredKind::And: return "(" + print(p->kids[0]) + " & " + print(p->kids[1]) + ")";
    case PredKind::Or: return "(" + print(p->kids[0]) + " | " + print(p->kids[1]) + ")";
    case PredKind::Implies: return "(" + print(p->kids[0]) + " => " + print(p->kids[1]) + ")";
    case PredKind::Iff: return "(" + print(p->kids[0]) + " <=> " + print(p->kids[1]) + ")";
    case PredKind::Exists:
    case PredKind::Forall: {
        std::string out = p->kind == PredKind::Exists ? "(exists " : "(forall ";
        out += join(p->vars);
        if (p->type) out += " is " + to_string(*p->type);
        return out + ". " + print(p->kids[0]) + ")";
    }
    case PredKind::Rel:
        return print(p->args[0]) + " " + rel_symbol(p->op) + " " + print(p->args[1]);
    case PredKind::Call: return p->args.empty() ? p->name : p->name + print_args(p->args);
    case PredKind::Is: return "(" + print(p->args[0]) + " is " + to_string(*p->type) + ")";
    case PredKind::Aut: return "<automaton>";
    }
    return "?";
}

std::string print(const Item& item) {
    std::ostringstream out;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PredicateDef>) {
                out << d.name << print_params(d.params) << " := " << print(d.body) << ".";
            } else if constexpr (std::is_same_v<T, RestrictDecl>) {
                out << "Restrict " << join(d.vars) << " are " << to_string(d.type) << ".";
            } else if constexpr (std::is_same_v<T, StructureDecl>) {
                out << "Structure " << to_string(d.head) << " defining {";
                for (std::size_t i = 0; i < d.defs.size(); ++i) {
                    const auto& [key, t] = d.defs[i];
                    std::vector<std::string> slots;
                    for (const auto& s : t.slots) slots.push_back(s ? *s : "any");
                    out << (i ? ",\n" : "\n") << "    " << quote(key) << ": " << t.target << "(" << join(slots)
                        << ")";
                }
                out << "\n}.";
            } else if constexpr (std::is_same_v<T, TheoremDecl>) {
                out << "Theorem (" << quote(d.name) << ", { " << print(d.body) << " }).";
            } else if constexpr (std::is_same_v<T, LoadDecl>) {
                out << "#load " << quote(d.path) << " as " << d.name << print_params(d.params) << ".";
            } else if constexpr (std::is_same_v<T, SaveDecl>) {
                out << "#save_aut " << quote(d.path) << " " << d.name << ".";
            } else if constexpr (std::is_same_v<T, BuiltinDecl>) {
                out << "#builtin " << quote(d.builtin) << " as " << d.name << print_params(d.params) << ".";
            }
        },
        item);
    return out.str();
}

std::string print(const Program& p) {
    std::string out;
    for (const auto& item : p.items) out += print(item) + "\n";
    return out;
}

}  // namespace pecan::syntax
