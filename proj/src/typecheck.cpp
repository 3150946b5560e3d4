#include "pecan/typecheck.hpp"

#include "pecan/syntax.hpp"

#include <algorithm>
#include <set>

namespace pecan {

using namespace ast;

const PredicateInfo& Registry::predicate(const std::string& name) const {
    auto it = predicates.find(name);
    if (it == predicates.end()) throw Error("undefined", "undefined predicate '" + name + "'");
    return it->second;
}

namespace typecheck {

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out;
}

std::string show(const std::optional<TypeTag>& t) { return t ? to_string(*t) : "untyped"; }

CallPlan direct_plan(const std::string& target, std::size_t nargs) {
    CallPlan plan;
    plan.target = target;
    for (std::size_t i = 0; i < nargs; ++i) plan.slots.push_back(Slot{static_cast<int>(i), {}});
    return plan;
}

// The type of formal `m` of `target` as seen at a call site, when its
// arguments can be named there.
std::optional<TypeTag> instantiate(const PredicateInfo& target, std::size_t m, const CallPlan& plan,
                                   const std::vector<ExprPtr>& args) {
    if (m >= target.params.size() || !target.params[m].type) return std::nullopt;
    TypeTag t = *target.params[m].type;
    for (auto& a : t.args) {
        std::size_t k = 0;
        while (k < target.params.size() && target.params[k].name != a) ++k;
        if (k == target.params.size() || k >= plan.slots.size()) return std::nullopt;
        const Slot& s = plan.slots[k];
        if (s.arg < 0) {
            a = s.var;
        } else if (static_cast<std::size_t>(s.arg) < args.size() && args[s.arg]->kind == ExprKind::Var) {
            a = args[s.arg]->name;
        } else {
            return std::nullopt;
        }
    }
    return t;
}

}  // namespace

std::vector<int> template_params(const Template& t) {
    std::vector<int> out;
    for (std::size_t i = 0; i < t.slots.size(); ++i)
        if (!t.slots[i]) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<int> template_implicits(const Template& t) {
    std::vector<int> out;
    for (std::size_t i = 0; i < t.slots.size(); ++i)
        if (t.slots[i]) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::string default_one_name(const std::string& structure) { return "one#" + structure; }

bool Checker::is_numeric(const std::optional<TypeTag>& t) const {
    if (!t) return false;
    auto it = reg_.structures.find(t->name);
    return it != reg_.structures.end() && it->second.numeric && it->second.head.args.size() == t->args.size();
}

const Template* Checker::structure_def(const TypeTag& t, const std::string& op) const {
    auto it = reg_.structures.find(t.name);
    if (it == reg_.structures.end() || it->second.head.args.size() != t.args.size()) return nullptr;
    auto d = it->second.defs.find(op);
    return d == it->second.defs.end() ? nullptr : &d->second;
}

namespace {

CallPlan plan_from_template(const Template& tmpl, const StructureInfo& s, const TypeTag& t) {
    CallPlan plan;
    plan.target = tmpl.target;
    int next = 0;
    for (const auto& slot : tmpl.slots) {
        if (!slot) {
            plan.slots.push_back(Slot{next++, {}});
            continue;
        }
        std::size_t m = 0;
        while (s.head.args[m] != *slot) ++m;
        plan.slots.push_back(Slot{-1, t.args[m]});
    }
    return plan;
}

}  // namespace

CallPlan Checker::resolve_call(const std::string& name, const std::vector<std::optional<TypeTag>>& arg_types,
                               SourceLoc loc) const {
    std::vector<TypeTag> candidates;
    for (const auto& t : arg_types)
        if (t && structure_def(*t, name) &&
            std::find(candidates.begin(), candidates.end(), *t) == candidates.end())
            candidates.push_back(*t);
    if (candidates.size() > 1) {
        throw TypeError("ambiguous call '" + name + "': both " + to_string(candidates[0]) + " and " +
                            to_string(candidates[1]) + " define it",
                        loc);
    }
    if (candidates.empty()) {
        if (name == defining_) throw TypeError("predicate '" + name + "' may not call itself", loc);
        auto it = reg_.predicates.find(name);
        if (it == reg_.predicates.end()) throw TypeError("undefined predicate '" + name + "'", loc);
        if (it->second.params.size() != arg_types.size()) {
            throw TypeError("'" + name + "' takes " + std::to_string(it->second.params.size()) +
                                " arguments, got " + std::to_string(arg_types.size()),
                            loc);
        }
        return direct_plan(name, arg_types.size());
    }
    const TypeTag& t = candidates[0];
    const Template& tmpl = *structure_def(t, name);
    if (template_params(tmpl).size() != arg_types.size()) {
        throw TypeError("'" + name + "' of " + to_string(t) + " takes " + std::to_string(template_params(tmpl).size()) +
                            " arguments, got " + std::to_string(arg_types.size()),
                        loc);
    }
    return plan_from_template(tmpl, reg_.structures.at(t.name), t);
}

CallPlan Checker::resolve_operator(const std::string& op, const TypeTag& t, std::size_t nargs, SourceLoc loc) const {
    const Template* tmpl = structure_def(t, op);
    if (!tmpl) throw TypeError("type " + to_string(t) + " does not define \"" + op + "\"", loc);
    if (template_params(*tmpl).size() != nargs) {
        throw TypeError("\"" + op + "\" of " + to_string(t) + " must take " + std::to_string(nargs) + " arguments",
                        loc);
    }
    return plan_from_template(*tmpl, reg_.structures.at(t.name), t);
}

std::optional<TypeTag> Checker::infer(const TypeEnv& gamma, const ExprPtr& e) const {
    switch (e->kind) {
    case ExprKind::Var: {
        auto it = gamma.find(e->name);
        return it == gamma.end() ? std::nullopt : it->second;
    }
    case ExprKind::Add:
    case ExprKind::Sub: {
        auto t = infer(gamma, e->args[0]);
        return t ? t : infer(gamma, e->args[1]);
    }
    case ExprKind::Func: {
        auto it = reg_.predicates.find(e->name);
        if (it == reg_.predicates.end() || it->second.params.size() != e->args.size() + 1) return std::nullopt;
        const auto& last = it->second.params.back().type;
        if (last && last->args.empty()) return last;
        return std::nullopt;
    }
    default: return std::nullopt;
    }
}

std::optional<TypeTag> Checker::type_expr(const TypeEnv& gamma, const ExprPtr& e,
                                          const std::optional<TypeTag>& expected) const {
    switch (e->kind) {
    case ExprKind::Var: {
        auto it = gamma.find(e->name);
        if (it == gamma.end()) throw TypeError("unbound variable '" + e->name + "'", e->loc);
        if (expected && it->second && *it->second != *expected) {
            throw TypeError("'" + e->name + "' has type " + show(it->second) + ", expected " + show(expected), e->loc);
        }
        e->type = it->second;
        return e->type;
    }
    case ExprKind::Int: {
        if (!is_numeric(expected)) {
            throw TypeError("integer literal " + std::to_string(e->value) + " needs a numeric type from context",
                            e->loc);
        }
        e->type = expected;
        if (e->value == 0 && structure_def(*expected, "zero")) {
            e->zero = resolve_operator("zero", *expected, 1, e->loc);
        } else if (e->value == 0) {
            e->zero.prim = CallPlan::Prim::RawZero;
        }
        if (e->value >= 1) e->one = resolve_operator("one", *expected, 1, e->loc);
        if (e->value >= 2) e->adder = resolve_operator("adder", *expected, 3, e->loc);
        return e->type;
    }
    case ExprKind::Add:
    case ExprKind::Sub: {
        std::optional<TypeTag> t = expected ? expected : infer(gamma, e);
        if (!is_numeric(t)) throw TypeError("arithmetic on non-numeric type " + show(t), e->loc);
        type_expr(gamma, e->args[0], t);
        type_expr(gamma, e->args[1], t);
        e->call = resolve_operator("adder", *t, 3, e->loc);
        e->type = t;
        return t;
    }
    case ExprKind::Func: {
        std::vector<std::optional<TypeTag>> types;
        for (const auto& a : e->args) types.push_back(type_expr(gamma, a, infer(gamma, a)));
        types.push_back(expected);
        e->call = resolve_call(e->name, types, e->loc);
        const PredicateInfo& target = reg_.predicate(e->call.target);
        std::vector<ExprPtr> args = e->args;
        auto result = instantiate(target, target.params.size() - 1, e->call, args);
        if (expected && result && *result != *expected) {
            throw TypeError("'" + e->name + "' yields " + show(result) + ", expected " + show(expected), e->loc);
        }
        e->type = result ? result : expected;
        return e->type;
    }
    default: throw TypeError("expression form must be desugared before type checking", e->loc);
    }
}

void Checker::check_type_tag(const TypeEnv& gamma, const TypeTag& t, SourceLoc loc) const {
    auto it = reg_.predicates.find(t.name);
    if (it == reg_.predicates.end()) throw TypeError("unknown type predicate '" + t.name + "'", loc);
    if (it->second.params.size() != t.args.size() + 1) {
        throw TypeError("type predicate '" + t.name + "' takes " + std::to_string(it->second.params.size()) +
                            " arguments, so a type needs " + std::to_string(it->second.params.size() - 1),
                        loc);
    }
    for (const auto& a : t.args)
        if (!gamma.count(a)) throw TypeError("unbound variable '" + a + "' in type " + to_string(t), loc);
}

void Checker::check_prop(const TypeEnv& gamma, const PredPtr& p) const {
    switch (p->kind) {
    case PredKind::True:
    case PredKind::False:
    case PredKind::Aut: return;
    case PredKind::Not:
    case PredKind::And:
    case PredKind::Or:
        for (const auto& k : p->kids) check_prop(gamma, k);
        return;
    case PredKind::Exists: {
        if (p->vars.size() != 1) throw TypeError("quantifier must bind one variable after desugaring", p->loc);
        TypeEnv inner = gamma;
        if (p->type) {
            check_type_tag(gamma, *p->type, p->loc);
            p->call = CallPlan{};
            p->call.target = p->type->name;
            for (const auto& a : p->type->args) p->call.slots.push_back(Slot{-1, a});
            p->call.slots.push_back(Slot{0, {}});
        }
        inner[p->vars[0]] = p->type;
        check_prop(inner, p->kids[0]);
        return;
    }
    case PredKind::Rel: {
        std::optional<TypeTag> t = infer(gamma, p->args[0]);
        if (!t) t = infer(gamma, p->args[1]);
        type_expr(gamma, p->args[0], t);
        type_expr(gamma, p->args[1], t);
        if (p->op == RelOp::Lt) {
            if (!t) throw TypeError("'<' needs typed operands", p->loc);
            p->call = resolve_operator("less", *t, 2, p->loc);
        } else if (t && structure_def(*t, "equal")) {
            p->call = resolve_operator("equal", *t, 2, p->loc);
        } else {
            p->call = CallPlan{};
            p->call.prim = CallPlan::Prim::RawEqual;
        }
        return;
    }
    case PredKind::Call: {
        auto it = reg_.predicates.find(p->name);
        std::vector<std::optional<TypeTag>> types;
        for (std::size_t k = 0; k < p->args.size(); ++k) {
            std::optional<TypeTag> hint = infer(gamma, p->args[k]);
            if (!hint && it != reg_.predicates.end() && k < it->second.params.size()) {
                const auto& formal = it->second.params[k].type;
                if (formal && formal->args.empty()) hint = formal;
            }
            types.push_back(type_expr(gamma, p->args[k], hint));
        }
        p->call = resolve_call(p->name, types, p->loc);
        return;
    }
    default: throw TypeError("predicate form must be desugared before type checking", p->loc);
    }
}

void Checker::check_params(const std::vector<Param>& params, SourceLoc loc) const {
    TypeEnv gamma;
    std::set<std::string> seen;
    for (const auto& p : params) {
        if (!seen.insert(p.name).second) throw TypeError("parameter '" + p.name + "' appears twice", loc);
        gamma[p.name] = p.type;
    }
    for (const auto& p : params)
        if (p.type) check_type_tag(gamma, *p.type, loc);
}

void Checker::add_predicate(const PredicateDef& d) {
    if (reg_.predicates.count(d.name)) throw TypeError("predicate '" + d.name + "' is already defined", d.loc);
    check_params(d.params, d.loc);
    TypeEnv gamma;
    for (const auto& p : d.params) gamma[p.name] = p.type;
    defining_ = d.name;
    try {
        check_prop(gamma, d.body);
    } catch (...) {
        defining_.clear();
        throw;
    }
    defining_.clear();
    reg_.predicates[d.name] = PredicateInfo{d.name, d.params, d.body, d.loc};
}

void Checker::add_literal(const std::string& name, const std::vector<Param>& params,
                          std::shared_ptr<const PecanAutomaton> literal, SourceLoc loc) {
    if (reg_.predicates.count(name)) throw TypeError("predicate '" + name + "' is already defined", loc);
    check_params(params, loc);
    auto body = std::make_shared<Pred>();
    body->kind = PredKind::Aut;
    body->loc = loc;
    body->literal = std::move(literal);
    reg_.predicates[name] = PredicateInfo{name, params, body, loc};
}

void Checker::check_theorem(const PredPtr& body) {
    auto free = free_vars(body);
    if (!free.empty()) throw TypeError("theorem has free variables: " + join(free), body->loc);
    defining_.clear();
    check_prop({}, body);
}

void Checker::add_structure(const StructureDecl& s) {
    StructureInfo info;
    info.head = s.head;
    std::set<std::string> params(s.head.args.begin(), s.head.args.end());
    if (params.size() != s.head.args.size()) throw TypeError("structure parameters must be distinct", s.loc);
    for (const auto& [op, tmpl] : s.defs) {
        auto it = reg_.predicates.find(tmpl.target);
        if (it == reg_.predicates.end()) {
            throw TypeError("\"" + op + "\" refers to undefined predicate '" + tmpl.target + "'", s.loc);
        }
        if (it->second.params.size() != tmpl.slots.size()) {
            throw TypeError("\"" + op + "\": '" + tmpl.target + "' takes " + std::to_string(it->second.params.size()) +
                                " arguments, the template has " + std::to_string(tmpl.slots.size()),
                            s.loc);
        }
        for (const auto& slot : tmpl.slots)
            if (slot && !params.count(*slot)) {
                throw TypeError("\"" + op + "\": '" + *slot + "' is not a parameter of " + to_string(s.head), s.loc);
            }
        if (!info.defs.emplace(op, tmpl).second) throw TypeError("\"" + op + "\" is defined twice", s.loc);
    }
    auto arity = [&](const char* op) {
        auto it = info.defs.find(op);
        return it == info.defs.end() ? std::size_t{0} : template_params(it->second).size();
    };
    info.numeric = arity("adder") == 3 && arity("less") == 2;
    const std::string one = default_one_name(s.head.name);
    reg_.predicates.erase(one);
    reg_.structures[s.head.name] = info;
    if (!info.numeric || info.defs.count("one")) return;

    // one(v) := v != 0 & forall y. y = 0 | v < y | v = y
    std::string type = to_string(s.head);
    std::string formals;
    for (const auto& a : s.head.args) formals += a + ", ";
    std::string src = "D(" + formals + "v' is " + type + ") := !(v' = 0) & forall y' is " + type +
                      ". (y' = 0 | v' < y' | v' = y').";
    Program prog = syntax::parse(src);
    auto def = std::get<PredicateDef>(syntax::desugar(prog).items.at(0));
    def.name = one;
    def.loc = s.loc;
    add_predicate(def);
    Template tmpl{one, {}};
    for (const auto& a : s.head.args) tmpl.slots.emplace_back(a);
    tmpl.slots.emplace_back(std::nullopt);
    reg_.structures[s.head.name].defs["one"] = tmpl;
}

}  // namespace typecheck
}  // namespace pecan
