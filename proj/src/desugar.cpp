#include "pecan/syntax.hpp"

namespace pecan::syntax {

using namespace ast;

namespace {

using Scope = std::map<std::string, std::optional<TypeTag>>;

PredPtr negation(PredPtr p, SourceLoc loc) {
    if (p->kind == PredKind::Not) return p->kids[0];
    return make_not(std::move(p), loc);
}

PredPtr iff(const PredPtr& a, const PredPtr& b, SourceLoc loc) {
    return make_junction(PredKind::And, make_junction(PredKind::Or, negation(a, loc), b, loc),
                         make_junction(PredKind::Or, negation(b, loc), a, loc), loc);
}

bool is_word_form(const ExprPtr& e) { return e->kind == ExprKind::WordAt || e->kind == ExprKind::WordRange; }

class Desugarer {
public:
    explicit Desugarer(const Restrictions& r) : restrictions_(r) {
        for (const auto& [v, t] : r) scope_[v] = t;
    }

    void bind(const std::string& v, std::optional<TypeTag> t) { scope_[v] = std::move(t); }

    PredPtr pred(const PredPtr& p) {
        switch (p->kind) {
        case PredKind::True:
        case PredKind::False:
        case PredKind::Aut: return p;
        case PredKind::Not: return negation(pred(p->kids[0]), p->loc);
        case PredKind::And:
        case PredKind::Or: return make_junction(p->kind, pred(p->kids[0]), pred(p->kids[1]), p->loc);
        case PredKind::Implies:
            return make_junction(PredKind::Or, negation(pred(p->kids[0]), p->loc), pred(p->kids[1]), p->loc);
        case PredKind::Iff: return iff(pred(p->kids[0]), pred(p->kids[1]), p->loc);
        case PredKind::Exists:
        case PredKind::Forall: return quantifier(p);
        case PredKind::Rel: return relation(p);
        case PredKind::Call: return make_call(p->name, exprs(p->args), p->loc);
        case PredKind::Is: {
            std::vector<ExprPtr> args;
            for (const auto& a : p->type->args) args.push_back(make_var(a, p->loc));
            args.push_back(expr(p->args[0]));
            return make_call(p->type->name, std::move(args), p->loc);
        }
        }
        return p;
    }

private:
    const Restrictions& restrictions_;
    Scope scope_;
    int fresh_ = 0;

    std::optional<TypeTag> type_for(const std::string& v, const std::optional<TypeTag>& written) const {
        if (written) return written;
        auto it = restrictions_.find(v);
        if (it != restrictions_.end()) return it->second;
        return std::nullopt;
    }

    PredPtr quantifier(const PredPtr& p) {
        const bool universal = p->kind == PredKind::Forall;
        Scope saved = scope_;
        std::vector<std::optional<TypeTag>> types;
        for (const auto& v : p->vars) {
            types.push_back(type_for(v, p->type));
            scope_[v] = types.back();
        }
        PredPtr body = pred(p->kids[0]);
        scope_ = std::move(saved);
        if (universal) body = negation(body, p->loc);
        // forall x, y. P  ~>  !(exists x. exists y. !P)
        for (std::size_t i = p->vars.size(); i-- > 0;)
            body = make_quantifier(PredKind::Exists, {p->vars[i]}, types[i], body, p->loc);
        return universal ? negation(body, p->loc) : body;
    }

    std::vector<ExprPtr> exprs(const std::vector<ExprPtr>& es) {
        std::vector<ExprPtr> out;
        for (const auto& e : es) out.push_back(expr(e));
        return out;
    }

    ExprPtr expr(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::Var:
        case ExprKind::Int: return e;
        case ExprKind::Add:
        case ExprKind::Sub: return make_binary(e->kind, expr(e->args[0]), expr(e->args[1]), e->loc);
        case ExprKind::Mul: {
            if (e->value == 0) return make_int(0, e->loc);
            ExprPtr operand = expr(e->args[0]);
            ExprPtr sum = operand;
            for (unsigned long long i = 1; i < e->value; ++i) sum = make_binary(ExprKind::Add, sum, operand, e->loc);
            return sum;
        }
        case ExprKind::Func: return make_func(e->name, exprs(e->args), e->loc);
        case ExprKind::WordAt:
        case ExprKind::WordRange:
            throw SyntaxError("word index '" + e->name + "[...]' may only be compared with = or !=", e->loc);
        }
        return e;
    }

    PredPtr relation(const PredPtr& p) {
        const ExprPtr& a = p->args[0];
        const ExprPtr& b = p->args[1];
        if (is_word_form(a) || is_word_form(b)) {
            if (p->op != RelOp::Eq && p->op != RelOp::Ne)
                throw SyntaxError("word index may only be compared with = or !=", p->loc);
            PredPtr eq = word_equality(a, b, p->loc);
            return p->op == RelOp::Eq ? eq : negation(eq, p->loc);
        }
        ExprPtr x = expr(a), y = expr(b);
        const SourceLoc loc = p->loc;
        switch (p->op) {
        case RelOp::Lt: return make_rel(RelOp::Lt, x, y, loc);
        case RelOp::Eq: return make_rel(RelOp::Eq, x, y, loc);
        case RelOp::Gt: return make_rel(RelOp::Lt, y, x, loc);
        case RelOp::Le:
            return make_junction(PredKind::Or, make_rel(RelOp::Lt, x, y, loc), make_rel(RelOp::Eq, x, y, loc), loc);
        case RelOp::Ge:
            return make_junction(PredKind::Or, make_rel(RelOp::Lt, y, x, loc), make_rel(RelOp::Eq, x, y, loc), loc);
        case RelOp::Ne: return negation(make_rel(RelOp::Eq, x, y, loc), loc);
        }
        return p;
    }

    PredPtr letter(const ExprPtr& w) { return make_call(w->name, {expr(w->args[0])}, w->loc); }

    PredPtr word_equality(const ExprPtr& a, const ExprPtr& b, SourceLoc loc) {
        if (a->kind == ExprKind::WordAt && b->kind == ExprKind::WordAt) return iff(letter(a), letter(b), loc);
        if (a->kind == ExprKind::WordRange && b->kind == ExprKind::WordRange) return factor_equality(a, b, loc);
        const ExprPtr& w = is_word_form(a) ? a : b;
        const ExprPtr& other = is_word_form(a) ? b : a;
        if (w->kind == ExprKind::WordAt && other->kind == ExprKind::Int && other->value <= 1) {
            PredPtr at = letter(w);
            return other->value == 1 ? at : negation(at, loc);
        }
        throw SyntaxError("a word index must be compared with 0, 1, or another word index of the same shape", loc);
    }

    // P[i..j] = Q[k..l]  ~>  j + k = i + l & forall n in typ(i). i + n < j => P[i+n] = Q[k+n]
    PredPtr factor_equality(const ExprPtr& a, const ExprPtr& b, SourceLoc loc) {
        ExprPtr i = a->args[0], j = a->args[1], k = b->args[0], l = b->args[1];
        std::optional<TypeTag> typ;
        for (const auto& v : free_vars(i)) {
            auto it = scope_.find(v);
            if (it != scope_.end() && it->second) {
                typ = it->second;
                break;
            }
        }
        if (!typ) throw SyntaxError("factor start '" + print(i) + "' has no restricted type to range over", loc);
        const std::string n = "n#" + std::to_string(fresh_++);
        ExprPtr nv = make_var(n, loc);
        auto at = [&](const ExprPtr& w, const ExprPtr& idx) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::WordAt;
            e->name = w->name;
            e->loc = w->loc;
            e->args = {make_binary(ExprKind::Add, idx, nv, loc)};
            return e;
        };
        PredPtr lengths = make_rel(RelOp::Eq, make_binary(ExprKind::Add, j, k, loc),
                                   make_binary(ExprKind::Add, i, l, loc), loc);
        PredPtr inside = make_rel(RelOp::Lt, make_binary(ExprKind::Add, i, nv, loc), j, loc);
        PredPtr step = make_junction(PredKind::Implies, inside, make_rel(RelOp::Eq, at(a, i), at(b, k), loc), loc);
        PredPtr all = make_quantifier(PredKind::Forall, {n}, typ, step, loc);
        return pred(make_junction(PredKind::And, lengths, all, loc));
    }
};

bool core_expr(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::Var:
    case ExprKind::Int: return true;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Func:
        for (const auto& a : e->args)
            if (!core_expr(a)) return false;
        return true;
    default: return false;
    }
}

std::vector<Param> typed_params(std::vector<Param> ps, const Restrictions& r) {
    for (auto& p : ps)
        if (!p.type) {
            auto it = r.find(p.name);
            if (it != r.end()) p.type = it->second;
        }
    return ps;
}

}  // namespace

PredPtr desugar(const PredPtr& p, const Restrictions& restrictions) { return Desugarer(restrictions).pred(p); }

Item desugar(const Item& item, Restrictions& restrictions) {
    if (auto* r = std::get_if<RestrictDecl>(&item)) {
        for (const auto& v : r->vars) restrictions[v] = r->type;
        return item;
    }
    if (auto* d = std::get_if<PredicateDef>(&item)) {
        PredicateDef out = *d;
        out.params = typed_params(d->params, restrictions);
        Desugarer ds(restrictions);
        for (const auto& p : out.params) ds.bind(p.name, p.type);
        // Typed parameters constrain the predicate itself: τ(x̄, p) & body.
        PredPtr body = d->body;
        for (auto it = out.params.rbegin(); it != out.params.rend(); ++it) {
            if (!it->type) continue;
            std::vector<ExprPtr> args;
            for (const auto& a : it->type->args) args.push_back(make_var(a, d->loc));
            args.push_back(make_var(it->name, d->loc));
            body = make_junction(PredKind::And, make_call(it->type->name, std::move(args), d->loc), body, d->loc);
        }
        out.body = ds.pred(body);
        return out;
    }
    if (auto* t = std::get_if<TheoremDecl>(&item)) {
        TheoremDecl out = *t;
        out.body = desugar(t->body, restrictions);
        return out;
    }
    if (auto* l = std::get_if<LoadDecl>(&item)) {
        LoadDecl out = *l;
        out.params = typed_params(l->params, restrictions);
        return out;
    }
    if (auto* b = std::get_if<BuiltinDecl>(&item)) {
        BuiltinDecl out = *b;
        out.params = typed_params(b->params, restrictions);
        return out;
    }
    return item;
}

Program desugar(const Program& p) {
    Restrictions r;
    Program out;
    for (const auto& item : p.items) out.items.push_back(desugar(item, r));
    return out;
}

bool is_core(const PredPtr& p) {
    switch (p->kind) {
    case PredKind::True:
    case PredKind::False:
    case PredKind::Aut: return true;
    case PredKind::Not:
    case PredKind::And:
    case PredKind::Or:
        for (const auto& k : p->kids)
            if (!is_core(k)) return false;
        return true;
    case PredKind::Exists: return p->vars.size() == 1 && is_core(p->kids[0]);
    case PredKind::Rel:
        return (p->op == RelOp::Lt || p->op == RelOp::Eq) && core_expr(p->args[0]) && core_expr(p->args[1]);
    case PredKind::Call:
        for (const auto& a : p->args)
            if (!core_expr(a)) return false;
        return true;
    default: return false;
    }
}

}  // namespace pecan::syntax
