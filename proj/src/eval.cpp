#include "pecan/eval.hpp"

#include "pecan/stdlib.hpp"

namespace pecan::eval {

using namespace ast;

namespace {

struct Quantifier {
    bool universal = false;
    std::vector<Quantifier> scope;
};

struct Expansion {
    std::size_t atoms = 0;

    void expr(const ExprPtr& e, bool negated, std::vector<Quantifier>& out) {
        switch (e->kind) {
        case ExprKind::Var: return;
        case ExprKind::Int: {
            // n ~> 1 + 1 + ... + 1: n ones and n - 1 sums, each with a temporary
            const std::size_t n = e->value;
            const std::size_t calls = n == 0 ? 1 : 2 * n - 1;
            atoms += calls;
            for (std::size_t i = 0; i < calls; ++i) out.push_back({negated, {}});
            return;
        }
        default:
            atoms += 1;
            out.push_back({negated, {}});
            for (const auto& a : e->args) expr(a, negated, out);
        }
    }

    void pred(const PredPtr& p, bool negated, std::vector<Quantifier>& out) {
        switch (p->kind) {
        case PredKind::True:
        case PredKind::False: return;
        case PredKind::Not: pred(p->kids[0], !negated, out); return;
        case PredKind::Exists: {
            Quantifier q{negated, {}};
            if (p->type) atoms += 1;
            pred(p->kids[0], negated, q.scope);
            out.push_back(std::move(q));
            return;
        }
        case PredKind::Rel:
        case PredKind::Call:
        case PredKind::Aut:
            atoms += 1;
            for (const auto& a : p->args) expr(a, negated, out);
            return;
        default:
            for (const auto& k : p->kids) pred(k, negated, out);
        }
    }
};

}  // namespace

std::string block_signature(const std::vector<std::pair<char, std::size_t>>& blocks) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (const auto& [kind, n] : blocks) {
        out += kind == 'A' ? "∀" : "∃";
        if (n == 1) continue;
        for (char c : std::to_string(n)) out += digits[c - '0'];
    }
    return out;
}

std::pair<std::size_t, std::string> formula_metrics(const PredPtr& p) {
    Expansion ex;
    std::vector<Quantifier> available;
    ex.pred(p, false, available);

    // Prenex blocks: take every quantifier of the current kind that is not
    // below an unplaced one, then switch kinds.
    std::vector<std::pair<char, std::size_t>> blocks;
    bool universal = !available.empty() && available.front().universal;
    while (!available.empty()) {
        std::size_t taken = 0;
        for (bool progress = true; progress;) {
            progress = false;
            for (std::size_t i = 0; i < available.size(); ++i) {
                if (available[i].universal != universal) continue;
                Quantifier q = std::move(available[i]);
                available.erase(available.begin() + static_cast<std::ptrdiff_t>(i));
                for (auto& s : q.scope) available.push_back(std::move(s));
                ++taken;
                progress = true;
                break;
            }
        }
        if (taken) blocks.emplace_back(universal ? 'A' : 'E', taken);
        universal = !universal;
    }
    return {ex.atoms, block_signature(blocks)};
}

Evaluator::Evaluator(const Registry& registry, Options options) : reg_(registry), options_(std::move(options)) {}

void Evaluator::begin(const Options& options) {
    options_ = options;
    metrics_ = Metrics{};
    deadline_.reset();
    if (options.timeout) {
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(*options.timeout);
    }
}

std::string Evaluator::fresh_var() { return "#" + std::to_string(temps_++); }

ComplementOptions Evaluator::complement_options() const {
    ComplementOptions o;
    o.state_budget = options_.state_budget;
    o.method = options_.method;
    o.deadline = deadline_;
    return o;
}

void Evaluator::check_deadline() const {
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw ResourceLimitError("timeout exceeded");
}

PecanAutomaton Evaluator::step(PecanAutomaton a) {
    check_deadline();
    const std::size_t states = a.automaton.num_states();
    if (states > metrics_.max_states) {
        metrics_.max_states = states;
        metrics_.max_edges = a.automaton.num_edges();
    }
    a.automaton = simplify(a.automaton);
    return a;
}

PecanAutomaton Evaluator::conj(const PecanAutomaton& a, const PecanAutomaton& b) {
    return step(conjoin(a, b, aps_));
}

PecanAutomaton Evaluator::proj(const PecanAutomaton& a, const std::string& var) {
    if (!a.varmap.contains(var)) return a;
    return step(project_var(a, var));
}

PecanAutomaton Evaluator::apply(const CallPlan& plan, const std::vector<std::string>& vars) {
    if (plan.prim == CallPlan::Prim::RawEqual) {
        if (vars[0] == vars[1]) return PecanAutomaton::top();
        const auto& x = aps_.aps_for(vars[0]);
        const auto& y = aps_.aps_for(vars[1]);
        return PecanAutomaton({{vars[0], x}, {vars[1], y}}, stdlib::build_equal(x[0], y[0]));
    }
    if (plan.prim == CallPlan::Prim::RawZero) {
        const auto& z = aps_.aps_for(vars[0]);
        return PecanAutomaton({{vars[0], z}}, stdlib::build_zero(z[0]));
    }
    const PredicateInfo& target = reg_.predicate(plan.target);
    PecanAutomaton b = predicate_automaton(plan.target);

    // Formals go to fresh temporaries first so that permuted actuals cannot
    // collide with formals still waiting to be renamed.
    std::vector<std::string> temp(target.params.size());
    for (std::size_t i = 0; i < target.params.size(); ++i) {
        const std::string& z = target.params[i].name;
        if (!b.varmap.contains(z)) continue;
        temp[i] = fresh_var();
        b = rename_var(b, z, temp[i], aps_.aps_for(temp[i], b.varmap.at(z).size()));
    }
    for (std::size_t i = 0; i < target.params.size(); ++i) {
        if (temp[i].empty()) continue;
        const Slot& s = plan.slots[i];
        const std::string& y = s.arg >= 0 ? vars[static_cast<std::size_t>(s.arg)] : s.var;
        if (!b.varmap.contains(y)) {
            b = rename_var(b, temp[i], y, aps_.aps_for(y, b.varmap.at(temp[i]).size()));
            continue;
        }
        // y is passed twice: keep the copy on its own track and equate.
        CallPlan eq;
        eq.prim = CallPlan::Prim::RawEqual;
        b = proj(conj(b, apply(eq, {temp[i], y})), temp[i]);
    }
    return b;
}

namespace {

struct Operands {
    std::vector<std::string> vars;
    std::vector<std::pair<PecanAutomaton, std::string>> temps;
};

}  // namespace

PecanAutomaton Evaluator::call_with(const CallPlan& plan, const std::vector<ExprPtr>& args,
                                    const std::vector<std::string>& extra) {
    Operands ops;
    for (const auto& a : args) {
        if (a->kind == ExprKind::Var) {
            ops.vars.push_back(a->name);
            continue;
        }
        auto [aut, var] = eval_expr(a);
        ops.vars.push_back(var);
        ops.temps.emplace_back(std::move(aut), var);
    }
    ops.vars.insert(ops.vars.end(), extra.begin(), extra.end());
    PecanAutomaton r = apply(plan, ops.vars);
    for (auto& [aut, var] : ops.temps) r = proj(conj(r, aut), var);
    return r;
}

std::pair<PecanAutomaton, std::string> Evaluator::literal(const ExprPtr& e) {
    const std::string t = fresh_var();
    if (e->value == 0) return {apply(e->zero, {t}), t};
    PecanAutomaton acc = apply(e->one, {t});
    std::string acc_var = t;
    for (unsigned long long k = 1; k < e->value; ++k) {
        const std::string unit = fresh_var(), sum = fresh_var();
        PecanAutomaton r = conj(apply(e->adder, {acc_var, unit, sum}), acc);
        r = proj(conj(r, apply(e->one, {unit})), unit);
        acc = proj(r, acc_var);
        acc_var = sum;
    }
    return {acc, acc_var};
}

std::pair<PecanAutomaton, std::string> Evaluator::eval_expr(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::Var: return {PecanAutomaton::top(), e->name};
    case ExprKind::Int: return literal(e);
    case ExprKind::Add: {
        const std::string z = fresh_var();
        return {call_with(e->call, e->args, {z}), z};
    }
    case ExprKind::Sub: {
        // a - b is the z with z + b = a
        const std::string z = fresh_var();
        auto [a, x] = eval_expr(e->args[0]);
        auto [b, y] = eval_expr(e->args[1]);
        PecanAutomaton r = apply(e->call, {z, y, x});
        if (e->args[0]->kind != ExprKind::Var) r = proj(conj(r, a), x);
        if (e->args[1]->kind != ExprKind::Var) r = proj(conj(r, b), y);
        return {r, z};
    }
    case ExprKind::Func: {
        const std::string z = fresh_var();
        return {call_with(e->call, e->args, {z}), z};
    }
    default: throw EvalError("expression form must be desugared before evaluation", e->loc);
    }
}

const PecanAutomaton& Evaluator::predicate_automaton(const std::string& name) {
    auto it = compiled_.find(name);
    if (it != compiled_.end()) return it->second;
    const PredicateInfo& info = reg_.predicate(name);
    PecanAutomaton a = info.body->kind == PredKind::Aut ? *info.body->literal : eval_pred(info.body);
    return compiled_.emplace(name, std::move(a)).first->second;
}

PecanAutomaton Evaluator::eval_pred(const PredPtr& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    PecanAutomaton r = eval_uncached(p);
    memo_.emplace(p, r);
    return r;
}

PecanAutomaton Evaluator::eval_uncached(const PredPtr& p) {
    switch (p->kind) {
    case PredKind::True: return PecanAutomaton::top();
    case PredKind::False: return PecanAutomaton::bottom();
    case PredKind::Aut: return *p->literal;
    case PredKind::And: {
        PecanAutomaton a = eval_pred(p->kids[0]);
        return conj(a, eval_pred(p->kids[1]));
    }
    case PredKind::Or: {
        PecanAutomaton a = eval_pred(p->kids[0]);
        return step(disjoin(a, eval_pred(p->kids[1]), aps_));
    }
    case PredKind::Not: return step(negate(eval_pred(p->kids[0]), complement_options()));
    case PredKind::Exists: {
        const std::string& x = p->vars[0];
        PecanAutomaton body = eval_pred(p->kids[0]);
        if (p->type) body = conj(apply(p->call, {x}), body);
        return proj(body, x);
    }
    case PredKind::Rel:
    case PredKind::Call: return call_with(p->call, p->args);
    default: throw EvalError("predicate form must be desugared before evaluation", p->loc);
    }
}

TheoremResult decide_theorem(Evaluator& ev, const PredPtr& body, const Options& options) {
    const auto start = std::chrono::steady_clock::now();
    ev.begin(options);
    PecanAutomaton r = ev.eval_pred(body);
    if (!r.varmap.empty()) throw EvalError("theorem evaluated to an open formula", body->loc);
    TheoremResult out;
    out.truth = !is_empty(r.automaton);
    Metrics& m = ev.metrics();
    m.final_states = r.automaton.num_states();
    m.final_edges = r.automaton.num_edges();
    if (m.final_states > m.max_states) {
        m.max_states = m.final_states;
        m.max_edges = m.final_edges;
    }
    std::tie(m.atoms, m.complexity) = formula_metrics(body);
    m.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.metrics = m;
    return out;
}

}  // namespace pecan::eval
