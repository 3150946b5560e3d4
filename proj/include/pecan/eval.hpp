#pragma once

// Big-step evaluation of checked core predicates into automata, plus the
// per-theorem metrics.

#include "pecan/typecheck.hpp"
#include "pecan/var_automaton.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>

namespace pecan::eval {

struct Metrics {
    std::size_t atoms = 0;
    std::string complexity;  // quantifier blocks of the prenex form, e.g. "∃³∀"
    std::size_t max_states = 0, max_edges = 0;
    std::size_t final_states = 0, final_edges = 0;
    double runtime_s = 0;
};

struct Options {
    std::size_t state_budget = 1'000'000;
    ComplementMethod method = ComplementMethod::Auto;
    /// Wall-clock limit per theorem; none when unset.
    std::optional<std::chrono::duration<double>> timeout;
};

/// Atom count and quantifier-block signature of a checked core predicate,
/// counted on its expansion: quantifier types become conjuncts, expression
/// temporaries become existentials over resolved calls, and an existential
/// under an odd number of negations counts as universal.
std::pair<std::size_t, std::string> formula_metrics(const ast::PredPtr& p);

/// Renders block sizes such as {{'E',3},{'A',1}} as "∃³∀".
std::string block_signature(const std::vector<std::pair<char, std::size_t>>& blocks);

/// Evaluation state shared by the theorems of one file: the AP registry and
/// the compiled predicate bodies. Not thread-safe.
class Evaluator {
public:
    explicit Evaluator(const Registry& registry, Options options = {});

    PecanAutomaton eval_pred(const ast::PredPtr& p);
    /// (𝔄, x): x names the value of `e`; a bare variable gives (⊤, x).
    std::pair<PecanAutomaton, std::string> eval_expr(const ast::ExprPtr& e);
    /// The body of `name` over its formal parameters (cached).
    const PecanAutomaton& predicate_automaton(const std::string& name);

    /// Starts a fresh metrics record and deadline.
    void begin(const Options& options);
    Metrics& metrics() { return metrics_; }
    ApRegistry& aps() { return aps_; }

private:
    const Registry& reg_;
    Options options_;
    ApRegistry aps_;
    Metrics metrics_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::map<std::string, PecanAutomaton> compiled_;
    std::map<ast::PredPtr, PecanAutomaton> memo_;
    std::size_t temps_ = 0;

    std::string fresh_var();
    PecanAutomaton step(PecanAutomaton a);
    ComplementOptions complement_options() const;
    void check_deadline() const;

    PecanAutomaton conj(const PecanAutomaton& a, const PecanAutomaton& b);
    PecanAutomaton proj(const PecanAutomaton& a, const std::string& var);
    /// Instantiates a resolved call with its full argument list given as
    /// variable names.
    PecanAutomaton apply(const ast::CallPlan& plan, const std::vector<std::string>& vars);
    /// Evaluates the call `plan` with expression arguments; the temporaries
    /// of non-variable arguments are projected away.
    PecanAutomaton call_with(const ast::CallPlan& plan, const std::vector<ast::ExprPtr>& args,
                             const std::vector<std::string>& extra = {});
    PecanAutomaton eval_uncached(const ast::PredPtr& p);
    std::pair<PecanAutomaton, std::string> literal(const ast::ExprPtr& e);
};

struct TheoremResult {
    bool truth = false;
    Metrics metrics;
};

/// Decides a checked, closed theorem body.
TheoremResult decide_theorem(Evaluator& ev, const ast::PredPtr& body, const Options& options);

}  // namespace pecan::eval
