#include "pecan/automata_io.hpp"
#include "pecan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace pecan::io {

namespace {

// Reachable states in breadth-first order.
std::vector<StateId> bfs_order(const BuchiAutomaton& a) {
    std::vector<StateId> order{a.initial()};
    std::vector<bool> seen(a.num_states(), false);
    seen[a.initial()] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& e : a.edges(order[i]))
            if (!seen[e.target]) {
                seen[e.target] = true;
                order.push_back(e.target);
            }
    return order;
}

}  // namespace

std::string serialize(const PecanAutomaton& pa) {
    const BuchiAutomaton& a = pa.automaton;
    const std::vector<StateId> order = bfs_order(a);
    std::vector<StateId> id(a.num_states(), UINT32_MAX);
    for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<StateId>(i);

    std::vector<std::size_t> ap_order;
    std::vector<bool> placed(a.num_aps(), false);
    auto place = [&](std::size_t ap) {
        if (!placed[ap]) {
            placed[ap] = true;
            ap_order.push_back(ap);
        }
    };
    for (StateId s : order)
        for (const auto& e : a.edges(s)) {
            auto used = e.guard.support();
            for (std::size_t i = 0; i < used.size(); ++i)
                if (used[i]) place(i);
        }
    for (std::size_t i = 0; i < a.num_aps(); ++i) place(i);
    std::vector<std::size_t> position(a.num_aps());
    for (std::size_t i = 0; i < ap_order.size(); ++i) position[ap_order[i]] = i;

    std::ostringstream out;
    out << "aps " << a.num_aps();
    for (std::size_t ap : ap_order) out << " " << a.aps()[ap];
    out << "\nstates " << order.size() << " initial 0\naccepting";
    for (std::size_t i = 0; i < order.size(); ++i)
        if (a.is_accepting(order[i])) out << " " << i;
    out << "\n";
    auto index_name = [](std::size_t i) { return std::to_string(i); };
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<std::pair<StateId, const Edge*>> edges;
        for (const auto& e : a.edges(order[i])) edges.emplace_back(id[e.target], &e);
        std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [target, e] : edges) {
            Guard g = e->guard.lift(position, a.num_aps());
            out << i << " -> " << target << " [" << to_string(to_expr(g), index_name) << "]\n";
        }
    }
    for (const auto& [var, aps] : pa.varmap) {
        out << "var " << var << ":";
        for (const auto& ap : aps) out << " " << ap;
        out << "\n";
    }
    return out.str();
}

namespace {

class GuardParser {
public:
    GuardParser(const std::string& text, std::size_t num_aps, int line)
        : s_(text), num_aps_(num_aps), line_(line) {}

    BoolExpr parse() {
        BoolExpr e = disjunction();
        skip();
        if (i_ != s_.size()) fail("trailing input in guard");
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
    std::size_t num_aps_;
    int line_;

    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError(what, SourceLoc{line_, static_cast<int>(i_) + 1});
    }
    void skip() {
        while (i_ < s_.size() && s_[i_] == ' ') ++i_;
    }
    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    BoolExpr disjunction() {
        BoolExpr e = conjunction();
        while (accept('|')) e = BoolExpr::disj(e, conjunction());
        return e;
    }
    BoolExpr conjunction() {
        BoolExpr e = unary();
        while (accept('&')) e = BoolExpr::conj(e, unary());
        return e;
    }
    BoolExpr unary() {
        if (accept('!')) return BoolExpr::negation(unary());
        if (accept('(')) {
            BoolExpr e = disjunction();
            if (!accept(')')) fail("expected ')' in guard");
            return e;
        }
        if (accept('t')) return BoolExpr::constant(true);
        if (accept('f')) return BoolExpr::constant(false);
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == i_) fail("expected an AP index in guard");
        std::size_t ap = std::stoul(s_.substr(i_, j - i_));
        if (ap >= num_aps_) fail("AP index " + std::to_string(ap) + " is not declared");
        i_ = j;
        return BoolExpr::var(ap);
    }
};

std::size_t to_count(const std::string& word, int line) {
    if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos)
        throw SyntaxError("expected a number, found '" + word + "'", SourceLoc{line, 1});
    return std::stoul(word);
}

}  // namespace

PecanAutomaton parse_document(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::optional<BuchiAutomaton> a;
    std::size_t num_states = 0;
    bool have_accepting = false;
    VariableMap varmap;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) throw SyntaxError(what, SourceLoc{line, 1});
    };
    auto state = [&](const std::string& word) {
        std::size_t s = to_count(word, line);
        need(s < num_states, "state " + word + " is not declared");
        return static_cast<StateId>(s);
    };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head) || head.rfind("//", 0) == 0) continue;
        if (head == "aps") {
            need(!a, "duplicate 'aps' line");
            std::string n;
            ls >> n;
            std::vector<std::string> names;
            for (std::string w; ls >> w;) names.push_back(w);
            need(names.size() == to_count(n, line), "'aps' count does not match the names given");
            std::set<std::string> distinct(names.begin(), names.end());
            need(distinct.size() == names.size(), "AP names must be distinct");
            a.emplace(names);
        } else if (head == "states") {
            need(a && num_states == 0, "'states' must follow 'aps' once");
            std::string n, kw, q;
            ls >> n >> kw >> q;
            need(kw == "initial", "expected 'states <n> initial <q>'");
            num_states = to_count(n, line);
            need(num_states > 0, "an automaton needs at least one state");
            for (std::size_t i = 1; i < num_states; ++i) a->add_state();
            a->set_initial(state(q));
        } else if (head == "accepting") {
            need(num_states > 0 && !have_accepting, "'accepting' must follow 'states' once");
            have_accepting = true;
            for (std::string w; ls >> w;) a->set_accepting(state(w));
        } else if (head == "var") {
            need(have_accepting, "'var' lines come after the automaton");
            std::string name;
            ls >> name;
            need(name.size() > 1 && name.back() == ':', "expected 'var <name>: <aps>'");
            name.pop_back();
            std::vector<std::string> aps;
            for (std::string w; ls >> w;) {
                need(a->ap_index(w).has_value(), "variable '" + name + "' names unknown AP '" + w + "'");
                aps.push_back(w);
            }
            need(!varmap.contains(name), "variable '" + name + "' is listed twice");
            try {
                varmap.insert(name, aps);
            } catch (const Error& e) {
                need(false, e.what());
            }
        } else {
            need(have_accepting, "edges come after the 'accepting' line");
            std::string arrow;
            ls >> arrow;
            need(arrow == "->", "expected '<src> -> <dst> [<guard>]'");
            std::string dst;
            ls >> dst;
            std::string rest;
            std::getline(ls, rest);
            auto open = rest.find('['), close = rest.rfind(']');
            need(open != std::string::npos && close != std::string::npos && open < close &&
                     rest.find_first_not_of(' ') == open && rest.find_first_not_of(' ', close + 1) == std::string::npos,
                 "expected a bracketed guard");
            const std::string guard = rest.substr(open + 1, close - open - 1);
            a->add_edge(state(head), state(dst), a->guard(GuardParser(guard, a->num_aps(), line).parse()));
        }
    }
    need(have_accepting, "incomplete automaton: expected 'aps', 'states' and 'accepting' lines");
    return PecanAutomaton(std::move(varmap), std::move(*a));
}

PecanAutomaton load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document(buf.str());
    } catch (const SyntaxError& e) {
        throw SyntaxError(path + ": " + e.message(), e.loc());
    }
}

void save_file(const std::string& path, const PecanAutomaton& a) {
    std::ofstream out(path);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << serialize(a);
    if (!out) throw Error("io", "failed writing '" + path + "'");
}

}  // namespace pecan::io
