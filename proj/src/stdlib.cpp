#include "pecan/stdlib.hpp"

#include "pecan/errors.hpp"

namespace pecan::stdlib {

BuchiAutomaton build_nat_type(const std::string& x) {
    BuchiAutomaton a({x});
    StateId tail = a.add_state(true);
    Guard off = ~a.guard_atom(x);
    a.add_edge(0, 0, a.guard_true());
    a.add_edge(0, tail, off);
    a.add_edge(tail, tail, off);
    return a;
}

BuchiAutomaton build_bin_add(const std::string& x, const std::string& y, const std::string& z) {
    BuchiAutomaton a({x, y, z});
    a.set_accepting(0);
    StateId carry = a.add_state();
    std::vector<Guard> to(4, a.guard_false());  // [carry in * 2 + carry out]
    for (Letter l = 0; l < a.num_letters(); ++l) {
        const unsigned bx = l & 1U, by = (l >> 1) & 1U, bz = (l >> 2) & 1U;
        for (unsigned c = 0; c < 2; ++c) {
            const unsigned sum = bx + by + c;
            if ((sum & 1U) == bz) to[c * 2 + (sum >> 1)].insert(l);
        }
    }
    const StateId state[2] = {0, carry};
    for (unsigned c = 0; c < 2; ++c)
        for (unsigned d = 0; d < 2; ++d) a.add_edge(state[c], state[d], to[c * 2 + d]);
    return a;
}

BuchiAutomaton build_bin_less(const std::string& x, const std::string& y) {
    BuchiAutomaton a({x, y});
    StateId settled = a.add_state(true);
    Guard gx = a.guard_atom(x), gy = a.guard_atom(y);
    a.add_edge(0, 0, a.guard_true());
    a.add_edge(0, settled, ~gx & gy);
    a.add_edge(settled, settled, (gx & gy) | (~gx & ~gy));
    return a;
}

BuchiAutomaton build_equal(const std::string& x, const std::string& y) {
    BuchiAutomaton a({x, y});
    a.set_accepting(0);
    Guard gx = a.guard_atom(x), gy = a.guard_atom(y);
    a.add_edge(0, 0, (gx & gy) | (~gx & ~gy));
    return a;
}

BuchiAutomaton build_zero(const std::string& z) {
    BuchiAutomaton a({z});
    a.set_accepting(0);
    a.add_edge(0, 0, ~a.guard_atom(z));
    return a;
}

BuchiAutomaton build_thue_morse(const std::string& i) {
    BuchiAutomaton a({i});
    StateId odd = a.add_state(true);
    Guard on = a.guard_atom(i);
    a.add_edge(0, 0, ~on);
    a.add_edge(0, odd, on);
    a.add_edge(odd, odd, ~on);
    a.add_edge(odd, 0, on);
    return a;
}

BuchiAutomaton build_builtin(const std::string& name, const std::vector<std::string>& aps) {
    auto need = [&](std::size_t n) {
        if (aps.size() != n) {
            throw ArityError("builtin '" + name + "' takes " + std::to_string(n) + " arguments, got " +
                             std::to_string(aps.size()));
        }
    };
    if (name == "nat") return need(1), build_nat_type(aps[0]);
    if (name == "bin_add") return need(3), build_bin_add(aps[0], aps[1], aps[2]);
    if (name == "bin_less") return need(2), build_bin_less(aps[0], aps[1]);
    if (name == "equal") return need(2), build_equal(aps[0], aps[1]);
    if (name == "zero") return need(1), build_zero(aps[0]);
    if (name == "thue_morse") return need(1), build_thue_morse(aps[0]);
    throw Error("unknown-builtin", "no builtin automaton named '" + name + "'");
}

const std::string& prelude_source() {
    static const std::string text =
#include "prelude.inc"
        ;
    return text;
}

}  // namespace pecan::stdlib
