#include "graph.hpp"

#include <limits>

namespace pecan::detail {

namespace {
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
}

SccDecomposition strongly_connected(const Adjacency& adj, const std::vector<std::uint32_t>& roots) {
    const std::size_t n = adj.size();
    SccDecomposition out;
    out.component.assign(n, kNone);
    std::vector<std::uint32_t> index(n, kNone), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    struct Frame {
        std::uint32_t node;
        std::size_t next_edge;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;

    auto visit = [&](std::uint32_t root) {
        if (index[root] != kNone) return;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = adj[f.node];
            if (f.next_edge < succ.size()) {
                std::uint32_t t = succ[f.next_edge++];
                if (index[t] == kNone) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    call.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.node] = std::min(low[f.node], index[t]);
                }
                continue;
            }
            std::uint32_t v = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] != index[v]) continue;
            auto comp = static_cast<std::uint32_t>(out.count++);
            std::size_t members = 0;
            std::uint32_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                out.component[w] = comp;
                ++members;
            } while (w != v);
            bool loop = members > 1;
            if (!loop)
                for (auto t : adj[v]) loop = loop || t == v;
            out.nontrivial.push_back(loop);
        }
    };

    if (roots.empty()) {
        for (std::uint32_t v = 0; v < n; ++v) visit(v);
    } else {
        for (auto r : roots) visit(r);
    }
    return out;
}

std::vector<bool> reachable_from(const Adjacency& adj, const std::vector<std::uint32_t>& roots) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::uint32_t> work;
    for (auto r : roots)
        if (!seen[r]) {
            seen[r] = true;
            work.push_back(r);
        }
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (auto t : adj[v])
            if (!seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
    }
    return seen;
}

std::vector<bool> coreachable(const Adjacency& adj, const std::vector<bool>& targets) {
    Adjacency rev(adj.size());
    for (std::uint32_t v = 0; v < adj.size(); ++v)
        for (auto t : adj[v]) rev[t].push_back(v);
    std::vector<std::uint32_t> roots;
    for (std::uint32_t v = 0; v < targets.size(); ++v)
        if (targets[v]) roots.push_back(v);
    return reachable_from(rev, roots);
}

}  // namespace pecan::detail
