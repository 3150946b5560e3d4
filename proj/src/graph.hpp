#pragma once

#include <cstdint>
#include <vector>

namespace pecan::detail {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

struct SccDecomposition {
    std::vector<std::uint32_t> component;  // per node
    std::vector<bool> nontrivial;          // per component: has an internal edge
    std::size_t count = 0;
};

/// Iterative Tarjan over the nodes reachable from `roots` (all nodes if empty).
/// Unvisited nodes get component id UINT32_MAX.
SccDecomposition strongly_connected(const Adjacency& adj, const std::vector<std::uint32_t>& roots = {});

/// Nodes reachable from `roots` (roots included).
std::vector<bool> reachable_from(const Adjacency& adj, const std::vector<std::uint32_t>& roots);

/// Nodes that can reach some node in `targets` (targets included).
std::vector<bool> coreachable(const Adjacency& adj, const std::vector<bool>& targets);

}  // namespace pecan::detail
