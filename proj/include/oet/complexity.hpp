#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "oet/errors.hpp"

namespace oet {

// Closed-form cost model for the journal structures. M is the update count,
// N the depth of the tree under construction, D0 the starting depth.

enum class repr_kind { tree_plain, tree_leaf_wrapped, tree_leaf_inline, list };

namespace detail {
inline void check_depth_range(std::uint32_t n, const char* what) {
    if (n < 1 || n > 62) throw bad_args(std::string(what) + " out of range");
}
}  // namespace detail

// Values held once the trees of depths D0..N and their collectors are all
// complete: 2^(N+1) - 2^D0. At D0 = 1 this is the familiar 2^(N+1) - 2.
inline std::uint64_t capacity_completed(std::uint32_t depth, std::uint32_t start_depth) {
    detail::check_depth_range(start_depth, "capacity_completed: start depth");
    detail::check_depth_range(depth, "capacity_completed: depth");
    if (depth < start_depth) throw bad_args("capacity_completed: depth below start depth");
    return (std::uint64_t{1} << (depth + 1)) - (std::uint64_t{1} << start_depth);
}

// Depth of the tree under construction after M updates: the smallest N >= D0
// with M <= capacity_completed(N, D0). For D0 = 1, equals ceil(log2(M+2))-1.
inline std::uint32_t depth_of_last_tree(std::uint64_t updates, std::uint32_t start_depth) {
    if (updates < 1) throw bad_args("depth_of_last_tree: update count must be at least 1");
    detail::check_depth_range(start_depth, "depth_of_last_tree: start depth");
    std::uint32_t n = start_depth;
    while (capacity_completed(n, start_depth) < updates) ++n;
    return n;
}

// Maximum node depth (root = 1) after M updates, from occupancy arithmetic
// alone. The deepest filled node is either in the last tree -- whose preorder
// fill reaches depth min(c, N) after c values -- or at the bottom of the
// previous, completed tree.
inline std::uint64_t predicted_max_depth(std::uint64_t updates, std::uint32_t start_depth) {
    const std::uint32_t n = depth_of_last_tree(updates, start_depth);
    const std::uint64_t collectors = n - start_depth + std::uint64_t{1};
    const std::uint64_t prior =
        (n == start_depth) ? 0 : capacity_completed(n - 1, start_depth);
    const std::uint64_t in_last_tree = updates - prior - 1;  // minus the collector's own value
    const std::uint64_t last_depth =
        collectors + std::min<std::uint64_t>(in_last_tree, n);
    const std::uint64_t completed_depth =
        (collectors >= 2) ? (collectors - 1) + (n - std::uint64_t{1}) : 0;
    return std::max(last_depth, completed_depth);
}

// Heap cells per representation, in units of one cons cell = 2 cells and one
// tree node = 4. Asymptotic: the leaf variants assume half the values sit in
// leaves. Exact space audits belong to stats(), not to this estimator.
inline std::uint64_t heap_cells_estimate(std::uint64_t updates, repr_kind repr) {
    switch (repr) {
        case repr_kind::tree_plain: return 4 * updates;
        case repr_kind::tree_leaf_wrapped: return 3 * updates;
        case repr_kind::tree_leaf_inline: return 2 * updates;
        case repr_kind::list: return 2 * updates;
    }
    throw bad_args("heap_cells_estimate: unknown representation");
}

}  // namespace oet
