#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oet/errors.hpp"
#include "oet/journal.hpp"
#include "oet/visits.hpp"

namespace oet {

// An open-ended tree journals a value that changes over time. Every update
// binds exactly one new node; the current value sits in the node bound last,
// and both update and access cost O(log M) in the number of updates M.
//
// Shape: the right spine holds the collector nodes. Collector k owns a left
// subtree whose depth may not exceed L_k = start_depth + k - 1, and collector
// k+1 is created only once that subtree is full. Inside a subtree the filled
// nodes always form a prefix of the preorder traversal, so the structure
// never needs reorganising.

enum class node_kind : std::uint8_t { interior, leaf };

template <class T>
struct tree_node {
    using slot_type = slot<tree_node>;

    explicit tree_node(T v, node_kind k = node_kind::interior, std::uint32_t limit_hint = 0)
        : value(std::move(v)), limit(limit_hint), kind(k) {}

    slot_type left;
    T value;
    slot_type right;
    std::uint32_t limit;  // collector depth limit; set in the depth-annotated variant only
    node_kind kind;
};

struct tree_config {
    std::uint32_t start_depth = 1;  // depth limit of the first collector's subtree
    bool depth_annotated = false;   // store the limit on collector nodes (enables rebase)
    bool compact_leaves = false;    // maximal-depth nodes carry no child slots
};

struct tree_stats {
    std::uint64_t update_count = 0;
    std::uint64_t collector_count = 0;
    std::uint64_t max_node_depth = 0;  // root counts as depth 1
    std::uint64_t node_count = 0;
    std::uint64_t leaf_count = 0;  // filled nodes at the maximal depth of their subtree
};

enum class violation_rule { limit, completeness, preorder_prefix, leaf_kind };

inline const char* to_string(violation_rule rule) {
    switch (rule) {
        case violation_rule::limit: return "limit";
        case violation_rule::completeness: return "completeness";
        case violation_rule::preorder_prefix: return "preorder-prefix";
        case violation_rule::leaf_kind: return "leaf-kind";
    }
    return "?";
}

struct validation_result {
    struct violation_info {
        violation_rule rule;
        std::string path;  // "root" followed by .L/.R steps
        std::string detail;
    };

    std::optional<violation_info> violation;
    bool ok() const { return !violation.has_value(); }
};

template <class T>
class tree {
public:
    using node_type = tree_node<T>;
    using slot_type = typename node_type::slot_type;
    using trail_type = trail<node_type>;
    using mark_type = typename trail_type::mark;

    explicit tree(tree_config config = {})
        : store_(std::make_shared<store>()),
          root_(&store_->root),
          config_(config),
          effective_start_(config.start_depth),
          visits_(std::make_shared<visit_counter>()) {
        if (config.start_depth < 1) throw bad_config("tree: start_depth must be at least 1");
    }

    // Handles are aliases: copies share the structure, the trail and the
    // visit counters of the handle they were copied from.

    const tree_config& config() const { return config_; }
    std::uint32_t effective_start() const { return effective_start_; }

    bool is_empty() const { return root_->empty(); }

    void insert(T value) {
        std::uint64_t visited = 0;
        if (root_->empty()) {
            bind_new(*root_, std::move(value), node_kind::interior, effective_start_);
            ++visited;
            visits_->record(visited);
            return;
        }
        node_type* col = root_->get();
        ++visited;
        std::uint32_t limit = effective_start_;
        while (col->right.filled()) {  // find the last collector, tracking its limit
            col = col->right.get();
            ++limit;
            ++visited;
        }
        insert_below(*col, std::move(value), limit, visited);
        visits_->record(visited);
    }

    // Most recently inserted (and not undone) value.
    const T& lookup() const {
        if (root_->empty()) throw empty_tree("lookup on an empty tree");
        std::uint64_t visited = 1;
        const node_type* n = root_->get();
        while (n->kind == node_kind::interior) {
            if (n->right.filled()) n = n->right.get();
            else if (n->left.filled()) n = n->left.get();
            else break;
            ++visited;
        }
        visits_->record(visited);
        return n->value;
    }

    // Values in insertion order: each collector's value, then the preorder of
    // its left subtree, along the spine.
    std::vector<T> flatten() const {
        std::vector<T> out;
        flatten_into(out);
        return out;
    }

    void flatten_into(std::vector<T>& out) const {
        out.clear();
        if (root_->empty()) return;
        for (const node_type* col = root_->get();;) {
            out.push_back(col->value);
            flatten_preorder(col->left, out);
            if (col->right.empty()) break;
            col = col->right.get();
        }
    }

    // Canonical text form. Empty slot -> "_", leaf -> "leaf(v)", otherwise
    // "tree(left,v,right)". No whitespace; depth annotations do not show.
    std::string render() const {
        std::ostringstream out;
        render_slot(*root_, out);
        return std::move(out).str();
    }

    validation_result validate() const {
        validation_result res;
        if (root_->empty()) return res;
        std::uint32_t limit = effective_start_;
        std::uint64_t spine_steps = 0;
        for (const node_type* col = root_->get();;) {
            if (col->kind != node_kind::interior) {
                res.violation = {violation_rule::leaf_kind, spine_path(spine_steps),
                                 "collector node is a leaf"};
                return res;
            }
            if (config_.depth_annotated && col->limit != limit) {
                res.violation = {violation_rule::limit, spine_path(spine_steps),
                                 "collector depth annotation does not match its position"};
                return res;
            }
            subtree_scan scan;
            if (auto v = scan_subtree(col->left, limit, scan)) {
                v->path = spine_path(spine_steps) + ".L" + v->path;
                res.violation = std::move(v);
                return res;
            }
            if (col->right.filled() && !scan.complete) {
                res.violation = {violation_rule::completeness, spine_path(spine_steps),
                                 "next collector exists but the left subtree is incomplete"};
                return res;
            }
            if (col->right.empty()) break;
            col = col->right.get();
            ++limit;
            ++spine_steps;
        }
        return res;
    }

    tree_stats stats() const {
        tree_stats st;
        if (root_->empty()) return st;
        std::uint32_t limit = effective_start_;
        std::uint64_t depth = 1;
        for (const node_type* col = root_->get();;) {
            ++st.collector_count;
            ++st.node_count;
            st.max_node_depth = std::max(st.max_node_depth, depth);
            accumulate_subtree(col->left, limit, depth + 1, st);
            if (col->right.empty()) break;
            col = col->right.get();
            ++limit;
            ++depth;
        }
        st.update_count = st.node_count;
        return st;
    }

    // New handle rooted at the deepest collector, sharing this structure.
    // Requires the depth-annotated variant: the stored limit becomes the new
    // handle's starting depth. Valid while that collector stays bound; undoing
    // past it and continuing through the old rebased handle is a caller error.
    tree rebase() const {
        if (!config_.depth_annotated)
            throw needs_depth_annotation("rebase needs the depth-annotated variant");
        if (root_->empty()) throw empty_tree("rebase on an empty tree");
        slot_type* s = root_;
        node_type* n = s->get();
        while (n->right.filled()) {
            s = &n->right;
            n = s->get();
        }
        tree out(*this);
        out.root_ = s;
        out.effective_start_ = n->limit;
        out.visits_ = std::make_shared<visit_counter>();
        return out;
    }

    mark_type mark() const { return store_->tr.make_mark(); }

    void undo_to(const mark_type& m) { store_->tr.undo_to(m); }

    visit_totals visits() const { return visits_->snapshot(); }

    // Low-level access, used by instrumentation and white-box tests.
    slot_type& root_slot() { return *root_; }
    const slot_type& root_slot() const { return *root_; }
    trail_type& journal() { return store_->tr; }
    const trail_type& journal() const { return store_->tr; }

    node_type* make_interior(T value, std::uint32_t limit = 0) {
        return store_->nodes.make(std::move(value), node_kind::interior, limit);
    }
    node_type* make_leaf(T value) {
        return store_->nodes.make(std::move(value), node_kind::leaf, 0);
    }

private:
    struct store {
        arena<node_type> nodes;
        trail_type tr;
        slot_type root;
    };

    struct subtree_scan {
        std::uint64_t filled = 0;
        bool complete = false;  // full down to the depth budget
    };

    // Descend the last collector's left subtree with the remaining depth
    // budget. `back` is the slot to instantiate once the path is exhausted:
    // the right sibling captured on the most recent left turn, or the spine
    // slot where the next collector belongs. `back_budget` is the depth
    // allowance of the subtree that would hang off `back`.
    void insert_below(node_type& collector, T value, std::uint32_t limit, std::uint64_t& visited) {
        slot_type* cur = &collector.left;
        slot_type* back = &collector.right;
        std::uint32_t budget = limit;
        std::uint32_t back_budget = 0;
        bool back_on_spine = true;
        for (;;) {
            if (cur->empty()) {
                bind_new(*cur, std::move(value), kind_for(budget), 0);
                ++visited;
                return;
            }
            node_type* n = cur->get();
            ++visited;
            if (budget == 1) {
                if (back_on_spine)
                    bind_new(*back, std::move(value), node_kind::interior, limit + 1);
                else
                    bind_new(*back, std::move(value), kind_for(back_budget), 0);
                ++visited;
                return;
            }
            assert(n->kind == node_kind::interior);
            --budget;
            if (n->right.empty()) {
                back = &n->right;
                back_budget = budget;
                back_on_spine = false;
                cur = &n->left;
            } else {
                cur = &n->right;
            }
        }
    }

    node_kind kind_for(std::uint32_t budget) const {
        return (config_.compact_leaves && budget == 1) ? node_kind::leaf : node_kind::interior;
    }

    void bind_new(slot_type& s, T value, node_kind kind, std::uint32_t collector_limit) {
        std::uint32_t limit = config_.depth_annotated ? collector_limit : 0;
        node_type* n = store_->nodes.make(std::move(value), kind, limit);
        store_->tr.bind(s, n);
    }

    static void flatten_preorder(const slot_type& s, std::vector<T>& out) {
        const node_type* n = s.get();
        if (!n) return;
        out.push_back(n->value);
        if (n->kind == node_kind::leaf) return;
        flatten_preorder(n->left, out);
        flatten_preorder(n->right, out);
    }

    static void render_slot(const slot_type& s, std::ostream& out) {
        const node_type* n = s.get();
        if (!n) {
            out << '_';
            return;
        }
        if (n->kind == node_kind::leaf) {
            out << "leaf(" << n->value << ')';
            return;
        }
        out << "tree(";
        render_slot(n->left, out);
        out << ',' << n->value << ',';
        render_slot(n->right, out);
        out << ')';
    }

    static std::string spine_path(std::uint64_t steps) {
        std::string path = "root";
        for (std::uint64_t i = 0; i < steps; ++i) path += ".R";
        return path;
    }

    std::optional<typename validation_result::violation_info>
    scan_subtree(const slot_type& s, std::uint32_t budget, subtree_scan& out) const {
        const node_type* n = s.get();
        if (!n) {
            out.filled = 0;
            out.complete = (budget == 0);
            return std::nullopt;
        }
        if (budget == 0)
            return typename validation_result::violation_info{
                violation_rule::limit, "", "node beyond its subtree's depth limit"};
        if (config_.compact_leaves) {
            if (budget == 1 && n->kind != node_kind::leaf)
                return typename validation_result::violation_info{
                    violation_rule::leaf_kind, "", "maximal-depth node is not a leaf"};
            if (budget > 1 && n->kind == node_kind::leaf)
                return typename validation_result::violation_info{
                    violation_rule::leaf_kind, "", "leaf above the maximal depth"};
        } else if (n->kind == node_kind::leaf) {
            return typename validation_result::violation_info{
                violation_rule::leaf_kind, "", "leaf node in a variant without compact leaves"};
        }
        if (n->kind == node_kind::leaf) {
            out.filled = 1;
            out.complete = (budget == 1);
            return std::nullopt;
        }
        subtree_scan left, right;
        if (auto v = scan_subtree(n->left, budget - 1, left)) {
            v->path = ".L" + v->path;
            return v;
        }
        if (auto v = scan_subtree(n->right, budget - 1, right)) {
            v->path = ".R" + v->path;
            return v;
        }
        if (right.filled > 0 && !left.complete)
            return typename validation_result::violation_info{
                violation_rule::preorder_prefix, "",
                "right child bound before the left subtree is complete"};
        out.filled = 1 + left.filled + right.filled;
        out.complete = left.complete && right.complete;
        return std::nullopt;
    }

    static void accumulate_subtree(const slot_type& s, std::uint32_t budget, std::uint64_t depth,
                                   tree_stats& st) {
        const node_type* n = s.get();
        if (!n || budget == 0) return;
        ++st.node_count;
        if (budget == 1) ++st.leaf_count;
        st.max_node_depth = std::max(st.max_node_depth, depth);
        if (n->kind == node_kind::leaf) return;
        accumulate_subtree(n->left, budget - 1, depth + 1, st);
        accumulate_subtree(n->right, budget - 1, depth + 1, st);
    }

    std::shared_ptr<store> store_;
    slot_type* root_;
    tree_config config_;
    std::uint32_t effective_start_;
    std::shared_ptr<visit_counter> visits_;
};

}  // namespace oet
