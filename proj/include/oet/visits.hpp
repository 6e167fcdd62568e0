#pragma once

#include <atomic>
#include <cstdint>

namespace oet {

struct visit_totals {
    std::uint64_t nodes_visited = 0;  // cumulative for this handle
    std::uint64_t last_visits = 0;    // most recent insert or lookup
};

// Node-inspection counter: entering a materialized node costs one visit and
// binding a new node costs one. Marks and undos are free. Relaxed atomics so
// overlapping read-only operations on one handle stay well defined.
class visit_counter {
public:
    void record(std::uint64_t n) {
        total_.fetch_add(n, std::memory_order_relaxed);
        last_.store(n, std::memory_order_relaxed);
    }

    visit_totals snapshot() const {
        return {total_.load(std::memory_order_relaxed), last_.load(std::memory_order_relaxed)};
    }

private:
    std::atomic<std::uint64_t> total_{0};
    std::atomic<std::uint64_t> last_{0};
};

}  // namespace oet
