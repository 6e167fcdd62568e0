#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oet/errors.hpp"
#include "oet/journal.hpp"
#include "oet/visits.hpp"

namespace oet {

// Open-ended list baseline: a chain of write-once cons cells ending in one
// empty slot, the open end. The element before the open end is the current
// value, so update and access both scan the whole chain: O(M) in the number
// of updates. Cells bind through the same trail mechanism as tree nodes.

template <class T>
struct list_cell {
    explicit list_cell(T v) : value(std::move(v)) {}

    T value;
    slot<list_cell> next;
};

template <class T>
class list {
public:
    using cell_type = list_cell<T>;
    using slot_type = slot<cell_type>;
    using trail_type = trail<cell_type>;
    using mark_type = typename trail_type::mark;

    list()
        : store_(std::make_shared<store>()),
          head_(&store_->head),
          visits_(std::make_shared<visit_counter>()) {}

    bool is_empty() const { return head_->empty(); }

    void insert(T value) {
        std::uint64_t visited = 0;
        slot_type* s = head_;
        while (s->filled()) {
            s = &s->get()->next;
            ++visited;
        }
        store_->tr.bind(*s, store_->cells.make(std::move(value)));
        ++visited;
        visits_->record(visited);
    }

    const T& lookup() const {
        if (head_->empty()) throw empty_list("lookup on an empty list");
        std::uint64_t visited = 1;
        const cell_type* c = head_->get();
        while (c->next.filled()) {
            c = c->next.get();
            ++visited;
        }
        visits_->record(visited);
        return c->value;
    }

    std::vector<T> flatten() const {
        std::vector<T> out;
        flatten_into(out);
        return out;
    }

    void flatten_into(std::vector<T>& out) const {
        out.clear();
        for (const cell_type* c = head_->get(); c; c = c->next.get()) out.push_back(c->value);
    }

    // "[v1,v2,...|_]"; an empty list renders "_".
    std::string render() const {
        if (head_->empty()) return "_";
        std::ostringstream out;
        out << '[';
        const cell_type* c = head_->get();
        for (;;) {
            out << c->value;
            if (c->next.empty()) break;
            out << ',';
            c = c->next.get();
        }
        out << "|_]";
        return std::move(out).str();
    }

    // New handle whose head is the last bound cell; shares the structure.
    list rebase() const {
        if (head_->empty()) throw empty_list("rebase on an empty list");
        slot_type* s = head_;
        while (s->get()->next.filled()) s = &s->get()->next;
        list out(*this);
        out.head_ = s;
        out.visits_ = std::make_shared<visit_counter>();
        return out;
    }

    mark_type mark() const { return store_->tr.make_mark(); }

    void undo_to(const mark_type& m) { store_->tr.undo_to(m); }

    visit_totals visits() const { return visits_->snapshot(); }

    slot_type& head_slot() { return *head_; }
    const slot_type& head_slot() const { return *head_; }
    trail_type& journal() { return store_->tr; }

private:
    struct store {
        arena<cell_type> cells;
        trail_type tr;
        slot_type head;
    };

    std::shared_ptr<store> store_;
    slot_type* head_;
    std::shared_ptr<visit_counter> visits_;
};

}  // namespace oet
