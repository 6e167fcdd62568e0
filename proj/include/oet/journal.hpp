#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "oet/errors.hpp"

namespace oet {

// Write-once cells plus the trail that makes bindings undoable.
//
// A slot is Empty or Filled with a node pointer. All binding goes through a
// trail, which records every bound slot in order. undo_to(mark) empties the
// slots bound after the mark, restoring the exact state the mark saw. A slot
// emptied by an undo may be bound again (a new epoch); binding a slot that is
// still Filled is a fault.

template <class Node>
class trail;

template <class Node>
class slot {
public:
    slot() = default;
    slot(const slot&) = delete;
    slot& operator=(const slot&) = delete;

    bool empty() const { return target_ == nullptr; }
    bool filled() const { return target_ != nullptr; }
    Node* get() const { return target_; }

private:
    friend class trail<Node>;
    Node* target_ = nullptr;
};

// Chronological record of bindings. One trail governs one structure instance;
// a mark is meaningful only for the trail that issued it.
template <class Node>
class trail {
public:
    class mark {
    public:
        mark() = default;
        std::size_t position() const { return position_; }

    private:
        friend class trail;
        mark(const trail* owner, std::size_t position, std::uint64_t birth)
            : owner_(owner), position_(position), birth_(birth) {}

        const trail* owner_ = nullptr;
        std::size_t position_ = 0;
        std::uint64_t birth_ = 0;
    };

    trail() = default;
    trail(const trail&) = delete;
    trail& operator=(const trail&) = delete;

    // Number of currently bound slots.
    std::size_t size() const { return entries_.size(); }

    void bind(slot<Node>& s, Node* n) {
        if (n == nullptr) raise_fault("journal: bind without a node");
        if (s.filled()) raise_fault("journal: bind on a filled slot");
        s.target_ = n;
        entries_.push_back(&s);
    }

    mark make_mark() { return mark(this, entries_.size(), ++last_birth_); }

    bool valid(const mark& m) const {
        if (m.owner_ != this) raise_fault("journal: mark from another trail");
        return m.position_ <= entries_.size() && !dead(m.birth_);
    }

    // Empties every slot bound after m and truncates the record. Marks
    // younger than m become stale; m itself stays usable.
    void undo_to(const mark& m) {
        if (!valid(m)) throw stale_mark("journal: undo to a stale mark");
        for (std::size_t i = entries_.size(); i > m.position_; --i)
            entries_[i - 1]->target_ = nullptr;
        entries_.resize(m.position_);
        if (m.birth_ < last_birth_) {
            // fold (m.birth_, last_birth_] into the dead list; intervals stay
            // disjoint and sorted by lower bound
            while (!dead_.empty() && dead_.back().first >= m.birth_) dead_.pop_back();
            dead_.emplace_back(m.birth_, last_birth_);
        }
    }

private:
    bool dead(std::uint64_t birth) const {
        auto it = std::partition_point(dead_.begin(), dead_.end(),
                                       [birth](const auto& iv) { return iv.first < birth; });
        if (it == dead_.begin()) return false;
        --it;
        return birth <= it->second;  // birth in (lo, hi]
    }

    std::vector<slot<Node>*> entries_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> dead_;
    std::uint64_t last_birth_ = 0;
};

// Append-only node storage. Undone nodes stay resident until the whole
// structure goes away, like heap terms pinned by the journal's history.
template <class Node>
class arena {
public:
    arena() = default;
    arena(const arena&) = delete;
    arena& operator=(const arena&) = delete;

    template <class... Args>
    Node* make(Args&&... args) {
        return &nodes_.emplace_back(std::forward<Args>(args)...);
    }

    std::size_t size() const { return nodes_.size(); }

private:
    std::deque<Node> nodes_;
};

}  // namespace oet
