#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "oet/errors.hpp"

namespace oet {

// Trivially correct reference model: an append log plus a checkpoint stack.
// The current value is the last log entry; a checkpoint records the log
// length and undoing truncates back to it. Ground truth for differential
// tests.
template <class T>
class oracle {
public:
    struct mark_type {
        std::size_t index = 0;
    };

    void insert(T value) { log_.push_back(std::move(value)); }

    const T& lookup() const {
        if (log_.empty()) throw empty_error("oracle: lookup on an empty log");
        return log_.back();
    }

    mark_type mark() {
        checkpoints_.push_back(log_.size());
        return {checkpoints_.size() - 1};
    }

    // Restore the state checkpoint m saw; checkpoints younger than m are
    // discarded, m itself stays usable.
    void undo_to(mark_type m) {
        if (m.index >= checkpoints_.size()) throw stale_mark("oracle: undo to a stale mark");
        log_.resize(checkpoints_[m.index]);
        checkpoints_.resize(m.index + 1);
    }

    // Pop the newest checkpoint and restore to it.
    void undo() {
        if (checkpoints_.empty()) throw stale_mark("oracle: undo with no checkpoint");
        log_.resize(checkpoints_.back());
        checkpoints_.pop_back();
    }

    const std::vector<T>& log() const { return log_; }
    std::size_t size() const { return log_.size(); }
    std::size_t checkpoint_count() const { return checkpoints_.size(); }
    bool is_empty() const { return log_.empty(); }

private:
    std::vector<T> log_;
    std::vector<std::size_t> checkpoints_;
};

}  // namespace oet
