#pragma once

#include <stdexcept>
#include <string>

namespace oet {

// Recoverable errors: bad configuration, or a query the current state cannot
// answer. Callers are expected to handle these.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class bad_config : public error {
public:
    using error::error;
};

// Out-of-range arguments to the closed-form estimators.
class bad_args : public error {
public:
    using error::error;
};

// Lookup or rebase on a journal that holds no value yet.
class empty_error : public error {
public:
    using error::error;
};

class empty_tree : public empty_error {
public:
    using empty_error::empty_error;
};

class empty_list : public empty_error {
public:
    using empty_error::empty_error;
};

// Undo to a mark that an older undo has already swept past.
class stale_mark : public error {
public:
    using error::error;
};

class needs_depth_annotation : public error {
public:
    using error::error;
};

// Broken invariant inside the structure: write-once violation, a mark used
// with a foreign trail. These indicate a defective algorithm, never bad
// input, so they are kept fatal-by-default in every build mode.
class fault : public std::logic_error {
public:
    explicit fault(const std::string& what) : std::logic_error(what) {}
};

[[noreturn]] inline void raise_fault(const std::string& what) { throw fault(what); }

}  // namespace oet
