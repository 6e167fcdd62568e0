#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oet/errors.hpp"
#include "oet/list.hpp"
#include "oet/oracle.hpp"
#include "oet/tree.hpp"

namespace oet {

// SplitMix64. Fixed, documented constants so an op stream is reproducible
// from the seed alone, in any implementation of this harness.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Modulo keeps the stream portable; the bias is irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

struct fuzz_weights {
    std::uint32_t insert = 5;
    std::uint32_t lookup = 3;
    std::uint32_t mark = 3;
    std::uint32_t undo = 3;
};

struct fuzz_plan {
    std::uint64_t seed = 0;
    std::uint64_t op_count = 10000;
    fuzz_weights weights;
    std::vector<tree_config> grid = {tree_config{}};
};

struct fuzz_report {
    std::uint64_t ops_executed = 0;
    std::uint64_t divergences = 0;
    std::uint64_t seed = 0;
    std::string generator;  // PRNG the op stream was derived from
    std::optional<std::uint64_t> first_divergence_op;
    std::string first_divergence;
    // diagnostics
    std::uint64_t inserts = 0;
    std::uint64_t lookups = 0;
    std::uint64_t marks = 0;
    std::uint64_t undos = 0;
    std::uint64_t final_update_count = 0;
};

// D0 in {1,2,3,10} crossed with plain / depth-annotated / compact-leaf / both.
inline std::vector<tree_config> full_config_grid() {
    std::vector<tree_config> grid;
    for (std::uint32_t d : {1u, 2u, 3u, 10u})
        for (int v = 0; v < 4; ++v)
            grid.push_back(tree_config{d, (v & 1) != 0, (v & 2) != 0});
    return grid;
}

// Drives the oracle, the open-ended list and one open-ended tree per grid
// entry with the same seed-derived op stream. After every op the lookup
// results, error outcomes and flatten-vs-log are compared; every mutation is
// followed by a structural validate of each tree. Undo targets are drawn
// from the currently valid marks only.
inline fuzz_report differential_run(const fuzz_plan& plan) {
    if (plan.op_count < 1) throw bad_config("fuzz: op_count must be at least 1");
    const std::uint64_t total_weight = std::uint64_t{plan.weights.insert} + plan.weights.lookup +
                                       plan.weights.mark + plan.weights.undo;
    if (total_weight == 0) throw bad_config("fuzz: op weights sum to zero");
    if (plan.grid.empty()) throw bad_config("fuzz: empty config grid");

    using value_type = std::int64_t;

    oracle<value_type> model;
    list<value_type> baseline;
    std::vector<tree<value_type>> trees;
    trees.reserve(plan.grid.size());
    for (const auto& cfg : plan.grid) trees.emplace_back(cfg);

    struct mark_set {
        typename oracle<value_type>::mark_type model_mark;
        typename list<value_type>::mark_type list_mark;
        std::vector<typename tree<value_type>::mark_type> tree_marks;
    };
    std::vector<mark_set> marks;

    fuzz_report report;
    report.seed = plan.seed;
    report.generator = "splitmix64";

    splitmix64 rng(plan.seed);
    value_type next_value = 1;
    std::vector<value_type> scratch;

    auto diverge = [&](std::uint64_t op, std::string what) {
        ++report.divergences;
        if (!report.first_divergence_op) {
            report.first_divergence_op = op;
            report.first_divergence = std::move(what);
        }
    };

    for (std::uint64_t op = 0; op < plan.op_count; ++op) {
        const std::uint64_t pick = rng.below(total_weight);
        bool mutated = false;

        if (pick < plan.weights.insert) {
            ++report.inserts;
            const value_type v = next_value++;
            model.insert(v);
            baseline.insert(v);
            for (auto& t : trees) t.insert(v);
            mutated = true;
        } else if (pick < std::uint64_t{plan.weights.insert} + plan.weights.lookup) {
            ++report.lookups;  // covered by the per-op comparison below
        } else if (pick < std::uint64_t{plan.weights.insert} + plan.weights.lookup + plan.weights.mark) {
            ++report.marks;
            mark_set ms;
            ms.model_mark = model.mark();
            ms.list_mark = baseline.mark();
            ms.tree_marks.reserve(trees.size());
            for (auto& t : trees) ms.tree_marks.push_back(t.mark());
            marks.push_back(std::move(ms));
        } else if (!marks.empty()) {
            ++report.undos;
            const std::size_t target = static_cast<std::size_t>(rng.below(marks.size()));
            const mark_set& ms = marks[target];
            model.undo_to(ms.model_mark);
            baseline.undo_to(ms.list_mark);
            for (std::size_t i = 0; i < trees.size(); ++i) trees[i].undo_to(ms.tree_marks[i]);
            marks.resize(target + 1);  // younger marks are stale now
            mutated = true;
        }

        const bool model_empty = model.is_empty();
        const value_type expected = model_empty ? value_type{} : model.lookup();

        auto check_lookup = [&](const char* name, const auto& s) {
            if (model_empty) {
                try {
                    (void)s.lookup();
                    diverge(op, std::string(name) + ": lookup succeeded on an empty journal");
                } catch (const empty_error&) {
                }
            } else {
                try {
                    if (s.lookup() != expected)
                        diverge(op, std::string(name) + ": lookup value differs from the log");
                } catch (const empty_error&) {
                    diverge(op, std::string(name) + ": lookup failed on a nonempty journal");
                }
            }
        };
        auto check_flatten = [&](const char* name, const auto& s) {
            s.flatten_into(scratch);
            if (scratch.size() != model.log().size() ||
                !std::equal(scratch.begin(), scratch.end(), model.log().begin()))
                diverge(op, std::string(name) + ": flatten differs from the log");
        };

        check_lookup("list", baseline);
        check_flatten("list", baseline);
        for (std::size_t i = 0; i < trees.size(); ++i) {
            check_lookup("tree", trees[i]);
            check_flatten("tree", trees[i]);
            if (mutated && !trees[i].validate().ok())
                diverge(op, "tree[" + std::to_string(i) + "]: validate failed after a mutation");
        }

        ++report.ops_executed;
    }

    report.final_update_count = model.size();
    return report;
}

}  // namespace oet
