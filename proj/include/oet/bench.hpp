#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oet/errors.hpp"
#include "oet/list.hpp"
#include "oet/tree.hpp"

namespace oet {

// Benchmark harness: prepopulate one structure with K updates, then time a
// loop of R lookups or R insert+undo pairs. Visit totals are the
// hardware-independent cost measure; wall time is reported alongside.

enum class bench_structure { tree, list };
enum class bench_op { insert, lookup };

struct bench_spec {
    bench_structure structure = bench_structure::tree;
    std::uint32_t start_depth = 1;
    bool compact_leaves = false;
    bool depth_annotated = false;
    std::uint64_t prepopulate = 0;  // K inserts of the values 1..K
    bench_op op = bench_op::lookup;
    std::uint64_t reps = 1;
    std::uint64_t seed = 0;  // reserved; payloads are fixed integers
};

struct bench_row {
    bench_spec spec;
    std::uint64_t elapsed_ns = 0;  // measured loop only, setup excluded
    std::uint64_t visits = 0;      // node inspections over the measured loop
};

inline constexpr const char* bench_csv_header =
    "structure,start_depth,compact_leaves,depth_annotated,prepopulate,op,reps,elapsed_ns,visits";

namespace detail {

inline void keep(std::uint64_t& v) {
#if defined(__GNUC__) || defined(__clang__)
    asm volatile("" : "+r"(v));
#else
    volatile std::uint64_t sink = v;
    (void)sink;
#endif
}

template <class S>
void run_loop(S& s, const bench_spec& spec, bench_row& row) {
    for (std::uint64_t i = 1; i <= spec.prepopulate; ++i) s.insert(static_cast<std::int64_t>(i));
    const std::vector<std::int64_t> before = s.flatten();
    const std::uint64_t visits_before = s.visits().nodes_visited;
    std::uint64_t sink = 0;

    const auto t0 = std::chrono::steady_clock::now();
    if (spec.op == bench_op::lookup) {
        for (std::uint64_t r = 0; r < spec.reps; ++r)
            sink += static_cast<std::uint64_t>(s.lookup());
    } else {
        const auto v = static_cast<std::int64_t>(spec.prepopulate + 1);
        for (std::uint64_t r = 0; r < spec.reps; ++r) {
            const auto m = s.mark();
            s.insert(v);
            s.undo_to(m);
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    keep(sink);

    row.elapsed_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    row.visits = s.visits().nodes_visited - visits_before;
    if (s.flatten() != before)
        raise_fault("bench: structure changed across the measured loop");
}

}  // namespace detail

inline bench_row run_bench(const bench_spec& spec) {
    if (spec.reps < 1) throw bad_config("bench: reps must be at least 1");
    if (spec.structure == bench_structure::list &&
        (spec.start_depth != 1 || spec.compact_leaves || spec.depth_annotated))
        throw bad_config("bench: tree variant flags do not apply to the list");
    if (spec.op == bench_op::lookup && spec.prepopulate == 0)
        throw bad_config("bench: lookup loop needs at least one prepopulated update");

    bench_row row{spec, 0, 0};
    if (spec.structure == bench_structure::tree) {
        tree<std::int64_t> t(tree_config{spec.start_depth, spec.depth_annotated, spec.compact_leaves});
        detail::run_loop(t, spec, row);
    } else {
        list<std::int64_t> l;
        detail::run_loop(l, spec, row);
    }
    return row;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string to_csv(const bench_row& row) {
    std::ostringstream out;
    out << (row.spec.structure == bench_structure::tree ? "tree" : "list") << ','
        << row.spec.start_depth << ',' << (row.spec.compact_leaves ? 1 : 0) << ','
        << (row.spec.depth_annotated ? 1 : 0) << ',' << row.spec.prepopulate << ','
        << (row.spec.op == bench_op::insert ? "insert" : "lookup") << ',' << row.spec.reps << ','
        << row.elapsed_ns << ',' << row.visits;
    return std::move(out).str();
}

inline void write_csv(const std::string& path, const std::vector<bench_row>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("csv: cannot open " + path + " for writing");
    out << bench_csv_header << '\n';
    for (const auto& row : rows) out << to_csv(row) << '\n';
    if (!out) throw error("csv: write to " + path + " failed");
}

// One row at a time; writes the header when the file is new or empty.
inline void append_csv(const std::string& path, const bench_row& row) {
    bool fresh = true;
    {
        std::ifstream in(path);
        std::string first;
        if (in && std::getline(in, first) && !first.empty()) {
            if (first != bench_csv_header) throw error("csv: " + path + " has a foreign header");
            fresh = false;
        }
    }
    std::ofstream out(path, std::ios::app);
    if (!out) throw error("csv: cannot open " + path + " for appending");
    if (fresh) out << bench_csv_header << '\n';
    out << to_csv(row) << '\n';
    if (!out) throw error("csv: write to " + path + " failed");
}

inline std::vector<bench_row> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != bench_csv_header)
        throw error("csv: " + path + " does not start with the bench header");

    std::vector<bench_row> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 9)
            throw error("csv: line " + std::to_string(lineno) + " has " +
                        std::to_string(fields.size()) + " fields, expected 9");
        bench_row row;
        if (fields[0] == "tree") row.spec.structure = bench_structure::tree;
        else if (fields[0] == "list") row.spec.structure = bench_structure::list;
        else throw error("csv: line " + std::to_string(lineno) + ": unknown structure");
        row.spec.start_depth = static_cast<std::uint32_t>(std::stoull(fields[1]));
        row.spec.compact_leaves = fields[2] == "1";
        row.spec.depth_annotated = fields[3] == "1";
        row.spec.prepopulate = std::stoull(fields[4]);
        if (fields[5] == "insert") row.spec.op = bench_op::insert;
        else if (fields[5] == "lookup") row.spec.op = bench_op::lookup;
        else throw error("csv: line " + std::to_string(lineno) + ": unknown op");
        row.spec.reps = std::stoull(fields[6]);
        row.elapsed_ns = std::stoull(fields[7]);
        row.visits = std::stoull(fields[8]);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Trend check
// ---------------------------------------------------------------------------

struct trend_report {
    bool pass = true;
    std::vector<std::string> lines;
};

// Asserts the expected growth shapes on lookup visit counts: the list scales
// with K (the x100 prepopulation jump multiplies per-lookup visits by 100,
// checked within 1%), the tree stays logarithmic (ratio at most 26/12 + 0.1).
// Wall-time checks are optional and loose; visits are the primary signal.
inline trend_report trend_check(const std::vector<bench_row>& rows, bool check_time = false) {
    const std::uint64_t ks[3] = {100, 1000, 10000};
    const bench_row* sel[2][3] = {};
    for (const auto& row : rows) {
        if (row.spec.op != bench_op::lookup) continue;
        for (int j = 0; j < 3; ++j)
            if (row.spec.prepopulate == ks[j])
                sel[row.spec.structure == bench_structure::list ? 1 : 0][j] = &row;
    }
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j < 3; ++j)
            if (sel[s][j] == nullptr)
                throw bad_config(
                    "trend: need lookup rows at K=100, 1000 and 10000 for both structures");

    trend_report report;
    auto per_rep = [](const bench_row* row) {
        return static_cast<double>(row->visits) / static_cast<double>(row->spec.reps);
    };
    auto record = [&](bool ok, const std::string& text) {
        report.lines.push_back(std::string(ok ? "pass: " : "FAIL: ") + text);
        report.pass = report.pass && ok;
    };
    std::ostringstream msg;

    const double list_ratio = per_rep(sel[1][2]) / per_rep(sel[1][0]);
    const double list_norm = list_ratio / 100.0;
    msg << "list lookup visits scale with K: x" << list_ratio << " for the x100 jump";
    record(list_norm >= 0.99 && list_norm <= 1.01, msg.str());

    msg.str("");
    const double tree_ratio = per_rep(sel[0][2]) / per_rep(sel[0][0]);
    const double tree_bound = 26.0 / 12.0 + 0.1;
    msg << "tree lookup visits stay logarithmic: x" << tree_ratio << " <= " << tree_bound;
    record(tree_ratio <= tree_bound, msg.str());

    if (check_time) {
        auto ns_per_rep = [](const bench_row* row) {
            return static_cast<double>(row->elapsed_ns) / static_cast<double>(row->spec.reps);
        };
        msg.str("");
        const double list_time = ns_per_rep(sel[1][2]) / ns_per_rep(sel[1][0]);
        msg << "list lookup time grows >= x20: x" << list_time;
        record(list_time >= 20.0, msg.str());

        msg.str("");
        const double tree_time = ns_per_rep(sel[0][2]) / ns_per_rep(sel[0][0]);
        msg << "tree lookup time grows <= x3: x" << tree_time;
        record(tree_time <= 3.0, msg.str());
    }
    return report;
}

// The renders after inserting 1..10 into a fresh default tree, one per step.
inline std::vector<std::string> demo_lines() {
    tree<std::int64_t> t;
    std::vector<std::string> lines;
    lines.reserve(10);
    for (std::int64_t v = 1; v <= 10; ++v) {
        t.insert(v);
        lines.push_back(t.render());
    }
    return lines;
}

}  // namespace oet
