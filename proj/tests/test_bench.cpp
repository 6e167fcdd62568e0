#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "oet/bench.hpp"
#include "oet/tree.hpp"

using oet::bad_config;
using oet::bench_op;
using oet::bench_row;
using oet::bench_spec;
using oet::bench_structure;
using oet::empty_tree;
using oet::run_bench;

namespace {

struct temp_file {
    std::string path;
    explicit temp_file(const char* name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::remove(path.c_str());
    }
    ~temp_file() { std::remove(path.c_str()); }
};

bench_spec lookup_spec(bench_structure structure, std::uint64_t k, std::uint64_t reps) {
    bench_spec spec;
    spec.structure = structure;
    spec.prepopulate = k;
    spec.op = bench_op::lookup;
    spec.reps = reps;
    return spec;
}

}  // namespace

TEST_CASE("lookup loops report exact visit totals", "[bench]") {
    const auto list_row = run_bench(lookup_spec(bench_structure::list, 100, 50));
    CHECK(list_row.visits == 50 * 100);  // one visit per chain cell

    const auto tree_row = run_bench(lookup_spec(bench_structure::tree, 10000, 50));
    CHECK(tree_row.visits == 50 * 26);

    const auto small_tree = run_bench(lookup_spec(bench_structure::tree, 100, 50));
    CHECK(small_tree.visits == 50 * 12);
}

TEST_CASE("insert loops undo themselves", "[bench]") {
    bench_spec spec;
    spec.structure = bench_structure::tree;
    spec.prepopulate = 0;
    spec.op = bench_op::insert;
    spec.reps = 1;
    const auto row = run_bench(spec);  // run_bench faults if the undo failed to restore
    CHECK(row.visits == 1);            // binding the root is the only inspection

    // the measured insert is always undone, so the structure stays empty
    oet::tree<std::int64_t> t;
    const auto m = t.mark();
    t.insert(1);
    t.undo_to(m);
    CHECK_THROWS_AS(t.lookup(), empty_tree);

    bench_spec populated = spec;
    populated.prepopulate = 100;
    populated.reps = 10;
    const auto row2 = run_bench(populated);
    CHECK(row2.visits % row2.spec.reps == 0);  // identical work per rep
}

TEST_CASE("bad bench specs are rejected", "[bench]") {
    bench_spec spec;
    spec.reps = 0;
    CHECK_THROWS_AS(run_bench(spec), bad_config);

    spec = lookup_spec(bench_structure::list, 10, 1);
    spec.compact_leaves = true;
    CHECK_THROWS_AS(run_bench(spec), bad_config);

    spec = lookup_spec(bench_structure::tree, 0, 1);
    CHECK_THROWS_AS(run_bench(spec), bad_config);
}

TEST_CASE("csv files round-trip", "[bench]") {
    temp_file file("oet_bench_roundtrip.csv");

    SECTION("an empty row set leaves only the header") {
        oet::write_csv(file.path, {});
        const auto rows = oet::read_csv(file.path);
        CHECK(rows.empty());
        std::ifstream in(file.path);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == oet::bench_csv_header);
        CHECK_FALSE(std::getline(in, line));
    }

    SECTION("rows survive write and read unchanged") {
        std::vector<bench_row> rows;
        rows.push_back(run_bench(lookup_spec(bench_structure::tree, 100, 3)));
        rows.push_back(run_bench(lookup_spec(bench_structure::list, 10, 2)));
        bench_spec ins;
        ins.op = bench_op::insert;
        ins.prepopulate = 5;
        ins.reps = 4;
        ins.start_depth = 2;
        ins.depth_annotated = true;
        rows.push_back(run_bench(ins));

        oet::write_csv(file.path, rows);
        const auto parsed = oet::read_csv(file.path);
        REQUIRE(parsed.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            CHECK(oet::to_csv(parsed[i]) == oet::to_csv(rows[i]));
    }

    SECTION("append creates the header once") {
        const auto row = run_bench(lookup_spec(bench_structure::list, 4, 2));
        oet::append_csv(file.path, row);
        oet::append_csv(file.path, row);
        const auto parsed = oet::read_csv(file.path);
        CHECK(parsed.size() == 2);
    }
}

TEST_CASE("identical specs differ only in elapsed time", "[bench]") {
    const auto spec = lookup_spec(bench_structure::tree, 200, 20);
    const auto a = run_bench(spec);
    const auto b = run_bench(spec);
    CHECK(a.visits == b.visits);
    auto strip_time = [](bench_row row) {
        row.elapsed_ns = 0;
        return oet::to_csv(row);
    };
    CHECK(strip_time(a) == strip_time(b));
}

TEST_CASE("trend check on real rows", "[bench]") {
    std::vector<bench_row> rows;
    for (std::uint64_t k : {100u, 1000u, 10000u}) {
        rows.push_back(run_bench(lookup_spec(bench_structure::tree, k, 5)));
        rows.push_back(run_bench(lookup_spec(bench_structure::list, k, 5)));
    }
    const auto report = oet::trend_check(rows);
    INFO("lines:");
    for (const auto& line : report.lines) INFO(line);
    CHECK(report.pass);
}

TEST_CASE("trend check rejects a linear tree", "[bench]") {
    std::vector<bench_row> rows;
    for (std::uint64_t k : {100u, 1000u, 10000u}) {
        rows.push_back(run_bench(lookup_spec(bench_structure::list, k, 5)));
        // forge tree rows whose visits scale like a list
        auto fake = run_bench(lookup_spec(bench_structure::list, k, 5));
        fake.spec.structure = bench_structure::tree;
        rows.push_back(fake);
    }
    const auto report = oet::trend_check(rows);
    CHECK_FALSE(report.pass);
}

TEST_CASE("trend check needs all three prepopulation sizes", "[bench]") {
    std::vector<bench_row> rows;
    rows.push_back(run_bench(lookup_spec(bench_structure::tree, 100, 2)));
    rows.push_back(run_bench(lookup_spec(bench_structure::list, 100, 2)));
    CHECK_THROWS_AS(oet::trend_check(rows), bad_config);
}

TEST_CASE("demo walks through the canonical terms", "[bench]") {
    const auto lines = oet::demo_lines();
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "tree(_,1,_)");
    CHECK(lines[5] == "tree(tree(_,2,_),1,tree(tree(tree(_,5,_),4,tree(_,6,_)),3,_))");
    CHECK(lines[9] ==
          "tree(tree(_,2,_),1,tree(tree(tree(_,5,_),4,tree(_,6,_)),3,"
          "tree(tree(tree(tree(_,10,_),9,_),8,_),7,_)))");
}
