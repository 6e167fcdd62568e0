#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "oet/fuzz.hpp"
#include "oet/list.hpp"

using oet::empty_list;
using oet::list;

namespace {

list<int> list_of(std::initializer_list<int> values) {
    list<int> l;
    for (int v : values) l.insert(v);
    return l;
}

}  // namespace

TEST_CASE("a fresh list is empty", "[list]") {
    list<int> l;
    CHECK(l.render() == "_");
    CHECK_THROWS_AS(l.lookup(), empty_list);
    l.insert(1);
    CHECK(l.render() == "[1|_]");
}

TEST_CASE("insert appends at the open end", "[list]") {
    auto l = list_of({1, 2, 3, 4});
    CHECK(l.render() == "[1,2,3,4|_]");
    CHECK(l.lookup() == 4);
    CHECK(l.flatten() == std::vector<int>{1, 2, 3, 4});

    const auto m = l.mark();
    l.insert(5);
    CHECK(l.render() == "[1,2,3,4,5|_]");
    l.undo_to(m);
    CHECK(l.render() == "[1,2,3,4|_]");
    CHECK(l.lookup() == 4);
}

TEST_CASE("visit counts are linear in the chain length", "[list]") {
    list<int> l;
    for (int m = 0; m < 60; ++m) {
        l.insert(m);
        CHECK(l.visits().last_visits == static_cast<std::uint64_t>(m) + 1);
        (void)l.lookup();
        CHECK(l.visits().last_visits == static_cast<std::uint64_t>(m) + 1);
    }
}

TEST_CASE("lookup returns the element before the open end", "[list]") {
    list<int> l;
    l.insert(9);
    CHECK(l.lookup() == 9);

    auto four = list_of({1, 2, 3, 4});
    CHECK(four.lookup() == 4);
    const auto m = four.mark();
    four.insert(5);
    four.undo_to(m);
    CHECK(four.lookup() == 4);
}

TEST_CASE("rebase drops everything before the last cell", "[list]") {
    SECTION("four elements") {
        auto l = list_of({1, 2, 3, 4});
        auto r = l.rebase();
        CHECK(r.render() == "[4|_]");
        CHECK(r.lookup() == 4);
    }
    SECTION("single element") {
        auto l = list_of({1});
        auto r = l.rebase();
        CHECK(r.render() == l.render());
    }
    SECTION("rebased inserts are shared with the original") {
        auto l = list_of({1, 2, 3, 4});
        auto r = l.rebase();
        r.insert(5);
        CHECK(l.render() == "[1,2,3,4,5|_]");
        CHECK(r.render() == "[4,5|_]");
    }
    SECTION("empty list") {
        list<int> l;
        CHECK_THROWS_AS(l.rebase(), empty_list);
    }
}

TEST_CASE("insert then lookup round-trips under random undo", "[list][property]") {
    oet::splitmix64 rng(21);
    list<int> l;
    std::vector<int> shadow;
    std::vector<typename list<int>::mark_type> marks;
    std::vector<std::size_t> shadow_lengths;
    for (int step = 0; step < 2000; ++step) {
        const auto roll = rng.below(10);
        if (roll < 5) {
            const int v = static_cast<int>(rng.below(1 << 20));
            l.insert(v);
            shadow.push_back(v);
            REQUIRE(l.lookup() == v);
        } else if (roll < 7) {
            marks.push_back(l.mark());
            shadow_lengths.push_back(shadow.size());
        } else if (!marks.empty()) {
            const std::size_t at = rng.below(marks.size());
            l.undo_to(marks[at]);
            shadow.resize(shadow_lengths[at]);
            marks.resize(at + 1);
            shadow_lengths.resize(at + 1);
        }
        REQUIRE(l.flatten() == shadow);
    }
}
