#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ifslab/symbolic.hpp"

using namespace ifslab;
using sym::EventuallyPeriodicWord;
using sym::Word;

namespace {

// Oracle: unroll both words far enough that distinct eventually periodic
// words must disagree, and compare the rolled-out prefixes directly.
bool oracle_equal(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b) {
    const std::size_t n =
        2 * (a.preperiod().size() + a.period().size() + b.preperiod().size() + b.period().size());
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (a.symbol_at(pos) != b.symbol_at(pos)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("prefix unrolls preperiod then period") {
    CHECK(sym::prefix(EventuallyPeriodicWord({1, 2}, {3}), 5) == Word{1, 2, 3, 3, 3});
    CHECK(sym::prefix(EventuallyPeriodicWord({}, {1}), 3) == Word{1, 1, 1});
    CHECK(sym::prefix(EventuallyPeriodicWord({2}, {1, 3}), 6) == Word{2, 1, 3, 1, 3, 1});
    CHECK(sym::prefix(EventuallyPeriodicWord({}, {1, 2}), 0) == Word{});
}

TEST_CASE("prefix extension property") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        Word pre, per;
        const auto pre_len = rng.next() % 4;
        const auto per_len = 1 + rng.next() % 3;
        for (std::uint64_t s = 0; s < pre_len; ++s) pre.push_back(1 + static_cast<int>(rng.next() % 3));
        for (std::uint64_t s = 0; s < per_len; ++s) per.push_back(1 + static_cast<int>(rng.next() % 3));
        EventuallyPeriodicWord w(pre, per);
        const auto a = rng.next() % 5;
        const auto b = rng.next() % 5;
        const Word longer = sym::prefix(w, a + b);
        const Word shorter = sym::prefix(w, a);
        CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
    }
}

TEST_CASE("common_prefix examples") {
    CHECK(sym::common_prefix(EventuallyPeriodicWord({}, {1}), EventuallyPeriodicWord({}, {2})) ==
          Word{});
    CHECK(sym::common_prefix(EventuallyPeriodicWord({1, 2}, {1}),
                             EventuallyPeriodicWord({1, 2}, {2})) == Word{1, 2});
    CHECK(sym::common_prefix(EventuallyPeriodicWord({2}, {1}),
                             EventuallyPeriodicWord({2}, {1, 2})).size() == 2);
}

TEST_CASE("common_prefix detects equality through canonical forms") {
    // (1 2 1 2 ...) written two ways; the oracle confirms they coincide.
    EventuallyPeriodicWord i({}, {1, 2});
    EventuallyPeriodicWord j({1}, {2, 1});
    REQUIRE(oracle_equal(i, j));
    CHECK(i == j);
    CHECK_THROWS_AS(sym::common_prefix(i, j), EqualWords);
}

TEST_CASE("common_prefix is symmetric") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        Word pre1, per1, pre2, per2;
        for (std::uint64_t s = 0, n = rng.next() % 3; s < n; ++s) pre1.push_back(1 + static_cast<int>(rng.next() % 2));
        for (std::uint64_t s = 0, n = 1 + rng.next() % 3; s < n; ++s) per1.push_back(1 + static_cast<int>(rng.next() % 2));
        for (std::uint64_t s = 0, n = rng.next() % 3; s < n; ++s) pre2.push_back(1 + static_cast<int>(rng.next() % 2));
        for (std::uint64_t s = 0, n = 1 + rng.next() % 3; s < n; ++s) per2.push_back(1 + static_cast<int>(rng.next() % 2));
        EventuallyPeriodicWord a(pre1, per1), b(pre2, per2);
        if (a == b) continue;
        CHECK(sym::common_prefix(a, b) == sym::common_prefix(b, a));
    }
}

TEST_CASE("shift examples and canonicalization") {
    CHECK(sym::shift(EventuallyPeriodicWord({1, 2}, {3})) == EventuallyPeriodicWord({2}, {3}));
    CHECK(sym::shift(EventuallyPeriodicWord({}, {1, 2})) == EventuallyPeriodicWord({}, {2, 1}));
    CHECK(sym::shift(EventuallyPeriodicWord({1}, {1})) == EventuallyPeriodicWord({}, {1}));
}

TEST_CASE("canonical form: primitive period, minimal preperiod") {
    EventuallyPeriodicWord w({}, {1, 2, 1, 2});
    CHECK(w.period() == Word{1, 2});
    EventuallyPeriodicWord v({1, 2}, {2});  // 1 2 2 2 ... = 1 (2)
    CHECK(v.preperiod() == Word{1});
    CHECK(v.period() == Word{2});
    EventuallyPeriodicWord u({2}, {3, 2});  // 2 3 2 3 ... = (2 3)
    CHECK(u.preperiod().empty());
    CHECK(u.period() == Word{2, 3});
}

TEST_CASE("repeated shifts reach a rotation of the period") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        Word pre, per;
        for (std::uint64_t s = 0, n = rng.next() % 4; s < n; ++s) pre.push_back(1 + static_cast<int>(rng.next() % 3));
        for (std::uint64_t s = 0, n = 1 + rng.next() % 4; s < n; ++s) per.push_back(1 + static_cast<int>(rng.next() % 3));
        EventuallyPeriodicWord w(pre, per);
        EventuallyPeriodicWord shifted = w;
        for (std::size_t step = 0; step < w.preperiod().size() + w.period().size(); ++step) {
            shifted = sym::shift(shifted);
        }
        CHECK(shifted.preperiod().empty());
        CHECK(shifted.period().size() == w.period().size());
        Word doubled = w.period();
        doubled.insert(doubled.end(), w.period().begin(), w.period().end());
        bool is_rotation = false;
        for (std::size_t off = 0; off < w.period().size(); ++off) {
            if (std::equal(shifted.period().begin(), shifted.period().end(),
                           doubled.begin() + static_cast<std::ptrdiff_t>(off))) {
                is_rotation = true;
                break;
            }
        }
        CHECK(is_rotation);
    }
}

TEST_CASE("enumerate_words") {
    CHECK(sym::enumerate_words(2, 2) == std::vector<Word>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    CHECK(sym::enumerate_words(3, 1) == std::vector<Word>{{1}, {2}, {3}});
    CHECK(sym::enumerate_words(2, 0) == std::vector<Word>{{}});
    CHECK_THROWS_AS(sym::enumerate_words(2, 30, 1 << 20), BudgetExceeded);

    for (int m = 2; m <= 3; ++m) {
        for (int n = 0; n <= 5; ++n) {
            auto words = sym::enumerate_words(m, n);
            CHECK(words.size() == static_cast<std::size_t>(std::pow(m, n)));
            CHECK(std::is_sorted(words.begin(), words.end()));
            CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
        }
    }
}

TEST_CASE("word index round trip") {
    for (int m = 2; m <= 4; ++m) {
        const auto words = sym::enumerate_words(m, 3);
        for (std::size_t idx = 0; idx < words.size(); ++idx) {
            CHECK(sym::word_index(words[idx], m) == idx);
            CHECK(sym::word_from_index(idx, m, 3) == words[idx]);
        }
    }
}
