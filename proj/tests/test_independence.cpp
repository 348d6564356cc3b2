#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "recforge/independence.hpp"
#include "recforge/words.hpp"

using namespace recforge;

namespace {

// direct oracle: scan every start position for every pattern
bool oracle_independent(const PointPrefix& x, const std::vector<Word>& blocks,
                        const std::vector<std::int64_t>& j) {
    const std::int64_t r = static_cast<std::int64_t>(blocks.size());
    const std::int64_t len = blocks.front().size();
    std::int64_t patterns = 1;
    for (std::size_t t = 0; t < j.size(); ++t) patterns *= r;
    for (std::int64_t p = 0; p < patterns; ++p) {
        std::vector<int> digits(j.size());
        std::int64_t rest = p;
        for (std::size_t t = j.size(); t-- > 0;) {
            digits[t] = static_cast<int>(rest % r);
            rest /= r;
        }
        bool realized = false;
        for (std::int64_t i = 0; i + j.back() + len <= x.horizon() && !realized; ++i) {
            bool all = true;
            for (std::size_t t = 0; t < j.size() && all; ++t)
                all = x.word.bits.compare(static_cast<std::size_t>(i + j[t]),
                                          static_cast<std::size_t>(len),
                                          blocks[static_cast<std::size_t>(digits[t])].bits) == 0;
            realized = all;
        }
        if (!realized) return false;
    }
    return true;
}

IndependenceQuery make_query(const PointPrefix& x, std::vector<std::int64_t> j) {
    return IndependenceQuery{x, {Word("0"), Word("1")},
                             make_window_set(x.horizon(), std::move(j))};
}

}  // namespace

TEST_CASE("check_independence", "[independence]") {
    SECTION("rich prefix realizes every pattern") {
        PointPrefix x = de_bruijn_word(11, 1 << 14);
        IndependenceOutcome o = check_independence(make_query(x, {0, 3, 7}));
        REQUIRE(o.independent);
        REQUIRE(o.witnesses.size() == 8);
        REQUIRE(o.patterns_checked == 8);
        // every witness is a genuine realization
        for (std::size_t p = 0; p < o.witnesses.size(); ++p) {
            std::int64_t i = o.witnesses[p];
            std::vector<std::int64_t> j{0, 3, 7};
            for (std::size_t t = 0; t < 3; ++t) {
                int digit = static_cast<int>(p >> (2 - t) & 1);
                REQUIRE(x.word.bits[static_cast<std::size_t>(i + j[t])] == '0' + digit);
            }
        }
    }
    SECTION("period two misses the 00 pattern at J = {0,1}") {
        PointPrefix x = periodic_word("01", 1000);
        IndependenceOutcome o = check_independence(make_query(x, {0, 1}));
        REQUIRE_FALSE(o.independent);
        REQUIRE(o.missing_pattern == std::vector<int>{0, 0});
    }
    SECTION("Thue-Morse passes at J = {0,1}") {
        PointPrefix x = thue_morse_word(1 << 14);
        IndependenceOutcome o = check_independence(make_query(x, {0, 1}));
        REQUIRE(o.independent);
    }
    SECTION("agreement with the scan oracle on random words") {
        std::mt19937 rng(4242);
        for (int t = 0; t < 25; ++t) {
            std::string bits;
            for (int i = 0; i < 160; ++i) bits.push_back(rng() % 2 ? '1' : '0');
            PointPrefix x = make_point(std::move(bits));
            std::vector<std::int64_t> j{0, static_cast<std::int64_t>(1 + rng() % 3),
                                        static_cast<std::int64_t>(5 + rng() % 4)};
            IndependenceOutcome o = check_independence(make_query(x, j));
            REQUIRE(o.independent == oracle_independent(x, {Word("0"), Word("1")}, j));
        }
    }
    SECTION("budget refusal") {
        PointPrefix x = de_bruijn_word(8, 1 << 11);
        Budget tiny;
        tiny.limit = 4;
        REQUIRE_THROWS_AS(check_independence(make_query(x, {0, 1, 2}), tiny),
                          budget_exceeded);
    }
    SECTION("monotone under taking subsets of J") {
        PointPrefix x = thue_morse_word(1 << 13);
        std::vector<std::int64_t> full{0, 2, 5};
        if (check_independence(make_query(x, full)).independent) {
            for (std::size_t drop = 0; drop < full.size(); ++drop) {
                std::vector<std::int64_t> sub;
                for (std::size_t i = 0; i < full.size(); ++i)
                    if (i != drop) sub.push_back(full[i]);
                REQUIRE(check_independence(make_query(x, sub)).independent);
            }
        }
    }
}

TEST_CASE("syndetic_independence_probe", "[independence]") {
    SECTION("period two fails exhaustively at gap 2, size 2") {
        PointPrefix x = periodic_word("01", 1000);
        ProbeReport r = syndetic_independence_probe(x, {Word("0"), Word("1")}, 2, 2);
        REQUIRE_FALSE(r.found.has_value());
        REQUIRE(r.exhausted);
        REQUIRE(r.candidates_examined == 4);  // {0,1} {0,2} {1,2} {1,3}
    }
    SECTION("rich prefix finds a candidate fast") {
        PointPrefix x = de_bruijn_word(11, 1 << 14);
        ProbeReport r = syndetic_independence_probe(x, {Word("0"), Word("1")}, 5, 3);
        REQUIRE(r.found.has_value());
        // probe/checker consistency: the found J re-passes the checker
        IndependenceQuery q{x, {Word("0"), Word("1")}, *r.found};
        REQUIRE(check_independence(q).independent);
    }
    SECTION("size one succeeds whenever both blocks occur") {
        PointPrefix x = periodic_word("01", 64);
        ProbeReport r = syndetic_independence_probe(x, {Word("0"), Word("1")}, 2, 1);
        REQUIRE(r.found.has_value());
        REQUIRE(r.found->elements == std::vector<std::int64_t>{0});
    }
    SECTION("full-shift completeness on a de Bruijn prefix") {
        PointPrefix x = de_bruijn_word(11, 1 << 14);
        // every J inside [0, 10] works because all 11-blocks occur
        std::mt19937 rng(7);
        for (int t = 0; t < 12; ++t) {
            std::vector<std::int64_t> j;
            for (std::int64_t v = 0; v <= 10; ++v)
                if (rng() % 3 == 0) j.push_back(v);
            if (j.empty() || j.size() > 4) continue;
            REQUIRE(check_independence(make_query(x, j)).independent);
        }
    }
}
