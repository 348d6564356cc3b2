#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "recforge/families.hpp"
#include "recforge/subshift.hpp"
#include "recforge/words.hpp"

using namespace recforge;

// ---------------------------------------------------------------------------
// oracles: direct substring comparison, no KMP or automaton involved
// ---------------------------------------------------------------------------

namespace {

std::vector<std::int64_t> oracle_occurrences(const PointPrefix& x, const Word& a) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i + a.size() <= x.horizon(); ++i)
        if (x.word.bits.compare(static_cast<std::size_t>(i),
                                static_cast<std::size_t>(a.size()), a.bits) == 0)
            out.push_back(i);
    return out;
}

std::vector<std::int64_t> oracle_hitting(const PointPrefix& x, const Word& a,
                                         const Word& b) {
    auto oa = oracle_occurrences(x, a);
    auto ob = oracle_occurrences(x, b);
    std::set<std::int64_t> hits;
    for (std::int64_t i : oa)
        for (std::int64_t j : ob)
            if (j >= i) hits.insert(j - i);
    return {hits.begin(), hits.end()};
}

std::int64_t oracle_block_count(const PointPrefix& x, std::int64_t k) {
    std::set<std::string> blocks;
    for (std::int64_t i = 0; i + k <= x.horizon(); ++i)
        blocks.insert(x.word.bits.substr(static_cast<std::size_t>(i),
                                         static_cast<std::size_t>(k)));
    return static_cast<std::int64_t>(blocks.size());
}

PointPrefix random_word(std::mt19937& rng, std::int64_t length, double p_one = 0.5) {
    std::bernoulli_distribution flip(p_one);
    std::string bits;
    for (std::int64_t i = 0; i < length; ++i) bits.push_back(flip(rng) ? '1' : '0');
    return make_point(std::move(bits), "random");
}

}  // namespace

TEST_CASE("occurrences", "[subshift]") {
    SECTION("periodic word, single symbol") {
        PointPrefix x = periodic_word("01", 1000);
        WindowSet occ = occurrences(x, Word("0"));
        REQUIRE(occ.size() == 500);
        for (std::size_t i = 0; i < occ.elements.size(); ++i)
            REQUIRE(occ.elements[i] == static_cast<std::int64_t>(2 * i));
        REQUIRE(occ.horizon == 1000);
    }
    SECTION("the whole word occurs exactly at 0") {
        PointPrefix x = thue_morse_word(256);
        WindowSet occ = occurrences(x, x.word);
        REQUIRE(occ.elements == std::vector<std::int64_t>{0});
        REQUIRE(occ.horizon == 1);
    }
    SECTION("Thue-Morse 11 against the scan oracle") {
        PointPrefix x = thue_morse_word(1 << 12);
        REQUIRE(occurrences(x, Word("11")).elements == oracle_occurrences(x, Word("11")));
    }
    SECTION("block longer than window") {
        PointPrefix x = make_point("0101");
        REQUIRE_THROWS_AS(occurrences(x, Word("010101")), precondition_error);
    }
    SECTION("random cross-check") {
        std::mt19937 rng(42);
        for (int t = 0; t < 20; ++t) {
            PointPrefix x = random_word(rng, 300);
            PointPrefix probe = random_word(rng, 1 + rng() % 6);
            REQUIRE(occurrences(x, probe.word).elements ==
                    oracle_occurrences(x, probe.word));
        }
    }
}

TEST_CASE("hitting_times", "[subshift]") {
    SECTION("same block always contains 0") {
        PointPrefix x = periodic_word("011", 300);
        WindowSet h = hitting_times(x, Word("011"), Word("011"));
        REQUIRE(h.contains(0));
    }
    SECTION("alternating word, 0 to 1") {
        PointPrefix x = periodic_word("01", 1000);
        WindowSet h = hitting_times(x, Word("0"), Word("1"));
        REQUIRE(h.elements == oracle_hitting(x, Word("0"), Word("1")));
        for (std::int64_t n : h.elements) REQUIRE(n % 2 == 1);
    }
    SECTION("absent block gives the empty set") {
        PointPrefix x = zeros_word(100);
        REQUIRE(hitting_times(x, Word("1"), Word("0")).elements.empty());
    }
    SECTION("consistency with occurrence pairs and difference identity") {
        std::mt19937 rng(43);
        for (int t = 0; t < 15; ++t) {
            PointPrefix x = random_word(rng, 250);
            Word a(std::string(1 + rng() % 2, '0'));
            WindowSet h = hitting_times(x, a, a);
            REQUIRE(h.elements == oracle_hitting(x, a, a));
            // self-hitting equals the difference set plus zero on the window
            WindowSet occ = occurrences(x, a);
            if (!occ.empty()) {
                WindowSet d = difference_set(occ);
                for (std::int64_t n : d.elements) REQUIRE(h.contains(n));
                for (std::int64_t n : h.elements)
                    REQUIRE((n == 0 || d.contains(n)));
            }
        }
    }
    SECTION("membership shortcut agrees with the full set") {
        PointPrefix x = thue_morse_word(2048);
        WindowSet occ = occurrences(x, Word("01"));
        WindowSet h = hitting_times(x, Word("01"), Word("01"));
        for (std::int64_t n = 0; n < 50; ++n)
            REQUIRE(hitting_contains(occ, occ, n) == h.contains(n));
    }
    SECTION("dense occurrence sets drive the bitmap route") {
        // occurrence product above the pair-loop threshold
        PointPrefix x = zeros_word(16000);
        WindowSet h = hitting_times(x, Word("0"), Word("0"));
        REQUIRE(h.size() == 16000);
        REQUIRE(h.elements.front() == 0);
        REQUIRE(h.elements.back() == 15999);
        REQUIRE(consecutive_self_hit(occurrences(x, Word("0"))) == 0);

        // near-dense with a hole pattern, cross-checked coarsely
        std::string bits(16000, '1');
        for (std::size_t i = 0; i < bits.size(); i += 2000) bits[i] = '0';
        PointPrefix y = make_point(std::move(bits));
        WindowSet hy = hitting_times(y, Word("1"), Word("1"));
        WindowSet occ = occurrences(y, Word("1"));
        for (std::int64_t n : {0, 1, 7, 1999, 2000, 15998})
            REQUIRE(hy.contains(n) == hitting_contains(occ, occ, n));
    }
}

TEST_CASE("block_set and entropy", "[subshift]") {
    SECTION("constant word") {
        PointPrefix x = zeros_word(500);
        auto [blocks, stats] = block_set(x, 5);
        REQUIRE(stats.count == 1);
        REQUIRE(stats.entropy_estimate == 0.0);
    }
    SECTION("period two, k = 3") {
        PointPrefix x = periodic_word("01", 1000);
        auto [blocks, stats] = block_set(x, 3);
        REQUIRE(stats.count == 2);
        REQUIRE(blocks[0].bits == "010");
        REQUIRE(blocks[1].bits == "101");
    }
    SECTION("Thue-Morse 3-blocks") {
        PointPrefix x = thue_morse_word(1 << 14);
        auto [blocks, stats] = block_set(x, 3);
        REQUIRE(stats.count == oracle_block_count(x, 3));
        REQUIRE(stats.count == 6);
    }
    SECTION("automaton counts equal direct enumeration") {
        std::mt19937 rng(44);
        for (int t = 0; t < 10; ++t) {
            PointPrefix x = random_word(rng, 400, 0.3 + 0.05 * t);
            BlockCounter counter(x.word.bits);
            for (std::int64_t k = 1; k <= 12; ++k)
                REQUIRE(counter.count(k) == oracle_block_count(x, k));
        }
    }
    SECTION("curve on a de Bruijn prefix") {
        PointPrefix x = de_bruijn_word(10, 1 << 12);
        auto curve = entropy_curve(x, 10);
        for (const BlockStats& b : curve) {
            REQUIRE(b.count == (std::int64_t{1} << b.k));
            REQUIRE(b.entropy_estimate >= 0.6);
        }
    }
    SECTION("count bounds and monotonicity") {
        std::mt19937 rng(45);
        for (int t = 0; t < 8; ++t) {
            PointPrefix x = random_word(rng, 600);
            auto curve = entropy_curve(x, 20);
            for (std::size_t i = 1; i < curve.size(); ++i) {
                // the final k-block of the prefix may fail to extend, so the
                // count can drop by at most one across lengths
                REQUIRE(curve[i].count >= curve[i - 1].count - 1);
                REQUIRE(curve[i].count <= 2 * curve[i - 1].count);
            }
            // submultiplicativity at sampled lengths
            BlockCounter counter(x.word.bits);
            for (std::int64_t j = 1; j <= 6; ++j)
                for (std::int64_t k = 1; k <= 6; ++k)
                    REQUIRE(counter.count(j + k) <= counter.count(j) * counter.count(k));
        }
    }
    SECTION("periodic word saturates at its period") {
        PointPrefix x = periodic_word("01101", 600);
        BlockCounter counter(x.word.bits);
        for (std::int64_t k = 5; k <= 40; ++k) REQUIRE(counter.count(k) == 5);
    }
    SECTION("k_max out of range") {
        PointPrefix x = zeros_word(100);
        REQUIRE_THROWS_AS(entropy_curve(x, 26), precondition_error);
    }
}

TEST_CASE("recurrence_certificate", "[subshift]") {
    SECTION("periodic word returns at the period") {
        PointPrefix x = periodic_word("01", 1000);
        auto cert = recurrence_certificate(x, 4);
        for (auto& [k, t] : cert) REQUIRE(t == 2);
        REQUIRE(recurrent_to_depth(x, 4));
    }
    SECTION("a single one never recurs") {
        std::string bits(500, '0');
        bits[0] = '1';
        PointPrefix x = make_point(std::move(bits));
        auto cert = recurrence_certificate(x, 3);
        for (auto& [k, t] : cert) REQUIRE_FALSE(t.has_value());
        REQUIRE_FALSE(recurrent_to_depth(x, 3));
    }
    SECTION("first returns against a direct scan") {
        std::mt19937 rng(46);
        for (int t = 0; t < 10; ++t) {
            PointPrefix x = random_word(rng, 200);
            auto cert = recurrence_certificate(x, 6);
            for (auto& [k, got] : cert) {
                Word prefix(x.word.bits.substr(0, static_cast<std::size_t>(k)));
                auto occ = oracle_occurrences(x, prefix);
                std::optional<std::int64_t> want;
                for (std::int64_t o : occ)
                    if (o > 0) { want = o; break; }
                REQUIRE(got == want);
            }
        }
    }
}

TEST_CASE("minimality_certificate", "[subshift]") {
    SECTION("periodic word has period-bounded gaps") {
        PointPrefix x = periodic_word("011", 999);
        auto cert = minimality_certificate(x, 3);
        for (auto& [w, r] : cert) REQUIRE(r.max_gap <= 3);
        REQUIRE(minimal_certified(cert, 3));
    }
    SECTION("a single one is not certified") {
        std::string bits(400, '0');
        bits[0] = '1';
        PointPrefix x = make_point(std::move(bits));
        auto cert = minimality_certificate(x, 1);
        REQUIRE(cert.at(Word("1")).occurrences == 1);
        REQUIRE(cert.at(Word("1")).max_gap == 399);
        REQUIRE_FALSE(minimal_certified(cert, 100));
    }
    SECTION("Thue-Morse gaps are finite and tight against a scan") {
        PointPrefix x = thue_morse_word(1 << 14);
        auto cert = minimality_certificate(x, 4);
        for (auto& [w, r] : cert) {
            auto occ = oracle_occurrences(x, w);
            REQUIRE(!occ.empty());
            std::int64_t want = occ.front();
            for (std::size_t i = 1; i < occ.size(); ++i)
                want = std::max(want, occ[i] - occ[i - 1]);
            want = std::max(want, x.horizon() - w.size() - occ.back());
            REQUIRE(r.max_gap == want);
            REQUIRE(r.max_gap <= 64);  // uniform recurrence at this depth
        }
    }
}

TEST_CASE("weak_mixing_witness", "[subshift]") {
    SECTION("de Bruijn blocks all have consecutive pairs") {
        PointPrefix x = de_bruijn_word(8, 1 << 11);
        auto wm = weak_mixing_witness(x, 2);
        REQUIRE(wm.size() == 4);
        for (auto& [w, s] : wm) REQUIRE(s.has_value());
    }
    SECTION("period two has no consecutive pair") {
        PointPrefix x = periodic_word("01", 1000);
        auto wm = weak_mixing_witness(x, 1);
        REQUIRE_FALSE(wm.at(Word("0")).has_value());
        REQUIRE_FALSE(wm.at(Word("1")).has_value());
    }
}

TEST_CASE("regular_minimal_witness", "[subshift]") {
    REQUIRE(regular_minimal_witness(periodic_word("01", 1000), Word("01")) == 2);
    REQUIRE(regular_minimal_witness(zeros_word(1000), Word("0")) == 1);
    SECTION("Thue-Morse admits no arithmetic progression in one cylinder") {
        PointPrefix x = thue_morse_word(1 << 13);
        REQUIRE_FALSE(regular_minimal_witness(x, Word("0")).has_value());
    }
}
