#pragma once
// independence.hpp - finite independence-set checking on subshift prefixes
// and the syndetic-candidate probe. A set J is an independence set for the
// blocks when every assignment of blocks to the positions of J is realized
// simultaneously somewhere in the prefix.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recforge/subshift.hpp"
#include "recforge/types.hpp"

namespace recforge {

struct IndependenceQuery {
    PointPrefix x;
    std::vector<Word> blocks;  // r >= 2 blocks, all of one length
    WindowSet j_set;           // shift positions J
};

inline void check_independence_query(const IndependenceQuery& q) {
    if (q.blocks.size() < 2)
        throw precondition_error("independence: need at least two blocks");
    for (const Word& b : q.blocks)
        if (b.size() != q.blocks.front().size())
            throw precondition_error("independence: all blocks must have one length");
    if (q.j_set.elements.empty())
        throw precondition_error("independence: J must be nonempty");
    std::int64_t span = q.j_set.elements.back() + q.blocks.front().size();
    if (span > q.x.horizon())
        throw precondition_error("independence: max(J) + block length exceeds the window");
}

struct IndependenceOutcome {
    bool independent = false;
    // per-pattern witness positions, pattern index in lexicographic order
    std::vector<std::int64_t> witnesses;
    // first missing pattern (block index per position of J), when not independent
    std::vector<int> missing_pattern;
    std::int64_t patterns_checked = 0;
};

inline IndependenceOutcome check_independence(const IndependenceQuery& q,
                                              const Budget& budget = Budget{}) {
    check_independence_query(q);
    const std::size_t r = q.blocks.size();
    const std::size_t js = q.j_set.elements.size();
    std::int64_t patterns = 1;
    for (std::size_t i = 0; i < js; ++i) {
        if (patterns > budget.limit / static_cast<std::int64_t>(r))
            budget.charge(budget.limit + 1, "check_independence");
        patterns *= static_cast<std::int64_t>(r);
    }
    budget.charge(patterns, "check_independence");

    // occurrence bitmaps per block
    std::vector<std::vector<std::uint64_t>> occ;
    std::int64_t occ_h = q.x.horizon() - q.blocks.front().size() + 1;
    for (const Word& b : q.blocks)
        occ.push_back(detail::position_bitmap(occurrences(q.x, b)));

    const std::int64_t base_limit = occ_h - q.j_set.elements.back();
    const std::size_t words = static_cast<std::size_t>(base_limit + 63) / 64;

    IndependenceOutcome out;
    out.independent = true;
    std::vector<int> digits(js, 0);
    for (std::int64_t p = 0; p < patterns; ++p) {
        // digits in lexicographic order: leftmost position most significant
        std::int64_t rest = p;
        for (std::size_t t = js; t-- > 0;) {
            digits[t] = static_cast<int>(rest % static_cast<std::int64_t>(r));
            rest /= static_cast<std::int64_t>(r);
        }
        ++out.patterns_checked;
        // AND of shifted occurrence bitmaps
        std::int64_t witness = -1;
        std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
        for (std::size_t t = 0; t < js; ++t) {
            const auto& bm = occ[static_cast<std::size_t>(digits[t])];
            const std::int64_t shift = q.j_set.elements[t];
            const std::size_t wshift = static_cast<std::size_t>(shift) / 64;
            const unsigned bshift = static_cast<unsigned>(shift % 64);
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t v = 0;
                if (w + wshift < bm.size()) {
                    v = bm[w + wshift] >> bshift;
                    if (bshift && w + wshift + 1 < bm.size())
                        v |= bm[w + wshift + 1] << (64 - bshift);
                }
                acc[w] &= v;
            }
        }
        for (std::size_t w = 0; w < words && witness < 0; ++w) {
            std::uint64_t v = acc[w];
            if (w == words - 1 && base_limit % 64)
                v &= (~std::uint64_t{0}) >> (64 - base_limit % 64);
            if (v) witness = static_cast<std::int64_t>(w) * 64 +
                             static_cast<std::int64_t>(std::countr_zero(v));
        }
        if (witness < 0) {
            out.independent = false;
            out.missing_pattern = digits;
            out.witnesses.clear();
            return out;
        }
        out.witnesses.push_back(witness);
    }
    return out;
}

// ---------------------------------------------------------------------------
// syndetic_independence_probe: enumerate size-m candidate sets whose first
// element lies in [0, g) and whose consecutive gaps are at most g - the
// finite stand-in for a syndetic J - and return the first one passing the
// checker, or an exhaustive-failure report.
// ---------------------------------------------------------------------------

struct ProbeReport {
    std::optional<WindowSet> found;
    std::int64_t candidates_examined = 0;
    bool exhausted = false;  // the full candidate space was enumerated
};

inline ProbeReport syndetic_independence_probe(const PointPrefix& x,
                                               const std::vector<Word>& blocks,
                                               std::int64_t g, std::int64_t m,
                                               const Budget& budget = Budget{}) {
    if (g < 1 || m < 1) throw precondition_error("probe: need g >= 1 and m >= 1");
    ProbeReport report;
    std::vector<std::int64_t> j(static_cast<std::size_t>(m), 0);
    bool budget_hit = false;

    std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
        if (t == static_cast<std::size_t>(m)) {
            if (report.candidates_examined >= budget.limit) { budget_hit = true; return false; }
            ++report.candidates_examined;
            if (j.back() + blocks.front().size() > x.horizon()) return false;
            IndependenceQuery q{x, blocks, make_window_set(x.horizon(), j)};
            IndependenceOutcome o = check_independence(q, budget);
            if (o.independent) {
                report.found = q.j_set;
                return true;
            }
            return false;
        }
        std::int64_t lo = t == 0 ? 0 : j[t - 1] + 1;
        std::int64_t hi = t == 0 ? g - 1 : j[t - 1] + g;
        for (std::int64_t v = lo; v <= hi; ++v) {
            j[t] = v;
            if (rec(t + 1)) return true;
            if (budget_hit) return false;
        }
        return false;
    };
    rec(0);
    report.exhausted = !report.found && !budget_hit;
    return report;
}

}  // namespace recforge
