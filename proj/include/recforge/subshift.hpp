#pragma once
// subshift.hpp - binary-word engine at finite horizon: cylinder occurrence
// sets, hitting-time sets, block complexity and entropy estimates, and
// recurrence / minimality / weak-mixing / regular-minimality certificates.
//
// All certificates are window statements about the given prefix; the language
// of the orbit closure is approximated by the factor blocks of the prefix and
// nothing is ever claimed about the infinite point.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recforge/types.hpp"

namespace recforge {

// ---------------------------------------------------------------------------
// occurrences: { n in [0, H-|A|] : x[n..n+|A|) = A }, horizon H-|A|+1.
// KMP, so runtime stays linear on adversarial inputs.
// ---------------------------------------------------------------------------

inline WindowSet occurrences(const PointPrefix& x, const Word& a) {
    if (a.empty()) throw precondition_error("occurrences: empty block");
    if (a.size() > x.horizon())
        throw precondition_error("occurrences: block longer than window");
    const std::string& t = x.word.bits;
    const std::string& p = a.bits;
    std::vector<std::int64_t> fail(p.size(), 0);
    for (std::size_t i = 1, k = 0; i < p.size(); ++i) {
        while (k > 0 && p[i] != p[k]) k = static_cast<std::size_t>(fail[k - 1]);
        if (p[i] == p[k]) ++k;
        fail[i] = static_cast<std::int64_t>(k);
    }
    WindowSet out;
    out.horizon = x.horizon() - a.size() + 1;
    for (std::size_t i = 0, k = 0; i < t.size(); ++i) {
        while (k > 0 && t[i] != p[k]) k = static_cast<std::size_t>(fail[k - 1]);
        if (t[i] == p[k]) ++k;
        if (k == p.size()) {
            out.elements.push_back(static_cast<std::int64_t>(i + 1 - p.size()));
            k = static_cast<std::size_t>(fail[k - 1]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// hitting_times: { n >= 0 : A occurs at some i and B occurs at i+n }, the
// prefix co-occurrence approximation of N([A],[B]).
// ---------------------------------------------------------------------------

namespace detail {

// bitmap |= source >> shift (bit granularity), bitmaps as uint64 words
inline void or_shifted(std::vector<std::uint64_t>& acc,
                       const std::vector<std::uint64_t>& src, std::int64_t shift) {
    const std::size_t words = acc.size();
    const std::size_t wshift = static_cast<std::size_t>(shift) / 64;
    const unsigned bshift = static_cast<unsigned>(shift % 64);
    for (std::size_t w = 0; w + wshift < src.size() && w < words; ++w) {
        std::uint64_t v = src[w + wshift] >> bshift;
        if (bshift && w + wshift + 1 < src.size())
            v |= src[w + wshift + 1] << (64 - bshift);
        acc[w] |= v;
    }
}

inline std::vector<std::uint64_t> position_bitmap(const WindowSet& s) {
    std::vector<std::uint64_t> bm(static_cast<std::size_t>(s.horizon + 63) / 64, 0);
    for (std::int64_t e : s.elements)
        bm[static_cast<std::size_t>(e) / 64] |= std::uint64_t{1} << (e % 64);
    return bm;
}

}  // namespace detail

inline WindowSet hitting_times(const PointPrefix& x, const Word& a, const Word& b) {
    WindowSet occ_a = occurrences(x, a);
    WindowSet occ_b = occurrences(x, b);
    WindowSet out;
    out.horizon = occ_b.horizon;
    if (occ_a.empty() || occ_b.empty()) return out;

    std::vector<std::uint8_t> seen(static_cast<std::size_t>(out.horizon), 0);
    if (occ_a.size() * occ_b.size() <= 50'000'000) {
        for (std::int64_t i : occ_a.elements) {
            auto it = std::lower_bound(occ_b.elements.begin(), occ_b.elements.end(), i);
            for (; it != occ_b.elements.end(); ++it)
                seen[static_cast<std::size_t>(*it - i)] = 1;
        }
        out = window_from_indicator(seen);
        out.horizon = occ_b.horizon;
        return out;
    }
    // dense fallback: one shifted-OR pass per occurrence of A
    std::vector<std::uint64_t> bm_b = detail::position_bitmap(occ_b);
    std::vector<std::uint64_t> acc(bm_b.size(), 0);
    for (std::int64_t i : occ_a.elements) detail::or_shifted(acc, bm_b, i);
    for (std::int64_t n = 0; n < out.horizon; ++n)
        if (acc[static_cast<std::size_t>(n) / 64] >> (n % 64) & 1)
            out.elements.push_back(n);
    return out;
}

// membership without materializing the full hitting set
inline bool hitting_contains(const WindowSet& occ_a, const WindowSet& occ_b,
                             std::int64_t n) {
    if (n < 0) return false;
    for (std::int64_t i : occ_a.elements)
        if (occ_b.contains(i + n)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// block complexity
// ---------------------------------------------------------------------------

struct BlockStats {
    std::int64_t k = 0;
    std::int64_t count = 0;        // number of distinct k-blocks
    double entropy_estimate = 0;   // ln(count) / k
};

inline BlockStats make_block_stats(std::int64_t k, std::int64_t count) {
    return BlockStats{k, count, count > 0 ? std::log(static_cast<double>(count)) / k : 0.0};
}

// Suffix automaton of the prefix; counts distinct blocks of every length in
// one linear pass. This is the fast route; block_set below is the direct one.
class BlockCounter {
public:
    explicit BlockCounter(const std::string& text) {
        states_.reserve(2 * text.size() + 2);
        states_.push_back(State{});  // root
        last_ = 0;
        for (char c : text) extend(c == '1');
        counts_.assign(text.size() + 2, 0);
        for (std::size_t v = 1; v < states_.size(); ++v) {
            std::int64_t lo = states_[static_cast<std::size_t>(states_[v].link)].len + 1;
            std::int64_t hi = states_[v].len;
            counts_[static_cast<std::size_t>(lo)] += 1;
            if (hi + 1 < static_cast<std::int64_t>(counts_.size()))
                counts_[static_cast<std::size_t>(hi + 1)] -= 1;
        }
        for (std::size_t i = 1; i < counts_.size(); ++i) counts_[i] += counts_[i - 1];
        text_size_ = static_cast<std::int64_t>(text.size());
    }

    // number of distinct blocks of length exactly k
    std::int64_t count(std::int64_t k) const {
        if (k < 1 || k > text_size_) return 0;
        return counts_[static_cast<std::size_t>(k)];
    }

private:
    struct State {
        std::int64_t len = 0;
        std::int64_t link = -1;
        std::int64_t next[2] = {-1, -1};
    };
    std::vector<State> states_;
    std::int64_t last_ = 0;
    std::vector<std::int64_t> counts_;
    std::int64_t text_size_ = 0;

    void extend(int c) {
        std::int64_t cur = static_cast<std::int64_t>(states_.size());
        states_.push_back(State{});
        states_[static_cast<std::size_t>(cur)].len =
            states_[static_cast<std::size_t>(last_)].len + 1;
        std::int64_t p = last_;
        while (p != -1 && states_[static_cast<std::size_t>(p)].next[c] == -1) {
            states_[static_cast<std::size_t>(p)].next[c] = cur;
            p = states_[static_cast<std::size_t>(p)].link;
        }
        if (p == -1) {
            states_[static_cast<std::size_t>(cur)].link = 0;
        } else {
            std::int64_t q = states_[static_cast<std::size_t>(p)].next[c];
            if (states_[static_cast<std::size_t>(p)].len + 1 ==
                states_[static_cast<std::size_t>(q)].len) {
                states_[static_cast<std::size_t>(cur)].link = q;
            } else {
                std::int64_t clone = static_cast<std::int64_t>(states_.size());
                states_.push_back(states_[static_cast<std::size_t>(q)]);
                states_[static_cast<std::size_t>(clone)].len =
                    states_[static_cast<std::size_t>(p)].len + 1;
                while (p != -1 && states_[static_cast<std::size_t>(p)].next[c] == q) {
                    states_[static_cast<std::size_t>(p)].next[c] = clone;
                    p = states_[static_cast<std::size_t>(p)].link;
                }
                states_[static_cast<std::size_t>(q)].link = clone;
                states_[static_cast<std::size_t>(cur)].link = clone;
            }
        }
        last_ = cur;
    }
};

// all distinct k-blocks, lexicographically sorted, plus their stats
inline std::pair<std::vector<Word>, BlockStats> block_set(const PointPrefix& x,
                                                          std::int64_t k) {
    if (k < 1 || k > x.horizon())
        throw precondition_error("block_set: need 1 <= k <= horizon");
    std::vector<std::string_view> views;
    std::string_view text(x.word.bits);
    views.reserve(text.size());
    for (std::int64_t i = 0; i + k <= x.horizon(); ++i)
        views.push_back(text.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(k)));
    std::sort(views.begin(), views.end());
    views.erase(std::unique(views.begin(), views.end()), views.end());
    std::vector<Word> blocks;
    blocks.reserve(views.size());
    for (auto v : views) blocks.push_back(Word(std::string(v)));
    BlockStats stats = make_block_stats(k, static_cast<std::int64_t>(blocks.size()));
    return {std::move(blocks), stats};
}

// entropy estimates for k = 1..k_max via the suffix automaton
inline std::vector<BlockStats> entropy_curve(const PointPrefix& x, std::int64_t k_max) {
    if (k_max < 1) throw precondition_error("entropy_curve: k_max must be >= 1");
    if (k_max > x.horizon() / 4)
        throw precondition_error("entropy_curve: k_max exceeds horizon/4");
    BlockCounter counter(x.word.bits);
    std::vector<BlockStats> curve;
    curve.reserve(static_cast<std::size_t>(k_max));
    for (std::int64_t k = 1; k <= k_max; ++k)
        curve.push_back(make_block_stats(k, counter.count(k)));
    return curve;
}

// ---------------------------------------------------------------------------
// recurrence_certificate: least first-return time of each prefix length
// k' = 1..k, i.e. the least t > 0 with x[t..t+k') = x[0..k').
// ---------------------------------------------------------------------------

inline std::vector<std::int64_t> z_array(const std::string& s) {
    std::vector<std::int64_t> z(s.size(), 0);
    if (s.empty()) return z;
    z[0] = static_cast<std::int64_t>(s.size());
    std::int64_t l = 0, r = 0, n = static_cast<std::int64_t>(s.size());
    for (std::int64_t i = 1; i < n; ++i) {
        if (i < r) z[static_cast<std::size_t>(i)] =
            std::min(r - i, z[static_cast<std::size_t>(i - l)]);
        while (i + z[static_cast<std::size_t>(i)] < n &&
               s[static_cast<std::size_t>(z[static_cast<std::size_t>(i)])] ==
               s[static_cast<std::size_t>(i + z[static_cast<std::size_t>(i)])])
            ++z[static_cast<std::size_t>(i)];
        if (i + z[static_cast<std::size_t>(i)] > r) {
            l = i;
            r = i + z[static_cast<std::size_t>(i)];
        }
    }
    return z;
}

// map k' -> first return time; entry absent when the prefix never recurs
inline std::map<std::int64_t, std::optional<std::int64_t>> recurrence_certificate(
    const PointPrefix& x, std::int64_t k) {
    if (k < 1 || k > x.horizon() / 2)
        throw precondition_error("recurrence_certificate: need 1 <= k <= horizon/2");
    std::vector<std::int64_t> z = z_array(x.word.bits);
    std::map<std::int64_t, std::optional<std::int64_t>> out;
    for (std::int64_t kp = 1; kp <= k; ++kp) out[kp] = std::nullopt;
    std::int64_t covered = 0;
    for (std::int64_t t = 1; t < x.horizon() && covered < k; ++t) {
        std::int64_t zt = z[static_cast<std::size_t>(t)];
        for (std::int64_t kp = covered + 1; kp <= std::min(zt, k); ++kp) out[kp] = t;
        covered = std::max(covered, std::min(zt, k));
    }
    return out;
}

inline bool recurrent_to_depth(const PointPrefix& x, std::int64_t k) {
    auto cert = recurrence_certificate(x, k);
    for (auto& [kp, t] : cert)
        if (!t) return false;
    return true;
}

// ---------------------------------------------------------------------------
// minimality_certificate: for each block of length <= k occurring in x, the
// maximal occurrence gap, with head and tail margins counted as gaps so
// boundary effects stay visible.
// ---------------------------------------------------------------------------

struct GapReport {
    std::int64_t max_gap = 0;       // max of head margin, internal gaps, tail margin
    std::int64_t occurrences = 0;
};

inline std::map<Word, GapReport> minimality_certificate(const PointPrefix& x,
                                                        std::int64_t k) {
    if (k < 1 || k > x.horizon() / 4)
        throw precondition_error("minimality_certificate: need 1 <= k <= horizon/4");
    std::map<Word, GapReport> out;
    std::string_view text(x.word.bits);
    for (std::int64_t kp = 1; kp <= k; ++kp) {
        struct Track { std::int64_t first, last, maxgap, count; };
        std::unordered_map<std::string_view, Track> tracks;
        for (std::int64_t i = 0; i + kp <= x.horizon(); ++i) {
            std::string_view v = text.substr(static_cast<std::size_t>(i),
                                             static_cast<std::size_t>(kp));
            auto [it, fresh] = tracks.try_emplace(v, Track{i, i, 0, 0});
            if (!fresh) it->second.maxgap = std::max(it->second.maxgap, i - it->second.last);
            it->second.last = i;
            it->second.count += 1;
        }
        std::int64_t last_start = x.horizon() - kp;
        for (auto& [v, t] : tracks) {
            GapReport r;
            r.max_gap = std::max({t.maxgap, t.first, last_start - t.last});
            r.occurrences = t.count;
            out.emplace(Word(std::string(v)), r);
        }
    }
    return out;
}

inline bool minimal_certified(const std::map<Word, GapReport>& cert, std::int64_t bound) {
    for (auto& [w, r] : cert)
        if (r.max_gap > bound) return false;
    return true;
}

// ---------------------------------------------------------------------------
// weak_mixing_witness: per occurring k-block A, the least s with both s and
// s+1 in the self-hitting set of [A]. A full witness map is finite
// weak-mixing evidence.
// ---------------------------------------------------------------------------

inline std::optional<std::int64_t> consecutive_self_hit(const WindowSet& occ) {
    if (occ.empty()) return std::nullopt;
    std::int64_t horizon = occ.horizon;
    std::vector<std::uint8_t> diff(static_cast<std::size_t>(horizon), 0);
    if (occ.size() * occ.size() <= 50'000'000) {
        for (std::size_t i = 0; i < occ.elements.size(); ++i)
            for (std::size_t j = i; j < occ.elements.size(); ++j)
                diff[static_cast<std::size_t>(occ.elements[j] - occ.elements[i])] = 1;
    } else {
        std::vector<std::uint64_t> bm = detail::position_bitmap(occ);
        std::vector<std::uint64_t> acc(bm.size(), 0);
        for (std::int64_t e : occ.elements) detail::or_shifted(acc, bm, e);
        for (std::int64_t n = 0; n < horizon; ++n)
            if (acc[static_cast<std::size_t>(n) / 64] >> (n % 64) & 1)
                diff[static_cast<std::size_t>(n)] = 1;
    }
    for (std::int64_t s = 0; s + 1 < horizon; ++s)
        if (diff[static_cast<std::size_t>(s)] && diff[static_cast<std::size_t>(s + 1)])
            return s;
    return std::nullopt;
}

inline std::map<Word, std::optional<std::int64_t>> weak_mixing_witness(
    const PointPrefix& x, std::int64_t k) {
    if (k < 1 || k > x.horizon() / 4)
        throw precondition_error("weak_mixing_witness: need 1 <= k <= horizon/4");
    auto [blocks, stats] = block_set(x, k);
    std::map<Word, std::optional<std::int64_t>> out;
    for (const Word& a : blocks)
        out[a] = consecutive_self_hit(occurrences(x, a));
    return out;
}

// ---------------------------------------------------------------------------
// regular_minimal_witness: least k >= 1 such that every multiple of k in the
// occurrence window is an occurrence of A. Candidates are capped at the
// square root of the window, so every tested progression carries about k
// terms: shorter progressions pass finite scans spuriously (for Thue-Morse,
// steps 2^j + 1 stay in the zero cylinder until carries appear near k^2).
// ---------------------------------------------------------------------------

inline std::optional<std::int64_t> regular_minimal_witness(const PointPrefix& x,
                                                           const Word& a) {
    WindowSet occ = occurrences(x, a);
    std::vector<std::uint8_t> ind = window_indicator(occ);
    std::int64_t last = occ.horizon - 1;
    std::int64_t k_cap = 1;
    while ((k_cap + 1) * (k_cap + 1) <= last) ++k_cap;
    for (std::int64_t k = 1; k <= k_cap; ++k) {
        bool ok = true;
        for (std::int64_t m = 0; m <= last; m += k)
            if (!ind[static_cast<std::size_t>(m)]) { ok = false; break; }
        if (ok) return k;
    }
    return std::nullopt;
}

}  // namespace recforge
