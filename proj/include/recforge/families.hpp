#pragma once
// families.hpp - finite-horizon detectors, constructors and re-checkable
// certificates for the classical set families: syndetic, thick, piecewise
// syndetic, thickly syndetic, IP / finite-sums sets and upper densities.
//
// Window semantics: a certificate only ever asserts a property of S inside
// [0, H). "g-syndetic on the window" means every interval [i, i+g) that fits
// inside [0, H) meets S, with the trailing hole treated as a normal hole.
// syndetic_gap is reported absent when the trailing hole is strictly larger
// than every other hole: past the last element the window gives no evidence
// the gaps stay bounded.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "recforge/types.hpp"

namespace recforge {

// ---------------------------------------------------------------------------
// certificate types
// ---------------------------------------------------------------------------

struct SyndeticCert {
    std::int64_t gap = 0;  // minimal certified gap bound g >= 1
};

struct Run {
    std::int64_t start = 0;
    std::int64_t length = 0;
};

struct ThickCert {
    std::vector<Run> runs;  // maximal runs of consecutive elements
    std::int64_t max_run = 0;
};

struct PiecewiseSyndeticCert {
    std::int64_t gap = 0;
    std::int64_t lo = 0;  // witness interval [lo, hi)
    std::int64_t hi = 0;
};

struct ThicklySyndeticCert {
    // (run length n, minimal gap g_n of the set of length-n run starts)
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
};

struct DensityCert {
    std::int64_t window_length = 0;
    Rational upper_banach;
    Rational upper_density;
};

// ---------------------------------------------------------------------------
// hole structure: head hole [0, first), internal holes, tail hole (last, H)
// ---------------------------------------------------------------------------

struct HoleProfile {
    std::int64_t head = 0;
    std::int64_t internal_max = 0;
    std::int64_t tail = 0;
};

inline HoleProfile hole_profile(const WindowSet& s) {
    HoleProfile h;
    if (s.empty()) {
        h.head = s.horizon;
        return h;
    }
    h.head = s.elements.front();
    for (std::size_t i = 1; i < s.elements.size(); ++i)
        h.internal_max = std::max(h.internal_max, s.elements[i] - s.elements[i - 1] - 1);
    h.tail = s.horizon - 1 - s.elements.back();
    return h;
}

// ---------------------------------------------------------------------------
// syndetic_gap: minimal g such that every [i, i+g) inside the window meets S.
// Absent when S is empty or the trailing hole strictly dominates the others.
// ---------------------------------------------------------------------------

inline std::optional<std::int64_t> syndetic_gap(const WindowSet& s) {
    check_window_set(s);
    if (s.empty()) return std::nullopt;
    HoleProfile h = hole_profile(s);
    std::int64_t inner = std::max(h.head, h.internal_max);
    if (h.tail > inner) return std::nullopt;
    return inner + 1;
}

// Validator: exhaustive second route. Confirms every interval of length g
// fully inside the window meets S, that the trailing stub is shorter than g,
// and that g is minimal (g-1 fails somewhere).
inline bool validate_syndetic(const WindowSet& s, const SyndeticCert& cert) {
    if (cert.gap < 1 || s.empty()) return false;
    std::vector<std::uint8_t> ind = window_indicator(s);
    auto covered = [&](std::int64_t g) {
        std::int64_t since = 0;  // consecutive non-elements ending at i
        for (std::int64_t i = 0; i < s.horizon; ++i) {
            since = ind[static_cast<std::size_t>(i)] ? 0 : since + 1;
            if (i >= g - 1 && since >= g) return false;  // [i-g+1, i+1) misses S
        }
        return since < g;  // trailing stub must not swallow a whole gap
    };
    if (!covered(cert.gap)) return false;
    if (cert.gap > 1 && covered(cert.gap - 1)) return false;  // not minimal
    return true;
}

// ---------------------------------------------------------------------------
// run_profile: maximal runs of consecutive elements.
// "thick at scale L on the window" means max_run >= L.
// ---------------------------------------------------------------------------

inline ThickCert run_profile(const WindowSet& s) {
    check_window_set(s);
    ThickCert cert;
    std::size_t i = 0;
    while (i < s.elements.size()) {
        std::size_t j = i;
        while (j + 1 < s.elements.size() && s.elements[j + 1] == s.elements[j] + 1) ++j;
        Run r{s.elements[i], static_cast<std::int64_t>(j - i + 1)};
        cert.runs.push_back(r);
        cert.max_run = std::max(cert.max_run, r.length);
        i = j + 1;
    }
    return cert;
}

inline bool validate_run_profile(const WindowSet& s, const ThickCert& cert) {
    std::vector<std::uint8_t> ind = window_indicator(s);
    std::vector<Run> runs;
    std::int64_t maxrun = 0;
    std::int64_t i = 0;
    while (i < s.horizon) {
        if (!ind[static_cast<std::size_t>(i)]) { ++i; continue; }
        std::int64_t j = i;
        while (j < s.horizon && ind[static_cast<std::size_t>(j)]) ++j;
        runs.push_back(Run{i, j - i});
        maxrun = std::max(maxrun, j - i);
        i = j;
    }
    if (maxrun != cert.max_run || runs.size() != cert.runs.size()) return false;
    for (std::size_t k = 0; k < runs.size(); ++k)
        if (runs[k].start != cert.runs[k].start || runs[k].length != cert.runs[k].length)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// piecewise_syndetic_witness: the longest interval I inside the window on
// which S is relatively g-syndetic. Qualifies only when |I| >= 2g, which
// rules out one-hit witnesses. The reported interval starts at an element
// of S.
// ---------------------------------------------------------------------------

inline std::optional<PiecewiseSyndeticCert> piecewise_syndetic_witness(
    const WindowSet& s, std::int64_t g) {
    check_window_set(s);
    if (g < 1) throw precondition_error("piecewise_syndetic_witness: g must be >= 1");
    if (s.empty()) return std::nullopt;
    std::vector<std::uint8_t> ind = window_indicator(s);

    // hit[i] = 1 iff [i, i+g) inside the window meets S; find the longest
    // maximal run of hit positions, covering positions [a, rend + g).
    std::int64_t best_len = 0, best_lo = 0, best_hi = 0;
    std::int64_t run_start = -1;
    std::int64_t next_elem = -1;  // smallest element >= i, maintained by a sweep
    std::size_t ei = 0;
    const std::int64_t last_i = s.horizon - g;
    for (std::int64_t i = 0; i <= last_i; ++i) {
        while (ei < s.elements.size() && s.elements[ei] < i) ++ei;
        next_elem = ei < s.elements.size() ? s.elements[ei] : s.horizon;
        bool hit = next_elem < i + g;
        if (hit && run_start < 0) run_start = i;
        bool closing = (!hit && run_start >= 0) || (hit && i == last_i);
        if (closing) {
            std::int64_t rend = hit ? i : i - 1;
            std::int64_t lo = run_start, hi = rend + g;
            // trim the start to the first element inside the covered range
            auto it = std::lower_bound(s.elements.begin(), s.elements.end(), lo);
            if (it != s.elements.end() && *it < hi) {
                lo = *it;
                if (hi - lo > best_len) { best_len = hi - lo; best_lo = lo; best_hi = hi; }
            }
            run_start = -1;
        }
    }
    if (best_len < 2 * g) return std::nullopt;
    return PiecewiseSyndeticCert{g, best_lo, best_hi};
}

// Validator: the interval fits in the window, has length >= 2g, and every
// sub-interval of length g inside it meets S (literal double scan).
inline bool validate_piecewise_syndetic(const WindowSet& s,
                                        const PiecewiseSyndeticCert& cert) {
    if (cert.gap < 1 || cert.lo < 0 || cert.hi > s.horizon) return false;
    if (cert.hi - cert.lo < 2 * cert.gap) return false;
    std::vector<std::uint8_t> ind = window_indicator(s);
    for (std::int64_t i = cert.lo; i + cert.gap <= cert.hi; ++i) {
        bool hit = false;
        for (std::int64_t j = i; j < i + cert.gap; ++j)
            if (ind[static_cast<std::size_t>(j)]) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// thickly_syndetic_profile: for each n <= n_max the minimal gap g_n such that
// the starts of length-n runs of S form a g_n-syndetic set on [0, H-n).
// Absent if some n has no certifiable gap on the window.
// ---------------------------------------------------------------------------

inline WindowSet run_starts(const WindowSet& s, std::int64_t n) {
    std::vector<std::uint8_t> ind = window_indicator(s);
    WindowSet out;
    out.horizon = std::max<std::int64_t>(1, s.horizon - n);
    std::int64_t runlen = 0;  // length of the run of ones ending at i
    for (std::int64_t i = 0; i < s.horizon; ++i) {
        runlen = ind[static_cast<std::size_t>(i)] ? runlen + 1 : 0;
        std::int64_t start = i - n + 1;
        if (runlen >= n && start < out.horizon) out.elements.push_back(start);
    }
    return out;
}

inline std::optional<ThicklySyndeticCert> thickly_syndetic_profile(
    const WindowSet& s, std::int64_t n_max) {
    check_window_set(s);
    if (n_max < 1) throw precondition_error("thickly_syndetic_profile: n_max must be >= 1");
    ThicklySyndeticCert cert;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto g = syndetic_gap(run_starts(s, n));
        if (!g) return std::nullopt;
        cert.entries.emplace_back(n, *g);
    }
    return cert;
}

inline bool validate_thickly_syndetic(const WindowSet& s,
                                      const ThicklySyndeticCert& cert) {
    for (auto [n, g] : cert.entries) {
        if (n < 1 || g < 1) return false;
        WindowSet starts = run_starts(s, n);
        if (!validate_syndetic(starts, SyndeticCert{g})) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// fs_set: all finite subset sums of the generators, truncated at the cap.
// ---------------------------------------------------------------------------

inline WindowSet fs_set(const std::vector<std::int64_t>& gens, std::int64_t cap,
                        const Budget& budget = Budget{}) {
    if (gens.empty()) throw precondition_error("fs_set: empty generator list");
    for (std::int64_t p : gens)
        if (p < 1) throw precondition_error("fs_set: generators must be >= 1");
    if (cap < 1) throw precondition_error("fs_set: cap must be >= 1");
    if (gens.size() < 63)
        budget.charge((std::int64_t{1} << gens.size()) - 1, "fs_set");
    else
        budget.charge(std::numeric_limits<std::int64_t>::max(), "fs_set");

    std::vector<std::int64_t> sums;  // all subset sums seen so far, < cap
    sums.reserve(1u << std::min<std::size_t>(gens.size(), 20));
    for (std::int64_t p : gens) {
        std::size_t old = sums.size();
        if (p < cap) sums.push_back(p);
        for (std::size_t i = 0; i < old; ++i) {
            std::int64_t v = sums[i];
            if (v > cap - p) continue;  // overflow-safe: v + p >= cap
            sums.push_back(v + p);
        }
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    return make_window_set(cap, std::move(sums));
}

inline bool is_superincreasing(const std::vector<std::int64_t>& gens) {
    std::int64_t sum = 0;
    for (std::int64_t p : gens) {
        if (p <= sum) return false;
        if (sum > std::numeric_limits<std::int64_t>::max() - p)
            throw precondition_error("is_superincreasing: generator sum overflows");
        sum += p;
    }
    return true;
}

// ---------------------------------------------------------------------------
// difference_set: { b - a : a, b in S, b > a }, same horizon.
// ---------------------------------------------------------------------------

inline WindowSet difference_set(const WindowSet& s, const Budget& budget = Budget{}) {
    check_window_set(s);
    budget.charge(s.size() * s.size(), "difference_set");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(s.horizon), 0);
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        for (std::size_t j = i + 1; j < s.elements.size(); ++j)
            seen[static_cast<std::size_t>(s.elements[j] - s.elements[i])] = 1;
    seen.resize(static_cast<std::size_t>(s.horizon));
    WindowSet out = window_from_indicator(seen);
    out.horizon = s.horizon;
    return out;
}

// ---------------------------------------------------------------------------
// density_report: sliding-window upper Banach density at a fixed interval
// length, and the prefix upper density over n in [len, H].
// ---------------------------------------------------------------------------

inline DensityCert density_report(const WindowSet& s, std::int64_t len) {
    check_window_set(s);
    if (len < 1 || len > s.horizon)
        throw precondition_error("density_report: need 1 <= len <= horizon");
    std::vector<std::uint8_t> ind = window_indicator(s);

    std::int64_t count = 0;
    for (std::int64_t i = 0; i < len; ++i) count += ind[static_cast<std::size_t>(i)];
    std::int64_t best = count;
    for (std::int64_t i = len; i < s.horizon; ++i) {
        count += ind[static_cast<std::size_t>(i)];
        count -= ind[static_cast<std::size_t>(i - len)];
        best = std::max(best, count);
    }

    std::int64_t prefix = 0;
    std::int64_t bn = 1, bc = 0;  // argmax of prefix/n, compared exactly
    for (std::int64_t n = 1; n <= s.horizon; ++n) {
        prefix += ind[static_cast<std::size_t>(n - 1)];
        if (n < len) continue;
        if (prefix * bn > bc * n) { bc = prefix; bn = n; }
    }

    DensityCert cert;
    cert.window_length = len;
    cert.upper_banach = Rational(best, len);
    cert.upper_density = Rational(bc, bn);
    return cert;
}

inline bool validate_density(const WindowSet& s, const DensityCert& cert) {
    if (cert.window_length < 1 || cert.window_length > s.horizon) return false;
    std::vector<std::uint8_t> ind = window_indicator(s);
    std::int64_t len = cert.window_length;
    std::int64_t best = 0;
    for (std::int64_t i = 0; i + len <= s.horizon; ++i) {
        std::int64_t c = 0;
        for (std::int64_t j = i; j < i + len; ++j) c += ind[static_cast<std::size_t>(j)];
        best = std::max(best, c);
    }
    if (!(Rational(best, len) == cert.upper_banach)) return false;
    Rational bestd(0, 1);
    std::int64_t prefix = 0;
    for (std::int64_t n = 1; n <= s.horizon; ++n) {
        prefix += ind[static_cast<std::size_t>(n - 1)];
        if (n < len) continue;
        Rational d(prefix, n);
        if (bestd < d) bestd = d;
    }
    return bestd == cert.upper_density;
}

// ---------------------------------------------------------------------------
// ip_star_probe: finite evidence toward IP*-membership. For each generator
// list reports whether S meets the generated FS set; never a proof.
// ---------------------------------------------------------------------------

inline std::vector<bool> ip_star_probe(const WindowSet& s,
                                       const std::vector<std::vector<std::int64_t>>& batch,
                                       const Budget& budget = Budget{}) {
    check_window_set(s);
    std::vector<bool> out;
    out.reserve(batch.size());
    for (const auto& gens : batch) {
        WindowSet fs = fs_set(gens, s.horizon, budget);
        if (fs.elements.empty() ? false : !window_disjoint(fs, s))
            out.push_back(true);
        else
            out.push_back(false);
    }
    return out;
}

}  // namespace recforge
