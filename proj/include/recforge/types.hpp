#pragma once
// types.hpp - core value types shared by every recforge module:
// finite integer sets on a window, binary words, exact rationals,
// and the enumeration budget.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recforge {

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// WindowSet - a finite subset of [0, horizon), strictly increasing elements.
// Stands for a subset of the nonnegative integers truncated at the horizon.
// ---------------------------------------------------------------------------

struct WindowSet {
    std::int64_t horizon = 0;
    std::vector<std::int64_t> elements;

    bool empty() const { return elements.empty(); }
    std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }

    bool contains(std::int64_t v) const {
        return std::binary_search(elements.begin(), elements.end(), v);
    }
};

inline void check_window_set(const WindowSet& s) {
    if (s.horizon < 1) throw precondition_error("WindowSet horizon must be >= 1");
    std::int64_t prev = -1;
    for (std::int64_t e : s.elements) {
        if (e < 0 || e >= s.horizon)
            throw precondition_error("WindowSet element out of [0, horizon)");
        if (e <= prev)
            throw precondition_error("WindowSet elements must be strictly increasing");
        prev = e;
    }
}

inline WindowSet make_window_set(std::int64_t horizon, std::vector<std::int64_t> elems) {
    WindowSet s{horizon, std::move(elems)};
    check_window_set(s);
    return s;
}

// 0/1 membership vector of length horizon.
inline std::vector<std::uint8_t> window_indicator(const WindowSet& s) {
    std::vector<std::uint8_t> ind(static_cast<std::size_t>(s.horizon), 0);
    for (std::int64_t e : s.elements) ind[static_cast<std::size_t>(e)] = 1;
    return ind;
}

inline WindowSet window_from_indicator(const std::vector<std::uint8_t>& ind) {
    WindowSet s;
    s.horizon = static_cast<std::int64_t>(ind.size());
    for (std::size_t i = 0; i < ind.size(); ++i)
        if (ind[i]) s.elements.push_back(static_cast<std::int64_t>(i));
    return s;
}

inline WindowSet window_complement(const WindowSet& s) {
    WindowSet out;
    out.horizon = s.horizon;
    out.elements.reserve(static_cast<std::size_t>(s.horizon - s.size()));
    std::size_t j = 0;
    for (std::int64_t i = 0; i < s.horizon; ++i) {
        if (j < s.elements.size() && s.elements[j] == i) {
            ++j;
        } else {
            out.elements.push_back(i);
        }
    }
    return out;
}

inline WindowSet window_intersect(const WindowSet& a, const WindowSet& b) {
    WindowSet out;
    out.horizon = std::min(a.horizon, b.horizon);
    std::set_intersection(a.elements.begin(), a.elements.end(),
                          b.elements.begin(), b.elements.end(),
                          std::back_inserter(out.elements));
    while (!out.elements.empty() && out.elements.back() >= out.horizon)
        out.elements.pop_back();
    return out;
}

// a \subseteq b as plain integer sets (horizons ignored).
inline bool window_subset_of(const WindowSet& a, const WindowSet& b) {
    return std::includes(b.elements.begin(), b.elements.end(),
                         a.elements.begin(), a.elements.end());
}

inline bool window_disjoint(const WindowSet& a, const WindowSet& b) {
    std::size_t i = 0, j = 0;
    while (i < a.elements.size() && j < b.elements.size()) {
        if (a.elements[i] == b.elements[j]) return false;
        if (a.elements[i] < b.elements[j]) ++i; else ++j;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Word / PointPrefix - finite binary words. A PointPrefix is a long word
// standing for the initial segment of a point of a subshift.
// ---------------------------------------------------------------------------

struct Word {
    std::string bits;  // characters '0'/'1'

    Word() = default;
    explicit Word(std::string b) : bits(std::move(b)) {
        for (char c : bits)
            if (c != '0' && c != '1')
                throw precondition_error("Word symbols must be 0 or 1");
    }

    std::int64_t size() const { return static_cast<std::int64_t>(bits.size()); }
    bool empty() const { return bits.empty(); }
    bool at(std::int64_t i) const { return bits[static_cast<std::size_t>(i)] == '1'; }

    bool operator==(const Word& o) const { return bits == o.bits; }
    bool operator!=(const Word& o) const { return bits != o.bits; }
    bool operator<(const Word& o) const { return bits < o.bits; }
};

struct PointPrefix {
    Word word;
    std::string label;  // free-form origin tag

    std::int64_t horizon() const { return word.size(); }
};

inline PointPrefix make_point(std::string bits, std::string label = {}) {
    if (bits.empty()) throw precondition_error("PointPrefix length must be >= 1");
    return PointPrefix{Word(std::move(bits)), std::move(label)};
}

// support of an indicator prefix as a WindowSet
inline WindowSet support(const PointPrefix& x) {
    WindowSet s;
    s.horizon = x.horizon();
    for (std::int64_t i = 0; i < x.horizon(); ++i)
        if (x.word.at(i)) s.elements.push_back(i);
    return s;
}

inline PointPrefix indicator_point(const WindowSet& s, std::string label = {}) {
    std::string bits(static_cast<std::size_t>(s.horizon), '0');
    for (std::int64_t e : s.elements) bits[static_cast<std::size_t>(e)] = '1';
    return make_point(std::move(bits), std::move(label));
}

// ---------------------------------------------------------------------------
// Rational - exact nonnegative fraction, reduced. Used for densities.
// ---------------------------------------------------------------------------

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0) throw precondition_error("Rational denominator must be positive");
        std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
};

// ---------------------------------------------------------------------------
// Budget - global cap on enumeration sizes. The CLI seeds it from the
// RECFORGE_BUDGET environment variable; library callers pass it explicitly.
// ---------------------------------------------------------------------------

struct Budget {
    std::int64_t limit = 100'000'000;

    void charge(std::int64_t n, const char* what) const {
        if (n > limit)
            throw budget_exceeded(std::string(what) + ": enumeration size " +
                                  std::to_string(n) + " exceeds budget " +
                                  std::to_string(limit));
    }
};

inline Budget budget_from_env() {
    Budget b;
    if (const char* v = std::getenv("RECFORGE_BUDGET")) {
        char* end = nullptr;
        long long parsed = std::strtoll(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) b.limit = parsed;
    }
    return b;
}

}  // namespace recforge
