#pragma once
// words.hpp - built-in binary word generators: periodic words, the
// Thue-Morse prefix, de Bruijn cycle prefixes, and the powers-of-two
// indicator used by the counterexample demos.

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "recforge/types.hpp"

namespace recforge {

inline PointPrefix zeros_word(std::int64_t length) {
    return make_point(std::string(static_cast<std::size_t>(length), '0'), "zeros");
}

inline PointPrefix ones_word(std::int64_t length) {
    return make_point(std::string(static_cast<std::size_t>(length), '1'), "ones");
}

// pattern repeated cyclically to the requested length
inline PointPrefix periodic_word(const std::string& pattern, std::int64_t length) {
    if (pattern.empty()) throw precondition_error("periodic_word: empty pattern");
    std::string bits;
    bits.reserve(static_cast<std::size_t>(length));
    while (static_cast<std::int64_t>(bits.size()) < length)
        bits.append(pattern, 0, std::min<std::size_t>(pattern.size(),
                    static_cast<std::size_t>(length) - bits.size()));
    return make_point(std::move(bits), "periodic:" + pattern);
}

// t(n) = parity of the number of 1-bits of n
inline PointPrefix thue_morse_word(std::int64_t length) {
    std::string bits(static_cast<std::size_t>(length), '0');
    for (std::int64_t n = 0; n < length; ++n)
        bits[static_cast<std::size_t>(n)] =
            (std::popcount(static_cast<std::uint64_t>(n)) & 1) ? '1' : '0';
    return make_point(std::move(bits), "thue-morse");
}

// Binary de Bruijn cycle of the given order via the classic Lyndon-word
// concatenation (lexicographically least cycle), repeated cyclically to the
// requested length. The repetition keeps every order-length block present,
// including the wrap-around ones.
inline std::string de_bruijn_cycle(int order) {
    if (order < 1 || order > 24) throw precondition_error("de_bruijn_cycle: order out of range");
    std::string cycle;
    std::vector<int> a(static_cast<std::size_t>(order) + 1, 0);
    // iterative FKM: emit a[1..t] whenever t divides order
    std::function<void(int, int)> db = [&](int t, int p) {
        if (t > order) {
            if (order % p == 0)
                for (int j = 1; j <= p; ++j) cycle.push_back(static_cast<char>('0' + a[j]));
        } else {
            a[t] = a[t - p];
            db(t + 1, p);
            for (int j = a[t - p] + 1; j < 2; ++j) {
                a[t] = j;
                db(t + 1, t);
            }
        }
    };
    db(1, 1);
    return cycle;
}

inline PointPrefix de_bruijn_word(int order, std::int64_t length) {
    std::string cycle = de_bruijn_cycle(order);
    if (length < static_cast<std::int64_t>(cycle.size()) + order - 1)
        throw precondition_error("de_bruijn_word: length too short for the requested order");
    std::string bits;
    bits.reserve(static_cast<std::size_t>(length));
    while (static_cast<std::int64_t>(bits.size()) < length)
        bits.append(cycle, 0, std::min<std::size_t>(cycle.size(),
                    static_cast<std::size_t>(length) - bits.size()));
    return make_point(std::move(bits), "debruijn:" + std::to_string(order));
}

// Indicator of {0} u {2^k : k >= 0}. Position 0 is included so the word lies
// in the cylinder of its leading block, which the product demos require.
inline PointPrefix pow2_word(std::int64_t length) {
    std::string bits(static_cast<std::size_t>(length), '0');
    bits[0] = '1';
    for (std::int64_t p = 1; p < length; p *= 2) bits[static_cast<std::size_t>(p)] = '1';
    return make_point(std::move(bits), "pow2");
}

// Indicator of { j! : j >= 1 }.
inline PointPrefix factorial_word(std::int64_t length) {
    std::string bits(static_cast<std::size_t>(length), '0');
    std::int64_t f = 1;
    for (std::int64_t j = 1; f < length; ++j) {
        bits[static_cast<std::size_t>(f)] = '1';
        if (f > length / j) break;
        f *= j + 1;
    }
    return make_point(std::move(bits), "factorial");
}

}  // namespace recforge
