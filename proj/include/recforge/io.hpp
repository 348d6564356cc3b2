#pragma once
// io.hpp - text file formats and deterministic certificate rendering.
//
//   set file:       "#horizon H" then one decimal integer per line, ascending
//   word file:      a single line of 0/1 characters
//   certificates:   key: value lines, one block per certificate, "kind:" tag
//   trace files:    one stage per block, words hex-packed with their length
//
// Certificate and trace files carry no timestamps, so identical inputs give
// byte-identical bundles.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "recforge/constructions.hpp"
#include "recforge/families.hpp"
#include "recforge/independence.hpp"
#include "recforge/product.hpp"
#include "recforge/subshift.hpp"
#include "recforge/types.hpp"

namespace recforge {

// ---------------------------------------------------------------------------
// set and word files
// ---------------------------------------------------------------------------

inline std::string render_window_set(const WindowSet& s) {
    std::ostringstream out;
    out << "#horizon " << s.horizon << "\n";
    for (std::int64_t e : s.elements) out << e << "\n";
    return out.str();
}

inline WindowSet parse_window_set(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("#horizon ", 0) != 0)
        throw io_error("set file must start with '#horizon H'");
    WindowSet s;
    s.horizon = std::stoll(line.substr(9));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        s.elements.push_back(std::stoll(line));
    }
    check_window_set(s);
    return s;
}

inline std::string render_word(const Word& w) { return w.bits + "\n"; }

inline Word parse_word(const std::string& text) {
    std::string bits = text;
    while (!bits.empty() && (bits.back() == '\n' || bits.back() == '\r')) bits.pop_back();
    return Word(std::move(bits));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << content;
    if (!out) throw io_error("write failed for " + path.string());
}

// A set input may be a set file or an indicator line; detect by the header.
inline WindowSet parse_set_or_indicator(const std::string& text) {
    if (text.rfind("#horizon ", 0) == 0) return parse_window_set(text);
    Word w = parse_word(text);
    WindowSet s = support(PointPrefix{w, ""});
    return s;
}

// ---------------------------------------------------------------------------
// hex packing for trace words: four bits per digit, first symbol in the most
// significant bit of the first digit, zero-padded; the length field recovers
// the exact word.
// ---------------------------------------------------------------------------

inline std::string hex_pack(const Word& w) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((w.bits.size() + 3) / 4);
    int nibble = 0, filled = 0;
    for (char c : w.bits) {
        nibble = nibble << 1 | (c == '1');
        if (++filled == 4) {
            out.push_back(digits[nibble]);
            nibble = 0;
            filled = 0;
        }
    }
    if (filled) out.push_back(digits[nibble << (4 - filled)]);
    return out;
}

inline Word hex_unpack(const std::string& hex, std::int64_t length) {
    std::string bits;
    bits.reserve(static_cast<std::size_t>(length));
    for (char c : hex) {
        int v = c <= '9' ? c - '0' : c - 'a' + 10;
        for (int b = 3; b >= 0; --b)
            if (static_cast<std::int64_t>(bits.size()) < length)
                bits.push_back(v >> b & 1 ? '1' : '0');
    }
    if (static_cast<std::int64_t>(bits.size()) != length)
        throw io_error("hex-packed word shorter than its declared length");
    return Word(std::move(bits));
}

// ---------------------------------------------------------------------------
// certificate rendering: one block per certificate, blank-line separated
// ---------------------------------------------------------------------------

inline std::string render_inline_set(const WindowSet& s, std::size_t cap = 4096) {
    std::ostringstream out;
    for (std::size_t i = 0; i < s.elements.size() && i < cap; ++i) {
        if (i) out << " ";
        out << s.elements[i];
    }
    if (s.elements.size() > cap) out << " ...(" << s.elements.size() << " total)";
    return out.str();
}

inline std::string render_rational(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline void render_cert(std::ostringstream& out, const SyndeticCert& c) {
    out << "kind: SyndeticCert\n"
        << "gap: " << c.gap << "\n";
}

inline void render_cert(std::ostringstream& out, const ThickCert& c) {
    out << "kind: ThickCert\n"
        << "max_run: " << c.max_run << "\n"
        << "runs: ";
    for (std::size_t i = 0; i < c.runs.size() && i < 2048; ++i) {
        if (i) out << " ";
        out << "(" << c.runs[i].start << "," << c.runs[i].length << ")";
    }
    if (c.runs.size() > 2048) out << " ...(" << c.runs.size() << " total)";
    out << "\n";
}

inline void render_cert(std::ostringstream& out, const PiecewiseSyndeticCert& c) {
    out << "kind: PiecewiseSyndeticCert\n"
        << "gap: " << c.gap << "\n"
        << "interval: (" << c.lo << "," << c.hi << ")\n"
        << "interval_length: " << c.hi - c.lo << "\n";
}

inline void render_cert(std::ostringstream& out, const ThicklySyndeticCert& c) {
    out << "kind: ThicklySyndeticCert\n"
        << "entries: ";
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        if (i) out << " ";
        out << "(" << c.entries[i].first << "," << c.entries[i].second << ")";
    }
    out << "\n";
}

inline void render_cert(std::ostringstream& out, const DensityCert& c) {
    out << "kind: DensityCert\n"
        << "window_length: " << c.window_length << "\n"
        << "upper_banach: " << render_rational(c.upper_banach) << "\n"
        << "upper_density: " << render_rational(c.upper_density) << "\n";
}

// ---------------------------------------------------------------------------
// trace files
// ---------------------------------------------------------------------------

inline std::string render_md_trace(const MdTrace& t) {
    std::ostringstream out;
    out << "trace: md\n"
        << "horizon: " << t.horizon << "\n"
        << "stages: " << t.stages.size() << "\n";
    for (std::size_t k = 0; k < t.stages.size(); ++k) {
        const MdStage& st = t.stages[k];
        out << "\n"
            << "stage: " << k + 1 << "\n"
            << "a_k: " << st.zero_gap << "\n"
            << "m_k: " << st.length() << "\n"
            << "A_k: " << hex_pack(st.block) << "\n";
    }
    return out.str();
}

inline std::string render_sm_trace(const SmTrace& t) {
    std::ostringstream out;
    out << "trace: sm\n"
        << "horizon: " << t.horizon << "\n"
        << "stages: " << t.stages.size() << "\n";
    for (std::size_t m = 0; m < t.stages.size(); ++m) {
        const SmStage& st = t.stages[m];
        out << "\n"
            << "stage: " << m + 1 << "\n"
            << "a_m: " << st.a_len << "\n"
            << "b_m: " << st.b_len << "\n"
            << "l_m: " << st.l_bound << "\n"
            << "r_m: " << st.r_run << "\n"
            << "A_m: " << hex_pack(st.a_word) << "\n"
            << "B_m: " << hex_pack(st.b_word) << "\n"
            << "W_m: " << render_inline_set(st.w_starts, ~std::size_t{0}) << "\n"
            << "u_m: " << render_inline_set(st.u_starts, ~std::size_t{0}) << "\n";
    }
    return out.str();
}

inline std::string render_generators(const FSGenerators& g) {
    std::ostringstream out;
    out << "kind: FSGenerators\n"
        << "superincreasing: " << (g.superincreasing ? "yes" : "no") << "\n"
        << "gens: ";
    for (std::size_t i = 0; i < g.gens.size(); ++i) {
        if (i) out << " ";
        out << g.gens[i];
    }
    out << "\n";
    return out.str();
}

}  // namespace recforge
