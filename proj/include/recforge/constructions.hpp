#pragma once
// constructions.hpp - the constructive procedures: IP-set extraction from a
// recurrent prefix, finite Hindman search, the staged md and sm words grown
// inside thick / thickly syndetic sets, rapid IP sets with difference sets
// inside a thick set, and the cubic block-complexity bound audit.
//
// Every construction is a deterministic greedy realization of an existence
// proof: the smallest admissible parameter is taken at each step, so reruns
// are reproducible and traces can be replayed bit-for-bit. Constructions
// that outgrow the window return the deepest completed stage plus a reason,
// never a silent truncation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recforge/families.hpp"
#include "recforge/subshift.hpp"
#include "recforge/types.hpp"

namespace recforge {

// ---------------------------------------------------------------------------
// FSGenerators
// ---------------------------------------------------------------------------

struct FSGenerators {
    std::vector<std::int64_t> gens;
    bool superincreasing = false;
};

inline FSGenerators make_generators(std::vector<std::int64_t> gens) {
    for (std::int64_t p : gens)
        if (p < 1) throw precondition_error("FSGenerators: all generators must be >= 1");
    FSGenerators out;
    out.superincreasing = is_superincreasing(gens);
    out.gens = std::move(gens);
    return out;
}

// ---------------------------------------------------------------------------
// extract_ip: generators p_1..p_d with FS({p_i}_{i=n..d}) inside the
// occurrence set of the length-n prefix cylinder, for every n <= d.
// Constructed by induction: each p is the smallest integer above the sum of
// its predecessors that lies in every pullback constraint accumulated so far.
// The prefix cylinders [x[0..n)] serve as the neighborhood basis.
// ---------------------------------------------------------------------------

inline FSGenerators extract_ip(const PointPrefix& x, std::int64_t depth,
                               const Budget& budget = Budget{}) {
    if (depth < 1) throw precondition_error("extract_ip: depth must be >= 1");
    if (depth > 30) throw precondition_error("extract_ip: depth too large");
    if (depth > x.horizon() / 2)
        throw precondition_error("extract_ip: depth exceeds horizon/2");
    if (!recurrent_to_depth(x, depth))
        throw precondition_error("extract_ip: prefix is not recurrent to the requested depth on the window");
    budget.charge(std::int64_t{1} << depth, "extract_ip");

    // occurrence indicators of the prefix cylinders
    std::vector<std::vector<std::uint8_t>> occ(static_cast<std::size_t>(depth) + 1);
    std::vector<std::int64_t> occ_h(static_cast<std::size_t>(depth) + 1, 0);
    for (std::int64_t n = 1; n <= depth; ++n) {
        WindowSet o = occurrences(x, Word(x.word.bits.substr(0, static_cast<std::size_t>(n))));
        occ[static_cast<std::size_t>(n)] = window_indicator(o);
        occ_h[static_cast<std::size_t>(n)] = o.horizon;
    }
    auto in_occ = [&](std::int64_t n, std::int64_t pos) {
        return pos >= 0 && pos < occ_h[static_cast<std::size_t>(n)] &&
               occ[static_cast<std::size_t>(n)][static_cast<std::size_t>(pos)];
    };

    std::vector<std::int64_t> gens;
    // fs[n] = FS({p_i}_{i=n..current}), maintained incrementally
    std::vector<std::vector<std::int64_t>> fs(static_cast<std::size_t>(depth) + 1);
    std::int64_t sum = 0;
    for (std::int64_t stage = 1; stage <= depth; ++stage) {
        std::int64_t found = -1;
        for (std::int64_t p = sum + 1; p < x.horizon(); ++p) {
            bool ok = true;
            for (std::int64_t n = 1; n <= stage && ok; ++n)
                ok = in_occ(n, p);
            for (std::int64_t n = 1; n < stage && ok; ++n)
                for (std::int64_t m : fs[static_cast<std::size_t>(n)]) {
                    if (!in_occ(n, p + m)) { ok = false; break; }
                }
            if (ok) { found = p; break; }
        }
        if (found < 0)
            throw precondition_error("extract_ip: window exhausted at stage " +
                                     std::to_string(stage));
        for (std::int64_t n = 1; n < stage; ++n) {
            auto& level = fs[static_cast<std::size_t>(n)];
            std::size_t old = level.size();
            level.push_back(found);
            for (std::size_t i = 0; i < old; ++i) level.push_back(level[i] + found);
            std::sort(level.begin(), level.end());
        }
        fs[static_cast<std::size_t>(stage)] = {found};
        gens.push_back(found);
        sum += found;
    }
    return FSGenerators{std::move(gens), true};
}

// Independent soundness check: full FS enumeration against direct substring
// comparison, no occurrence machinery shared with the construction.
inline bool verify_extract_ip(const PointPrefix& x, const FSGenerators& g,
                              std::int64_t depth) {
    if (static_cast<std::int64_t>(g.gens.size()) < depth) return false;
    for (std::int64_t n = 1; n <= depth; ++n) {
        std::string prefix = x.word.bits.substr(0, static_cast<std::size_t>(n));
        std::vector<std::int64_t> tail(g.gens.begin() + (n - 1), g.gens.begin() + depth);
        std::vector<std::int64_t> sums;
        for (std::int64_t p : tail) {
            std::size_t old = sums.size();
            sums.push_back(p);
            for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + p);
        }
        for (std::int64_t m : sums) {
            if (m + n > x.horizon()) return false;
            if (x.word.bits.compare(static_cast<std::size_t>(m),
                                    static_cast<std::size_t>(n), prefix) != 0)
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// hindman_search: given a coloring of the FS set of superincreasing
// generators, search for sums q_1..q_m over pairwise disjoint generator
// subsets whose full FS set is monochromatic. The finite search is
// incomplete: absence is reported honestly and refutes nothing.
// ---------------------------------------------------------------------------

struct HindmanFound {
    std::vector<std::int64_t> q;
    std::vector<std::uint32_t> masks;  // generator subsets, as bitmasks
    int color = 0;
};

struct HindmanReport {
    std::optional<HindmanFound> found;
    std::int64_t examined = 0;  // candidate subsets visited
    bool exhausted = false;     // the whole space was searched
};

inline HindmanReport hindman_search(const FSGenerators& g,
                                    const std::map<std::int64_t, int>& coloring,
                                    std::int64_t m,
                                    const Budget& budget = Budget{}) {
    if (m < 1) throw precondition_error("hindman_search: target m must be >= 1");
    if (!g.superincreasing || !is_superincreasing(g.gens))
        throw precondition_error("hindman_search: generators must be superincreasing");
    if (g.gens.size() > 20) throw precondition_error("hindman_search: too many generators");
    std::int64_t total = 0;
    for (std::int64_t p : g.gens) total += p;
    WindowSet fs = fs_set(g.gens, total + 1, budget);
    for (std::int64_t v : fs.elements)
        if (!coloring.count(v))
            throw precondition_error("hindman_search: coloring not total on the FS set (missing " +
                                     std::to_string(v) + ")");

    const std::uint32_t full = (1u << g.gens.size()) - 1;
    auto mask_sum = [&](std::uint32_t mask) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < g.gens.size(); ++i)
            if (mask >> i & 1) s += g.gens[i];
        return s;
    };

    HindmanReport report;
    std::vector<std::uint32_t> masks;
    std::vector<std::int64_t> q;
    std::vector<std::int64_t> sums;  // FS of the chosen q's so far
    int color = 0;
    bool budget_hit = false;

    std::function<bool(std::uint32_t, std::uint32_t)> rec =
        [&](std::uint32_t used, std::uint32_t from) -> bool {
        if (static_cast<std::int64_t>(q.size()) == m) {
            report.found = HindmanFound{q, masks, color};
            return true;
        }
        for (std::uint32_t mask = from; mask <= full; ++mask) {
            if (mask & used) continue;
            if (report.examined >= budget.limit) { budget_hit = true; return false; }
            ++report.examined;
            std::int64_t v = mask_sum(mask);
            int c = coloring.at(v);
            if (q.empty()) color = c;
            if (c != color) continue;
            bool mono = true;
            for (std::int64_t s : sums)
                if (coloring.at(s + v) != color) { mono = false; break; }
            if (!mono) continue;
            std::size_t old = sums.size();
            sums.push_back(v);
            for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + v);
            masks.push_back(mask);
            q.push_back(v);
            if (rec(used | mask, mask + 1)) return true;
            q.pop_back();
            masks.pop_back();
            sums.resize(old);
            if (budget_hit) return false;
        }
        return false;
    };
    rec(0, 1);
    report.exhausted = !report.found && !budget_hit;
    return report;
}

// ---------------------------------------------------------------------------
// md_point: grow a word y inside a thick indicator C with 0 in C. Stage 1
// places two ones across the first available gap; stage k+1 appends, after a
// fresh |A_k|-divisible zero gap, one copy of A_k followed by one |A_k|-long
// panel of repeated copies of each earlier block. All ones must land in C.
// ---------------------------------------------------------------------------

struct MdStage {
    Word block;             // A_k
    std::int64_t zero_gap;  // a_k
    std::int64_t length() const { return block.size(); }  // m_k
};

struct MdTrace {
    std::vector<MdStage> stages;
    std::int64_t horizon = 0;
};

struct MdResult {
    PointPrefix y;
    MdTrace trace;
    std::int64_t requested = 0;
    std::optional<std::string> partial_reason;

    bool complete() const { return !partial_reason.has_value(); }
    std::int64_t stages_built() const { return static_cast<std::int64_t>(trace.stages.size()); }
};

namespace detail {

// the panel train appended after the zero gap at stage k+1:
// A_k A_{k-1}^{m_k/m_{k-1}} ... A_1^{m_k/m_1}, each panel of length m_k
inline std::string md_tail(const std::vector<MdStage>& stages) {
    const std::string& top = stages.back().block.bits;
    std::string tail = top;
    for (std::size_t i = stages.size() - 1; i-- > 0;) {
        const std::string& blk = stages[i].block.bits;
        std::int64_t reps = static_cast<std::int64_t>(top.size() / blk.size());
        for (std::int64_t r = 0; r < reps; ++r) tail += blk;
    }
    return tail;
}

}  // namespace detail

inline MdResult md_point(const PointPrefix& c, std::int64_t stages_requested) {
    if (stages_requested < 1) throw precondition_error("md_point: stages must be >= 1");
    const std::string& cb = c.word.bits;
    const std::int64_t h = c.horizon();
    if (cb[0] != '1') throw precondition_error("md_point: C must contain 0");

    MdResult result;
    result.requested = stages_requested;
    result.trace.horizon = h;

    // stage 1: A_1 = 1 0^{a_1} 1 with the smallest a_1 >= 1 dominated by C
    std::int64_t a1 = -1;
    for (std::int64_t a = 1; a + 1 < h; ++a)
        if (cb[static_cast<std::size_t>(a + 1)] == '1') { a1 = a; break; }
    if (a1 < 0) {
        result.partial_reason = "stage 1: C has no second element on the window";
        result.y = make_point(std::string(static_cast<std::size_t>(h), '0'), "md");
        return result;
    }
    {
        std::string a_word = "1" + std::string(static_cast<std::size_t>(a1), '0') + "1";
        result.trace.stages.push_back(MdStage{Word(std::move(a_word)), a1});
    }

    for (std::int64_t k = 1; k < stages_requested; ++k) {
        const MdStage& top = result.trace.stages.back();
        const std::int64_t mk = top.length();
        std::string tail = detail::md_tail(result.trace.stages);
        std::vector<std::int64_t> tail_ones;
        for (std::size_t i = 0; i < tail.size(); ++i)
            if (tail[i] == '1') tail_ones.push_back(static_cast<std::int64_t>(i));

        // smallest |A_k|-divisible a > a_k whose shifted panel train stays in C
        std::int64_t found = -1;
        std::int64_t a0 = ((top.zero_gap / mk) + 1) * mk;
        for (std::int64_t a = a0; mk + a + static_cast<std::int64_t>(tail.size()) <= h; a += mk) {
            bool ok = true;
            for (std::int64_t o : tail_ones)
                if (cb[static_cast<std::size_t>(mk + a + o)] != '1') { ok = false; break; }
            if (ok) { found = a; break; }
        }
        if (found < 0) {
            result.partial_reason = "stage " + std::to_string(k + 1) +
                                    ": no admissible zero gap; C lacks a long enough run on the window";
            break;
        }
        std::string next = top.block.bits +
                           std::string(static_cast<std::size_t>(found), '0') + tail;
        result.trace.stages.push_back(MdStage{Word(std::move(next)), found});
    }

    std::string bits = result.trace.stages.back().block.bits;
    bits.resize(static_cast<std::size_t>(h), '0');
    result.y = make_point(std::move(bits), "md");
    return result;
}

// Replay audit: rebuild every stage block and the final word from the trace
// parameters alone and compare bit-for-bit.
inline bool md_replay_matches(const MdResult& r) {
    if (r.trace.stages.empty()) return true;
    std::vector<MdStage> rebuilt;
    {
        std::int64_t a1 = r.trace.stages[0].zero_gap;
        if (a1 < 1) return false;
        std::string w = "1" + std::string(static_cast<std::size_t>(a1), '0') + "1";
        if (w != r.trace.stages[0].block.bits) return false;
        rebuilt.push_back(r.trace.stages[0]);
    }
    for (std::size_t k = 1; k < r.trace.stages.size(); ++k) {
        const MdStage& prev = rebuilt.back();
        std::int64_t a = r.trace.stages[k].zero_gap;
        if (a <= prev.zero_gap || a % prev.length() != 0) return false;
        std::string w = prev.block.bits + std::string(static_cast<std::size_t>(a), '0') +
                        detail::md_tail(rebuilt);
        if (w != r.trace.stages[k].block.bits) return false;
        rebuilt.push_back(r.trace.stages[k]);
    }
    std::string bits = rebuilt.back().block.bits;
    bits.resize(static_cast<std::size_t>(r.trace.horizon), '0');
    return bits == r.y.word.bits;
}

// ---------------------------------------------------------------------------
// md certificates
// ---------------------------------------------------------------------------

struct StageWitness {
    std::int64_t stage = 0;
    std::int64_t block_len = 0;
    bool required = false;  // the top stage block occurs only once in the
                            // truncated word; its witness is informational
    bool found = false;
    PiecewiseSyndeticCert cert;  // valid when found
};

struct MdCertificate {
    bool ones_subset = false;  // occurrences(y, "1") inside support(C)
    std::vector<StageWitness> witnesses;

    bool all_ok() const {
        if (!ones_subset) return false;
        for (const auto& w : witnesses)
            if (w.required && !w.found) return false;
        return true;
    }
};

// Scan the distinct hole sizes of the occurrence set as candidate gaps and
// return the first witness whose interval reaches the target length.
inline std::optional<PiecewiseSyndeticCert> best_piecewise_witness(
    const WindowSet& occ, std::int64_t target_len) {
    if (occ.empty()) return std::nullopt;
    std::vector<std::int64_t> cand;
    cand.push_back(1);
    for (std::size_t i = 1; i < occ.elements.size(); ++i)
        cand.push_back(occ.elements[i] - occ.elements[i - 1]);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::int64_t g : cand) {
        auto w = piecewise_syndetic_witness(occ, g);
        if (w && w->hi - w->lo >= std::max(2 * g, target_len)) return w;
    }
    return std::nullopt;
}

inline MdCertificate md_certify(const MdResult& r, const PointPrefix& c) {
    MdCertificate cert;
    WindowSet ones = support(r.y);
    ones.horizon = c.horizon();
    cert.ones_subset = window_subset_of(ones, support(c));
    for (std::size_t k = 0; k < r.trace.stages.size(); ++k) {
        const MdStage& st = r.trace.stages[k];
        StageWitness w;
        w.stage = static_cast<std::int64_t>(k + 1);
        w.block_len = st.length();
        w.required = k + 1 < r.trace.stages.size();
        auto found = best_piecewise_witness(occurrences(r.y, st.block), 0);
        if (found) {
            w.found = true;
            w.cert = *found;
        }
        cert.witnesses.push_back(w);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// sm_point: grow a minimal-looking word inside a thickly syndetic indicator
// F with 0 in F. Stage m places copies of B_m = A_m A_m 0 A_m on a spread-out
// selection of all-ones runs of F; stage m+1 extends the leading block to
// A_{m+1} = y[0..u^m_1 + b_m) and rewrites a window around selected longer
// runs with B_{m+1} followed by greedy trains of the earlier B blocks.
// Leftover space inside a rewritten window stays zero.
// ---------------------------------------------------------------------------

struct SmStage {
    Word a_word;           // A_m
    std::int64_t a_len;    // a_m
    Word b_word;           // B_m
    std::int64_t b_len;    // b_m = 3 a_m + 1
    std::int64_t l_bound;  // l_m: certified gap bound for A_m
    std::int64_t r_run;    // r_m: run length requested from F
    WindowSet w_starts;    // W_m: selected run starts
    WindowSet u_starts;    // u_i^m: placements of B_m
};

struct SmTrace {
    std::vector<SmStage> stages;
    std::int64_t horizon = 0;
};

struct SmResult {
    PointPrefix y;
    SmTrace trace;
    std::int64_t requested = 0;
    std::optional<std::string> partial_reason;

    bool complete() const { return !partial_reason.has_value(); }
    std::int64_t stages_built() const { return static_cast<std::int64_t>(trace.stages.size()); }
};

namespace detail {

// run_from[i] = number of consecutive ones starting at i
inline std::vector<std::int64_t> run_from(const std::string& bits) {
    std::vector<std::int64_t> r(bits.size() + 1, 0);
    for (std::size_t i = bits.size(); i-- > 0;)
        r[i] = bits[i] == '1' ? r[i + 1] + 1 : 0;
    return r;
}

// greedy spread selection: first start >= lo, then first start at least
// min_space after the previous one
inline std::vector<std::int64_t> select_run_starts(const std::vector<std::int64_t>& run,
                                                   std::int64_t horizon, std::int64_t len,
                                                   std::int64_t lo, std::int64_t min_space) {
    std::vector<std::int64_t> out;
    std::int64_t i = lo;
    while (i + len <= horizon) {
        if (run[static_cast<std::size_t>(i)] >= len) {
            out.push_back(i);
            i += min_space;
        } else {
            ++i;
        }
    }
    return out;
}

inline std::int64_t anchor_bound(const std::vector<std::int64_t>& u) {
    std::int64_t l = u.front();
    for (std::size_t i = 1; i < u.size(); ++i) l = std::max(l, u[i] - u[i - 1]);
    return l;
}

}  // namespace detail

inline SmResult sm_point(const PointPrefix& f, std::int64_t stages_requested) {
    if (stages_requested < 1) throw precondition_error("sm_point: stages must be >= 1");
    const std::string& fb = f.word.bits;
    const std::int64_t h = f.horizon();
    if (fb[0] != '1') throw precondition_error("sm_point: F must contain 0");

    SmResult result;
    result.requested = stages_requested;
    result.trace.horizon = h;
    std::vector<std::int64_t> run = detail::run_from(fb);
    std::string y(static_cast<std::size_t>(h), '0');

    auto write_block = [&](std::int64_t pos, const std::string& blk) {
        y.replace(static_cast<std::size_t>(pos), blk.size(), blk);
    };

    // stage 1
    {
        const std::int64_t a1 = 1;
        std::string a_word = fb.substr(0, static_cast<std::size_t>(a1));
        std::string b_word = a_word + a_word + "0" + a_word;
        const std::int64_t b1 = static_cast<std::int64_t>(b_word.size());
        const std::int64_t r1 = b1;
        std::vector<std::int64_t> w = detail::select_run_starts(run, h, r1, 2 * a1, 2 * r1);
        if (w.size() < 2) {
            result.partial_reason = "stage 1: F lacks a spread-out family of runs of length " +
                                    std::to_string(r1);
            result.y = make_point(std::move(y), "sm");
            return result;
        }
        write_block(0, a_word);
        for (std::int64_t s : w) write_block(s, b_word);
        SmStage st;
        st.a_word = Word(a_word);
        st.a_len = a1;
        st.b_word = Word(b_word);
        st.b_len = b1;
        st.r_run = r1;
        st.l_bound = detail::anchor_bound(w);
        st.w_starts = make_window_set(h, w);
        st.u_starts = make_window_set(h, w);
        result.trace.stages.push_back(std::move(st));
    }

    for (std::int64_t m = 1; m < stages_requested; ++m) {
        const SmStage& prev = result.trace.stages.back();
        const std::vector<std::int64_t>& pu = prev.u_starts.elements;
        const std::int64_t bm = prev.b_len;

        const std::int64_t a2 = pu.front() + bm;
        std::string a_word = y.substr(0, static_cast<std::size_t>(a2));
        std::string b_word = a_word + a_word + "0" + a_word;
        const std::int64_t b2 = static_cast<std::int64_t>(b_word.size());
        const std::int64_t r2 = 2 * prev.l_bound + 2 * bm + b2;

        std::vector<std::int64_t> w = detail::select_run_starts(run, h, r2, 2 * a2, 2 * r2);
        std::vector<std::int64_t> u2;
        for (std::int64_t ws : w) {
            auto k_it = std::lower_bound(pu.begin(), pu.end(), ws);
            if (k_it == pu.end()) break;  // no anchor block beyond this point
            auto j_it = std::upper_bound(pu.begin(), pu.end(), ws + r2 - bm);
            if (j_it == pu.begin()) continue;
            --j_it;
            const std::int64_t uk = *k_it, uj = *j_it;
            const std::int64_t u_new = uk + bm;
            if (u_new + b2 > uj) continue;  // window cannot host the new block
            std::fill(y.begin() + static_cast<std::ptrdiff_t>(u_new),
                      y.begin() + static_cast<std::ptrdiff_t>(uj), '0');
            std::int64_t pos = u_new;
            write_block(pos, b_word);
            pos += b2;
            for (std::size_t si = result.trace.stages.size(); si-- > 0;) {
                const std::string& blk = result.trace.stages[si].b_word.bits;
                const std::int64_t bl = result.trace.stages[si].b_len;
                while (pos + bl <= uj) {
                    write_block(pos, blk);
                    pos += bl;
                }
            }
            u2.push_back(u_new);
        }
        if (u2.empty()) {
            result.partial_reason = "stage " + std::to_string(m + 1) +
                                    ": F lacks a spread-out family of runs of length " +
                                    std::to_string(r2);
            break;
        }
        SmStage st;
        st.a_word = Word(std::move(a_word));
        st.a_len = a2;
        st.b_word = Word(std::move(b_word));
        st.b_len = b2;
        st.r_run = r2;
        st.l_bound = detail::anchor_bound(u2);
        st.w_starts = make_window_set(h, w);
        st.u_starts = make_window_set(h, u2);
        result.trace.stages.push_back(std::move(st));
    }

    result.y = make_point(std::move(y), "sm");
    return result;
}

// Replay audit: rebuild the word from the trace placements alone.
inline bool sm_replay_matches(const SmResult& r) {
    if (r.trace.stages.empty()) return r.y.word.bits.find('1') == std::string::npos;
    const std::int64_t h = r.trace.horizon;
    std::string y(static_cast<std::size_t>(h), '0');
    auto write_block = [&](std::int64_t pos, const std::string& blk) {
        y.replace(static_cast<std::size_t>(pos), blk.size(), blk);
    };

    for (std::size_t m = 0; m < r.trace.stages.size(); ++m) {
        const SmStage& st = r.trace.stages[m];
        // structural invariants
        if (st.b_len != 3 * st.a_len + 1) return false;
        if (st.b_word.bits != st.a_word.bits + st.a_word.bits + "0" + st.a_word.bits)
            return false;
        if (m == 0) {
            if (st.a_len != 1 || st.r_run != st.b_len) return false;
            if (st.u_starts.elements != st.w_starts.elements) return false;
            write_block(0, st.a_word.bits);
            for (std::int64_t s : st.u_starts.elements) write_block(s, st.b_word.bits);
        } else {
            const SmStage& prev = r.trace.stages[m - 1];
            if (st.a_len != prev.u_starts.elements.front() + prev.b_len) return false;
            if (st.a_word.bits != y.substr(0, static_cast<std::size_t>(st.a_len))) return false;
            if (st.r_run != 2 * prev.l_bound + 2 * prev.b_len + st.b_len) return false;
            const std::vector<std::int64_t>& pu = prev.u_starts.elements;
            std::size_t ui = 0;
            for (std::int64_t ws : st.w_starts.elements) {
                auto k_it = std::lower_bound(pu.begin(), pu.end(), ws);
                if (k_it == pu.end()) break;
                auto j_it = std::upper_bound(pu.begin(), pu.end(), ws + st.r_run - prev.b_len);
                if (j_it == pu.begin()) continue;
                --j_it;
                const std::int64_t u_new = *k_it + prev.b_len;
                if (u_new + st.b_len > *j_it) continue;
                if (ui >= st.u_starts.elements.size() ||
                    st.u_starts.elements[ui] != u_new) return false;
                ++ui;
                std::fill(y.begin() + static_cast<std::ptrdiff_t>(u_new),
                          y.begin() + static_cast<std::ptrdiff_t>(*j_it), '0');
                std::int64_t pos = u_new;
                write_block(pos, st.b_word.bits);
                pos += st.b_len;
                for (std::size_t si = m; si-- > 0;) {
                    const std::string& blk = r.trace.stages[si].b_word.bits;
                    const std::int64_t bl = r.trace.stages[si].b_len;
                    while (pos + bl <= *j_it) {
                        write_block(pos, blk);
                        pos += bl;
                    }
                }
            }
            if (ui != st.u_starts.elements.size()) return false;
            if (st.l_bound != detail::anchor_bound(st.u_starts.elements)) return false;
        }
    }
    return y == r.y.word.bits;
}

// ---------------------------------------------------------------------------
// sm certificates: support containment, per-stage gap bounds, and the
// consecutive self-hitting witnesses {a_m, a_m+1}.
// ---------------------------------------------------------------------------

struct SmStageGaps {
    std::int64_t stage = 0;
    std::int64_t l_bound = 0;
    std::int64_t max_gap = 0;   // over occurrences inside [0, cover_end)
    std::int64_t cover_end = 0;
    bool ok = false;
};

struct SmWeakMixing {
    std::int64_t stage = 0;
    std::int64_t s = 0;  // = a_m
    bool pair_present = false;  // {s, s+1} inside the self-hitting set of A_m
};

struct SmCertificate {
    bool ones_subset = false;
    std::vector<SmStageGaps> gaps;
    std::vector<SmWeakMixing> weak_mixing;

    bool all_ok() const {
        if (!ones_subset) return false;
        for (const auto& g : gaps)
            if (!g.ok) return false;
        for (const auto& w : weak_mixing)
            if (!w.pair_present) return false;
        return true;
    }
};

inline SmCertificate sm_certify(const SmResult& r, const PointPrefix& f) {
    SmCertificate cert;
    WindowSet ones = support(r.y);
    cert.ones_subset = window_subset_of(ones, support(f));
    if (r.trace.stages.empty()) return cert;
    const SmStage& last = r.trace.stages.back();
    const std::int64_t cover_end = last.u_starts.elements.back() + last.b_len;
    for (std::size_t m = 0; m < r.trace.stages.size(); ++m) {
        const SmStage& st = r.trace.stages[m];
        WindowSet occ = occurrences(r.y, st.a_word);

        SmStageGaps g;
        g.stage = static_cast<std::int64_t>(m + 1);
        g.l_bound = st.l_bound;
        g.cover_end = cover_end;
        std::int64_t prev = 0, maxgap = occ.empty() ? cover_end : occ.elements.front();
        for (std::int64_t e : occ.elements) {
            if (e >= cover_end) break;
            maxgap = std::max(maxgap, e - prev);
            prev = e;
        }
        g.max_gap = maxgap;
        g.ok = maxgap <= st.l_bound;
        cert.gaps.push_back(g);

        SmWeakMixing w;
        w.stage = g.stage;
        w.s = st.a_len;
        w.pair_present = hitting_contains(occ, occ, st.a_len) &&
                         hitting_contains(occ, occ, st.a_len + 1);
        cert.weak_mixing.push_back(w);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// rapid_ip: superincreasing generators centered in runs of a thick indicator
// F, so that the whole FS set and its difference set stay inside F. Each new
// generator p sits at the center of an all-ones stretch of radius at least
// the sum of its predecessors: every new sum p + s and every cross
// difference p + s - s' then lands inside the same stretch.
// ---------------------------------------------------------------------------

struct RapidResult {
    FSGenerators gens;
    std::int64_t requested = 0;
    std::optional<std::string> partial_reason;

    bool complete() const { return !partial_reason.has_value(); }
};

inline RapidResult rapid_ip(const PointPrefix& f, std::int64_t depth) {
    if (depth < 1 || depth > 30) throw precondition_error("rapid_ip: depth out of range");
    RapidResult result;
    result.requested = depth;
    std::vector<std::int64_t> run = detail::run_from(f.word.bits);
    const std::int64_t h = f.horizon();
    std::int64_t sum = 0;
    for (std::int64_t stage = 1; stage <= depth; ++stage) {
        const std::int64_t need = 2 * sum + 1;
        std::int64_t found = -1;
        for (std::int64_t q = 1; q + need <= h; ++q)
            if (run[static_cast<std::size_t>(q)] >= need) { found = q + sum; break; }
        if (found < 0) {
            result.partial_reason = "stage " + std::to_string(stage) +
                                    ": no run of length " + std::to_string(need) +
                                    " on the window";
            break;
        }
        result.gens.gens.push_back(found);
        sum += found;
    }
    result.gens.superincreasing = true;
    return result;
}

struct RapidCertificate {
    bool fs_subset = false;    // FS set inside support(F)
    bool diff_subset = false;  // difference set of the FS set inside support(F)
    WindowSet fs;
    WindowSet diffs;

    bool all_ok() const { return fs_subset && diff_subset; }
};

inline RapidCertificate rapid_certify(const RapidResult& r, const PointPrefix& f,
                                      const Budget& budget = Budget{}) {
    RapidCertificate cert;
    if (r.gens.gens.empty()) return cert;
    WindowSet sup = support(f);
    cert.fs = fs_set(r.gens.gens, f.horizon(), budget);
    cert.diffs = difference_set(cert.fs, budget);
    cert.fs_subset = window_subset_of(cert.fs, sup);
    cert.diff_subset = window_subset_of(cert.diffs, sup);
    return cert;
}

// ---------------------------------------------------------------------------
// entropy_bound_check: block counts of an md word at the stage lengths m_k
// against the cubic bound (m_k + 1)^3.
// ---------------------------------------------------------------------------

struct EntropyBoundRow {
    std::int64_t stage = 0;
    std::int64_t m_k = 0;
    std::int64_t block_count = 0;
    std::int64_t bound = 0;
    double entropy_estimate = 0;
    bool ok = false;
};

inline std::vector<EntropyBoundRow> entropy_bound_check(const PointPrefix& y,
                                                        const MdTrace& trace,
                                                        std::int64_t stages) {
    if (stages < 1 || stages > static_cast<std::int64_t>(trace.stages.size()))
        throw precondition_error("entropy_bound_check: stage count out of range");
    if (trace.stages[static_cast<std::size_t>(stages - 1)].length() > y.horizon() / 4)
        throw precondition_error("entropy_bound_check: m_K exceeds horizon/4");
    BlockCounter counter(y.word.bits);
    std::vector<EntropyBoundRow> rows;
    for (std::int64_t k = 1; k <= stages; ++k) {
        EntropyBoundRow row;
        row.stage = k;
        row.m_k = trace.stages[static_cast<std::size_t>(k - 1)].length();
        row.block_count = counter.count(row.m_k);
        row.bound = (row.m_k + 1) * (row.m_k + 1) * (row.m_k + 1);
        row.entropy_estimate = make_block_stats(row.m_k, row.block_count).entropy_estimate;
        row.ok = row.block_count <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace recforge
