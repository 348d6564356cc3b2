// Acceptance suite: one binary, one pass/fail line per criterion, nonzero
// exit on any failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "recforge/cli.hpp"
#include "recforge/constructions.hpp"
#include "recforge/families.hpp"
#include "recforge/independence.hpp"
#include "recforge/io.hpp"
#include "recforge/product.hpp"
#include "recforge/subshift.hpp"
#include "recforge/words.hpp"

using namespace recforge;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Criterion {
    int id;
    std::string name;
    bool pass;
    double seconds;
};

std::vector<Criterion> results;

void record(int id, const std::string& name, bool pass, double secs) {
    results.push_back({id, name, pass, secs});
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), secs);
    std::fflush(stdout);
}

PointPrefix runs_indicator(std::int64_t horizon,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& runs,
                           bool include_zero) {
    std::string bits(static_cast<std::size_t>(horizon), '0');
    if (include_zero) bits[0] = '1';
    for (auto [start, len] : runs)
        for (std::int64_t i = start; i < start + len && i < horizon; ++i)
            bits[static_cast<std::size_t>(i)] = '1';
    return make_point(std::move(bits), "runs");
}

// runs of length 4^{j-1} at positions 4^j, plus {0}
PointPrefix quad_runs(std::int64_t horizon) {
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    for (std::int64_t start = 4;; start *= 4) {
        if (start >= horizon) break;
        runs.emplace_back(start, std::max<std::int64_t>(1, start / 4));
    }
    return runs_indicator(horizon, runs, true);
}

// deterministic sparse geometric layouts for the randomized md specs
PointPrefix random_thick_layout(std::uint32_t seed, std::int64_t horizon) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::int64_t> first_start(4, 12);
    std::uniform_int_distribution<std::int64_t> first_len(2, 4);
    std::uniform_real_distribution<double> growth(3.5, 4.5);
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    std::int64_t start = first_start(rng);
    std::int64_t len = first_len(rng);
    while (start < horizon) {
        runs.emplace_back(start, len);
        double gf = growth(rng);
        std::int64_t next = static_cast<std::int64_t>((start + len) * gf) + 1;
        len = static_cast<std::int64_t>(len * gf) + static_cast<std::int64_t>(rng() % 3);
        start = next;
    }
    return runs_indicator(horizon, runs, true);
}

// --------------------------------------------------------------------------

bool criterion1() {
    const std::int64_t horizon = 200000;
    for (int spec = 0; spec < 25; ++spec) {
        auto t0 = clock_type::now();
        PointPrefix c = spec == 0 ? quad_runs(horizon)
                                  : random_thick_layout(1000 + spec, horizon);
        MdResult r = md_point(c, 3);
        if (!r.complete()) {
            std::printf("  spec %d: construction partial (%s)\n", spec,
                        r.partial_reason->c_str());
            return false;
        }
        MdCertificate cert = md_certify(r, c);
        if (!cert.ones_subset) {
            std::printf("  spec %d: ones left the carrier\n", spec);
            return false;
        }
        const std::int64_t a1_len = r.trace.stages[0].length();
        auto witness = best_piecewise_witness(occurrences(r.y, r.trace.stages[0].block),
                                              10 * a1_len);
        if (!witness || witness->hi - witness->lo < 10 * a1_len) {
            std::printf("  spec %d: witness interval below 10*|A_1|\n", spec);
            return false;
        }
        double secs = seconds_since(t0);
        if (secs >= 5.0) {
            std::printf("  spec %d: run took %.2f s (budget 5 s)\n", spec, secs);
            return false;
        }
    }
    return true;
}

bool criterion2() {
    const std::int64_t horizon = 300000;
    const std::int64_t periods[10] = {701, 733, 769, 809, 853, 877, 907, 941, 971, 997};
    for (int spec = 0; spec < 10; ++spec) {
        auto t0 = clock_type::now();
        std::string bits(static_cast<std::size_t>(horizon), '1');
        for (std::int64_t i = 0; i < horizon; i += periods[spec])
            bits[static_cast<std::size_t>(i)] = '0';
        bits[0] = '1';
        PointPrefix f = make_point(std::move(bits), "co-arith");

        SmResult r = sm_point(f, 3);
        if (!r.complete()) {
            std::printf("  period %lld: partial (%s)\n",
                        static_cast<long long>(periods[spec]), r.partial_reason->c_str());
            return false;
        }
        SmCertificate cert = sm_certify(r, f);
        if (!cert.ones_subset) {
            std::printf("  period %lld: ones left the carrier\n",
                        static_cast<long long>(periods[spec]));
            return false;
        }
        for (const SmStageGaps& g : cert.gaps)
            if (!g.ok) {
                std::printf("  period %lld: stage %lld gap %lld exceeds l = %lld\n",
                            static_cast<long long>(periods[spec]),
                            static_cast<long long>(g.stage),
                            static_cast<long long>(g.max_gap),
                            static_cast<long long>(g.l_bound));
                return false;
            }
        for (const SmWeakMixing& w : cert.weak_mixing)
            if (!w.pair_present) {
                std::printf("  period %lld: weak-mixing pair missing at stage %lld\n",
                            static_cast<long long>(periods[spec]),
                            static_cast<long long>(w.stage));
                return false;
            }
        double secs = seconds_since(t0);
        if (secs >= 30.0) {
            std::printf("  period %lld: run took %.2f s (budget 30 s)\n",
                        static_cast<long long>(periods[spec]), secs);
            return false;
        }
    }
    return true;
}

bool criterion3() {
    const std::int64_t horizon = 200000;
    PointPrefix c = quad_runs(horizon);
    MdResult r = md_point(c, 4);
    if (!r.complete() || r.stages_built() != 4) {
        std::printf("  md construction did not reach four stages\n");
        return false;
    }
    auto rows = entropy_bound_check(r.y, r.trace, 4);
    for (const auto& row : rows)
        if (!row.ok) {
            std::printf("  stage %lld: B_%lld = %lld exceeds (m+1)^3 = %lld\n",
                        static_cast<long long>(row.stage),
                        static_cast<long long>(row.m_k),
                        static_cast<long long>(row.block_count),
                        static_cast<long long>(row.bound));
            return false;
        }
    // control: a rich prefix keeps its entropy estimates high
    PointPrefix rich = de_bruijn_word(11, 1 << 14);
    auto curve = entropy_curve(rich, 10);
    for (const BlockStats& b : curve)
        if (b.entropy_estimate < 0.6) {
            std::printf("  control: estimate at k = %lld fell to %.3f\n",
                        static_cast<long long>(b.k), b.entropy_estimate);
            return false;
        }
    // the md word's estimate at the third stage length is tiny
    if (rows[2].entropy_estimate >= 0.1) {
        std::printf("  md estimate at m_3 is %.4f, expected < 0.1\n",
                    rows[2].entropy_estimate);
        return false;
    }
    return true;
}

bool criterion4() {
    std::vector<PointPrefix> points;
    points.push_back(zeros_word(1 << 14));
    points.push_back(periodic_word("01", 1 << 14));
    points.push_back(thue_morse_word(1 << 14));
    for (const PointPrefix& x : points) {
        FSGenerators g = extract_ip(x, 4);
        if (!verify_extract_ip(x, g, 4)) {
            std::printf("  %s: FS membership audit failed\n", x.label.c_str());
            return false;
        }
        // explicit per-level enumeration, 2^(4-n+1)-1 memberships each
        for (std::int64_t n = 1; n <= 4; ++n) {
            WindowSet occ = occurrences(x, Word(x.word.bits.substr(0, n)));
            std::vector<std::int64_t> sums;
            for (std::size_t i = static_cast<std::size_t>(n - 1); i < 4; ++i) {
                std::size_t old = sums.size();
                sums.push_back(g.gens[i]);
                for (std::size_t t = 0; t < old; ++t) sums.push_back(sums[t] + g.gens[i]);
            }
            for (std::int64_t s : sums)
                if (!occ.contains(s)) {
                    std::printf("  %s: FS element %lld escapes level %lld\n",
                                x.label.c_str(), static_cast<long long>(s),
                                static_cast<long long>(n));
                    return false;
                }
        }
    }
    return true;
}

bool criterion5() {
    const std::int64_t horizon = 400000;
    std::vector<std::pair<std::int64_t, std::int64_t>> r1, r2;
    for (std::int64_t j = 0, scale = 1; j < 7; ++j, scale *= 6) {
        r1.emplace_back(6 * scale, 6 * scale);
        r2.emplace_back(18 * scale, 12 * scale);
    }
    PointPrefix f1 = runs_indicator(horizon, r1, false);
    PointPrefix f2 = runs_indicator(horizon, r2, false);
    DesertReport rep = recurrence_desert(f1, f2, 6);
    if (rep.gens1.gens.size() != 6 || rep.gens2.gens.size() != 6) {
        std::printf("  rapid IP did not reach depth 6\n");
        return false;
    }
    if (!rep.cert1.all_ok() || !rep.cert2.all_ok()) {
        std::printf("  FS or difference containment failed\n");
        return false;
    }
    if (!rep.joint_empty) {
        std::printf("  joint positive-return set is nonempty\n");
        return false;
    }
    // full enumeration audit on both sides
    for (int side = 0; side < 2; ++side) {
        const auto& gens = side == 0 ? rep.gens1.gens : rep.gens2.gens;
        WindowSet sup = support(side == 0 ? f1 : f2);
        std::vector<std::int64_t> fsv;
        for (std::uint32_t mask = 1; mask < (1u << gens.size()); ++mask) {
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (mask >> i & 1) sum += gens[i];
            fsv.push_back(sum);
        }
        for (std::int64_t v : fsv)
            if (!sup.contains(v)) return false;
        for (std::int64_t a : fsv)
            for (std::int64_t b : fsv)
                if (b > a && !sup.contains(b - a)) return false;
    }
    return true;
}

bool criterion6() {
    std::mt19937 rng(77001);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t horizon = 10000;
        double density = trial % 4 == 0   ? 0.04
                         : trial % 4 == 1 ? 0.3
                         : trial % 4 == 2 ? 0.6
                                          : 0.92;
        std::bernoulli_distribution flip(density);
        WindowSet s;
        s.horizon = horizon;
        for (std::int64_t i = 0; i < horizon; ++i)
            if (flip(rng)) s.elements.push_back(i);
        if (s.elements.empty()) continue;

        auto gap = syndetic_gap(s);
        ThickCert co = run_profile(window_complement(s));
        if (gap) {
            if (co.max_run > *gap - 1) {
                std::printf("  duality violated: gap %lld, complement run %lld\n",
                            static_cast<long long>(*gap),
                            static_cast<long long>(co.max_run));
                return false;
            }
            if (!validate_syndetic(s, SyndeticCert{*gap})) {
                std::printf("  syndetic validator rejected trial %d\n", trial);
                return false;
            }
        }
        for (std::int64_t g = 1; g <= 3; ++g)
            if (co.max_run >= g && gap && *gap <= g) {
                std::printf("  converse duality violated at g = %lld\n",
                            static_cast<long long>(g));
                return false;
            }
        if (!validate_run_profile(s, run_profile(s))) return false;
        auto psw = piecewise_syndetic_witness(s, 3);
        if (psw && !validate_piecewise_syndetic(s, *psw)) return false;
        if (!validate_density(s, density_report(s, 50))) return false;
        if (trial % 10 == 0) {
            auto tsp = thickly_syndetic_profile(s, 3);
            if (tsp && !validate_thickly_syndetic(s, *tsp)) return false;
        }
    }
    return true;
}

bool criterion7() {
    // period two: J = {0,1} fails with missing pattern (0,0)
    PointPrefix alt = periodic_word("01", 1000);
    IndependenceQuery q{alt, {Word("0"), Word("1")},
                        make_window_set(alt.horizon(), {0, 1})};
    IndependenceOutcome o = check_independence(q);
    if (o.independent || o.missing_pattern != std::vector<int>{0, 0}) {
        std::printf("  period-two check did not fail on pattern (0,0)\n");
        return false;
    }
    // rich prefix passes for every J in [0,10] with |J| <= 4
    PointPrefix rich = de_bruijn_word(11, 1 << 14);
    std::vector<std::int64_t> positions{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::int64_t tested = 0;
    for (std::uint32_t mask = 1; mask < (1u << 11); ++mask) {
        if (std::popcount(mask) > 4) continue;
        std::vector<std::int64_t> j;
        for (std::size_t i = 0; i < positions.size(); ++i)
            if (mask >> i & 1) j.push_back(positions[i]);
        IndependenceQuery rq{rich, {Word("0"), Word("1")},
                             make_window_set(rich.horizon(), j)};
        if (!check_independence(rq).independent) {
            std::printf("  rich prefix failed at a size-%zu J\n", j.size());
            return false;
        }
        ++tested;
    }
    if (tested != 11 + 55 + 165 + 330) {
        std::printf("  expected 561 candidate sets, tested %lld\n",
                    static_cast<long long>(tested));
        return false;
    }
    // the probe reports exhaustive failure on the periodic prefix
    ProbeReport pr = syndetic_independence_probe(alt, {Word("0"), Word("1")}, 2, 2);
    if (pr.found || !pr.exhausted || pr.candidates_examined != 4) {
        std::printf("  probe did not exhaust its candidate space\n");
        return false;
    }
    return true;
}

bool criterion8() {
    fs::path tmp = fs::temp_directory_path() / "recforge_acceptance_demo";
    std::error_code ec;
    fs::remove_all(tmp, ec);
    fs::create_directories(tmp);
    std::ostringstream sink;

    write_file(tmp / "pow2.txt", render_word(pow2_word(131072).word));
    write_file(tmp / "fact.txt", render_word(factorial_word(131072).word));

    auto run = [&](std::vector<std::string> args) {
        return cli::run(std::move(args), sink);
    };
    if (run({"demo", "fps", "--word", (tmp / "pow2.txt").string(), "--block", "1",
             "--out", (tmp / "fps").string(), "--no-header"}) != cli::exit_ok) {
        std::printf("  fps demo did not exit 0\n");
        return false;
    }
    WindowSet joint = parse_window_set(read_file(tmp / "fps" / "joint_set.txt"));
    if (joint.elements != std::vector<std::int64_t>{0}) {
        std::printf("  fps joint set is not exactly {0}\n");
        return false;
    }
    if (run({"demo", "fps", "--word", (tmp / "pow2.txt").string(), "--block", "1",
             "--out", (tmp / "fps").string(), "--no-header", "--verify"}) != cli::exit_ok) {
        std::printf("  fps bundle failed --verify\n");
        return false;
    }
    if (run({"demo", "fs", "--word", (tmp / "fact.txt").string(), "--block", "1",
             "--out", (tmp / "fs").string(), "--no-header"}) != cli::exit_ok) {
        std::printf("  fs demo did not exit 0\n");
        return false;
    }
    WindowSet joint2 = parse_window_set(read_file(tmp / "fs" / "joint_set.txt"));
    for (std::int64_t n : joint2.elements)
        if (n != 0) {
            std::printf("  fs joint set leaves {0}\n");
            return false;
        }
    if (run({"demo", "fs", "--word", (tmp / "fact.txt").string(), "--block", "1",
             "--out", (tmp / "fs").string(), "--no-header", "--verify"}) != cli::exit_ok) {
        std::printf("  fs bundle failed --verify\n");
        return false;
    }
    fs::remove_all(tmp, ec);
    return true;
}

// the bundle-producing battery used by the determinism criterion
bool run_battery(const fs::path& dir) {
    std::ostringstream sink;
    auto run = [&](std::vector<std::string> args) {
        int rc = cli::run(std::move(args), sink);
        return rc == cli::exit_ok || rc == cli::exit_partial;
    };
    fs::create_directories(dir);
    write_file(dir / "ones.txt", render_word(ones_word(65536).word));
    write_file(dir / "pow2.txt", render_word(pow2_word(65536).word));
    write_file(dir / "fact.txt", render_word(factorial_word(65536).word));
    write_file(dir / "tm.txt", render_word(thue_morse_word(16384).word));
    write_file(dir / "alt.txt", render_word(periodic_word("01", 16384).word));
    write_file(dir / "quad.txt", render_word(quad_runs(200000).word));
    std::string d = dir.string() + "/";
    bool ok = true;
    ok = ok && run({"families-check", "--input", d + "pow2.txt",
                    "--out", d + "fam", "--no-header"});
    ok = ok && run({"subshift-analyze", "--word", d + "tm.txt", "--kmax", "8",
                    "--depth", "3", "--block", "0", "--out", d + "an", "--no-header"});
    ok = ok && run({"construct", "md", "--input", d + "quad.txt", "--stages", "3",
                    "--out", d + "md", "--no-header"});
    ok = ok && run({"construct", "sm", "--input", d + "ones.txt", "--stages", "2",
                    "--out", d + "sm", "--no-header"});
    ok = ok && run({"construct", "rapid-ip", "--input", d + "ones.txt", "--depth", "4",
                    "--out", d + "rip", "--no-header"});
    ok = ok && run({"construct", "ip-extract", "--input", d + "tm.txt", "--depth", "4",
                    "--out", d + "ipx", "--no-header"});
    ok = ok && run({"demo", "fps", "--word", d + "pow2.txt", "--block", "1",
                    "--out", d + "fps", "--no-header"});
    ok = ok && run({"demo", "fs", "--word", d + "fact.txt", "--block", "1",
                    "--out", d + "fsd", "--no-header"});
    ok = ok && run({"independence", "check", "--word", d + "alt.txt", "--blocks", "0,1",
                    "--set", "0,1", "--out", d + "ichk", "--no-header"});
    ok = ok && run({"independence", "probe", "--word", d + "alt.txt", "--blocks", "0,1",
                    "--gap", "2", "--size", "2", "--out", d + "iprb", "--no-header"});
    return ok;
}

bool criterion9() {
    fs::path base = fs::temp_directory_path() / "recforge_acceptance_det";
    std::error_code ec;
    fs::remove_all(base, ec);
    if (!run_battery(base / "a") || !run_battery(base / "b")) {
        std::printf("  battery run failed\n");
        return false;
    }
    for (auto& entry : fs::recursive_directory_iterator(base / "a")) {
        if (!entry.is_regular_file()) continue;
        fs::path rel = fs::relative(entry.path(), base / "a");
        fs::path other = base / "b" / rel;
        if (!fs::exists(other)) {
            std::printf("  missing in second run: %s\n", rel.string().c_str());
            return false;
        }
        if (read_file(entry.path()) != read_file(other)) {
            std::printf("  bundles differ at %s\n", rel.string().c_str());
            return false;
        }
    }
    fs::remove_all(base, ec);
    return true;
}

}  // namespace

int main() {
    auto suite_start = clock_type::now();
    struct Entry {
        int id;
        const char* name;
        bool (*fn)();
        double budget;
    };
    const Entry entries[] = {
        {1, "md construction soundness, 25 thick specs", criterion1, 125.0},
        {2, "sm construction soundness, 10 thickly syndetic specs", criterion2, 300.0},
        {3, "cubic block-complexity bound and entropy control", criterion3, 60.0},
        {4, "IP extraction exhaustive membership", criterion4, 5.0},
        {5, "rapid IP sets and recurrence desert at depth 6", criterion5, 5.0},
        {6, "family duality and validators over 200 random sets", criterion6, 10.0},
        {7, "independence checker and probe", criterion7, 30.0},
        {8, "counterexample demo bundles with verification", criterion8, 20.0},
        {9, "whole-suite determinism", criterion9, 300.0},
    };
    bool all = true;
    for (const Entry& e : entries) {
        auto t0 = clock_type::now();
        bool pass = false;
        try {
            pass = e.fn();
        } catch (const std::exception& ex) {
            std::printf("  exception: %s\n", ex.what());
        }
        double secs = seconds_since(t0);
        if (secs > e.budget) {
            std::printf("  criterion %d exceeded its %.0f s budget (%.2f s)\n", e.id,
                        e.budget, secs);
            pass = false;
        }
        record(e.id, e.name, pass, secs);
        all = all && pass;
    }
    double total = seconds_since(suite_start);
    std::printf("total wall clock: %.2f s\n", total);
    if (total > 300.0) {
        std::printf("[FAIL] suite exceeded the five-minute budget\n");
        all = false;
    }
    return all ? 0 : 1;
}
