#pragma once
// cli.hpp - command-line front end. Parses arguments, dispatches to the
// library, and emits reproducible report bundles.
//
// Exit codes:
//   0  success, all certificates valid
//   2  construction partial (deepest stage emitted with a reason)
//   3  precondition failed / demo inapplicable / budget refused
//   4  certificate validation failure or --verify mismatch (bug signal)
//   5  I/O failure
//   10 usage error (missing or unknown flag)
//   11 unreadable input file
//   12 out-of-range parameter

#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "recforge/constructions.hpp"
#include "recforge/families.hpp"
#include "recforge/independence.hpp"
#include "recforge/io.hpp"
#include "recforge/product.hpp"
#include "recforge/subshift.hpp"
#include "recforge/types.hpp"
#include "recforge/words.hpp"

namespace recforge {

namespace cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_partial = 2,
    exit_precondition = 3,
    exit_cert_failure = 4,
    exit_io = 5,
    exit_usage = 10,
    exit_unreadable = 11,
    exit_range = 12,
};

// ---------------------------------------------------------------------------
// deterministic task runner honoring --threads; slot-per-task keeps the
// merged result independent of the thread count
// ---------------------------------------------------------------------------

inline void run_tasks(std::vector<std::function<void()>>& tasks, int threads) {
    if (threads <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// bundle: named files written to --out, or byte-compared in --verify mode
// ---------------------------------------------------------------------------

class Bundle {
public:
    void add(const std::string& name, std::string content) {
        files_[name] = std::move(content);
    }

    // write mode returns exit_ok / exit_io; verify mode compares everything
    // except report.txt (its header may carry a timestamp)
    int finalize(const std::filesystem::path& dir, bool verify, std::ostream& log) const {
        namespace fs = std::filesystem;
        try {
            if (!verify) {
                fs::create_directories(dir);
                for (const auto& [name, content] : files_) write_file(dir / name, content);
                return exit_ok;
            }
            for (const auto& [name, content] : files_) {
                if (name == "report.txt") continue;
                fs::path p = dir / name;
                if (!fs::exists(p)) {
                    log << "verify: missing file " << p.string() << "\n";
                    return exit_cert_failure;
                }
                if (read_file(p) != content) {
                    log << "verify: mismatch in " << p.string() << "\n";
                    return exit_cert_failure;
                }
            }
            log << "verify: bundle matches\n";
            return exit_ok;
        } catch (const io_error& e) {
            log << "io error: " << e.what() << "\n";
            return exit_io;
        } catch (const fs::filesystem_error& e) {
            log << "io error: " << e.what() << "\n";
            return exit_io;
        }
    }

private:
    std::map<std::string, std::string> files_;
};

inline std::string report_header(const std::string& command, bool no_header) {
    std::ostringstream out;
    out << "# recforge " << command << " report\n";
    if (!no_header) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
        out << "# generated: " << buf << " UTC\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// shared option plumbing
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string out_dir;
    bool verify = false;
    bool no_header = false;
    int threads = 0;  // 0 = available parallelism
    std::int64_t budget_limit = 0;  // 0 = environment / default

    Budget budget() const {
        Budget b = budget_from_env();
        if (budget_limit > 0) b.limit = budget_limit;
        return b;
    }
    int thread_count() const {
        if (threads > 0) return threads;
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? static_cast<int>(hc) : 1;
    }
};

inline void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_out = true) {
    auto* o = cmd->add_option("--out", opts.out_dir, "output bundle directory");
    if (needs_out) o->required();
    cmd->add_flag("--verify", opts.verify, "re-run and compare against an existing bundle");
    cmd->add_flag("--no-header", opts.no_header, "omit the timestamp header in report.txt");
    cmd->add_option("--threads", opts.threads, "worker threads (default: available parallelism)");
    cmd->add_option("--budget", opts.budget_limit, "enumeration budget override");
}

inline std::string read_input_file(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw io_error("cannot read " + path);
    return read_file(path);
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(std::stoll(cur));
    return out;
}

inline std::vector<Word> parse_block_list(const std::string& text) {
    std::vector<Word> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(Word(cur));
    return out;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateOpts {
    std::string kind;
    std::string pattern = "01";
    std::int64_t order = 11;
    std::int64_t length = 0;
    std::string out_file;
};

inline int run_generate(const GenerateOpts& g, std::ostream& log) {
    if (g.length < 16) {
        log << "range error: --length must be >= 16\n";
        return exit_range;
    }
    PointPrefix w;
    if (g.kind == "zeros") w = zeros_word(g.length);
    else if (g.kind == "ones") w = ones_word(g.length);
    else if (g.kind == "periodic") w = periodic_word(g.pattern, g.length);
    else if (g.kind == "thue-morse") w = thue_morse_word(g.length);
    else if (g.kind == "debruijn") {
        if (g.order < 1 || g.order > 20) {
            log << "range error: --order must be in [1, 20]\n";
            return exit_range;
        }
        w = de_bruijn_word(static_cast<int>(g.order), g.length);
    } else if (g.kind == "pow2") w = pow2_word(g.length);
    else if (g.kind == "factorial") w = factorial_word(g.length);
    else {
        log << "usage error: unknown generator kind '" << g.kind << "'\n";
        return exit_usage;
    }
    try {
        write_file(g.out_file, render_word(w.word));
    } catch (const io_error& e) {
        log << "io error: " << e.what() << "\n";
        return exit_io;
    }
    log << "wrote " << g.kind << " word of length " << g.length << " to " << g.out_file << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// families-check
// ---------------------------------------------------------------------------

struct FamiliesOpts {
    std::string input;
    std::int64_t ell = 0;    // 0 = min(64, horizon)
    std::int64_t nmax = 4;
    std::int64_t gap = 0;     // 0 = scan for the best witness
    std::string gens;         // semicolon-separated generator lists
    CommonOpts common;
};

inline int run_families(const FamiliesOpts& fo, std::ostream& log) {
    WindowSet s;
    try {
        s = parse_set_or_indicator(read_input_file(fo.input));
    } catch (const io_error& e) {
        log << "unreadable input: " << e.what() << "\n";
        return exit_unreadable;
    }
    if (s.horizon < 16) {
        log << "range error: horizon must be >= 16\n";
        return exit_range;
    }
    std::int64_t ell = fo.ell ? fo.ell : std::min<std::int64_t>(64, s.horizon);
    if (ell < 1 || ell > s.horizon || fo.nmax < 1) {
        log << "range error: --ell must be in [1, horizon], --nmax >= 1\n";
        return exit_range;
    }
    Budget budget = fo.common.budget();

    std::ostringstream certs;
    std::ostringstream report;
    report << report_header("families-check", fo.common.no_header);
    report << "horizon: " << s.horizon << "\n"
           << "elements: " << s.size() << "\n";

    auto gap = syndetic_gap(s);
    ThickCert thick = run_profile(s);
    std::optional<PiecewiseSyndeticCert> psw =
        fo.gap > 0 ? piecewise_syndetic_witness(s, fo.gap) : best_piecewise_witness(s, 0);
    auto tsp = thickly_syndetic_profile(s, fo.nmax);
    DensityCert density = density_report(s, ell);

    if (gap) {
        render_cert(certs, SyndeticCert{*gap});
        certs << "\n";
        report << "syndetic: gap " << *gap << "\n";
    } else {
        report << "syndetic: absent on window\n";
    }
    render_cert(certs, thick);
    certs << "\n";
    report << "thick: max run " << thick.max_run << "\n";
    if (psw) {
        render_cert(certs, *psw);
        certs << "\n";
        report << "piecewise syndetic: gap " << psw->gap << " interval ("
               << psw->lo << "," << psw->hi << ")\n";
    } else {
        report << "piecewise syndetic: no witness"
               << (fo.gap > 0 ? " at gap " + std::to_string(fo.gap) : "") << "\n";
    }
    if (tsp) {
        render_cert(certs, *tsp);
        certs << "\n";
        report << "thickly syndetic: profile to n = " << fo.nmax << "\n";
    } else {
        report << "thickly syndetic: absent on window (n_max " << fo.nmax << ")\n";
    }
    render_cert(certs, density);
    certs << "\n";
    report << "upper banach density (l = " << ell << "): "
           << render_rational(density.upper_banach) << "\n"
           << "upper density: " << render_rational(density.upper_density) << "\n";

    if (!fo.gens.empty()) {
        std::vector<std::vector<std::int64_t>> batch;
        std::istringstream in(fo.gens);
        std::string part;
        while (std::getline(in, part, ';'))
            if (!part.empty()) batch.push_back(parse_int_list(part));
        std::vector<bool> hits = ip_star_probe(s, batch, budget);
        certs << "kind: IpStarProbe\n";
        for (std::size_t i = 0; i < hits.size(); ++i)
            certs << "probe_" << i << ": " << (hits[i] ? "hit" : "miss") << "\n";
        certs << "\n";
        bool all = true;
        for (bool h : hits) all = all && h;
        report << "ip* probe: " << (all ? "all hit" : "some miss")
               << " (" << hits.size() << " generator lists)\n";
    }

    // independent validators, dispatched across --threads
    std::vector<int> ok(5, 1);
    std::vector<std::function<void()>> tasks;
    if (gap) tasks.push_back([&, g = *gap] { ok[0] = validate_syndetic(s, SyndeticCert{g}); });
    tasks.push_back([&] { ok[1] = validate_run_profile(s, thick); });
    if (psw) tasks.push_back([&] { ok[2] = validate_piecewise_syndetic(s, *psw); });
    if (tsp) tasks.push_back([&] { ok[3] = validate_thickly_syndetic(s, *tsp); });
    tasks.push_back([&] { ok[4] = validate_density(s, density); });
    run_tasks(tasks, fo.common.thread_count());
    bool valid = ok[0] && ok[1] && ok[2] && ok[3] && ok[4];
    report << "validators: " << (valid ? "all pass" : "FAILURE") << "\n";

    Bundle bundle;
    bundle.add("certificates.txt", certs.str());
    bundle.add("input_set.txt", render_window_set(s));
    bundle.add("report.txt", report.str());
    int rc = bundle.finalize(fo.common.out_dir, fo.common.verify, log);
    if (rc != exit_ok) return rc;
    if (!valid) return exit_cert_failure;
    log << report.str();
    return exit_ok;
}

// ---------------------------------------------------------------------------
// subshift-analyze
// ---------------------------------------------------------------------------

struct SubshiftOpts {
    std::string word_file;
    std::int64_t kmax = 8;
    std::int64_t depth = 3;
    std::string block;  // optional: regular-minimal witness + occurrences
    CommonOpts common;
};

inline int run_subshift(const SubshiftOpts& so, std::ostream& log) {
    PointPrefix x;
    try {
        x = PointPrefix{parse_word(read_input_file(so.word_file)), so.word_file};
    } catch (const io_error& e) {
        log << "unreadable input: " << e.what() << "\n";
        return exit_unreadable;
    }
    if (x.horizon() < 16) {
        log << "range error: word length must be >= 16\n";
        return exit_range;
    }
    if (so.kmax < 1 || so.kmax > x.horizon() / 4) {
        log << "range error: --kmax must be in [1, horizon/4] = [1, "
            << x.horizon() / 4 << "]\n";
        return exit_range;
    }
    if (so.depth < 1 || so.depth > x.horizon() / 4) {
        log << "range error: --depth must be in [1, horizon/4]\n";
        return exit_range;
    }

    std::ostringstream certs;
    std::ostringstream report;
    report << report_header("subshift-analyze", so.common.no_header);
    report << "word: " << std::filesystem::path(so.word_file).filename().string() << "\n"
           << "horizon: " << x.horizon() << "\n";

    std::vector<BlockStats> curve = entropy_curve(x, so.kmax);
    certs << "kind: EntropyCurve\n"
          << "log_base: e\n";
    for (const BlockStats& b : curve) {
        std::ostringstream e;
        e.precision(6);
        e << std::fixed << b.entropy_estimate;
        certs << "k_" << b.k << ": count " << b.count << " estimate " << e.str() << "\n";
    }
    certs << "\n";
    report << "block curve: B_" << so.kmax << " = " << curve.back().count << "\n";

    auto rec = recurrence_certificate(x, std::min(so.depth, x.horizon() / 2));
    certs << "kind: RecurrenceCertificate\n";
    bool recurrent = true;
    for (auto& [k, t] : rec) {
        certs << "first_return_" << k << ": " << (t ? std::to_string(*t) : "absent") << "\n";
        recurrent = recurrent && t.has_value();
    }
    certs << "\n";
    report << "recurrent to depth " << so.depth << " on window: "
           << (recurrent ? "yes" : "no") << "\n";

    auto mincert = minimality_certificate(x, so.depth);
    certs << "kind: MinimalityCertificate\n";
    std::int64_t worst = 0;
    for (auto& [w, r] : mincert) {
        certs << "gap_" << w.bits << ": " << r.max_gap
              << " occurrences " << r.occurrences << "\n";
        worst = std::max(worst, r.max_gap);
    }
    certs << "\n";
    report << "max occurrence gap over blocks to depth " << so.depth
           << ": " << worst << "\n";

    auto wm = weak_mixing_witness(x, so.depth);
    certs << "kind: WeakMixingWitness\n";
    bool all_wm = true;
    for (auto& [w, s] : wm) {
        certs << "pair_" << w.bits << ": " << (s ? std::to_string(*s) : "absent") << "\n";
        all_wm = all_wm && s.has_value();
    }
    certs << "\n";
    report << "consecutive self-hitting pairs at depth " << so.depth << ": "
           << (all_wm ? "all blocks" : "not all blocks") << "\n";

    if (!so.block.empty()) {
        Word a(so.block);
        auto k = regular_minimal_witness(x, a);
        certs << "kind: RegularMinimalWitness\n"
              << "block: " << so.block << "\n"
              << "k: " << (k ? std::to_string(*k) : "absent") << "\n\n";
        report << "regular-minimal witness for " << so.block << ": "
               << (k ? std::to_string(*k) : "absent") << "\n";
    }

    // self-check: automaton counts against direct block enumeration
    bool valid = true;
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(so.kmax, 12); ++k) {
        auto [blocks, stats] = block_set(x, k);
        if (stats.count != curve[static_cast<std::size_t>(k - 1)].count) valid = false;
    }
    report << "block-count cross-check: " << (valid ? "pass" : "FAILURE") << "\n";

    Bundle bundle;
    bundle.add("certificates.txt", certs.str());
    bundle.add("word.txt", render_word(x.word));
    bundle.add("report.txt", report.str());
    int rc = bundle.finalize(so.common.out_dir, so.common.verify, log);
    if (rc != exit_ok) return rc;
    if (!valid) return exit_cert_failure;
    log << report.str();
    return exit_ok;
}

// ---------------------------------------------------------------------------
// construct md|sm|rapid-ip|ip-extract
// ---------------------------------------------------------------------------

struct ConstructOpts {
    std::string mode;
    std::string input;
    std::int64_t stages = 3;
    std::int64_t depth = 4;
    CommonOpts common;
};

inline int run_construct(const ConstructOpts& co, std::ostream& log) {
    PointPrefix input;
    try {
        input = PointPrefix{parse_word(read_input_file(co.input)), co.input};
    } catch (const io_error& e) {
        log << "unreadable input: " << e.what() << "\n";
        return exit_unreadable;
    }
    if (input.horizon() < 16) {
        log << "range error: input length must be >= 16\n";
        return exit_range;
    }
    if (co.stages < 1 || co.depth < 1) {
        log << "range error: --stages and --depth must be >= 1\n";
        return exit_range;
    }
    Budget budget = co.common.budget();

    Bundle bundle;
    std::ostringstream report;
    report << report_header("construct " + co.mode, co.common.no_header);
    bool cert_ok = true;
    bool partial = false;

    try {
        if (co.mode == "md") {
            MdResult r = md_point(input, co.stages);
            partial = !r.complete();
            MdCertificate cert = md_certify(r, input);
            std::ostringstream certs;
            certs << "kind: MdCertificate\n"
                  << "stages_built: " << r.stages_built() << "\n"
                  << "stages_requested: " << r.requested << "\n"
                  << "ones_subset: " << (cert.ones_subset ? "yes" : "no") << "\n"
                  << "replay_matches: " << (md_replay_matches(r) ? "yes" : "no") << "\n";
            for (const StageWitness& w : cert.witnesses) {
                certs << "stage_" << w.stage << "_block_len: " << w.block_len << "\n";
                if (w.found)
                    certs << "stage_" << w.stage << "_witness: gap " << w.cert.gap
                          << " interval (" << w.cert.lo << "," << w.cert.hi << ")\n";
                else
                    certs << "stage_" << w.stage << "_witness: absent"
                          << (w.required ? "" : " (top stage occurs once)") << "\n";
            }
            if (!r.trace.stages.empty() &&
                r.trace.stages.back().length() <= input.horizon() / 4) {
                auto rows = entropy_bound_check(r.y, r.trace, r.stages_built());
                for (const auto& row : rows) {
                    certs << "stage_" << row.stage << "_blocks: " << row.block_count
                          << " bound " << row.bound
                          << (row.ok ? " ok" : " VIOLATION") << "\n";
                    cert_ok = cert_ok && row.ok;
                }
            }
            cert_ok = cert_ok && cert.all_ok() && md_replay_matches(r);
            bundle.add("word.txt", render_word(r.y.word));
            bundle.add("trace.txt", render_md_trace(r.trace));
            bundle.add("certificates.txt", certs.str());
            report << "stages built: " << r.stages_built() << " of " << r.requested << "\n";
            if (r.partial_reason) report << "partial: " << *r.partial_reason << "\n";
        } else if (co.mode == "sm") {
            SmResult r = sm_point(input, co.stages);
            partial = !r.complete();
            SmCertificate cert = sm_certify(r, input);
            std::ostringstream certs;
            certs << "kind: SmCertificate\n"
                  << "stages_built: " << r.stages_built() << "\n"
                  << "stages_requested: " << r.requested << "\n"
                  << "ones_subset: " << (cert.ones_subset ? "yes" : "no") << "\n"
                  << "replay_matches: " << (sm_replay_matches(r) ? "yes" : "no") << "\n";
            for (const SmStageGaps& g : cert.gaps)
                certs << "stage_" << g.stage << "_gap: max " << g.max_gap
                      << " bound " << g.l_bound << " cover " << g.cover_end
                      << (g.ok ? " ok" : " VIOLATION") << "\n";
            for (const SmWeakMixing& w : cert.weak_mixing)
                certs << "stage_" << w.stage << "_pair: {" << w.s << "," << w.s + 1
                      << "} " << (w.pair_present ? "present" : "ABSENT") << "\n";
            cert_ok = cert.all_ok() && sm_replay_matches(r);
            bundle.add("word.txt", render_word(r.y.word));
            bundle.add("trace.txt", render_sm_trace(r.trace));
            bundle.add("certificates.txt", certs.str());
            report << "stages built: " << r.stages_built() << " of " << r.requested << "\n";
            if (r.partial_reason) report << "partial: " << *r.partial_reason << "\n";
        } else if (co.mode == "rapid-ip") {
            RapidResult r = rapid_ip(input, co.depth);
            partial = !r.complete();
            RapidCertificate cert = rapid_certify(r, input, budget);
            std::ostringstream certs;
            certs << render_generators(r.gens)
                  << "fs_subset: " << (cert.fs_subset ? "yes" : "no") << "\n"
                  << "diff_subset: " << (cert.diff_subset ? "yes" : "no") << "\n";
            cert_ok = cert.all_ok();
            bundle.add("gens.txt", render_generators(r.gens));
            bundle.add("fs_set.txt", render_window_set(cert.fs));
            bundle.add("diff_set.txt", render_window_set(cert.diffs));
            bundle.add("certificates.txt", certs.str());
            report << "depth built: " << r.gens.gens.size() << " of " << r.requested << "\n";
            if (r.partial_reason) report << "partial: " << *r.partial_reason << "\n";
        } else if (co.mode == "ip-extract") {
            FSGenerators g = extract_ip(input, co.depth, budget);
            bool sound = verify_extract_ip(input, g, co.depth);
            std::ostringstream certs;
            certs << render_generators(g)
                  << "fs_membership: " << (sound ? "verified" : "FAILURE") << "\n";
            cert_ok = sound;
            bundle.add("gens.txt", render_generators(g));
            bundle.add("certificates.txt", certs.str());
            report << "depth: " << co.depth << "\n";
        } else {
            log << "usage error: unknown construct mode '" << co.mode << "'\n";
            return exit_usage;
        }
    } catch (const precondition_error& e) {
        log << "precondition: " << e.what() << "\n";
        return exit_precondition;
    } catch (const budget_exceeded& e) {
        log << "budget: " << e.what() << "\n";
        return exit_precondition;
    }

    report << "certificates: " << (cert_ok ? "valid" : "FAILURE") << "\n";
    bundle.add("report.txt", report.str());
    int rc = bundle.finalize(co.common.out_dir, co.common.verify, log);
    if (rc != exit_ok) return rc;
    log << report.str();
    if (!cert_ok) return exit_cert_failure;
    return partial ? exit_partial : exit_ok;
}

// ---------------------------------------------------------------------------
// demo fps|fs|desert
// ---------------------------------------------------------------------------

struct DemoOpts {
    std::string mode;
    std::string word_file;   // fps/fs: the point x
    std::string block = "1"; // fps/fs: the block A
    std::string input;       // desert: F1
    std::string input2;      // desert: F2
    std::int64_t stages = 3;
    std::int64_t depth = 5;
    std::int64_t gap_bound = 64;
    CommonOpts common;
};

inline int run_demo(const DemoOpts& dm, std::ostream& log) {
    Bundle bundle;
    std::ostringstream report;
    report << report_header("demo " + dm.mode, dm.common.no_header);
    Budget budget = dm.common.budget();
    bool cert_ok = true;
    bool partial = false;

    try {
        if (dm.mode == "fps" || dm.mode == "fs") {
            PointPrefix x;
            try {
                x = PointPrefix{parse_word(read_input_file(dm.word_file)), dm.word_file};
            } catch (const io_error& e) {
                log << "unreadable input: " << e.what() << "\n";
                return exit_unreadable;
            }
            if (x.horizon() < 16) {
                log << "range error: word length must be >= 16\n";
                return exit_range;
            }
            CounterexampleReport r =
                dm.mode == "fps"
                    ? fps_counterexample(x, Word(dm.block), dm.stages)
                    : fs_counterexample(x, Word(dm.block), dm.stages, dm.gap_bound);
            partial = r.partial_reason.has_value();
            cert_ok = r.joint_in_zero && r.embedded_ok;

            std::ostringstream certs;
            certs << "kind: CounterexampleCertificate\n"
                  << "demo: " << dm.mode << "\n"
                  << "block: " << dm.block << "\n"
                  << "stages_built: " << r.stages_built << "\n"
                  << "joint_in_zero: " << (r.joint_in_zero ? "yes" : "no") << "\n"
                  << "embedded_subset: " << (r.embedded_ok ? "yes" : "no") << "\n"
                  << "joint: " << render_inline_set(r.joint) << "\n";
            bundle.add("certificates.txt", certs.str());
            bundle.add("word.txt", render_word(r.y.word));
            bundle.add("joint_set.txt", render_window_set(r.joint));
            if (dm.mode == "fps") bundle.add("trace.txt", render_md_trace(r.md_trace));
            else bundle.add("trace.txt", render_sm_trace(r.sm_trace));
            report << "joint return set: {" << render_inline_set(r.joint) << "}\n"
                   << "contained in {0}: " << (r.joint_in_zero ? "yes" : "no") << "\n";
            if (r.partial_reason) report << "partial: " << *r.partial_reason << "\n";
        } else if (dm.mode == "desert") {
            PointPrefix f1, f2;
            try {
                f1 = PointPrefix{parse_word(read_input_file(dm.input)), dm.input};
                f2 = PointPrefix{parse_word(read_input_file(dm.input2)), dm.input2};
            } catch (const io_error& e) {
                log << "unreadable input: " << e.what() << "\n";
                return exit_unreadable;
            }
            DesertReport r = recurrence_desert(f1, f2, dm.depth, budget);
            cert_ok = r.all_ok();
            std::ostringstream certs;
            certs << "kind: DesertCertificate\n"
                  << "supports_disjoint: " << (r.supports_disjoint ? "yes" : "no") << "\n"
                  << "fs1_subset: " << (r.cert1.fs_subset ? "yes" : "no") << "\n"
                  << "diff1_subset: " << (r.cert1.diff_subset ? "yes" : "no") << "\n"
                  << "fs2_subset: " << (r.cert2.fs_subset ? "yes" : "no") << "\n"
                  << "diff2_subset: " << (r.cert2.diff_subset ? "yes" : "no") << "\n"
                  << "joint_empty: " << (r.joint_empty ? "yes" : "no") << "\n";
            bundle.add("certificates.txt", certs.str());
            bundle.add("gens1.txt", render_generators(r.gens1));
            bundle.add("gens2.txt", render_generators(r.gens2));
            bundle.add("joint_set.txt", render_window_set(r.joint));
            report << "joint positive-return set empty: "
                   << (r.joint_empty ? "yes" : "no") << "\n";
        } else {
            log << "usage error: unknown demo mode '" << dm.mode << "'\n";
            return exit_usage;
        }
    } catch (const precondition_error& e) {
        log << "inapplicable: " << e.what() << "\n";
        return exit_precondition;
    } catch (const budget_exceeded& e) {
        log << "budget: " << e.what() << "\n";
        return exit_precondition;
    }

    report << "certificates: " << (cert_ok ? "valid" : "FAILURE") << "\n";
    bundle.add("report.txt", report.str());
    int rc = bundle.finalize(dm.common.out_dir, dm.common.verify, log);
    if (rc != exit_ok) return rc;
    log << report.str();
    if (!cert_ok) return exit_cert_failure;
    return partial ? exit_partial : exit_ok;
}

// ---------------------------------------------------------------------------
// independence check|probe
// ---------------------------------------------------------------------------

struct IndependenceOpts {
    std::string mode;
    std::string word_file;
    std::string blocks = "0,1";
    std::string j_set;       // check: inline J like "0,3,7"
    std::int64_t gap = 2;    // probe
    std::int64_t size = 2;   // probe
    CommonOpts common;
};

inline int run_independence(const IndependenceOpts& io, std::ostream& log) {
    PointPrefix x;
    try {
        x = PointPrefix{parse_word(read_input_file(io.word_file)), io.word_file};
    } catch (const io_error& e) {
        log << "unreadable input: " << e.what() << "\n";
        return exit_unreadable;
    }
    if (x.horizon() < 16) {
        log << "range error: word length must be >= 16\n";
        return exit_range;
    }
    std::vector<Word> blocks = parse_block_list(io.blocks);
    Budget budget = io.common.budget();

    Bundle bundle;
    std::ostringstream report;
    report << report_header("independence " + io.mode, io.common.no_header);
    std::ostringstream certs;
    bool partial = false;

    try {
        if (io.mode == "check") {
            if (io.j_set.empty()) {
                log << "usage error: independence check requires --set\n";
                return exit_usage;
            }
            std::vector<std::int64_t> j = parse_int_list(io.j_set);
            std::sort(j.begin(), j.end());
            IndependenceQuery q{x, blocks, make_window_set(x.horizon(), j)};
            IndependenceOutcome o = check_independence(q, budget);
            certs << "kind: IndependenceCheck\n"
                  << "j_set: " << render_inline_set(q.j_set) << "\n"
                  << "independent: " << (o.independent ? "yes" : "no") << "\n"
                  << "patterns_checked: " << o.patterns_checked << "\n";
            if (o.independent) {
                for (std::size_t p = 0; p < o.witnesses.size(); ++p)
                    certs << "witness_" << p << ": " << o.witnesses[p] << "\n";
            } else {
                certs << "missing_pattern:";
                for (int d : o.missing_pattern) certs << " " << d;
                certs << "\n";
            }
            report << "independent: " << (o.independent ? "yes" : "no") << "\n";
        } else if (io.mode == "probe") {
            if (io.gap < 1 || io.size < 1) {
                log << "range error: --gap and --size must be >= 1\n";
                return exit_range;
            }
            ProbeReport r = syndetic_independence_probe(x, blocks, io.gap, io.size, budget);
            certs << "kind: IndependenceProbe\n"
                  << "gap: " << io.gap << "\n"
                  << "size: " << io.size << "\n"
                  << "candidates_examined: " << r.candidates_examined << "\n"
                  << "exhausted: " << (r.exhausted ? "yes" : "no") << "\n";
            if (r.found) {
                certs << "found: " << render_inline_set(*r.found) << "\n";
                report << "found J = {" << render_inline_set(*r.found) << "}\n";
            } else if (r.exhausted) {
                report << "exhaustive failure over " << r.candidates_examined
                       << " candidates\n";
            } else {
                partial = true;
                report << "budget reached after " << r.candidates_examined
                       << " candidates\n";
            }
        } else {
            log << "usage error: unknown independence mode '" << io.mode << "'\n";
            return exit_usage;
        }
    } catch (const precondition_error& e) {
        log << "precondition: " << e.what() << "\n";
        return exit_precondition;
    } catch (const budget_exceeded& e) {
        log << "budget: " << e.what() << "\n";
        return exit_precondition;
    }

    bundle.add("certificates.txt", certs.str());
    bundle.add("report.txt", report.str());
    int rc = bundle.finalize(io.common.out_dir, io.common.verify, log);
    if (rc != exit_ok) return rc;
    log << report.str();
    return partial ? exit_partial : exit_ok;
}

// ---------------------------------------------------------------------------
// top-level dispatch
// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& log) {
    CLI::App app{"recforge - finite-horizon recurrence combinatorics toolkit"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "write a built-in word to a file");
    c_gen->add_option("kind", gen.kind,
                      "zeros|ones|periodic|thue-morse|debruijn|pow2|factorial")->required();
    c_gen->add_option("--pattern", gen.pattern, "pattern for periodic words");
    c_gen->add_option("--order", gen.order, "de Bruijn order");
    c_gen->add_option("--length", gen.length, "word length")->required();
    c_gen->add_option("--out", gen.out_file, "output word file")->required();

    FamiliesOpts fam;
    auto* c_fam = app.add_subcommand("families-check", "family certificates for a set");
    c_fam->add_option("--input", fam.input, "set file or indicator line")->required();
    c_fam->add_option("--ell", fam.ell, "density window length");
    c_fam->add_option("--nmax", fam.nmax, "thickly syndetic profile depth");
    c_fam->add_option("--gap", fam.gap, "piecewise syndetic witness gap");
    c_fam->add_option("--gens", fam.gens, "ip* probe generator lists, ';' separated");
    add_common(c_fam, fam.common);

    SubshiftOpts sub;
    auto* c_sub = app.add_subcommand("subshift-analyze", "block complexity and certificates");
    c_sub->add_option("--word", sub.word_file, "word file")->required();
    c_sub->add_option("--kmax", sub.kmax, "entropy curve depth");
    c_sub->add_option("--depth", sub.depth, "certificate depth");
    c_sub->add_option("--block", sub.block, "block for the regular-minimal witness");
    add_common(c_sub, sub.common);

    ConstructOpts con;
    auto* c_con = app.add_subcommand("construct", "run a construction");
    c_con->add_option("mode", con.mode, "md|sm|rapid-ip|ip-extract")->required();
    c_con->add_option("--input", con.input, "indicator or word file")->required();
    c_con->add_option("--stages", con.stages, "stages for md/sm");
    c_con->add_option("--depth", con.depth, "depth for rapid-ip/ip-extract");
    add_common(c_con, con.common);

    DemoOpts dem;
    auto* c_dem = app.add_subcommand("demo", "counterexample demonstrations");
    c_dem->add_option("mode", dem.mode, "fps|fs|desert")->required();
    c_dem->add_option("--word", dem.word_file, "the point x (fps/fs)");
    c_dem->add_option("--block", dem.block, "the block A (fps/fs)");
    c_dem->add_option("--input", dem.input, "thick indicator F1 (desert)");
    c_dem->add_option("--input2", dem.input2, "thick indicator F2 (desert)");
    c_dem->add_option("--stages", dem.stages, "construction stages");
    c_dem->add_option("--depth", dem.depth, "rapid-ip depth (desert)");
    c_dem->add_option("--gap", dem.gap_bound, "piecewise-syndetic gap bound (fs)");
    add_common(c_dem, dem.common);

    IndependenceOpts ind;
    auto* c_ind = app.add_subcommand("independence", "independence sets on prefixes");
    c_ind->add_option("mode", ind.mode, "check|probe")->required();
    c_ind->add_option("--word", ind.word_file, "word file")->required();
    c_ind->add_option("--blocks", ind.blocks, "comma-separated blocks");
    c_ind->add_option("--set", ind.j_set, "inline J, comma-separated (check)");
    c_ind->add_option("--gap", ind.gap, "candidate gap bound (probe)");
    c_ind->add_option("--size", ind.size, "candidate size (probe)");
    add_common(c_ind, ind.common);

    std::vector<const char*> argv;
    argv.push_back("recforge");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        log << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*c_gen) return run_generate(gen, log);
        if (*c_fam) return run_families(fam, log);
        if (*c_sub) return run_subshift(sub, log);
        if (*c_con) return run_construct(con, log);
        if (*c_dem) return run_demo(dem, log);
        if (*c_ind) return run_independence(ind, log);
    } catch (const io_error& e) {
        log << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const precondition_error& e) {
        log << "precondition: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_precondition;
    }
    return exit_usage;
}

}  // namespace cli
}  // namespace recforge
