#pragma once
// product.hpp - product-system return-time calculus and the counterexample
// demonstrations: a joint return set is the intersection of the two factor
// occurrence sets, and a word grown inside the complement of an occurrence
// set pins the joint set down to at most {0}.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

#include "recforge/constructions.hpp"
#include "recforge/families.hpp"
#include "recforge/subshift.hpp"
#include "recforge/types.hpp"

namespace recforge {

// ---------------------------------------------------------------------------
// joint_return_times
// ---------------------------------------------------------------------------

struct ProductScenario {
    PointPrefix x;
    Word a;
    PointPrefix y;
    Word b;
};

inline WindowSet joint_return_times(const ProductScenario& s) {
    if (s.a.size() > s.x.horizon() || s.b.size() > s.y.horizon())
        throw precondition_error("joint_return_times: block longer than its word");
    return window_intersect(occurrences(s.x, s.a), occurrences(s.y, s.b));
}

// ---------------------------------------------------------------------------
// fps demo: when the occurrence set of A in x has no certified syndetic gap
// on the window, grow an md word y inside {0} u complement(occurrences) and
// certify that the joint return set of ([A], [1]) is contained in {0}.
// ---------------------------------------------------------------------------

struct CounterexampleReport {
    PointPrefix y;                 // the constructed word
    WindowSet joint;               // joint return set
    bool joint_in_zero = false;    // joint inside {0}
    bool embedded_ok = false;      // the embedded construction's subset certificate
    std::int64_t stages_built = 0;
    std::optional<std::string> partial_reason;
    MdTrace md_trace;              // fps route
    SmTrace sm_trace;              // fs route
    SmCertificate sm_cert;         // fs route
};

inline WindowSet adjoin_zero_complement(const WindowSet& occ) {
    WindowSet c = window_complement(occ);
    if (c.elements.empty() || c.elements.front() != 0)
        c.elements.insert(c.elements.begin(), 0);
    return c;
}

inline CounterexampleReport fps_counterexample(const PointPrefix& x, const Word& a,
                                               std::int64_t stages = 3) {
    WindowSet occ = occurrences(x, a);
    if (syndetic_gap(occ).has_value())
        throw precondition_error("fps demo inapplicable: occurrences of the block are "
                                 "syndetic on the window");
    WindowSet c_set = adjoin_zero_complement(occ);
    PointPrefix c = indicator_point(c_set, "fps-complement");

    MdResult md = md_point(c, stages);
    MdCertificate cert = md_certify(md, c);

    CounterexampleReport report;
    report.y = md.y;
    report.md_trace = md.trace;
    report.stages_built = md.stages_built();
    report.partial_reason = md.partial_reason;
    report.embedded_ok = cert.ones_subset;
    report.joint = window_intersect(occ, support(md.y));
    report.joint_in_zero = true;
    for (std::int64_t n : report.joint.elements)
        if (n != 0) report.joint_in_zero = false;
    return report;
}

// ---------------------------------------------------------------------------
// fs demo: when the occurrence set is not piecewise syndetic at window scale
// (no gap up to the bound yields a witness interval of length >= 4g), grow an
// sm word inside {0} u complement(occurrences) and certify the joint return
// set and the sm minimality certificate.
// ---------------------------------------------------------------------------

inline bool piecewise_syndetic_on_window(const WindowSet& occ, std::int64_t gap_bound) {
    for (std::int64_t g = 1; g <= gap_bound; ++g) {
        auto w = piecewise_syndetic_witness(occ, g);
        if (w && w->hi - w->lo >= 4 * g) return true;
    }
    return false;
}

inline CounterexampleReport fs_counterexample(const PointPrefix& x, const Word& a,
                                              std::int64_t stages = 3,
                                              std::int64_t gap_bound = 64) {
    WindowSet occ = occurrences(x, a);
    if (piecewise_syndetic_on_window(occ, gap_bound))
        throw precondition_error("fs demo inapplicable: occurrences of the block are "
                                 "piecewise syndetic at window scale");
    WindowSet f_set = adjoin_zero_complement(occ);
    PointPrefix f = indicator_point(f_set, "fs-complement");

    SmResult sm = sm_point(f, stages);
    CounterexampleReport report;
    report.y = sm.y;
    report.sm_trace = sm.trace;
    report.stages_built = sm.stages_built();
    report.partial_reason = sm.partial_reason;
    report.sm_cert = sm_certify(sm, f);
    report.embedded_ok = report.sm_cert.ones_subset;
    report.joint = window_intersect(occ, support(sm.y));
    report.joint_in_zero = true;
    for (std::int64_t n : report.joint.elements)
        if (n != 0) report.joint_in_zero = false;
    return report;
}

// ---------------------------------------------------------------------------
// recurrence desert: rapid IP sets grown inside two disjoint thick sets give
// indicator words whose positive self-hitting sets cannot intersect; the
// product then has no positive return of [1]x[1] to itself on the window.
// Positive returns are the meaningful ones here: 0 sits in every nonempty
// self-hitting set.
// ---------------------------------------------------------------------------

struct DesertReport {
    FSGenerators gens1, gens2;
    RapidCertificate cert1, cert2;
    bool supports_disjoint = false;
    WindowSet joint;            // intersection of the positive self-hitting sets
    bool joint_empty = false;

    bool all_ok() const {
        return supports_disjoint && cert1.all_ok() && cert2.all_ok() && joint_empty;
    }
};

inline DesertReport recurrence_desert(const PointPrefix& f1, const PointPrefix& f2,
                                      std::int64_t depth,
                                      const Budget& budget = Budget{}) {
    WindowSet s1 = support(f1), s2 = support(f2);
    if (!window_disjoint(s1, s2))
        throw precondition_error("recurrence_desert: the two supports overlap");

    RapidResult r1 = rapid_ip(f1, depth);
    RapidResult r2 = rapid_ip(f2, depth);
    if (!r1.complete())
        throw precondition_error("recurrence_desert: first set too thin: " +
                                 *r1.partial_reason);
    if (!r2.complete())
        throw precondition_error("recurrence_desert: second set too thin: " +
                                 *r2.partial_reason);

    DesertReport report;
    report.gens1 = r1.gens;
    report.gens2 = r2.gens;
    report.cert1 = rapid_certify(r1, f1, budget);
    report.cert2 = rapid_certify(r2, f2, budget);
    report.supports_disjoint = true;

    // positive self-hitting set of the FS indicator = its difference set
    report.joint = window_intersect(report.cert1.diffs, report.cert2.diffs);
    report.joint_empty = report.joint.empty();
    return report;
}

}  // namespace recforge
